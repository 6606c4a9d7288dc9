/**
 * Visual embedding path. A FeatureModel maps raw image bytes to a
 * fixed-dimension descriptor; the pipeline unit-normalizes it and writes
 * one row per readable image, preserving manifest order. Unreadable
 * images are skipped with the failure recorded.
 *
 * The shipped backend is HashFeatureModel: a deterministic, training-free
 * stand-in that projects the image bytes to a 4096-dim pseudo-random
 * vector via a seeded generator. It gives the pipeline the same contract
 * as a CNN encoder (fixed dim, unit norm after normalization,
 * deterministic, distinct outputs for distinct inputs) without shipping
 * model weights; swap in a real encoder by implementing FeatureModel.
 */

import { createHash } from "crypto";
import * as fs from "fs";

import { EmbeddingSet } from "./format";
import { ManifestEntry } from "./manifest";
import { unitNormalize } from "./vecmath";

export interface FeatureModel {
  readonly dim: number;
  readonly name: string;
  embed(imageBytes: Buffer): Float64Array;
}

/** sfc32 PRNG; small, fast, and stable across platforms. */
function sfc32(a: number, b: number, c: number, d: number): () => number {
  return () => {
    a |= 0; b |= 0; c |= 0; d |= 0;
    const t = (((a + b) | 0) + d) | 0;
    d = (d + 1) | 0;
    a = b ^ (b >>> 9);
    b = (c + (c << 3)) | 0;
    c = (c << 21) | (c >>> 11);
    c = (c + t) | 0;
    return (t >>> 0) / 4294967296;
  };
}

export class HashFeatureModel implements FeatureModel {
  readonly dim: number;
  readonly name = "hash-projection";

  constructor(dim: number = 4096) {
    this.dim = dim;
  }

  embed(imageBytes: Buffer): Float64Array {
    const digest = createHash("sha256").update(imageBytes).digest();
    const rand = sfc32(
      digest.readUInt32LE(0),
      digest.readUInt32LE(4),
      digest.readUInt32LE(8),
      digest.readUInt32LE(12),
    );
    const out = new Float64Array(this.dim);
    for (let i = 0; i < this.dim; i++) {
      out[i] = 2 * rand() - 1;
    }
    return out;
  }
}

export interface VisualExtractionResult {
  embeddings: EmbeddingSet;
  /** Node ids whose image could not be read or encoded, with the reason. */
  failures: { nodeId: string; imagePath: string; reason: string }[];
}

export function extractVisual(
  entries: ManifestEntry[],
  model: FeatureModel = new HashFeatureModel(),
  log: (msg: string) => void = console.warn,
): VisualExtractionResult {
  const keptIds: string[] = [];
  const rows: Float64Array[] = [];
  const failures: VisualExtractionResult["failures"] = [];
  for (const entry of entries) {
    let bytes: Buffer;
    try {
      bytes = fs.readFileSync(entry.imagePath);
    } catch (err) {
      const reason = err instanceof Error ? err.message : String(err);
      failures.push({ nodeId: entry.nodeId, imagePath: entry.imagePath, reason });
      log(`node ${entry.nodeId}: unreadable image ${entry.imagePath}; skipped`);
      continue;
    }
    const vec = model.embed(bytes);
    if (vec.length !== model.dim) {
      throw new Error(`model ${model.name} returned dim ${vec.length}, declared ${model.dim}`);
    }
    if (!unitNormalize(vec)) {
      failures.push({ nodeId: entry.nodeId, imagePath: entry.imagePath, reason: "zero-norm descriptor" });
      log(`node ${entry.nodeId}: zero-norm descriptor; skipped`);
      continue;
    }
    keptIds.push(entry.nodeId);
    rows.push(vec);
  }
  if (rows.length === 0) {
    throw new Error("no readable images; nothing to write");
  }
  const flat = new Float64Array(rows.length * model.dim);
  rows.forEach((r, i) => flat.set(r, i * model.dim));
  return {
    embeddings: {
      nodeIds: keptIds,
      vectors: flat,
      n: rows.length,
      dim: model.dim,
      modalityTag: "CNN",
    },
    failures,
  };
}

export function writeFailureManifest(
  failures: VisualExtractionResult["failures"],
  path: string,
): void {
  const lines = failures.map((f) => `${f.nodeId}\t${f.imagePath}\t${f.reason}`);
  fs.writeFileSync(path, lines.join("\n") + (lines.length ? "\n" : ""));
}
