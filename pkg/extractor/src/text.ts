/**
 * Textual embedding path: word vectors looked up per token, mean-pooled
 * and unit-normalized per node. Source O uses object labels, C the
 * caption, O+C the concatenation of both token lists.
 */

import * as fs from "fs";

import { EmbeddingSet } from "./format";
import { ManifestEntry } from "./manifest";
import { meanPool, unitNormalize } from "./vecmath";

export type TextSource = "O" | "C" | "O+C";
export type Variant = "gold" | "pred";

export interface WordVectors {
  dim: number;
  table: Map<string, Float64Array>;
}

/** TSV: word <TAB> v1 <TAB> v2 ... One row per word; all rows equal length. */
export function loadWordVectors(path: string): WordVectors {
  const table = new Map<string, Float64Array>();
  let dim = -1;
  const lines = fs.readFileSync(path, "utf-8").split("\n");
  lines.forEach((line, idx) => {
    const stripped = line.replace(/\r$/, "");
    if (!stripped || stripped.startsWith("#")) return;
    const cols = stripped.split("\t");
    if (cols.length < 2) {
      throw new Error(`${path}:${idx + 1}: expected word<TAB>values`);
    }
    const values = new Float64Array(cols.length - 1);
    for (let i = 1; i < cols.length; i++) {
      const v = Number(cols[i]);
      if (!Number.isFinite(v)) {
        throw new Error(`${path}:${idx + 1}: non-finite value ${JSON.stringify(cols[i])}`);
      }
      values[i - 1] = v;
    }
    if (dim === -1) dim = values.length;
    else if (values.length !== dim) {
      throw new Error(`${path}:${idx + 1}: dimension ${values.length}, expected ${dim}`);
    }
    table.set(cols[0], values);
  });
  if (table.size === 0) {
    throw new Error(`${path}: empty word-vector file`);
  }
  return { dim, table };
}

export function tokenize(text: string): string[] {
  return text
    .toLowerCase()
    .split(/\s+/)
    .map((t) => t.replace(/^[^a-z0-9]+|[^a-z0-9]+$/g, ""))
    .filter((t) => t.length > 0);
}

export function tokensFor(entry: ManifestEntry, source: TextSource, variant: Variant): string[] {
  const objects = variant === "gold" ? entry.goldObjects : entry.predObjects ?? [];
  const caption = variant === "gold" ? entry.goldCaption : entry.predCaption ?? "";
  const tokens: string[] = [];
  if (source === "O" || source === "O+C") {
    for (const label of objects) tokens.push(...tokenize(label));
  }
  if (source === "C" || source === "O+C") {
    tokens.push(...tokenize(caption));
  }
  return tokens;
}

export interface TextExtractionResult {
  embeddings: EmbeddingSet;
  /** Total out-of-vocabulary tokens dropped across all nodes. */
  oovCount: number;
  /** Node ids with zero in-vocabulary tokens, excluded from the output. */
  skippedNodes: string[];
}

export function extractTextual(
  entries: ManifestEntry[],
  source: TextSource,
  variant: Variant,
  vectors: WordVectors,
  log: (msg: string) => void = console.warn,
): TextExtractionResult {
  const keptIds: string[] = [];
  const rows: Float64Array[] = [];
  const skippedNodes: string[] = [];
  let oovCount = 0;
  for (const entry of entries) {
    const tokens = tokensFor(entry, source, variant);
    const hits: Float64Array[] = [];
    for (const tok of tokens) {
      const v = vectors.table.get(tok);
      if (v === undefined) oovCount += 1;
      else hits.push(v);
    }
    if (hits.length === 0) {
      skippedNodes.push(entry.nodeId);
      log(`node ${entry.nodeId}: no in-vocabulary tokens for source ${source}; excluded`);
      continue;
    }
    const pooled = meanPool(hits);
    if (!unitNormalize(pooled)) {
      skippedNodes.push(entry.nodeId);
      log(`node ${entry.nodeId}: pooled vector has zero norm; excluded`);
      continue;
    }
    keptIds.push(entry.nodeId);
    rows.push(pooled);
  }
  if (oovCount > 0) {
    log(`${oovCount} out-of-vocabulary tokens dropped`);
  }
  if (rows.length === 0) {
    throw new Error("no nodes with in-vocabulary text; nothing to write");
  }
  const flat = new Float64Array(rows.length * vectors.dim);
  rows.forEach((r, i) => flat.set(r, i * vectors.dim));
  const tag = variant === "gold" ? source : `${source}-pred`;
  return {
    embeddings: {
      nodeIds: keptIds,
      vectors: flat,
      n: rows.length,
      dim: vectors.dim,
      modalityTag: tag,
    },
    oovCount,
    skippedNodes,
  };
}
