#!/usr/bin/env node
/**
 * sense-extract: turn a manifest of images + annotations into embedding
 * files readable by the senseprop engine.
 *
 *   sense-extract --manifest data.tsv --modality C --word-vectors w2v.tsv \
 *       --out captions.emb
 *   sense-extract --manifest data.tsv --modality CNN --out visual.emb
 *   sense-extract --manifest data.tsv --modality O --pred --word-vectors w2v.tsv \
 *       --out objects-pred.emb
 *
 * --modality is one of O, C, O+C (textual; needs --word-vectors) or CNN
 * (visual). --gold (default) / --pred select the annotation variant.
 * --threshold is accepted for parity with the prediction rule but only
 * used when scoring files are supplied to `predict-objects`.
 */

import * as fs from "fs";
import { parseArgs } from "util";

import { writeEmbeddings } from "./format";
import { readManifest } from "./manifest";
import { DEFAULT_THRESHOLD, predictObjects, ScoredLabel } from "./objects";
import { extractTextual, loadWordVectors, TextSource } from "./text";
import { extractVisual, HashFeatureModel, writeFailureManifest } from "./visual";

const USAGE = `usage: sense-extract --manifest FILE --modality O|C|O+C|CNN --out FILE
                     [--word-vectors FILE] [--gold | --pred]
                     [--threshold T] [--scores FILE] [--failures FILE]

subcommand via --scores: when a scores TSV (node<TAB>label<TAB>score) is
given, apply the object-threshold rule and print node<TAB>labels instead
of extracting embeddings.`;

function fail(msg: string): never {
  process.stderr.write(msg + "\n");
  process.exit(1);
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        manifest: { type: "string" },
        modality: { type: "string" },
        out: { type: "string" },
        "word-vectors": { type: "string" },
        gold: { type: "boolean", default: false },
        pred: { type: "boolean", default: false },
        threshold: { type: "string" },
        scores: { type: "string" },
        failures: { type: "string" },
        help: { type: "boolean", default: false },
      },
    });
  } catch (err) {
    process.stderr.write(`${err instanceof Error ? err.message : err}\n${USAGE}\n`);
    return 1;
  }
  const opts = parsed.values;
  if (opts.help) {
    process.stdout.write(USAGE + "\n");
    return 0;
  }
  if (opts.gold && opts.pred) fail("--gold and --pred are mutually exclusive");
  const variant = opts.pred ? "pred" : "gold";
  const threshold = opts.threshold !== undefined ? Number(opts.threshold) : DEFAULT_THRESHOLD;
  if (!Number.isFinite(threshold)) fail(`bad --threshold ${opts.threshold}`);

  if (opts.scores) {
    const byNode = new Map<string, ScoredLabel[]>();
    for (const line of fs.readFileSync(opts.scores, "utf-8").split("\n")) {
      if (!line || line.startsWith("#")) continue;
      const [node, label, score] = line.split("\t");
      if (score === undefined) fail(`${opts.scores}: expected node<TAB>label<TAB>score`);
      if (!byNode.has(node)) byNode.set(node, []);
      byNode.get(node)!.push({ label, score: Number(score) });
    }
    for (const [node, scores] of byNode) {
      process.stdout.write(`${node}\t${predictObjects(scores, threshold).join(",")}\n`);
    }
    return 0;
  }

  if (!opts.manifest) fail("--manifest is required\n" + USAGE);
  if (!opts.out) fail("--out is required\n" + USAGE);
  if (!opts.modality) fail("--modality is required\n" + USAGE);

  const entries = readManifest(opts.manifest);
  const log = (msg: string) => process.stderr.write(msg + "\n");

  if (opts.modality === "CNN") {
    const result = extractVisual(entries, new HashFeatureModel(), log);
    writeEmbeddings(result.embeddings, opts.out);
    if (opts.failures) writeFailureManifest(result.failures, opts.failures);
    log(`wrote ${result.embeddings.n} CNN vectors (dim ${result.embeddings.dim}) to ${opts.out}`
      + (result.failures.length ? `; ${result.failures.length} images skipped` : ""));
    return 0;
  }

  if (opts.modality === "O" || opts.modality === "C" || opts.modality === "O+C") {
    if (!opts["word-vectors"]) fail(`--modality ${opts.modality} needs --word-vectors`);
    const vectors = loadWordVectors(opts["word-vectors"]);
    const result = extractTextual(entries, opts.modality as TextSource, variant, vectors, log);
    writeEmbeddings(result.embeddings, opts.out);
    log(`wrote ${result.embeddings.n} ${result.embeddings.modalityTag} vectors `
      + `(dim ${result.embeddings.dim}) to ${opts.out}`
      + (result.skippedNodes.length ? `; ${result.skippedNodes.length} nodes excluded` : ""));
    return 0;
  }

  fail(`unknown --modality ${opts.modality} (expected O, C, O+C, or CNN)`);
}

if (require.main === module) {
  try {
    process.exit(main(process.argv.slice(2)));
  } catch (err) {
    process.stderr.write(`${err instanceof Error ? err.message : err}\n`);
    process.exit(1);
  }
}
