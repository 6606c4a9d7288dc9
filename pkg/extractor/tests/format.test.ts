import { execFileSync } from "child_process";
import * as fs from "fs";
import * as os from "os";
import * as path from "path";

import { afterAll, describe, expect, it } from "vitest";

import { EmbeddingSet, packEmbeddings, readEmbeddings, writeEmbeddings } from "../src/format";
import { unitNormalize } from "../src/vecmath";

const tmp = fs.mkdtempSync(path.join(os.tmpdir(), "extractor-format-"));
afterAll(() => fs.rmSync(tmp, { recursive: true, force: true }));

function unitRows(n: number, dim: number, seed: number): Float64Array {
  // Deterministic filler; values don't matter beyond being unit-normalized.
  const flat = new Float64Array(n * dim);
  let state = seed;
  for (let i = 0; i < n; i++) {
    const row = new Float64Array(dim);
    for (let j = 0; j < dim; j++) {
      state = (state * 1103515245 + 12345) % 2147483648;
      row[j] = state / 2147483648 - 0.5;
    }
    unitNormalize(row);
    flat.set(row, i * dim);
  }
  return flat;
}

function sample(): EmbeddingSet {
  return {
    nodeIds: ["n00", "n01", "n02"],
    vectors: unitRows(3, 5, 7),
    n: 3,
    dim: 5,
    modalityTag: "TEST",
  };
}

describe("embedding file format", () => {
  it("round-trips node ids, tag, and values bit-exactly", () => {
    const emb = sample();
    const file = path.join(tmp, "roundtrip.emb");
    writeEmbeddings(emb, file);
    const back = readEmbeddings(file);
    expect(back.nodeIds).toEqual(emb.nodeIds);
    expect(back.modalityTag).toBe(emb.modalityTag);
    expect(back.n).toBe(3);
    expect(back.dim).toBe(5);
    expect(Array.from(back.vectors)).toEqual(Array.from(emb.vectors));
  });

  it("is deterministic: packing twice gives identical bytes", () => {
    const a = packEmbeddings(sample());
    const b = packEmbeddings(sample());
    expect(a.equals(b)).toBe(true);
  });

  it("rejects a truncated file", () => {
    const buf = packEmbeddings(sample());
    const file = path.join(tmp, "short.emb");
    fs.writeFileSync(file, buf.subarray(0, buf.length - 3));
    expect(() => readEmbeddings(file)).toThrow(/truncated/);
  });

  it("rejects a bad magic", () => {
    const buf = packEmbeddings(sample());
    buf.write("X", 0, "latin1");
    const file = path.join(tmp, "badmagic.emb");
    fs.writeFileSync(file, buf);
    expect(() => readEmbeddings(file)).toThrow(/magic/);
  });

  it("writes files the Python engine reads back unchanged", () => {
    const emb = sample();
    const file = path.join(tmp, "interop.emb");
    writeEmbeddings(emb, file);
    const script = [
      "from senseprop.fileio import read_embeddings",
      `e = read_embeddings(${JSON.stringify(file)})`,
      "print(e.modality_tag, e.n, e.dim, ' '.join(e.node_ids))",
      "print(repr(float(e.vectors[2, 4])))",
    ].join("\n");
    const out = execFileSync("python3", ["-c", script], { encoding: "utf-8" });
    const [meta, value] = out.trim().split("\n");
    expect(meta).toBe("TEST 3 5 n00 n01 n02");
    expect(Number(value)).toBe(emb.vectors[2 * 5 + 4]);
  });
});
