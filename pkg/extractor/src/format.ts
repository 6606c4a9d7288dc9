/**
 * Binary embedding file format (shared with the senseprop Python package).
 *
 * Layout, little-endian:
 *   bytes 0-7    magic "SPEMBED\0"
 *   8-11   version (u32) = 1
 *   12-15  modality tag length (u32)
 *   16-23  n (u64)
 *   24-31  d (u64)
 *   32-39  id-table byte offset (u64)
 *   40-    modality tag (utf-8), then n*d float64 row-major,
 *          then the id table: per node u32 length + utf-8 bytes.
 */

import * as fs from "fs";

export const MAGIC = Buffer.from("SPEMBED\0", "latin1");
export const VERSION = 1;
const HEADER_SIZE = 40;

export interface EmbeddingSet {
  nodeIds: string[];
  /** Row-major n*d values. */
  vectors: Float64Array;
  n: number;
  dim: number;
  modalityTag: string;
}

export class FormatError extends Error {
  constructor(public path: string, message: string, public offset?: number) {
    super(`${path}: ${message}` + (offset !== undefined ? ` (offset ${offset})` : ""));
    this.name = "FormatError";
  }
}

export function packEmbeddings(emb: EmbeddingSet): Buffer {
  if (emb.vectors.length !== emb.n * emb.dim) {
    throw new Error(`vector buffer has ${emb.vectors.length} values, expected ${emb.n}*${emb.dim}`);
  }
  if (emb.nodeIds.length !== emb.n) {
    throw new Error(`${emb.nodeIds.length} node ids for n=${emb.n}`);
  }
  const tag = Buffer.from(emb.modalityTag, "utf-8");
  const dataLen = emb.n * emb.dim * 8;
  const idTableOffset = HEADER_SIZE + tag.length + dataLen;
  const idBufs = emb.nodeIds.map((id) => {
    const b = Buffer.from(id, "utf-8");
    const withLen = Buffer.alloc(4 + b.length);
    withLen.writeUInt32LE(b.length, 0);
    b.copy(withLen, 4);
    return withLen;
  });
  const out = Buffer.alloc(idTableOffset + idBufs.reduce((s, b) => s + b.length, 0));
  MAGIC.copy(out, 0);
  out.writeUInt32LE(VERSION, 8);
  out.writeUInt32LE(tag.length, 12);
  out.writeBigUInt64LE(BigInt(emb.n), 16);
  out.writeBigUInt64LE(BigInt(emb.dim), 24);
  out.writeBigUInt64LE(BigInt(idTableOffset), 32);
  tag.copy(out, HEADER_SIZE);
  for (let i = 0; i < emb.vectors.length; i++) {
    out.writeDoubleLE(emb.vectors[i], HEADER_SIZE + tag.length + i * 8);
  }
  let pos = idTableOffset;
  for (const b of idBufs) {
    b.copy(out, pos);
    pos += b.length;
  }
  return out;
}

export function writeEmbeddings(emb: EmbeddingSet, path: string): void {
  fs.writeFileSync(path, packEmbeddings(emb));
}

export function readEmbeddings(path: string): EmbeddingSet {
  const raw = fs.readFileSync(path);
  if (raw.length < HEADER_SIZE) {
    throw new FormatError(path, "file shorter than header", raw.length);
  }
  if (!raw.subarray(0, 8).equals(MAGIC)) {
    throw new FormatError(path, "bad magic", 0);
  }
  const version = raw.readUInt32LE(8);
  if (version !== VERSION) {
    throw new FormatError(path, `unsupported version ${version}`, 8);
  }
  const tagLen = raw.readUInt32LE(12);
  const n = Number(raw.readBigUInt64LE(16));
  const dim = Number(raw.readBigUInt64LE(24));
  const idOff = Number(raw.readBigUInt64LE(32));
  if (n === 0 || dim === 0) {
    throw new FormatError(path, `degenerate shape n=${n}, d=${dim}`, 16);
  }
  const dataStart = HEADER_SIZE + tagLen;
  const dataEnd = dataStart + n * dim * 8;
  if (dataEnd > raw.length || idOff !== dataEnd) {
    throw new FormatError(path, "truncated or inconsistent payload", raw.length);
  }
  const modalityTag = raw.subarray(HEADER_SIZE, dataStart).toString("utf-8");
  const vectors = new Float64Array(n * dim);
  for (let i = 0; i < vectors.length; i++) {
    vectors[i] = raw.readDoubleLE(dataStart + i * 8);
  }
  const nodeIds: string[] = [];
  let pos = idOff;
  for (let i = 0; i < n; i++) {
    if (pos + 4 > raw.length) {
      throw new FormatError(path, `truncated id table at entry ${i}`, pos);
    }
    const len = raw.readUInt32LE(pos);
    pos += 4;
    if (pos + len > raw.length) {
      throw new FormatError(path, `truncated id table at entry ${i}`, pos);
    }
    nodeIds.push(raw.subarray(pos, pos + len).toString("utf-8"));
    pos += len;
  }
  return { nodeIds, vectors, n, dim, modalityTag };
}
