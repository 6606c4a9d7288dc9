/** Small dense-vector helpers shared by the extraction paths. */

export function l2norm(v: Float64Array): number {
  let s = 0;
  for (let i = 0; i < v.length; i++) s += v[i] * v[i];
  return Math.sqrt(s);
}

/** Unit-normalize in place; returns false (vector untouched) when the norm is zero. */
export function unitNormalize(v: Float64Array): boolean {
  const norm = l2norm(v);
  if (norm === 0) return false;
  for (let i = 0; i < v.length; i++) v[i] /= norm;
  return true;
}

/** Mean of a non-empty list of equal-length vectors. */
export function meanPool(vectors: Float64Array[]): Float64Array {
  const dim = vectors[0].length;
  const out = new Float64Array(dim);
  for (const v of vectors) {
    if (v.length !== dim) {
      throw new Error(`dimension mismatch in pool: ${v.length} vs ${dim}`);
    }
    for (let i = 0; i < dim; i++) out[i] += v[i];
  }
  for (let i = 0; i < dim; i++) out[i] /= vectors.length;
  return out;
}
