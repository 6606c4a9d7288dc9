/**
 * Object-label prediction rule: keep every class scoring above the
 * threshold; if none clears it, keep the single best class so no image
 * ends up with an empty label list.
 */

export interface ScoredLabel {
  label: string;
  score: number;
}

export const DEFAULT_THRESHOLD = 0.2;

export function predictObjects(
  scores: ScoredLabel[],
  threshold: number = DEFAULT_THRESHOLD,
): string[] {
  if (scores.length === 0) {
    throw new Error("empty score vector");
  }
  const above = scores.filter((s) => s.score > threshold);
  if (above.length > 0) {
    return above.map((s) => s.label);
  }
  let best = scores[0];
  for (const s of scores) {
    if (s.score > best.score) best = s;
  }
  return [best.label];
}
