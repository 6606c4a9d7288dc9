/**
 * Extraction manifest: one TSV row per node.
 *
 *   node_id <TAB> verb <TAB> image_path <TAB> gold_objects <TAB> gold_caption
 *          [<TAB> pred_objects [<TAB> pred_caption]]
 *
 * Object columns are comma-separated label lists; "-" marks an absent
 * optional column. Blank lines and lines starting with "#" are skipped.
 * Output embedding files preserve manifest row order.
 */

import * as fs from "fs";

export interface ManifestEntry {
  nodeId: string;
  verb: string;
  imagePath: string;
  goldObjects: string[];
  goldCaption: string;
  predObjects: string[] | null;
  predCaption: string | null;
}

function splitObjects(field: string): string[] {
  return field
    .split(",")
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
}

export function readManifest(path: string): ManifestEntry[] {
  const lines = fs.readFileSync(path, "utf-8").split("\n");
  const entries: ManifestEntry[] = [];
  const seen = new Set<string>();
  lines.forEach((line, idx) => {
    const stripped = line.replace(/\r$/, "");
    if (!stripped || stripped.startsWith("#")) return;
    const cols = stripped.split("\t");
    if (cols.length < 5) {
      throw new Error(`${path}:${idx + 1}: expected at least 5 columns, got ${cols.length}`);
    }
    const [nodeId, verb, imagePath, goldObj, goldCap] = cols;
    if (seen.has(nodeId)) {
      throw new Error(`${path}:${idx + 1}: duplicate node id ${JSON.stringify(nodeId)}`);
    }
    seen.add(nodeId);
    const predObj = cols.length > 5 && cols[5] !== "-" ? splitObjects(cols[5]) : null;
    const predCap = cols.length > 6 && cols[6] !== "-" ? cols[6] : null;
    entries.push({
      nodeId,
      verb,
      imagePath,
      goldObjects: splitObjects(goldObj),
      goldCaption: goldCap === "-" ? "" : goldCap,
      predObjects: predObj,
      predCaption: predCap,
    });
  });
  if (entries.length === 0) {
    throw new Error(`${path}: empty manifest`);
  }
  return entries;
}
