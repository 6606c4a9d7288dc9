export { EmbeddingSet, FormatError, packEmbeddings, readEmbeddings, writeEmbeddings } from "./format";
export { ManifestEntry, readManifest } from "./manifest";
export { DEFAULT_THRESHOLD, predictObjects, ScoredLabel } from "./objects";
export {
  extractTextual,
  loadWordVectors,
  TextExtractionResult,
  TextSource,
  tokenize,
  tokensFor,
  Variant,
  WordVectors,
} from "./text";
export { l2norm, meanPool, unitNormalize } from "./vecmath";
export {
  extractVisual,
  FeatureModel,
  HashFeatureModel,
  VisualExtractionResult,
  writeFailureManifest,
} from "./visual";
