export {
  DEFAULT_CONTINUATION_PREFIX,
  DEFAULT_SPECIAL_TOKENS,
  DEFAULT_UNKNOWN_TOKEN,
  FormatError,
  loadVocabText,
  saveVocabText,
  Vocabulary,
  VocabularyError,
} from "./vocab.js";
export {
  detokenize,
  isPunctuation,
  normalize,
  pretokenize,
  tokenizeText,
  wordpieceTokenize,
} from "./tokenizer.js";
export type { TokenizerConfig } from "./tokenizer.js";
export {
  AlignmentError,
  alignMorphemes,
  DEFAULT_MORPHEME_SEPARATOR,
  loadSigmorphonText,
  segmentationFromSegments,
  segmentationToTags,
  segments,
} from "./align.js";
export type { MorphemeAnnotation, SurfaceSegmentation } from "./align.js";
export {
  evaluateSegmenter,
  scoreFromCounts,
  scoreWord,
  segmentationF1,
} from "./metrics.js";
export type { AggregationMode, EvaluationResult, SegScore } from "./metrics.js";
export {
  assembleVocab,
  compareCodePoints,
  countSubwords,
  extractUniqueWords,
} from "./assemble.js";
export type { AssembleOptions, SubwordCounts } from "./assemble.js";
export {
  boundEvaluate,
  boundEvaluateText,
  boundTokenize,
  boundWordpiece,
  createTokenizer,
  createTokenizerFromFile,
  formatScoreRecord,
  wordpieceSegmenter,
} from "./bound.js";
export type { BoundScoreRecord, BoundTokenizer } from "./bound.js";
export { pyFloat, pyJsonObject, pyString } from "./pyjson.js";

export const VERSION = "0.1.0";
