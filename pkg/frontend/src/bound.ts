/** The bound surface consumed by scripting pipelines.
 *
 * A handle pairs an immutable vocabulary with tokenizer settings; all calls
 * on it are read-only and safe to share. Outputs match the native CLI
 * byte-for-byte on the same inputs.
 */

import { readFileSync } from "node:fs";

import {
  AggregationMode,
  evaluateSegmenter,
  SegScore,
} from "./metrics.js";
import {
  loadSigmorphonText,
  segmentationFromSegments,
  SurfaceSegmentation,
} from "./align.js";
import {
  normalize,
  resolveConfig,
  tokenizeText,
  TokenizerConfig,
  wordpieceTokenize,
} from "./tokenizer.js";
import { loadVocabText, Vocabulary } from "./vocab.js";
import { pyJsonObject } from "./pyjson.js";

export interface BoundTokenizer {
  readonly vocab: Vocabulary;
  readonly cfg: TokenizerConfig;
}

export function createTokenizer(vocabText: string, cfg: TokenizerConfig = {}): BoundTokenizer {
  resolveConfig(cfg); // validate early
  return { vocab: loadVocabText(vocabText), cfg };
}

export function createTokenizerFromFile(vocabPath: string, cfg: TokenizerConfig = {}): BoundTokenizer {
  return createTokenizer(readFileSync(vocabPath, "utf-8"), cfg);
}

/** Equivalent of the native tokenize_text call. */
export function boundTokenize(handle: BoundTokenizer, text: string): string[] {
  return tokenizeText(text, handle.vocab, handle.cfg);
}

/** Equivalent of the native wordpiece_tokenize call (single word). */
export function boundWordpiece(handle: BoundTokenizer, word: string): string[] {
  return wordpieceTokenize(word, handle.vocab, handle.cfg);
}

/** The vocabulary viewed as a word segmenter: greedy decoding with a
 * whole-word span on unknowns, spans over the original word. */
export function wordpieceSegmenter(handle: BoundTokenizer): (word: string) => SurfaceSegmentation {
  const resolved = resolveConfig(handle.cfg);
  return (word: string) => {
    if (word === "") {
      throw new RangeError("empty word");
    }
    const wordChars = [...word];
    const whole: SurfaceSegmentation = { surface: word, spans: [[0, wordChars.length]] };
    const normalized = normalize(word, handle.cfg);
    if ([...normalized].length !== wordChars.length || normalized.includes(" ")) {
      return whole;
    }
    const tokens = wordpieceTokenize(normalized, handle.vocab, handle.cfg);
    if (tokens.length === 1 && tokens[0] === resolved.unknownToken) {
      return whole;
    }
    const prefix = handle.vocab.continuationPrefix;
    const spans: Array<[number, number]> = [];
    let cursor = 0;
    for (const token of tokens) {
      const piece = cursor > 0 && token.startsWith(prefix) ? token.slice(prefix.length) : token;
      const length = [...piece].length;
      spans.push([cursor, cursor + length]);
      cursor += length;
    }
    return { surface: word, spans };
  };
}

export interface BoundScoreRecord {
  mode: AggregationMode;
  words: number;
  alignment_warnings: number;
  true_positive: number;
  predicted_total: number;
  gold_total: number;
  precision: number;
  recall: number;
  f1: number;
}

/** Score the handle's tokenizer against a gold segmentation file. */
export function boundEvaluate(
  handle: BoundTokenizer,
  goldPath: string,
  mode: AggregationMode = "micro",
): BoundScoreRecord {
  return boundEvaluateText(handle, readFileSync(goldPath, "utf-8"), mode);
}

export function boundEvaluateText(
  handle: BoundTokenizer,
  goldText: string,
  mode: AggregationMode = "micro",
): BoundScoreRecord {
  const annotations = loadSigmorphonText(goldText);
  const { score, words, alignmentWarnings } = evaluateSegmenter(
    wordpieceSegmenter(handle),
    annotations,
    mode,
  );
  return {
    mode,
    words,
    alignment_warnings: alignmentWarnings,
    true_positive: score.truePositive,
    predicted_total: score.predictedTotal,
    gold_total: score.goldTotal,
    precision: score.precision,
    recall: score.recall,
    f1: score.f1,
  };
}

/** Render a score record exactly as the native CLI prints it. */
export function formatScoreRecord(record: BoundScoreRecord): string {
  return pyJsonObject([
    ["mode", { kind: "str", value: record.mode }],
    ["words", { kind: "int", value: record.words }],
    ["alignment_warnings", { kind: "int", value: record.alignment_warnings }],
    ["true_positive", { kind: "int", value: record.true_positive }],
    ["predicted_total", { kind: "int", value: record.predicted_total }],
    ["gold_total", { kind: "int", value: record.gold_total }],
    ["precision", { kind: "float", value: record.precision }],
    ["recall", { kind: "float", value: record.recall }],
    ["f1", { kind: "float", value: record.f1 }],
  ]);
}

export { SegScore };
