/** Vocabulary assembly from positional subword counts. */

import { isPunctuation, normalize, pretokenize, TokenizerConfig } from "./tokenizer.js";
import {
  DEFAULT_CONTINUATION_PREFIX,
  DEFAULT_SPECIAL_TOKENS,
  DEFAULT_UNKNOWN_TOKEN,
  Vocabulary,
} from "./vocab.js";
import { SurfaceSegmentation, segments } from "./align.js";

export type SubwordCounts = Map<string, number>;

/** Count the words of normalized, pre-tokenized phrases. */
export function extractUniqueWords(
  phrases: Iterable<string>,
  cfg: TokenizerConfig = {},
): Map<string, number> {
  const counts = new Map<string, number>();
  for (const phrase of phrases) {
    for (const word of pretokenize(normalize(phrase, cfg))) {
      if ([...word].every((ch) => isPunctuation(ch))) {
        continue;
      }
      counts.set(word, (counts.get(word) ?? 0) + 1);
    }
  }
  return counts;
}

/** Segment each unique word once and accumulate positional subwords. */
export function countSubwords(
  segment: (word: string) => SurfaceSegmentation,
  words: ReadonlyMap<string, number>,
  weightByCount = false,
  continuationPrefix: string = DEFAULT_CONTINUATION_PREFIX,
): SubwordCounts {
  if (words.size === 0) {
    throw new RangeError("empty word mapping");
  }
  const counts: SubwordCounts = new Map();
  for (const [word, wordCount] of words) {
    let segmentation: SurfaceSegmentation;
    try {
      segmentation = segment(word);
    } catch {
      continue; // unsegmentable word, mirror the native skip-and-warn behavior
    }
    const increment = weightByCount ? wordCount : 1;
    segments(segmentation).forEach((part, index) => {
      const key = index === 0 ? part : continuationPrefix + part;
      counts.set(key, (counts.get(key) ?? 0) + increment);
    });
  }
  return counts;
}

export interface AssembleOptions {
  specialTokens?: readonly string[];
  continuationPrefix?: string;
  unknownToken?: string;
}

/** Filter subwords by count and merge them into a vocabulary.
 *
 * Base tokens keep their ids; new subwords follow ordered by descending
 * count, then lexicographically by code point.
 */
export function assembleVocab(
  subwords: SubwordCounts,
  minCount = 2,
  base: Vocabulary | null = null,
  options: AssembleOptions = {},
): Vocabulary {
  if (minCount < 1) {
    throw new RangeError(`minCount must be >= 1, got ${minCount}`);
  }
  const kept = [...subwords.entries()]
    .filter(([, count]) => count >= minCount)
    .sort(([a, ca], [b, cb]) => cb - ca || compareCodePoints(a, b))
    .map(([subword]) => subword);

  let leading: string[];
  let specials: readonly string[];
  let continuationPrefix: string;
  let unknownToken: string;
  if (base !== null) {
    leading = [...base.tokens];
    specials = [...base.specialTokens];
    continuationPrefix = base.continuationPrefix;
    unknownToken = base.unknownToken;
  } else {
    unknownToken = options.unknownToken ?? DEFAULT_UNKNOWN_TOKEN;
    const specialsList = [...(options.specialTokens ?? DEFAULT_SPECIAL_TOKENS)];
    if (!specialsList.includes(unknownToken)) {
      specialsList.unshift(unknownToken);
    }
    leading = specialsList;
    specials = specialsList;
    continuationPrefix = options.continuationPrefix ?? DEFAULT_CONTINUATION_PREFIX;
  }
  const present = new Set(leading);
  const tokens = [...leading, ...kept.filter((s) => !present.has(s))];
  return new Vocabulary(tokens, {
    continuationPrefix,
    specialTokens: specials,
    unknownToken,
  });
}

/** Compare by Unicode code point, matching the reference ordering. */
export function compareCodePoints(a: string, b: string): number {
  const as = [...a];
  const bs = [...b];
  const n = Math.min(as.length, bs.length);
  for (let i = 0; i < n; i++) {
    const diff = as[i].codePointAt(0)! - bs[i].codePointAt(0)!;
    if (diff !== 0) {
      return diff;
    }
  }
  return as.length - bs.length;
}
