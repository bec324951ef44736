/** Normalization, pre-tokenization, and greedy longest-match decoding.
 *
 * Behavior matches the native library exactly: same cleanup rules, same
 * whole-word unknown fallback, and cursor arithmetic over Unicode code
 * points (never UTF-16 code units), so astral and Greek characters are
 * handled identically.
 */

import { Vocabulary, DEFAULT_UNKNOWN_TOKEN } from "./vocab.js";

export interface TokenizerConfig {
  lowercase?: boolean;
  /** undefined/null: follow `lowercase` */
  stripAccents?: boolean | null;
  maxWordChars?: number;
  unknownToken?: string;
}

interface ResolvedConfig {
  lowercase: boolean;
  stripAccents: boolean;
  maxWordChars: number;
  unknownToken: string;
}

export function resolveConfig(cfg: TokenizerConfig = {}): ResolvedConfig {
  const lowercase = cfg.lowercase ?? true;
  const maxWordChars = cfg.maxWordChars ?? 100;
  if (maxWordChars < 1) {
    throw new RangeError(`maxWordChars must be >= 1, got ${maxWordChars}`);
  }
  return {
    lowercase,
    stripAccents: cfg.stripAccents ?? lowercase,
    maxWordChars,
    unknownToken: cfg.unknownToken ?? DEFAULT_UNKNOWN_TOKEN,
  };
}

const CONTROL = /\p{C}/u;
const ZS_SPACE = /\p{Zs}/u;
const UNICODE_PUNCT = /\p{P}/u;
const COMBINING_MARK = /\p{Mn}/gu;

function isWhitespaceChar(char: string): boolean {
  return char === " " || char === "\t" || char === "\n" || char === "\r" || ZS_SPACE.test(char);
}

function isControlChar(char: string): boolean {
  if (char === "\t" || char === "\n" || char === "\r") {
    return false;
  }
  return CONTROL.test(char);
}

export function isPunctuation(char: string): boolean {
  const cp = char.codePointAt(0)!;
  if ((cp >= 33 && cp <= 47) || (cp >= 58 && cp <= 64) || (cp >= 91 && cp <= 96) || (cp >= 123 && cp <= 126)) {
    return true;
  }
  return UNICODE_PUNCT.test(char);
}

/** Remove control characters, canonicalize whitespace, fold case and accents. */
export function normalize(text: string, cfg: TokenizerConfig = {}): string {
  const resolved = resolveConfig(cfg);
  const kept: string[] = [];
  for (const char of text) {
    const cp = char.codePointAt(0)!;
    if (cp === 0 || cp === 0xfffd || isControlChar(char)) {
      continue;
    }
    kept.push(isWhitespaceChar(char) ? " " : char);
  }
  let result = kept.join("");
  if (resolved.lowercase) {
    result = result.toLowerCase();
  }
  if (resolved.stripAccents) {
    result = result.normalize("NFD").replace(COMBINING_MARK, "");
  }
  return result.split(/\s+/u).filter((w) => w !== "").join(" ");
}

/** Split normalized text on whitespace and isolate punctuation characters. */
export function pretokenize(text: string): string[] {
  const words: string[] = [];
  for (const chunk of text.split(/\s+/u)) {
    if (chunk === "") {
      continue;
    }
    let run: string[] = [];
    for (const char of chunk) {
      if (isPunctuation(char)) {
        if (run.length > 0) {
          words.push(run.join(""));
          run = [];
        }
        words.push(char);
      } else {
        run.push(char);
      }
    }
    if (run.length > 0) {
      words.push(run.join(""));
    }
  }
  return words;
}

/** Greedy left-to-right longest-match decoding of one whitespace-free word. */
export function wordpieceTokenize(word: string, vocab: Vocabulary, cfg: TokenizerConfig = {}): string[] {
  const resolved = resolveConfig(cfg);
  if (word === "") {
    throw new RangeError("empty word");
  }
  if (/\s/u.test(word)) {
    throw new RangeError(`word ${JSON.stringify(word)} contains whitespace`);
  }
  const chars = [...word]; // code points
  if (chars.length > resolved.maxWordChars) {
    return [resolved.unknownToken];
  }
  const prefix = vocab.continuationPrefix;
  const tokens: string[] = [];
  let start = 0;
  while (start < chars.length) {
    let end = chars.length;
    let match: string | null = null;
    while (start < end) {
      let candidate = chars.slice(start, end).join("");
      if (start > 0) {
        candidate = prefix + candidate;
      }
      if (vocab.has(candidate)) {
        match = candidate;
        break;
      }
      end -= 1;
    }
    if (match === null) {
      return [resolved.unknownToken];
    }
    tokens.push(match);
    start = end;
  }
  return tokens;
}

/** normalize -> pretokenize -> wordpiece over each word, concatenated. */
export function tokenizeText(text: string, vocab: Vocabulary, cfg: TokenizerConfig = {}): string[] {
  const tokens: string[] = [];
  for (const word of pretokenize(normalize(text, cfg))) {
    tokens.push(...wordpieceTokenize(word, vocab, cfg));
  }
  return tokens;
}

/** Concatenate tokens with continuation prefixes stripped. */
export function detokenize(tokens: readonly string[], vocab: Vocabulary): string {
  const prefix = vocab.continuationPrefix;
  const parts: string[] = [];
  for (const token of tokens) {
    if (token === vocab.unknownToken) {
      throw new RangeError("lossy sequence: unknown token cannot be detokenized");
    }
    parts.push(token.startsWith(prefix) ? token.slice(prefix.length) : token);
  }
  return parts.join("");
}
