/** Ordered subword token inventory and the one-token-per-line text format. */

export const DEFAULT_SPECIAL_TOKENS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"] as const;
export const DEFAULT_UNKNOWN_TOKEN = "[UNK]";
export const DEFAULT_CONTINUATION_PREFIX = "##";

export class FormatError extends Error {
  readonly line?: number;

  constructor(message: string, line?: number) {
    super(line !== undefined ? `line ${line}: ${message}` : message);
    this.name = "FormatError";
    this.line = line;
  }
}

export class VocabularyError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "VocabularyError";
  }
}

export interface VocabularyOptions {
  continuationPrefix?: string;
  specialTokens?: Iterable<string>;
  unknownToken?: string;
}

/** Immutable token inventory; the index in `tokens` is the token id. */
export class Vocabulary {
  readonly tokens: readonly string[];
  readonly tokenToId: ReadonlyMap<string, number>;
  readonly continuationPrefix: string;
  readonly specialTokens: ReadonlySet<string>;
  readonly unknownToken: string;

  constructor(tokens: readonly string[], options: VocabularyOptions = {}) {
    if (tokens.length === 0) {
      throw new VocabularyError("empty vocabulary");
    }
    this.continuationPrefix = options.continuationPrefix ?? DEFAULT_CONTINUATION_PREFIX;
    this.unknownToken = options.unknownToken ?? DEFAULT_UNKNOWN_TOKEN;
    const requestedSpecials = new Set(options.specialTokens ?? DEFAULT_SPECIAL_TOKENS);
    const mapping = new Map<string, number>();
    const present = new Set(tokens);
    const specials = new Set([...requestedSpecials].filter((t) => present.has(t)));
    tokens.forEach((token, id) => {
      if (token === "") {
        throw new VocabularyError(`empty token at id ${id}`);
      }
      if (mapping.has(token)) {
        throw new VocabularyError(`duplicate token ${JSON.stringify(token)} at id ${id}`);
      }
      if (!specials.has(token) && /\s/u.test(token)) {
        throw new VocabularyError(`token ${JSON.stringify(token)} at id ${id} contains whitespace`);
      }
      mapping.set(token, id);
    });
    if (!mapping.has(this.unknownToken)) {
      throw new VocabularyError(`unknown token ${this.unknownToken} is not in the vocabulary`);
    }
    this.tokens = [...tokens];
    this.tokenToId = mapping;
    this.specialTokens = specials;
  }

  get size(): number {
    return this.tokens.length;
  }

  has(token: string): boolean {
    return this.tokenToId.has(token);
  }
}

/** Parse vocab.txt content (one token per line, line number = id). */
export function loadVocabText(text: string, options: VocabularyOptions = {}): Vocabulary {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop(); // trailing newline
  }
  const tokens: string[] = [];
  const seen = new Map<string, number>();
  lines.forEach((raw, index) => {
    const token = raw.endsWith("\r") ? raw.slice(0, -1) : raw;
    const lineno = index + 1;
    if (token === "") {
      throw new FormatError("empty line", lineno);
    }
    const first = seen.get(token);
    if (first !== undefined) {
      throw new FormatError(`duplicate token ${JSON.stringify(token)} (first seen on line ${first})`, lineno);
    }
    seen.set(token, lineno);
    tokens.push(token);
  });
  if (tokens.length === 0) {
    throw new FormatError("empty vocabulary file");
  }
  return new Vocabulary(tokens, options);
}

/** Render a vocabulary back to vocab.txt content. */
export function saveVocabText(vocab: Vocabulary): string {
  return vocab.tokens.join("\n") + "\n";
}
