/** Mapping gold morpheme lists onto surface character spans.
 *
 * Same algorithm as the native library: unit-cost edit-distance DP between
 * the surface and the morpheme concatenation, traced back with the
 * preference match > substitution > deletion > insertion; unaligned surface
 * characters attach to the preceding span (following when word-initial).
 */

import { FormatError } from "./vocab.js";

export interface MorphemeAnnotation {
  surface: string;
  morphemes: readonly string[];
  wordClass?: string;
}

export interface SurfaceSegmentation {
  surface: string;
  /** contiguous [start, end) code-point spans covering the whole word */
  spans: ReadonlyArray<readonly [number, number]>;
}

export class AlignmentError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "AlignmentError";
  }
}

export function segments(seg: SurfaceSegmentation): string[] {
  const chars = [...seg.surface];
  return seg.spans.map(([start, end]) => chars.slice(start, end).join(""));
}

export function segmentationFromSegments(parts: readonly string[]): SurfaceSegmentation {
  const spans: Array<[number, number]> = [];
  let cursor = 0;
  for (const part of parts) {
    const length = [...part].length;
    spans.push([cursor, cursor + length]);
    cursor += length;
  }
  return { surface: parts.join(""), spans };
}

export function alignMorphemes(
  annotation: MorphemeAnnotation,
): { segmentation: SurfaceSegmentation; warnings: string[] } {
  const surface = [...annotation.surface];
  if (surface.length === 0) {
    throw new AlignmentError("empty surface word");
  }
  if (annotation.morphemes.length === 0 || annotation.morphemes.some((m) => m === "")) {
    throw new AlignmentError(`invalid morphemes for ${annotation.surface}`);
  }
  const concat = [...annotation.morphemes.join("")];
  const morphOf: number[] = [];
  annotation.morphemes.forEach((morpheme, index) => {
    for (const _ of morpheme) {
      morphOf.push(index);
    }
  });

  const n = surface.length;
  const m = concat.length;
  const dist: number[][] = Array.from({ length: n + 1 }, () => new Array<number>(m + 1).fill(0));
  for (let i = 1; i <= n; i++) dist[i][0] = i;
  for (let j = 1; j <= m; j++) dist[0][j] = j;
  for (let i = 1; i <= n; i++) {
    for (let j = 1; j <= m; j++) {
      const cost = surface[i - 1] === concat[j - 1] ? 0 : 1;
      dist[i][j] = Math.min(dist[i - 1][j - 1] + cost, dist[i][j - 1] + 1, dist[i - 1][j] + 1);
    }
  }

  const owner: Array<number | null> = new Array(n).fill(null);
  let i = n;
  let j = m;
  while (i > 0 || j > 0) {
    const here = dist[i][j];
    if (i > 0 && j > 0 && surface[i - 1] === concat[j - 1] && here === dist[i - 1][j - 1]) {
      owner[i - 1] = morphOf[j - 1];
      i -= 1;
      j -= 1;
    } else if (i > 0 && j > 0 && here === dist[i - 1][j - 1] + 1) {
      owner[i - 1] = morphOf[j - 1];
      i -= 1;
      j -= 1;
    } else if (j > 0 && here === dist[i][j - 1] + 1) {
      j -= 1; // concatenation character unrealized in the surface
    } else {
      i -= 1; // inserted surface character
    }
  }

  let last: number | null = null;
  for (let k = 0; k < n; k++) {
    if (owner[k] === null) {
      owner[k] = last;
    } else {
      last = owner[k];
    }
  }
  let follow: number | null = null;
  for (let k = n - 1; k >= 0; k--) {
    if (owner[k] === null) {
      owner[k] = follow;
    } else {
      follow = owner[k];
    }
  }

  const spans: Array<[number, number]> = [];
  const kept: number[] = [];
  let start = 0;
  for (let k = 1; k <= n; k++) {
    if (k === n || owner[k] !== owner[k - 1]) {
      spans.push([start, k]);
      kept.push(owner[start] as number);
      start = k;
    }
  }
  if (spans.length === 0) {
    throw new AlignmentError(`no morpheme aligns to ${annotation.surface}`);
  }
  const keptSet = new Set(kept);
  const warnings: string[] = [];
  annotation.morphemes.forEach((morpheme, index) => {
    if (!keptSet.has(index)) {
      warnings.push(`${annotation.surface}: morpheme ${index} (${morpheme}) received no characters and was dropped`);
    }
  });
  return { segmentation: { surface: annotation.surface, spans }, warnings };
}

export function segmentationToTags(seg: SurfaceSegmentation): string {
  const tags = new Array<string>([...seg.surface].length).fill("I");
  for (const [start] of seg.spans) {
    tags[start] = "B";
  }
  return tags.join("");
}

export const DEFAULT_MORPHEME_SEPARATOR = "@@";

/** Parse shared-task TSV rows: surface TAB morphemes (TAB class). */
export function loadSigmorphonText(
  text: string,
  separator: string = DEFAULT_MORPHEME_SEPARATOR,
): MorphemeAnnotation[] {
  const annotations: MorphemeAnnotation[] = [];
  const lines = text.split("\n");
  lines.forEach((raw, index) => {
    const line = raw.endsWith("\r") ? raw.slice(0, -1) : raw;
    if (line.trim() === "") {
      return;
    }
    const lineno = index + 1;
    const columns = line.split("\t");
    if (columns.length < 2) {
      throw new FormatError("expected at least 2 tab-separated columns", lineno);
    }
    const morphemes = columns[1].split(separator).map((part) => part.trim());
    if (columns[0] === "" || morphemes.length === 0 || morphemes.some((p) => p === "")) {
      throw new FormatError(`invalid annotation for ${JSON.stringify(columns[0])}`, lineno);
    }
    annotations.push({
      surface: columns[0],
      morphemes,
      wordClass: columns.length > 2 && columns[2] !== "" ? columns[2] : undefined,
    });
  });
  return annotations;
}
