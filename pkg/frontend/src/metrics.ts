/** Segmentation scoring: multiset-intersection true positives, micro/macro F1. */

import {
  MorphemeAnnotation,
  SurfaceSegmentation,
  alignMorphemes,
  segments,
} from "./align.js";

export interface SegScore {
  truePositive: number;
  predictedTotal: number;
  goldTotal: number;
  precision: number;
  recall: number;
  f1: number;
}

export function scoreFromCounts(tp: number, predN: number, goldN: number): SegScore {
  const precision = predN ? tp / predN : 0.0;
  const recall = goldN ? tp / goldN : 0.0;
  const f1 = precision + recall ? (2 * precision * recall) / (precision + recall) : 0.0;
  return { truePositive: tp, predictedTotal: predN, goldTotal: goldN, precision, recall, f1 };
}

export function scoreWord(
  pred: SurfaceSegmentation,
  gold: SurfaceSegmentation,
): [number, number, number] {
  if (pred.surface !== gold.surface) {
    throw new RangeError(`surface mismatch: ${pred.surface} vs ${gold.surface}`);
  }
  const predCounts = new Map<string, number>();
  for (const part of segments(pred)) {
    predCounts.set(part, (predCounts.get(part) ?? 0) + 1);
  }
  let tp = 0;
  const goldParts = segments(gold);
  const remaining = new Map(predCounts);
  for (const part of goldParts) {
    const left = remaining.get(part) ?? 0;
    if (left > 0) {
      tp += 1;
      remaining.set(part, left - 1);
    }
  }
  return [tp, segments(pred).length, goldParts.length];
}

export type AggregationMode = "micro" | "macro";

export function segmentationF1(
  pairs: ReadonlyArray<[SurfaceSegmentation, SurfaceSegmentation]>,
  mode: AggregationMode = "micro",
): SegScore {
  if (pairs.length === 0) {
    throw new RangeError("empty pair list");
  }
  const counts = pairs.map(([pred, gold]) => scoreWord(pred, gold));
  if (mode === "micro") {
    let tp = 0;
    let predN = 0;
    let goldN = 0;
    for (const [t, p, g] of counts) {
      tp += t;
      predN += p;
      goldN += g;
    }
    return scoreFromCounts(tp, predN, goldN);
  }
  const scores = counts.map(([t, p, g]) => scoreFromCounts(t, p, g));
  const n = scores.length;
  return {
    truePositive: 0,
    predictedTotal: 0,
    goldTotal: 0,
    precision: scores.reduce((acc, s) => acc + s.precision, 0) / n,
    recall: scores.reduce((acc, s) => acc + s.recall, 0) / n,
    f1: scores.reduce((acc, s) => acc + s.f1, 0) / n,
  };
}

export interface EvaluationResult {
  score: SegScore;
  words: number;
  alignmentWarnings: number;
}

/** Score a word segmenter against gold annotations (micro or macro). */
export function evaluateSegmenter(
  segment: (word: string) => SurfaceSegmentation,
  annotations: readonly MorphemeAnnotation[],
  mode: AggregationMode = "micro",
): EvaluationResult {
  if (annotations.length === 0) {
    throw new RangeError("no annotations to evaluate");
  }
  let warnings = 0;
  const pairs: Array<[SurfaceSegmentation, SurfaceSegmentation]> = [];
  for (const annotation of annotations) {
    const { segmentation: gold, warnings: w } = alignMorphemes(annotation);
    warnings += w.length;
    pairs.push([segment(annotation.surface), gold]);
  }
  return { score: segmentationF1(pairs, mode), words: annotations.length, alignmentWarnings: warnings };
}
