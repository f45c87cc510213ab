/**
 * Result view model: ranked score bars, ratio readouts, exclusions and
 * warnings. Ratios are read from the payload's score_ratios field, never
 * recomputed client-side.
 */

import type { EvaluationResult, ExcludedAlternative } from './types';

export interface ResultRow {
  rank: number;
  alternative: string;
  score: number;
  /** Bar length relative to the top score, for rendering only. */
  barFraction: number;
  /** Payload ratio against the runner-up, e.g. "2.0x option_b" (top rows). */
  versusNext: string | null;
}

export interface ResultViewModel {
  outcome: EvaluationResult['outcome'];
  method: string;
  rows: ResultRow[];
  /** "A is 2.0 times better than B" readouts straight from score_ratios. */
  ratioReadouts: string[];
  excluded: ExcludedAlternative[];
  warnings: string[];
}

function ratioText(result: EvaluationResult, a: string, b: string): string | null {
  const ratio = result.score_ratios[`${a}/${b}`];
  if (ratio === undefined) return null;
  return `${a} is ${ratio.toFixed(2)}x ${b}`;
}

export function buildResultViewModel(result: EvaluationResult): ResultViewModel {
  const top = result.ranking[0]?.score ?? 0;
  const rows: ResultRow[] = result.ranking.map((entry, index) => {
    const next = result.ranking[index + 1];
    let versusNext: string | null = null;
    if (next) {
      const ratio = result.score_ratios[`${entry.alternative}/${next.alternative}`];
      versusNext = ratio === undefined ? null : `${ratio.toFixed(2)}x ${next.alternative}`;
    }
    return {
      rank: entry.rank,
      alternative: entry.alternative,
      score: entry.score,
      barFraction: top > 0 ? entry.score / top : 0,
      versusNext,
    };
  });
  const readouts: string[] = [];
  for (const entry of result.ranking) {
    for (const other of result.ranking) {
      if (entry.alternative !== other.alternative && entry.rank < other.rank) {
        const text = ratioText(result, entry.alternative, other.alternative);
        if (text) readouts.push(text);
      }
    }
  }
  return {
    outcome: result.outcome,
    method: result.method,
    rows,
    ratioReadouts: readouts,
    excluded: result.excluded,
    warnings: result.warnings,
  };
}
