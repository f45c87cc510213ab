/**
 * What-if chart model: one line per alternative over the sampled weights,
 * reversal markers where the service detected a rank-1 flip, and the
 * baseline sample highlighted. Chart points are payload samples verbatim.
 */

import type { RankingEntry, SensitivitySweep } from './types';

export interface ChartSeries {
  alternative: string;
  points: { weight: number; score: number }[];
}

export interface SweepChartModel {
  criterion: string;
  weights: number[];
  series: ChartSeries[];
  reversalMarkers: number[];
  baselineWeight: number | null;
  /** Index of the sample at the baseline weight, when the grid contains it. */
  baselineIndex: number | null;
  topByWeight: { weight: number; alternative: string }[];
}

export function buildSweepChart(sweep: SensitivitySweep): SweepChartModel {
  const weights = sweep.samples.map((sample) => sample.weight);
  const alternatives = Object.keys(sweep.samples[0]?.scores ?? {}).sort();
  const series = alternatives.map((alternative) => ({
    alternative,
    points: sweep.samples.map((sample) => ({
      weight: sample.weight,
      score: sample.scores[alternative]!,
    })),
  }));
  let baselineIndex: number | null = null;
  if (sweep.baseline_weight !== null) {
    const index = weights.indexOf(sweep.baseline_weight);
    baselineIndex = index >= 0 ? index : null;
  }
  return {
    criterion: sweep.criterion_id,
    weights,
    series,
    reversalMarkers: sweep.reversal_points,
    baselineWeight: sweep.baseline_weight,
    baselineIndex,
    topByWeight: sweep.samples.map((sample) => ({
      weight: sample.weight,
      alternative: sample.ranking[0]!.alternative,
    })),
  };
}

/** Ranking shown when the slider sits on a sampled weight (no interpolation). */
export function rankingAtWeight(sweep: SensitivitySweep, weight: number): RankingEntry[] | null {
  const sample = sweep.samples.find((candidate) => candidate.weight === weight);
  return sample ? sample.ranking : null;
}

/** Snap a slider value to the nearest sampled weight. */
export function nearestSampledWeight(sweep: SensitivitySweep, value: number): number {
  let best = sweep.samples[0]!.weight;
  for (const sample of sweep.samples) {
    if (Math.abs(sample.weight - value) < Math.abs(best - value)) {
      best = sample.weight;
    }
  }
  return best;
}
