/**
 * Session state derived purely from a GET snapshot.
 *
 * Everything needed to resume lives server-side: a full page reload calls
 * GET /v1/sessions/{id} and rebuilds every view from the snapshot alone.
 */

import type { MatrixProgress, SessionSnapshot } from './types';

export interface PendingComparison {
  matrix: string;
  pair: [string, string];
}

export interface ElicitationSummary {
  required: number;
  given: number;
  complete: boolean;
}

export function nextComparison(snapshot: SessionSnapshot): PendingComparison | null {
  for (const matrix of Object.keys(snapshot.elicitation).sort()) {
    const progress = snapshot.elicitation[matrix]!;
    const pair = progress.missing_pairs[0];
    if (pair) {
      return { matrix, pair };
    }
  }
  return null;
}

export function elicitationSummary(snapshot: SessionSnapshot): ElicitationSummary {
  let required = 0;
  let given = 0;
  for (const progress of Object.values(snapshot.elicitation)) {
    required += progress.required;
    given += progress.given;
  }
  return { required, given, complete: required === given };
}

/** The evaluate button only unlocks once every pair has a judgment. */
export function evaluateEnabled(snapshot: SessionSnapshot): boolean {
  return elicitationSummary(snapshot).complete;
}

export function matrixProgress(snapshot: SessionSnapshot, matrix: string): MatrixProgress | null {
  return snapshot.elicitation[matrix] ?? null;
}

/** Result attached to the snapshot, if it is still current for this revision. */
export function freshResult(snapshot: SessionSnapshot) {
  if (snapshot.result && snapshot.result.revision === snapshot.revision) {
    return snapshot.result.body;
  }
  return null;
}

export function staleResult(snapshot: SessionSnapshot) {
  if (snapshot.result && snapshot.result.revision !== snapshot.revision) {
    return snapshot.result.body;
  }
  return null;
}

/** Criteria whose weights a what-if slider can sweep (flat scenarios). */
export function sweepableCriteria(snapshot: SessionSnapshot): string[] {
  if (snapshot.scenario.network) {
    return [];
  }
  const weights = snapshot.scenario.method?.criteria_weights ?? {};
  const ids = Object.keys(weights).sort();
  return ids.length > 1 ? ids : [];
}
