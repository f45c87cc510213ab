/**
 * Judgment-grid view model: which pair to ask next, slider state, and the
 * live consistency badge. All numbers come from the service's per-matrix
 * progress payload.
 */

import { EQUAL_POSITION } from './saaty';
import type { MatrixProgress, SessionSnapshot } from './types';

export interface CrBadge {
  /** Consistency ratio exactly as reported, null while the matrix is incomplete. */
  value: number | null;
  acceptable: boolean | null;
  label: string;
}

export interface ElicitationViewModel {
  matrix: string;
  revision: number;
  queue: [string, string][];
  current: [string, string] | null;
  sliderPosition: number;
  required: number;
  given: number;
  crBadge: CrBadge;
  /** Most intransitive node triple, shown as a "review judgments" hint. */
  reviewHint: string[] | null;
}

export function crBadge(progress: MatrixProgress): CrBadge {
  const report = progress.consistency;
  if (!report) {
    return { value: null, acceptable: null, label: 'CR pending' };
  }
  return {
    value: report.cr,
    acceptable: report.acceptable,
    label: `CR ${report.cr.toFixed(2)}`,
  };
}

export function buildElicitationViewModel(
  snapshot: SessionSnapshot,
  matrix: string,
): ElicitationViewModel {
  const progress = snapshot.elicitation[matrix];
  if (!progress) {
    throw new Error(`no judgment matrix '${matrix}' in this session`);
  }
  const queue = progress.missing_pairs;
  const badge = crBadge(progress);
  return {
    matrix,
    revision: snapshot.revision,
    queue,
    current: queue[0] ?? null,
    sliderPosition: EQUAL_POSITION,
    required: progress.required,
    given: progress.given,
    crBadge: badge,
    reviewHint: badge.acceptable === false ? progress.worst_triad : null,
  };
}

export type ConflictResolution = 'refresh-and-replay';

/**
 * A 409 means another tab moved the session forward. The non-destructive
 * answer is always the same: re-fetch the snapshot and replay the pending
 * slider value against the fresh revision.
 */
export function onRevisionConflict(): ConflictResolution {
  return 'refresh-and-replay';
}
