import { describe, expect, test } from 'vitest';

import { buildElicitationViewModel } from '../src/elicitation';
import { buildResultViewModel } from '../src/results';
import {
  elicitationSummary,
  evaluateEnabled,
  freshResult,
  nextComparison,
  staleResult,
  sweepableCriteria,
} from '../src/state';
import type { SessionSnapshot } from '../src/types';
import { loadFixture } from './helpers';

const MATRIX = 'support_quality|alternatives';

describe('page reload reconstructs everything from one GET snapshot', () => {
  test('fresh session: pair queue drives the grid, evaluate stays locked', () => {
    const snapshot = loadFixture<SessionSnapshot>('snapshot_initial.json');
    expect(nextComparison(snapshot)).toEqual({
      matrix: MATRIX,
      pair: snapshot.elicitation[MATRIX]!.missing_pairs[0],
    });
    expect(evaluateEnabled(snapshot)).toBe(false);
    expect(freshResult(snapshot)).toBeNull();
    expect(elicitationSummary(snapshot)).toEqual({ required: 3, given: 0, complete: false });
  });

  test('submitting the final missing pair flips the evaluate button enabled', () => {
    const before = loadFixture<SessionSnapshot>('snapshot_initial.json');
    const after = loadFixture<SessionSnapshot>('snapshot_complete.json');
    expect(evaluateEnabled(before)).toBe(false);
    expect(after.elicitation[MATRIX]!.missing_pairs).toEqual([]);
    expect(evaluateEnabled(after)).toBe(true);
    expect(nextComparison(after)).toBeNull();
  });

  test('snapshot with a result rebuilds grid, results and what-if panel alone', () => {
    const snapshot = loadFixture<SessionSnapshot>('snapshot_with_result.json');
    const grid = buildElicitationViewModel(snapshot, MATRIX);
    expect(grid.queue).toEqual([]);
    expect(grid.crBadge.value).toBe(snapshot.elicitation[MATRIX]!.consistency!.cr);

    const result = freshResult(snapshot);
    expect(result).not.toBeNull();
    const view = buildResultViewModel(result!);
    expect(view.rows.map((row) => row.alternative)).toEqual(
      result!.ranking.map((entry) => entry.alternative),
    );
    expect(sweepableCriteria(snapshot).length).toBeGreaterThan(1);
  });

  test('results from an older revision are flagged stale, not shown as current', () => {
    const snapshot = loadFixture<SessionSnapshot>('snapshot_with_result.json');
    const moved = { ...snapshot, revision: snapshot.revision + 1 };
    expect(freshResult(moved)).toBeNull();
    expect(staleResult(moved)).toEqual(snapshot.result!.body);
  });

  test('all state used by the views is server-side state', () => {
    // the snapshot alone feeds every view-model constructor used by the app
    const snapshot = loadFixture<SessionSnapshot>('snapshot_with_result.json');
    expect(snapshot.session_id).toBeTruthy();
    expect(snapshot.scenario.alternatives.length).toBeGreaterThanOrEqual(2);
    expect(Object.keys(snapshot.elicitation)).toContain(MATRIX);
    expect(snapshot.result!.revision).toBe(snapshot.revision);
  });
});
