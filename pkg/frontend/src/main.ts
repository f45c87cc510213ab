/**
 * App bootstrap: wires the wizard, judgment grid, results and what-if
 * panel to the service. Session id lives in the URL hash so a reload
 * reconstructs everything from GET endpoints.
 */

import { DecisionApi } from './api';
import { buildElicitationViewModel } from './elicitation';
import { buildResultViewModel } from './results';
import { buildSweepChart, rankingAtWeight } from './sensitivity';
import { ratioForPosition } from './saaty';
import {
  elicitationSummary,
  evaluateEnabled,
  freshResult,
  nextComparison,
  sweepableCriteria,
} from './state';
import { clear, el, renderJudgmentGrid, renderResults, renderSweepChart } from './render';
import type { SessionSnapshot } from './types';

const api = new DecisionApi(
  (window as unknown as { MC4D_SERVICE_URL?: string }).MC4D_SERVICE_URL ?? '',
);

function sessionIdFromHash(): string | null {
  const match = window.location.hash.match(/^#\/session\/([a-z0-9_-]+)/);
  return match ? match[1]! : null;
}

async function refresh(root: HTMLElement): Promise<void> {
  const sessionId = sessionIdFromHash();
  clear(root);
  if (!sessionId) {
    root.append(
      el('p', {}, [
        'Open a session with #/session/<id>, or create one by POSTing a scenario ',
        'document to /v1/sessions (see the wizard module for building documents).',
      ]),
    );
    return;
  }
  let snapshot: SessionSnapshot;
  try {
    snapshot = await api.getSession(sessionId);
  } catch (error) {
    const retry = el('button', {}, ['Retry']);
    retry.addEventListener('click', () => void refresh(root));
    root.append(el('p', { class: 'error' }, [String(error)]), retry);
    return;
  }
  root.append(el('h1', {}, [snapshot.scenario.title]));

  const summary = elicitationSummary(snapshot);
  const pending = nextComparison(snapshot);
  if (pending) {
    const model = buildElicitationViewModel(snapshot, pending.matrix);
    root.append(
      renderJudgmentGrid(model, (position) => {
        void submitJudgment(root, snapshot, pending.matrix, position);
      }),
    );
  } else if (summary.required > 0) {
    root.append(el('p', { class: 'done' }, ['All judgments recorded.']));
  }

  const evaluateButton = el('button', { class: 'evaluate' }, ['Evaluate']);
  if (!evaluateEnabled(snapshot)) {
    evaluateButton.setAttribute('disabled', 'disabled');
  }
  evaluateButton.addEventListener('click', () => void evaluateNow(root, snapshot));
  root.append(evaluateButton);

  const result = freshResult(snapshot);
  if (result) {
    root.append(renderResults(buildResultViewModel(result)));
    renderSweepPanel(root, snapshot);
  }
}

async function submitJudgment(
  root: HTMLElement,
  snapshot: SessionSnapshot,
  matrix: string,
  position: number,
): Promise<void> {
  const model = buildElicitationViewModel(snapshot, matrix);
  if (!model.current) return;
  const [i, j] = model.current;
  const outcome = await api.submitJudgment(snapshot.session_id, {
    matrix,
    i,
    j,
    ratio: ratioForPosition(position),
    expected_revision: snapshot.revision,
  });
  if (outcome.kind === 'conflict') {
    // another tab advanced the session; reload and let the user re-judge
    window.alert('This session changed elsewhere; refreshing to the latest judgments.');
  }
  await refresh(root);
}

async function evaluateNow(root: HTMLElement, snapshot: SessionSnapshot): Promise<void> {
  await api.evaluate(snapshot.session_id);
  await refresh(root);
}

function renderSweepPanel(root: HTMLElement, snapshot: SessionSnapshot): void {
  const criteria = sweepableCriteria(snapshot);
  if (!criteria.length) return;
  const panel = el('section', { class: 'sensitivity' }, [el('h2', {}, ['What if?'])]);
  const picker = el('select', {});
  for (const criterion of criteria) {
    picker.append(el('option', { value: criterion }, [criterion]));
  }
  const chartHost = el('div', { class: 'chart-host' });
  const run = el('button', {}, ['Sweep weight']);
  run.addEventListener('click', () => {
    void (async () => {
      const sweep = await api.sensitivity(snapshot.session_id, picker.value, 11);
      clear(chartHost);
      const chart = buildSweepChart(sweep);
      chartHost.append(renderSweepChart(chart));
      const slider = el('input', {
        type: 'range',
        min: '0',
        max: String(sweep.samples.length - 1),
        step: '1',
        value: String(chart.baselineIndex ?? 0),
      });
      const readout = el('p', { class: 'sweep-readout' });
      const update = () => {
        const sample = sweep.samples[Number(slider.value)]!;
        const ranking = rankingAtWeight(sweep, sample.weight);
        readout.textContent = ranking
          ? `w=${sample.weight.toFixed(3)}: ` +
            ranking.map((entry) => `${entry.rank}. ${entry.alternative}`).join('  ')
          : '';
      };
      slider.addEventListener('input', update);
      update();
      chartHost.append(slider, readout);
    })();
  });
  panel.append(picker, run, chartHost);
  root.append(panel);
}

const host = document.getElementById('app');
if (host) {
  window.addEventListener('hashchange', () => void refresh(host));
  void refresh(host);
}
