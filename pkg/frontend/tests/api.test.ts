import { describe, expect, test } from 'vitest';

import { DecisionApi } from '../src/api';
import type { EvaluationResult, SessionSnapshot } from '../src/types';
import { jsonResponse, loadFixture } from './helpers';

describe('api client', () => {
  test('getSession returns the snapshot payload unchanged', async () => {
    const recorded = loadFixture<SessionSnapshot>('snapshot_complete.json');
    const api = new DecisionApi('http://svc', async (url) => {
      expect(url).toBe(`http://svc/v1/sessions/${recorded.session_id}`);
      return jsonResponse(200, recorded);
    });
    expect(await api.getSession(recorded.session_id)).toEqual(recorded);
  });

  test('evaluate happy path hands back the result body', async () => {
    const recorded = loadFixture<EvaluationResult>('evaluate_result.json');
    const api = new DecisionApi('', async () => jsonResponse(200, recorded));
    const outcome = await api.evaluate('s');
    expect(outcome.kind).toBe('ok');
    if (outcome.kind === 'ok') {
      expect(outcome.body).toEqual(recorded);
    }
  });

  test('incomplete judgments surface the exact missing pairs', async () => {
    const api = new DecisionApi('', async () =>
      jsonResponse(422, loadFixture('evaluate_422.json')),
    );
    const outcome = await api.evaluate('s');
    expect(outcome.kind).toBe('incomplete');
    if (outcome.kind === 'incomplete') {
      expect(outcome.matrix).toBe('support_quality|alternatives');
      expect(outcome.missingPairs).toEqual([['hybrid_colo', 'on_premise']]);
    }
  });

  test('health degrades to false on network failure', async () => {
    const api = new DecisionApi('', async () => {
      throw new Error('connection refused');
    });
    expect(await api.health()).toBe(false);
  });

  test('sensitivity returns the sweep payload', async () => {
    const recorded = loadFixture('sweep_crossing.json');
    const api = new DecisionApi('', async (_url, init) => {
      expect(JSON.parse(String(init?.body))).toEqual({ criterion_id: 'throughput', steps: 5 });
      return jsonResponse(200, recorded);
    });
    expect(await api.sensitivity('s', 'throughput', 5)).toEqual(recorded);
  });
});
