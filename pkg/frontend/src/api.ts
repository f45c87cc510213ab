/**
 * Thin typed client for the /v1 decision-service API.
 *
 * The fetch function is injectable so tests can replay recorded payloads.
 */

import type {
  ApiError,
  EvaluationResult,
  JudgmentAccepted,
  ScenarioDoc,
  SensitivitySweep,
  SessionSnapshot,
} from './types';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface JudgmentSubmission {
  matrix: string;
  i: string;
  j: string;
  ratio: number;
  expected_revision: number;
}

export type JudgmentOutcome =
  | { kind: 'accepted'; body: JudgmentAccepted }
  | { kind: 'conflict'; revision: number }
  | { kind: 'rejected'; error: ApiError['error'] };

export type EvaluateOutcome =
  | { kind: 'ok'; body: EvaluationResult }
  | { kind: 'incomplete'; matrix: string; missingPairs: [string, string][] }
  | { kind: 'rejected'; error: ApiError['error'] };

export class DecisionApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, '')}${path}`;
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.fetchFn(this.url('/v1/health'));
      return response.ok;
    } catch {
      return false;
    }
  }

  async createSession(
    document: ScenarioDoc,
  ): Promise<{ kind: 'created'; sessionId: string } | { kind: 'rejected'; error: ApiError['error'] }> {
    const response = await this.fetchFn(this.url('/v1/sessions'), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(document),
    });
    const body = await response.json();
    if (response.status === 201) {
      return { kind: 'created', sessionId: body.session_id };
    }
    return { kind: 'rejected', error: body.error };
  }

  async getSession(sessionId: string): Promise<SessionSnapshot> {
    const response = await this.fetchFn(this.url(`/v1/sessions/${sessionId}`));
    if (!response.ok) {
      throw new Error(`session ${sessionId} unavailable (${response.status})`);
    }
    return (await response.json()) as SessionSnapshot;
  }

  async submitJudgment(sessionId: string, submission: JudgmentSubmission): Promise<JudgmentOutcome> {
    const response = await this.fetchFn(this.url(`/v1/sessions/${sessionId}/judgments`), {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(submission),
    });
    const body = await response.json();
    if (response.status === 200) {
      return { kind: 'accepted', body: body as JudgmentAccepted };
    }
    if (response.status === 409) {
      return { kind: 'conflict', revision: body.error.revision as number };
    }
    return { kind: 'rejected', error: body.error };
  }

  async evaluate(sessionId: string): Promise<EvaluateOutcome> {
    const response = await this.fetchFn(this.url(`/v1/sessions/${sessionId}/evaluate`), {
      method: 'POST',
    });
    const body = await response.json();
    if (response.status === 200) {
      return { kind: 'ok', body: body as EvaluationResult };
    }
    if (response.status === 422 && body.error?.code === 'INCOMPLETE_JUDGMENTS') {
      return {
        kind: 'incomplete',
        matrix: body.error.matrix as string,
        missingPairs: body.error.missing_pairs as [string, string][],
      };
    }
    return { kind: 'rejected', error: body.error };
  }

  async sensitivity(sessionId: string, criterionId: string, steps: number): Promise<SensitivitySweep> {
    const response = await this.fetchFn(this.url(`/v1/sessions/${sessionId}/sensitivity`), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ criterion_id: criterionId, steps }),
    });
    if (!response.ok) {
      const body = await response.json();
      throw new Error(`sweep failed: ${body.error?.code ?? response.status}`);
    }
    return (await response.json()) as SensitivitySweep;
  }
}
