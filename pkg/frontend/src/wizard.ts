/**
 * Scenario wizard: five screens building one scenario document, with
 * client-side checks that mirror the service's cheapest validations so
 * obvious mistakes surface before submission. The service remains the
 * authority; its 400/422 payloads map back onto wizard fields.
 */

import type {
  AlternativeDoc,
  CriterionDoc,
  MethodDoc,
  RequirementDoc,
  ScenarioDoc,
  ViolationDetail,
} from './types';

export const WIZARD_STEPS = [
  'scenario',
  'alternatives',
  'criteria',
  'requirements',
  'method',
] as const;

export type WizardStep = (typeof WIZARD_STEPS)[number];

export interface WizardState {
  step: WizardStep;
  id: string;
  title: string;
  description: string;
  goals: string[];
  alternatives: AlternativeDoc[];
  criteria: CriterionDoc[];
  requirements: RequirementDoc[];
  method: MethodDoc;
  /** Field errors keyed by wizard location, local or mapped from the service. */
  errors: Record<string, string>;
}

export function emptyWizard(): WizardState {
  return {
    step: 'scenario',
    id: '',
    title: '',
    description: '',
    goals: [],
    alternatives: [],
    criteria: [],
    requirements: [],
    method: { method: 'anp', criteria_weights: {} },
    errors: {},
  };
}

const ID_PATTERN = /^[a-z0-9_-]{1,64}$/;

/** Checks mirrored from the service so a screen can warn before submitting. */
export function localChecks(state: WizardState): Record<string, string> {
  const errors: Record<string, string> = {};
  if (!ID_PATTERN.test(state.id)) {
    errors['scenario.id'] = 'Use 1-64 characters from a-z, 0-9, _ or -.';
  }
  if (!state.title.trim()) {
    errors['scenario.title'] = 'A title is required.';
  }
  if (state.alternatives.length < 2) {
    errors['alternatives'] = 'TOO_FEW_ALTERNATIVES: define at least two alternatives.';
  }
  const seen = new Set<string>();
  for (const alternative of state.alternatives) {
    if (seen.has(alternative.id)) {
      errors[`alternatives.${alternative.id}`] = 'Alternative ids must be unique.';
    }
    seen.add(alternative.id);
  }
  const criterionIds = new Set(state.criteria.map((criterion) => criterion.id));
  for (const requirement of state.requirements) {
    if (!criterionIds.has(requirement.criterion_id)) {
      errors[`requirements.${requirement.criterion_id}`] =
        'DANGLING_REQUIREMENT: this requirement points at no defined criterion.';
    }
  }
  for (const criterion of state.criteria) {
    const weighted = state.method.criteria_weights?.[criterion.id] !== undefined;
    if (!criterion.requirement_only && !weighted) {
      errors[`method.criteria_weights.${criterion.id}`] =
        'Every evaluated criterion needs a weight.';
    }
  }
  return errors;
}

export function stepReady(state: WizardState, step: WizardStep): boolean {
  const errors = localChecks(state);
  const prefixes: Record<WizardStep, string[]> = {
    scenario: ['scenario.'],
    alternatives: ['alternatives'],
    criteria: ['criteria'],
    requirements: ['requirements'],
    method: ['method.'],
  };
  return !Object.keys(errors).some((location) =>
    prefixes[step].some((prefix) => location.startsWith(prefix)),
  );
}

export function buildDocument(state: WizardState): ScenarioDoc {
  const document: ScenarioDoc = {
    schema_version: 1,
    id: state.id,
    title: state.title,
    alternatives: state.alternatives,
    criteria: state.criteria,
    method: state.method,
  };
  if (state.description.trim()) document.description = state.description;
  if (state.goals.length) document.goals = state.goals;
  if (state.requirements.length) document.requirements = state.requirements;
  return document;
}

/** Map the service's 422 violation list back onto wizard field locations. */
export function applyServerViolations(
  state: WizardState,
  violations: ViolationDetail[],
): WizardState {
  const errors: Record<string, string> = { ...state.errors };
  for (const violation of violations) {
    errors[violation.location] = `${violation.code}: ${violation.message}`;
  }
  return { ...state, errors };
}

/** First wizard step that owns a given error location, for navigation. */
export function stepForLocation(location: string): WizardStep {
  if (location.startsWith('alternatives')) return 'alternatives';
  if (location.startsWith('criteria')) return 'criteria';
  if (location.startsWith('requirements')) return 'requirements';
  if (location.startsWith('method')) return 'method';
  return 'scenario';
}
