/**
 * Session state and its pure transitions.
 *
 * Pending what-if actions are keyed by node and decision signature, so they
 * survive switching nodes and selecting other decisions; they never touch
 * the loaded model until the user commits with an explicit PUT.
 */

import type { FrontierDoc, ModelDoc, WhatIfDoc } from './api';
import { decisionKey } from './format';

export interface SessionState {
  model: ModelDoc | null;
  selectedNode: string | null;
  selectedDecision: number | null;
  /** decisionKey -> toggled action specs, in toggle order */
  pendingActions: Record<string, string[]>;
  solves: Record<string, FrontierDoc>;
  lastWhatIf: WhatIfDoc | null;
  offline: boolean;
}

export function initialState(): SessionState {
  return {
    model: null,
    selectedNode: null,
    selectedDecision: null,
    pendingActions: {},
    solves: {},
    lastWhatIf: null,
    offline: false,
  };
}

export function modelLoaded(state: SessionState, model: ModelDoc): SessionState {
  // A fresh model invalidates cached solves but keeps hypothetical action
  // toggles: they are explicitly uncommitted exploration state.
  return { ...state, model, solves: {}, lastWhatIf: null, offline: false };
}

export function wentOffline(state: SessionState): SessionState {
  return { ...state, offline: true };
}

export function solveArrived(state: SessionState, frontier: FrontierDoc): SessionState {
  return { ...state, solves: { ...state.solves, [frontier.node]: frontier } };
}

export function nodeSelected(state: SessionState, node: string): SessionState {
  return { ...state, selectedNode: node, selectedDecision: null, lastWhatIf: null };
}

export function decisionSelected(state: SessionState, index: number): SessionState {
  return { ...state, selectedDecision: index, lastWhatIf: null };
}

export function whatIfArrived(state: SessionState, report: WhatIfDoc): SessionState {
  return { ...state, lastWhatIf: report };
}

/** The selected decision's pending-action key, or null without a selection. */
export function selectionKey(state: SessionState): string | null {
  if (state.selectedNode === null || state.selectedDecision === null) return null;
  const frontier = state.solves[state.selectedNode];
  const decision = frontier?.decisions[state.selectedDecision];
  if (!decision) return null;
  return decisionKey(state.selectedNode, decision);
}

export function pendingFor(state: SessionState, key: string | null): string[] {
  return key === null ? [] : (state.pendingActions[key] ?? []);
}

export function actionToggled(state: SessionState, key: string, spec: string): SessionState {
  const current = state.pendingActions[key] ?? [];
  const next = current.includes(spec)
    ? current.filter((s) => s !== spec)
    : [...current, spec];
  return {
    ...state,
    pendingActions: { ...state.pendingActions, [key]: next },
    lastWhatIf: null,
  };
}

export function actionsCleared(state: SessionState, key: string): SessionState {
  const pending = { ...state.pendingActions };
  delete pending[key];
  return { ...state, pendingActions: pending, lastWhatIf: null };
}

/** True when any decision anywhere carries uncommitted toggles. */
export function hasHypotheticalState(state: SessionState): boolean {
  return Object.values(state.pendingActions).some((specs) => specs.length > 0);
}
