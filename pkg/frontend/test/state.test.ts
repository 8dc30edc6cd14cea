import { describe, expect, it } from 'vitest';

import type { FrontierDoc, ModelDoc } from '../src/api';
import {
  actionToggled,
  actionsCleared,
  decisionSelected,
  hasHypotheticalState,
  initialState,
  modelLoaded,
  nodeSelected,
  pendingFor,
  selectionKey,
  solveArrived,
} from '../src/state';
import { fixture } from './helpers';

const model = fixture<ModelDoc>('model.json');
const frontierE = fixture<FrontierDoc>('solve_E.json');

function withSelection() {
  let state = modelLoaded(initialState(), model);
  state = nodeSelected(state, 'E');
  state = solveArrived(state, frontierE);
  state = decisionSelected(state, 3);
  return state;
}

describe('session state', () => {
  it('keys pending actions by node and decision signature', () => {
    const state = withSelection();
    expect(selectionKey(state)).toBe('E#J1*K2*L3');
  });

  it('toggles actions on and off', () => {
    let state = withSelection();
    const key = selectionKey(state)!;
    state = actionToggled(state, key, 'ic:J1,L3=3');
    state = actionToggled(state, key, 'ic:K2,L3=3');
    expect(pendingFor(state, key)).toEqual(['ic:J1,L3=3', 'ic:K2,L3=3']);
    state = actionToggled(state, key, 'ic:J1,L3=3');
    expect(pendingFor(state, key)).toEqual(['ic:K2,L3=3']);
  });

  it('keeps uncommitted toggles when the user switches nodes', () => {
    let state = withSelection();
    const key = selectionKey(state)!;
    state = actionToggled(state, key, 'ic:J1,L3=3');
    state = nodeSelected(state, 'D');
    state = nodeSelected(state, 'E');
    state = solveArrived(state, frontierE);
    state = decisionSelected(state, 3);
    expect(selectionKey(state)).toBe(key);
    expect(pendingFor(state, key)).toEqual(['ic:J1,L3=3']);
    expect(hasHypotheticalState(state)).toBe(true);
  });

  it('never mutates the loaded model document', () => {
    const before = JSON.stringify(model);
    let state = withSelection();
    const key = selectionKey(state)!;
    state = actionToggled(state, key, 'ic:J1,L3=3');
    state = actionsCleared(state, key);
    expect(JSON.stringify(state.model)).toBe(before);
  });

  it('loading a model clears cached solves but keeps hypothetical toggles', () => {
    let state = withSelection();
    const key = selectionKey(state)!;
    state = actionToggled(state, key, 'alt:J1=1');
    state = modelLoaded(state, model);
    expect(state.solves).toEqual({});
    expect(pendingFor(state, key)).toEqual(['alt:J1=1']);
  });
});
