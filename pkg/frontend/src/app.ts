/**
 * Studio wiring: DOM events in, service requests out, renders from state.
 *
 * All computation happens on the service; this file only moves documents
 * between the API client, the session state, and the pure render functions.
 */

import { ApiClient, ApiError, type ModelDoc } from './api';
import { renderFrontier, renderFrontierError } from './frontier';
import {
  renderMorphTable,
  solvableNodes,
  validateEstimate,
  withEstimate,
} from './morphtable';
import { renderWhatifPanel } from './whatif';
import {
  actionToggled,
  decisionSelected,
  hasHypotheticalState,
  initialState,
  modelLoaded,
  nodeSelected,
  pendingFor,
  selectionKey,
  solveArrived,
  wentOffline,
  whatIfArrived,
  type SessionState,
} from './state';

const api = new ApiClient('');
let state: SessionState = initialState();
/** Pending morph-table edits staged for one PUT commit. */
let editedModel: ModelDoc | null = null;

const $ = <T extends HTMLElement>(sel: string): T => {
  const el = document.querySelector<T>(sel);
  if (!el) throw new Error(`missing element ${sel}`);
  return el;
};

function setState(next: SessionState): void {
  state = next;
  render();
}

// -- rendering ---------------------------------------------------------------

function render(): void {
  $('#banner').hidden = !state.offline;
  $('#hypothetical').hidden = !hasHypotheticalState(state);
  renderNodes();
  renderTable();
  renderFrontierPanel();
  renderWhatif();
}

function renderNodes(): void {
  const host = $('#nodes');
  if (!state.model) {
    host.innerHTML = '';
    return;
  }
  host.innerHTML = solvableNodes(state.model)
    .map((node) => {
      const current = node === state.selectedNode ? ' class="current"' : '';
      const pending = Object.keys(state.pendingActions).some(
        (key) => key.startsWith(`${node}#`) && state.pendingActions[key].length > 0,
      );
      return `<button data-node="${node}"${current}>${node}${pending ? ' *' : ''}</button>`;
    })
    .join('');
}

function renderTable(): void {
  const host = $('#morph');
  if (!state.model) {
    host.innerHTML = '<p class="empty">no model loaded</p>';
    return;
  }
  host.innerHTML = renderMorphTable(editedModel ?? state.model, state.offline);
  $('#commit').toggleAttribute('disabled', editedModel === null || state.offline);
}

function renderFrontierPanel(): void {
  const host = $('#frontier');
  if (!state.selectedNode) {
    host.innerHTML = '<p class="empty">select a node</p>';
    return;
  }
  const frontier = state.solves[state.selectedNode];
  host.innerHTML = frontier
    ? renderFrontier(frontier, state.selectedDecision)
    : '<p class="empty">solving&hellip;</p>';
}

function renderWhatif(): void {
  const host = $('#whatif');
  const key = selectionKey(state);
  if (!key || !lastBottlenecks || lastBottlenecksKey !== key) {
    host.innerHTML = '<p class="empty">select a decision</p>';
    return;
  }
  host.innerHTML = renderWhatifPanel(
    lastBottlenecks,
    pendingFor(state, key),
    state.lastWhatIf,
  );
}

// -- service round-trips -------------------------------------------------------

let lastBottlenecks: import('./api').BottlenecksDoc | null = null;
let lastBottlenecksKey: string | null = null;

async function guard<T>(work: Promise<T>): Promise<T | null> {
  try {
    return await work;
  } catch (error) {
    if (error instanceof DOMException && error.name === 'AbortError') return null;
    if (error instanceof ApiError) throw error;
    setState(wentOffline(state));
    return null;
  }
}

async function boot(): Promise<void> {
  const model = await guard(api.getModel());
  if (!model) return;
  setState(modelLoaded(state, model));
  const first = solvableNodes(model)[0];
  if (first) await selectNode(first);
}

async function selectNode(node: string): Promise<void> {
  setState(nodeSelected(state, node));
  try {
    const frontier = await guard(api.solve(node));
    if (frontier) setState(solveArrived(state, frontier));
  } catch (error) {
    if (error instanceof ApiError) {
      $('#frontier').innerHTML = renderFrontierError(error.doc);
    }
  }
}

async function selectDecision(index: number): Promise<void> {
  if (!state.selectedNode) return;
  setState(decisionSelected(state, index));
  const doc = await guard(api.bottlenecks(state.selectedNode, index));
  if (!doc) return;
  lastBottlenecks = doc;
  lastBottlenecksKey = selectionKey(state);
  render();
  await refreshWhatif();
}

async function refreshWhatif(): Promise<void> {
  const key = selectionKey(state);
  if (!key || !state.selectedNode || state.selectedDecision === null) return;
  const pending = pendingFor(state, key);
  const report = await guard(
    api.whatif(state.selectedNode, state.selectedDecision, pending),
  );
  if (report) setState(whatIfArrived(state, report));
}

async function commitModel(): Promise<void> {
  if (!editedModel) return;
  const committed = await guard(api.putModelDoc(editedModel));
  if (!committed) return;
  editedModel = null;
  setState(modelLoaded(state, committed));
  // commit implies an automatic re-solve of the node on screen
  if (state.selectedNode) await selectNode(state.selectedNode);
}

// -- event wiring ----------------------------------------------------------------

function wire(): void {
  $('#nodes').addEventListener('click', (event) => {
    const btn = (event.target as HTMLElement).closest('button[data-node]');
    if (btn) void selectNode(btn.getAttribute('data-node')!);
  });

  $('#frontier').addEventListener('click', (event) => {
    const row = (event.target as HTMLElement).closest('[data-decision]');
    if (row) void selectDecision(Number(row.getAttribute('data-decision')));
  });

  $('#whatif').addEventListener('change', (event) => {
    const box = event.target as HTMLInputElement;
    const spec = box.getAttribute('data-spec');
    const key = selectionKey(state);
    if (!spec || !key) return;
    setState(actionToggled(state, key, spec));
    void refreshWhatif();
  });

  $('#morph').addEventListener('change', (event) => {
    const input = event.target as HTMLInputElement;
    if (!input.classList.contains('est') || !state.model) return;
    const critIndex = Number(input.getAttribute('data-crit'));
    const criterion = state.model.criteria[critIndex];
    const check = validateEstimate(criterion, input.value);
    input.classList.toggle('invalid', !check.ok);
    input.title = check.reason ?? '';
    if (!check.ok) return; // inline rejection; the edit never reaches the doc
    editedModel = withEstimate(
      editedModel ?? state.model,
      input.getAttribute('data-leaf')!,
      input.getAttribute('data-alt')!,
      critIndex,
      Number(input.value),
    );
    $('#commit').toggleAttribute('disabled', false);
  });

  $('#commit').addEventListener('click', () => void commitModel());
}

export function main(): void {
  wire();
  void boot();
}

main();
