/**
 * What-if panel: proposed actions as toggles with live deltas.
 *
 * Toggling re-POSTs /api/whatif; the before/after qualities, the dominance
 * badge, and the "now dominates" list are rendered byte-for-byte from the
 * response. Pending toggles are hypothetical: nothing persists until the
 * model itself is committed.
 */

import type { BottlenecksDoc, WhatIfDoc } from './api';
import { escapeHtml, formatQuality, signatureOf } from './format';

export function renderWhatifPanel(
  bottlenecks: BottlenecksDoc,
  pending: string[],
  report: WhatIfDoc | null,
): string {
  const decision = bottlenecks.decision;
  const header =
    `<h3>Decision ${escapeHtml(signatureOf(decision))} ` +
    `at ${escapeHtml(formatQuality(decision))}</h3>`;

  const bottleneckList =
    bottlenecks.elements
      .map((row) => `<li>element <b>${escapeHtml(row.id)}</b> at priority ${row.priority}</li>`)
      .join('') +
    bottlenecks.pairs
      .map(
        (row) =>
          `<li>pair <b>(${escapeHtml(row.pair[0])}, ${escapeHtml(row.pair[1])})</b> ` +
          `at level ${row.level}</li>`,
      )
      .join('');

  const toggles = bottlenecks.actions
    .map((action) => {
      const checked = pending.includes(action.spec) ? 'checked' : '';
      return (
        `<label class="action"><input type="checkbox" data-spec="${action.spec}" ${checked}>` +
        ` <code>${escapeHtml(action.spec)}</code> ` +
        `<small>${action.from_level} &rArr; ${action.to_level}</small></label>`
      );
    })
    .join('');

  let delta = '';
  if (report !== null) {
    const badge = dominanceBadge(report);
    delta =
      `<div class="delta">` +
      `<span class="before">${escapeHtml(formatQuality(report.quality_before))}</span>` +
      ` &rarr; ` +
      `<span class="after">${escapeHtml(formatQuality(report.quality_after))}</span>` +
      ` ${badge}</div>`;
  } else if (pending.length === 0) {
    delta = `<div class="delta"><small>No actions toggled: after equals before.</small></div>`;
  } else {
    delta = `<div class="delta"><small>evaluating&hellip;</small></div>`;
  }

  const marker = pending.length
    ? `<p class="hypothetical">Hypothetical: ${pending.length} uncommitted action(s).</p>`
    : '';

  return (
    header +
    (bottleneckList ? `<ul class="bottlenecks">${bottleneckList}</ul>` : '<p>No bottlenecks.</p>') +
    `<div class="actions">${toggles || '<small>nothing to improve</small>'}</div>` +
    delta +
    marker
  );
}

/** Badge text comes from the response's dominance fields only. */
export function dominanceBadge(report: WhatIfDoc): string {
  const beaten = report.now_dominates.map((d) => signatureOf(d));
  if (beaten.length > 0) {
    return (
      `<span class="badge dominates">now dominates ` +
      `${beaten.map(escapeHtml).join(', ')}</span>`
    );
  }
  return `<span class="badge ${report.dominance_delta}">${report.dominance_delta}</span>`;
}
