/**
 * Verbatim formatting of service payloads.
 *
 * These helpers only rearrange fields the service sent; the UI never
 * derives a quality number on its own.
 */

import type { DecisionDoc, QualityDoc } from './api';

/** `(3; 1, 1, 1)` straight from the response's w and n. */
export function formatQuality(q: QualityDoc): string {
  return `(${q.w}; ${q.n.join(', ')})`;
}

/** `J2*K1*L1`, nesting composite members in parentheses. */
export function signatureOf(decision: DecisionDoc): string {
  return Object.values(decision.selection)
    .map((member) => (typeof member === 'string' ? member : `(${signatureOf(member)})`))
    .join('*');
}

/** Stable identity of a decision within a node: its selection signature. */
export function decisionKey(node: string, decision: DecisionDoc): string {
  return `${node}#${signatureOf(decision)}`;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}
