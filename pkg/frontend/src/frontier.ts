/**
 * Frontier view: the quality-lattice plot plus the decision list.
 *
 * Every displayed number is a field of the solve response. Clicking a cell
 * or list row selects the decision and feeds the bottleneck panel.
 */

import type { ErrorDoc, FrontierDoc } from './api';
import { escapeHtml, formatQuality, signatureOf } from './format';
import { layoutLattice } from './lattice';

const CELL = 64;
const PAD = 40;

export function renderFrontier(frontier: FrontierDoc, selected: number | null): string {
  const cells = layoutLattice(frontier.decisions);
  const columns = Math.max(...cells.map((c) => c.x), 0) + 1;
  const levels = Math.max(...cells.map((c) => c.y), 0) + 1;
  const width = PAD + columns * CELL + PAD;
  const height = PAD + levels * CELL + PAD;

  const marks = cells
    .map((cell) => {
      const cx = PAD + cell.x * CELL + CELL / 2;
      const cy = PAD + (levels - 1 - cell.y) * CELL + CELL / 2;
      const isSelected = selected !== null && cell.decisions.includes(selected);
      const badge =
        cell.decisions.length > 1
          ? `<text class="badge" x="${cx + 14}" y="${cy - 12}">${cell.decisions.length}</text>`
          : '';
      return (
        `<g class="cell${isSelected ? ' selected' : ''}" data-decision="${cell.decisions[0]}">` +
        `<circle cx="${cx}" cy="${cy}" r="16"></circle>` +
        `<text x="${cx}" y="${cy + 30}">${escapeHtml(formatQuality(cell.quality))}</text>` +
        badge +
        `</g>`
      );
    })
    .join('');

  const axis = Array.from({ length: levels }, (_, w) => {
    const y = PAD + (levels - 1 - w) * CELL + CELL / 2;
    return `<text class="axis" x="${PAD / 2}" y="${y}">w=${w}</text>`;
  }).join('');

  const listRows = frontier.decisions
    .map((decision, index) => {
      const cls = index === selected ? ' class="selected"' : '';
      return (
        `<tr${cls} data-decision="${index}"><td>[${index}]</td>` +
        `<td>${escapeHtml(formatQuality(decision))}</td>` +
        `<td>${escapeHtml(signatureOf(decision))}</td></tr>`
      );
    })
    .join('');

  return (
    `<svg class="lattice" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">` +
    `${axis}${marks}</svg>` +
    `<table class="decisions"><thead><tr><th>#</th><th>N</th><th>selection</th></tr></thead>` +
    `<tbody>${listRows}</tbody></table>`
  );
}

export function renderFrontierError(error: ErrorDoc): string {
  if (error.error === 'infeasible-node') {
    return (
      `<p class="empty">Node ${escapeHtml(error.node ?? '')} has no feasible ` +
      `combination: every selection hits a zero-compatibility pair. ` +
      `Raise a compatibility level and re-solve.</p>`
    );
  }
  return `<p class="empty">${escapeHtml(error.message ?? error.error)}</p>`;
}
