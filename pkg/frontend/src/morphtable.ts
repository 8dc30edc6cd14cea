/**
 * Morphological table: one row per leaf, its alternatives as editable chips
 * showing estimates and the priority in parentheses.
 *
 * Edits are validated against the criterion scales before a commit is
 * allowed; invalid values never leave the input field.
 */

import type { AlternativeDoc, CriterionDoc, ModelDoc, PartDoc } from './api';
import { escapeHtml } from './format';

export interface LeafRow {
  leafId: string;
  label: string;
  groupId: string;
  alternatives: AlternativeDoc[];
}

/** Flatten the part tree into leaf rows, keeping document order. */
export function leafRows(model: ModelDoc): LeafRow[] {
  const rows: LeafRow[] = [];
  const walk = (part: PartDoc, parent: string) => {
    if (part.alternatives) {
      rows.push({
        leafId: part.id,
        label: part.label ?? '',
        groupId: parent,
        alternatives: part.alternatives,
      });
      return;
    }
    for (const child of part.children ?? []) walk(child, part.id);
  };
  walk(model.root, '');
  return rows;
}

/** Composite parts that can be solved, document order. */
export function solvableNodes(model: ModelDoc): string[] {
  const out: string[] = [];
  const walk = (part: PartDoc) => {
    if (!part.children) return;
    out.push(part.id);
    for (const child of part.children) walk(child);
  };
  walk(model.root);
  return out;
}

/** The nearest solvable ancestor of a leaf (its parent group). */
export function nodeOfLeaf(model: ModelDoc, leafId: string): string | null {
  const row = leafRows(model).find((r) => r.leafId === leafId);
  return row ? row.groupId : null;
}

export interface EditCheck {
  ok: boolean;
  reason?: string;
}

export function validateEstimate(
  criterion: CriterionDoc,
  raw: string,
): EditCheck {
  const value = Number(raw);
  if (!Number.isInteger(value)) {
    return { ok: false, reason: `estimate must be an integer, got "${raw}"` };
  }
  const [lo, hi] = criterion.scale;
  if (value < lo || value > hi) {
    return { ok: false, reason: `estimate ${value} outside scale ${lo}..${hi} of ${criterion.id}` };
  }
  return { ok: true };
}

export function validatePriority(k: number, raw: string): EditCheck {
  const value = Number(raw);
  if (!Number.isInteger(value) || value < 1 || value > k) {
    return { ok: false, reason: `priority must be an integer in 1..${k}` };
  }
  return { ok: true };
}

/** A fresh model document with one estimate replaced; the input is untouched. */
export function withEstimate(
  model: ModelDoc,
  leafId: string,
  altId: string,
  critIndex: number,
  value: number,
): ModelDoc {
  const patchPart = (part: PartDoc): PartDoc => {
    if (part.alternatives) {
      if (part.id !== leafId) return part;
      return {
        ...part,
        alternatives: part.alternatives.map((alt) =>
          alt.id === altId
            ? { ...alt, estimates: alt.estimates.map((e, i) => (i === critIndex ? value : e)) }
            : alt,
        ),
      };
    }
    return { ...part, children: (part.children ?? []).map(patchPart) };
  };
  return { ...model, root: patchPart(model.root) };
}

export function withPriority(
  model: ModelDoc,
  leafId: string,
  altId: string,
  priority: number,
): ModelDoc {
  const patchPart = (part: PartDoc): PartDoc => {
    if (part.alternatives) {
      if (part.id !== leafId) return part;
      return {
        ...part,
        alternatives: part.alternatives.map((alt) =>
          alt.id === altId ? { ...alt, priority } : alt,
        ),
      };
    }
    return { ...part, children: (part.children ?? []).map(patchPart) };
  };
  return { ...model, root: patchPart(model.root) };
}

/** HTML for the editable grid; values come straight from the model doc. */
export function renderMorphTable(model: ModelDoc, readOnly: boolean): string {
  const headers = model.criteria.map((c) => escapeHtml(c.id)).join('/');
  const rows = leafRows(model)
    .map((row) => {
      const chips = row.alternatives
        .map((alt) => {
          const estimates = alt.estimates
            .map(
              (est, i) =>
                `<input class="est" data-leaf="${row.leafId}" data-alt="${alt.id}" ` +
                `data-crit="${i}" value="${est}" size="1" ` +
                `${readOnly ? 'disabled' : ''} aria-label="${alt.id} ${model.criteria[i].id}">`,
            )
            .join('');
          const priority = alt.priority !== undefined ? ` (${alt.priority})` : '';
          return (
            `<span class="chip" data-alt="${alt.id}">` +
            `<b>${escapeHtml(alt.id)}</b>${escapeHtml(priority)} ` +
            `<span class="label">${escapeHtml(alt.label ?? '')}</span> ${estimates}</span>`
          );
        })
        .join(' ');
      return (
        `<tr data-leaf="${row.leafId}"><th>${escapeHtml(row.leafId)}` +
        `<small> ${escapeHtml(row.label)} [${escapeHtml(row.groupId)}]</small></th>` +
        `<td>${chips}</td></tr>`
      );
    })
    .join('');
  return (
    `<table class="morph"><thead><tr><th>leaf</th>` +
    `<th>alternatives (priority), estimates ${headers}</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}
