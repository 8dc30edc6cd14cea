/**
 * Quality-lattice layout.
 *
 * Compatibility level w runs up the vertical axis; distinct member-count
 * profiles n occupy the horizontal band, linearized by their prefix-sum
 * dominance (better profiles to the left). Decisions with equal quality
 * vectors land in one cell and are badged with their count.
 */

import type { DecisionDoc, QualityDoc } from './api';

export interface LatticeCell {
  quality: QualityDoc;
  /** column within the horizontal band (0 = best profile) */
  x: number;
  /** row: the compatibility level w */
  y: number;
  /** indexes into the frontier's decision list */
  decisions: number[];
}

function prefixSums(n: number[]): number[] {
  const out: number[] = [];
  let acc = 0;
  for (const value of n) {
    acc += value;
    out.push(acc);
  }
  return out;
}

/** Lexicographic comparison of prefix sums, better (higher) first. */
function compareProfiles(a: number[], b: number[]): number {
  const pa = prefixSums(a);
  const pb = prefixSums(b);
  for (let i = 0; i < Math.max(pa.length, pb.length); i++) {
    const diff = (pb[i] ?? 0) - (pa[i] ?? 0);
    if (diff !== 0) return diff;
  }
  return 0;
}

export function layoutLattice(decisions: DecisionDoc[]): LatticeCell[] {
  const profiles = new Map<string, number[]>();
  for (const decision of decisions) {
    profiles.set(decision.n.join(','), decision.n);
  }
  const ordered = [...profiles.values()].sort(compareProfiles);
  const columnOf = new Map<string, number>(
    ordered.map((n, index) => [n.join(','), index]),
  );

  const cells = new Map<string, LatticeCell>();
  decisions.forEach((decision, index) => {
    const key = `${decision.w}|${decision.n.join(',')}`;
    let cell = cells.get(key);
    if (!cell) {
      cell = {
        quality: { w: decision.w, n: decision.n },
        x: columnOf.get(decision.n.join(','))!,
        y: decision.w,
        decisions: [],
      };
      cells.set(key, cell);
    }
    cell.decisions.push(index);
  });
  return [...cells.values()].sort((a, b) => b.y - a.y || a.x - b.x);
}
