import { describe, expect, it } from 'vitest';

import type { FrontierDoc } from '../src/api';
import { formatQuality, signatureOf } from '../src/format';
import { renderFrontier, renderFrontierError } from '../src/frontier';
import { fixture } from './helpers';

const frontierE = fixture<FrontierDoc>('solve_E.json');

describe('frontier view', () => {
  it('lists exactly the decisions of the solve response, in order', () => {
    const html = renderFrontier(frontierE, null);
    const signatures = frontierE.decisions.map(signatureOf);
    expect(signatures).toEqual(['J2*K1*L1', 'J1*K1*L1', 'J1*K1*L4', 'J1*K2*L3']);
    for (const [index, decision] of frontierE.decisions.entries()) {
      expect(html).toContain(`[${index}]`);
      expect(html).toContain(signatureOf(decision));
      expect(html).toContain(formatQuality(decision));
    }
    const rows = html.match(/<tr[^>]*data-decision=/g) ?? [];
    expect(rows).toHaveLength(frontierE.decisions.length);
  });

  it('plots a count badge on the shared cell', () => {
    const html = renderFrontier(frontierE, null);
    expect(html).toContain('class="badge"');
    expect(html).toMatch(/<text class="badge"[^>]*>2<\/text>/);
  });

  it('marks the selected decision', () => {
    const html = renderFrontier(frontierE, 3);
    expect(html).toContain('<tr class="selected" data-decision="3">');
  });

  it('renders the infeasible empty state', () => {
    const html = renderFrontierError({ error: 'infeasible-node', node: 'E' });
    expect(html).toContain('no feasible');
    expect(html).toContain('E');
  });
});
