import { describe, expect, it } from 'vitest';

import type { BottlenecksDoc, WhatIfDoc } from '../src/api';
import { formatQuality, signatureOf } from '../src/format';
import { dominanceBadge, renderWhatifPanel } from '../src/whatif';
import { fixture } from './helpers';

const bottlenecks = fixture<BottlenecksDoc>('bottlenecks_E3.json');
const allIc = fixture<WhatIfDoc>('whatif_E3_all_ic.json');
const noActions = fixture<WhatIfDoc>('whatif_E3_none.json');

describe('what-if panel', () => {
  it('proposes the four actions for the weak alarm-control decision', () => {
    const html = renderWhatifPanel(bottlenecks, [], null);
    for (const spec of ['alt:J1=1', 'ic:J1,K2=3', 'ic:J1,L3=3', 'ic:K2,L3=3']) {
      expect(html).toContain(`data-spec="${spec}"`);
    }
    expect(html).toContain('element <b>J1</b> at priority 2');
  });

  it('renders the after-quality byte-for-byte from the response', () => {
    const pending = allIc.actions.map((a) => a.spec);
    const html = renderWhatifPanel(bottlenecks, pending, allIc);
    // the displayed string is built only from response fields
    expect(formatQuality(allIc.quality_after)).toBe('(3; 2, 1, 0)');
    expect(html).toContain('(3; 2, 1, 0)');
    expect(html).toContain('(1; 2, 1, 0)'); // before, also from the response
  });

  it('badges the decision as dominating the displaced frontier member', () => {
    const badge = dominanceBadge(allIc);
    // the first dominated member is the decision the study calls E1
    expect(signatureOf(allIc.now_dominates[0])).toBe('J2*K1*L1');
    expect(badge).toContain('now dominates');
    expect(badge).toContain('J2*K1*L1');
  });

  it('shows after = before when nothing is toggled', () => {
    expect(noActions.quality_after).toEqual(noActions.quality_before);
    const html = renderWhatifPanel(bottlenecks, [], null);
    expect(html).toContain('after equals before');
  });

  it('marks pending toggles as hypothetical', () => {
    const html = renderWhatifPanel(bottlenecks, ['ic:J1,L3=3'], null);
    expect(html).toContain('Hypothetical: 1 uncommitted action(s).');
    expect(html).toContain('checked');
  });
});
