import { describe, expect, it } from 'vitest';

import {
  esc,
  renderChecklist,
  renderParameterGrid,
  renderRiskMatrix,
  renderStatus,
  renderTriage,
} from '../src/grid.js';
import { makeState } from './fixtures.js';

describe('escaping', () => {
  it('neutralizes markup in interpolated text', () => {
    expect(esc('a < b & "c" > d')).toBe('a &lt; b &amp; &quot;c&quot; &gt; d');
  });
});

describe('parameter grid', () => {
  it('renders inputs as editable cells with data attributes', () => {
    const html = renderParameterGrid(makeState());
    expect(html).toContain('data-parameter="c" data-scenario="s1" value="1000"');
  });

  it('renders an unknown input as an empty field with a ?? placeholder', () => {
    const html = renderParameterGrid(makeState());
    expect(html).toContain('data-parameter="c" data-scenario="s2" value=""');
    expect(html).toContain('placeholder="??"');
  });

  it('shows the engine display string for derived cells verbatim', () => {
    const html = renderParameterGrid(makeState());
    expect(html).toContain('>5 000.0</td>'); // thin-space grouping untouched
  });

  it('marks unknown derived cells and carries the blocking note', () => {
    const html = renderParameterGrid(makeState());
    expect(html).toContain('status-unknown');
    expect(html).toContain('title="requires c"');
  });

  it('tints a derived cell with its operation risk color', () => {
    const html = renderParameterGrid(makeState());
    expect(html).toContain('tint-yellow');
    expect(html).not.toContain('tint-unassessed');
  });

  it('flags dirty and rejected cells', () => {
    const state = makeState();
    state.setOverride('c', 's1', 2000);
    state.markRejected([{ parameter: 'rate', scenario: 's1', message: 'fraction out of range' }]);
    const html = renderParameterGrid(state);
    expect(html).toContain('cell-input dirty');
    expect(html).toContain('cell-input invalid');
    expect(html).toContain('title="fraction out of range"');
    expect(html).toContain('value="2000"');
  });

  it('groups inputs and derived parameters separately', () => {
    const html = renderParameterGrid(makeState());
    expect(html.indexOf('group-inputs')).toBeLessThan(html.indexOf('group-derived'));
    expect(html).toContain('Inputs');
    expect(html).toContain('Derived');
  });
});

describe('risk matrix', () => {
  it('colors cells by level and leaves unassessed blank', () => {
    const html = renderRiskMatrix(makeState());
    expect(html).toContain('risk-yellow');
    expect(html).toContain('>yellow</td>');
    expect(html).toContain('risk-unassessed');
    expect(html).not.toContain('>unassessed</td>');
  });
});

describe('triage table', () => {
  it('prints rows and the counts line', () => {
    const html = renderTriage({
      rows: [
        {
          operation: 'Lookup', work: 'M', load: 'H', product: 6,
          proposal: 'non_critical', final: 'critical', override_applied: true,
        },
        {
          operation: 'Probe', work: '??', load: 'L', product: null,
          proposal: 'needs_review', final: 'needs_review', override_applied: false,
        },
      ],
      counts: { critical: 1, non_critical: 0, pending: 1 },
    });
    expect(html).toContain('<td>Lookup</td>');
    expect(html).toContain('class="overridden"');
    expect(html).toContain('<td></td>'); // null product stays blank
    expect(html).toContain('1 critical, 0 non-critical, 1 pending');
  });
});

describe('checklist', () => {
  it('renders numbered items with status classes', () => {
    const html = renderChecklist([
      { number: 8, title: 'Work', status: 'partial', evidence: 'none declares work parameters' },
    ]);
    expect(html).toContain('check-partial');
    expect(html).toContain('8.');
    expect(html).toContain('none declares work parameters');
  });
});

describe('status line', () => {
  it('reports revision and pending edit count', () => {
    const state = makeState();
    expect(renderStatus(state)).toContain('revision 3');
    expect(renderStatus(state)).toContain('no unsaved edits');
    state.setOverride('c', 's1', 2000);
    expect(renderStatus(state)).toContain('1 unsaved edit');
  });

  it('announces a stale revision', () => {
    const state = makeState();
    state.markStale(9);
    expect(renderStatus(state)).toContain('server moved to revision 9');
  });
});
