import { describe, expect, it } from 'vitest';

import { makeEval, makeRisk, makeState } from './fixtures.js';

describe('override tracking', () => {
  it('marks an edited cell dirty', () => {
    const s = makeState();
    s.setOverride('c', 's1', 2000);
    expect(s.isDirty('c', 's1')).toBe(true);
    expect(s.dirtyCount()).toBe(1);
  });

  it('typing the persisted value back clears the override', () => {
    const s = makeState();
    s.setOverride('c', 's1', 2000);
    s.setOverride('c', 's1', 1000);
    expect(s.isDirty('c', 's1')).toBe(false);
    expect(s.dirtyCount()).toBe(0);
  });

  it('an unknown baseline is never equal to a typed number', () => {
    const s = makeState();
    expect(s.baselineValue('c', 's2')).toBeNull();
    s.setOverride('c', 's2', 0);
    expect(s.isDirty('c', 's2')).toBe(true);
  });

  it('builds the nested what-if body', () => {
    const s = makeState();
    s.setOverride('c', 's1', 2000);
    s.setOverride('c', 's2', 3000);
    s.setOverride('rate', 's1', 0.6);
    expect(s.overridesBody()).toEqual({
      c: { s1: 2000, s2: 3000 },
      rate: { s1: 0.6 },
    });
  });

  it('revertAll drops overrides, rejections, and the preview', () => {
    const s = makeState();
    s.setOverride('c', 's1', 2000);
    s.applyPreview(makeEval(), makeRisk());
    s.markRejected([{ parameter: 'c', scenario: 's1', message: 'nope' }]);
    s.revertAll();
    expect(s.dirtyCount()).toBe(0);
    expect(s.previewEval).toBeNull();
    expect(s.rejectionFor('c', 's1')).toBeUndefined();
  });
});

describe('cell selection', () => {
  it('serves baseline cells when no preview is active', () => {
    const s = makeState();
    expect(s.cellFor('s1', 'load')?.display).toBe('5 000.0');
  });

  it('prefers the preview once applied', () => {
    const s = makeState();
    const preview = makeEval();
    preview.results.s1.load = { value: 900, display: '900.0', status: 'ok' };
    s.applyPreview(preview, makeRisk());
    expect(s.cellFor('s1', 'load')?.display).toBe('900.0');
    s.dropPreview();
    expect(s.cellFor('s1', 'load')?.display).toBe('5 000.0');
  });

  it('maps a derived parameter to its operation risk for tinting', () => {
    const s = makeState();
    expect(s.tintFor('load', 's1')?.level).toBe('yellow');
    expect(s.tintFor('rate', 's1')).toBeUndefined();
  });
});

describe('rejections', () => {
  it('keeps cell-level messages and returns general ones', () => {
    const s = makeState();
    const general = s.markRejected([
      { parameter: 'c', scenario: 's1', message: 'fraction out of range' },
      { parameter: 'ghost', scenario: null, message: 'unknown parameter ghost' },
    ]);
    expect(s.rejectionFor('c', 's1')).toBe('fraction out of range');
    expect(general).toEqual(['unknown parameter ghost']);
  });

  it('editing a rejected cell clears its message', () => {
    const s = makeState();
    s.markRejected([{ parameter: 'c', scenario: 's1', message: 'bad' }]);
    s.setOverride('c', 's1', 1500);
    expect(s.rejectionFor('c', 's1')).toBeUndefined();
  });
});

describe('persisting', () => {
  it('acceptPersist folds the value into the model and bumps the revision', () => {
    const s = makeState();
    s.setOverride('c', 's1', 2000);
    s.acceptPersist('c', 's1', 2000, 4);
    expect(s.revision).toBe(4);
    expect(s.baselineValue('c', 's1')).toBe(2000);
    expect(s.isDirty('c', 's1')).toBe(false);
  });

  it('refreshBaseline drops the preview only when nothing is pending', () => {
    const s = makeState();
    s.setOverride('c', 's1', 2000);
    s.applyPreview(makeEval(), makeRisk());
    s.refreshBaseline(makeEval(), makeRisk());
    expect(s.previewEval).not.toBeNull();
    s.clearOverride('c', 's1');
    s.refreshBaseline(makeEval(), makeRisk());
    expect(s.previewEval).toBeNull();
  });

  it('markStale records the server revision', () => {
    const s = makeState();
    s.markStale(7);
    expect(s.staleAt).toBe(7);
  });
});
