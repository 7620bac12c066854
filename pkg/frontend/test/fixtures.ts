/** Small two-scenario model for exercising state and rendering. */

import type {
  Cell,
  EvalPayload,
  ModelDoc,
  RiskPayload,
} from '../src/api.js';
import { WorkbenchState } from '../src/state.js';

export function makeModel(): ModelDoc {
  return {
    meta: { name: 'Demo', version: '1.0', revision: 3 },
    scenarios: [
      { name: 's1', description: '', rationale: 'expected' },
      { name: 's2', description: '', rationale: 'upper bound' },
    ],
    parameters: [
      {
        name: 'c',
        kind: 'input',
        category: 'count',
        unit: 'customers',
        description: 'Customers',
        precision: 0,
        values: { s1: 1000, s2: 'unknown' },
      },
      {
        name: 'rate',
        kind: 'input',
        category: 'fraction',
        unit: 'ratio',
        description: 'Active fraction',
        precision: 2,
        values: { s1: 0.5, s2: 0.9 },
      },
      {
        name: 'load',
        kind: 'derived',
        category: 'other',
        unit: 'req/s',
        description: 'Total load',
        precision: 1,
        formula: 'c * rate',
      },
    ],
    operations: [
      {
        name: 'Lookup',
        work: 'M',
        load: 'H',
        quality_metric: 'response time',
        quality_threshold: { value: 1, unit: 'seconds' },
        load_output: 'load',
        capacity_bands: { green_max: 100, yellow_max: 1000 },
        critical: 'yes',
      },
    ],
    triage_rule: { critical_min_product: 9, review_on_vh: true },
    notes: '',
  };
}

function cell(value: number | null, display: string,
              status: Cell['status'] = 'ok'): Cell {
  return { value, display, status };
}

export function makeEval(): EvalPayload {
  return {
    scenarios: ['s1', 's2'],
    evaluation_order: ['c', 'rate', 'load'],
    results: {
      s1: {
        c: cell(1000, '1 000'),
        rate: cell(0.5, '0.5'),
        load: cell(5000, '5 000.0'),
      },
      s2: {
        c: cell(null, '??', 'unknown'),
        rate: cell(0.9, '0.9'),
        load: { value: null, display: '??', status: 'unknown', note: 'requires c' },
      },
    },
  };
}

export function makeRisk(): RiskPayload {
  return {
    scenarios: ['s1', 's2'],
    operations: [
      {
        name: 'Lookup',
        cells: {
          s1: { level: 'yellow', basis: 'bands', value: 500 },
          s2: { level: 'unassessed', basis: 'unknown value', value: null },
        },
      },
    ],
  };
}

export function makeState(): WorkbenchState {
  const state = new WorkbenchState();
  state.loadSnapshot(makeModel(), 3, makeEval(), makeRisk());
  return state;
}
