/**
 * Typed client for the workbench HTTP API.
 *
 * Everything the UI shows comes from these payloads verbatim; in
 * particular `Cell.display` is the server-rendered string (rounding,
 * thin-space grouping, "??" for unknown) and is never recomputed here.
 */

export interface Provenance {
  source: string;
  date?: string | null;
  note?: string;
}

export interface ScenarioInfo {
  name: string;
  description: string;
  rationale: string;
}

export interface ParameterDoc {
  name: string;
  kind: 'input' | 'derived';
  category: string;
  unit: string;
  description: string;
  precision: number;
  values?: Record<string, number | 'unknown'>;
  formula?: string;
  provenance?: Provenance;
}

export interface OperationDoc {
  name: string;
  work: string;
  load: string;
  quality_metric: string;
  quality_threshold: { value: number; unit: string } | null;
  load_output: string | null;
  capacity_bands: { green_max: number; yellow_max: number } | null;
  critical: string;
}

export interface ModelDoc {
  meta: { name: string; version: string; revision: number };
  scenarios: ScenarioInfo[];
  parameters: ParameterDoc[];
  operations: OperationDoc[];
  triage_rule: { critical_min_product: number; review_on_vh: boolean };
  notes: string;
}

export type CellStatus = 'ok' | 'unknown' | 'error';

export interface Cell {
  value: number | null;
  display: string;
  status: CellStatus;
  note?: string;
}

export interface EvalPayload {
  scenarios: string[];
  evaluation_order: string[];
  results: Record<string, Record<string, Cell>>;
}

export type RiskLevel = 'green' | 'yellow' | 'red' | 'unassessed';

export interface RiskCell {
  level: RiskLevel;
  basis: string;
  value: number | null;
}

export interface RiskPayload {
  scenarios: string[];
  operations: { name: string; cells: Record<string, RiskCell> }[];
}

export interface TriageRow {
  operation: string;
  work: string;
  load: string;
  product: number | null;
  proposal: string;
  final: string;
  override_applied: boolean;
  provenance?: Provenance | null;
}

export interface TriagePayload {
  rows: TriageRow[];
  counts: { critical: number; non_critical: number; pending: number };
}

export interface ChecklistItem {
  number: number;
  title: string;
  status: 'addressed' | 'partial' | 'missing';
  evidence: string;
}

export interface WhatifResponse {
  revision: number;
  evaluation: EvalPayload;
  risk: RiskPayload;
}

export interface OverrideError {
  parameter: string | null;
  scenario: string | null;
  message: string;
}

/** Non-2xx response that is not one of the structured failures below. */
export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

/** 422 from /api/whatif: one entry per rejected override. */
export class OverridesRejected extends Error {
  constructor(readonly errors: OverrideError[]) {
    super('overrides rejected');
  }
}

/** 409 from a write: someone else persisted first. */
export class StaleRevision extends Error {
  constructor(readonly serverRevision: number, message: string) {
    super(message);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class WorkbenchApi {
  constructor(
    private readonly base = '',
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  getModel(): Promise<{ revision: number; model: ModelDoc }> {
    return this.getJson('/api/model');
  }

  getScenarios(): Promise<{ revision: number; scenarios: ScenarioInfo[] }> {
    return this.getJson('/api/scenarios');
  }

  getEval(): Promise<{ revision: number } & EvalPayload> {
    return this.getJson('/api/eval');
  }

  getTriage(): Promise<{ revision: number } & TriagePayload> {
    return this.getJson('/api/triage');
  }

  getRisk(): Promise<{ revision: number } & RiskPayload> {
    return this.getJson('/api/risk');
  }

  getChecklist(): Promise<{ revision: number; items: ChecklistItem[] }> {
    return this.getJson('/api/checklist');
  }

  /** Ephemeral evaluation; the server never persists these overrides. */
  async whatif(
    overrides: Record<string, Record<string, number>>,
  ): Promise<WhatifResponse> {
    const res = await this.fetchImpl(`${this.base}/api/whatif`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ overrides }),
    });
    if (res.status === 422) {
      const body = await res.json();
      throw new OverridesRejected(body.errors ?? []);
    }
    if (!res.ok) throw new ApiError(res.status, await errorText(res));
    return res.json();
  }

  /** Persist one input value. Requires provenance; guarded by revision. */
  async putValue(
    name: string,
    scenario: string,
    value: number,
    provenance: Provenance,
    expectedRevision: number,
  ): Promise<{ revision: number }> {
    const url =
      `${this.base}/api/parameters/${encodeURIComponent(name)}` +
      `/values/${encodeURIComponent(scenario)}`;
    const res = await this.fetchImpl(url, {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({
        value,
        provenance,
        expected_revision: expectedRevision,
      }),
    });
    if (res.status === 409) {
      const body = await res.json();
      throw new StaleRevision(body.revision, body.error ?? 'stale revision');
    }
    if (!res.ok) throw new ApiError(res.status, await errorText(res));
    return res.json();
  }

  private async getJson<T>(path: string): Promise<T> {
    const res = await this.fetchImpl(`${this.base}${path}`);
    if (!res.ok) throw new ApiError(res.status, await errorText(res));
    return res.json();
  }
}

async function errorText(res: Response): Promise<string> {
  try {
    const body = await res.json();
    if (body && typeof body.error === 'string') return body.error;
  } catch {
    // fall through to the status line
  }
  return `request failed with status ${res.status}`;
}
