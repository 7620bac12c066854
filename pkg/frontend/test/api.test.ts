import { describe, expect, it } from 'vitest';

import {
  ApiError,
  OverridesRejected,
  StaleRevision,
  WorkbenchApi,
} from '../src/api.js';

interface Recorded {
  url: string;
  init?: RequestInit;
}

function clientReturning(status: number, body: unknown) {
  const calls: Recorded[] = [];
  const api = new WorkbenchApi('', async (url, init) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { 'Content-Type': 'application/json' },
    });
  });
  return { api, calls };
}

describe('reads', () => {
  it('hits the eval endpoint and returns the payload', async () => {
    const payload = { revision: 2, scenarios: ['s1'], evaluation_order: [], results: {} };
    const { api, calls } = clientReturning(200, payload);
    expect(await api.getEval()).toEqual(payload);
    expect(calls[0].url).toBe('/api/eval');
    expect(calls[0].init).toBeUndefined();
  });

  it('prefixes a configured base url', async () => {
    const calls: Recorded[] = [];
    const api = new WorkbenchApi('http://localhost:8000', async (url, init) => {
      calls.push({ url, init });
      return new Response('{}', { status: 200 });
    });
    await api.getModel();
    expect(calls[0].url).toBe('http://localhost:8000/api/model');
  });

  it('surfaces the server error body on failure', async () => {
    const { api } = clientReturning(500, { error: 'boom' });
    await expect(api.getRisk()).rejects.toThrowError(ApiError);
    await expect(api.getRisk()).rejects.toThrow('boom');
  });
});

describe('what-if', () => {
  it('posts the nested overrides object', async () => {
    const { api, calls } = clientReturning(200, {
      revision: 2,
      evaluation: { scenarios: [], evaluation_order: [], results: {} },
      risk: { scenarios: [], operations: [] },
    });
    await api.whatif({ c: { s1: 2000 } });
    expect(calls[0].url).toBe('/api/whatif');
    expect(calls[0].init?.method).toBe('POST');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      overrides: { c: { s1: 2000 } },
    });
  });

  it('maps 422 to OverridesRejected with the error list', async () => {
    const errors = [
      { parameter: 'ghost', scenario: null, message: 'unknown parameter ghost' },
    ];
    const { api } = clientReturning(422, { errors });
    const failure = await api.whatif({ ghost: { s1: 1 } }).catch((e) => e);
    expect(failure).toBeInstanceOf(OverridesRejected);
    expect((failure as OverridesRejected).errors).toEqual(errors);
  });
});

describe('writes', () => {
  it('puts value, provenance, and the expected revision', async () => {
    const { api, calls } = clientReturning(200, { revision: 3 });
    const res = await api.putValue('c', 's1', 2500000,
      { source: 'marketing forecast', note: '' }, 2);
    expect(res.revision).toBe(3);
    expect(calls[0].url).toBe('/api/parameters/c/values/s1');
    expect(calls[0].init?.method).toBe('PUT');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      value: 2500000,
      provenance: { source: 'marketing forecast', note: '' },
      expected_revision: 2,
    });
  });

  it('escapes names in the path', async () => {
    const { api, calls } = clientReturning(200, { revision: 1 });
    await api.putValue('a b', 'year 1', 1, { source: 'x' }, 0);
    expect(calls[0].url).toBe('/api/parameters/a%20b/values/year%201');
  });

  it('maps 409 to StaleRevision carrying the server revision', async () => {
    const { api } = clientReturning(409, {
      error: 'stale revision: server is at 5, client sent 2',
      revision: 5,
    });
    const failure = await api
      .putValue('c', 's1', 1, { source: 'x' }, 2)
      .catch((e) => e);
    expect(failure).toBeInstanceOf(StaleRevision);
    expect((failure as StaleRevision).serverRevision).toBe(5);
    expect((failure as StaleRevision).message).toContain('server is at 5');
  });

  it('maps other failures to ApiError with the server message', async () => {
    const { api } = clientReturning(400, {
      error: 'provenance with a non-empty source is required',
    });
    const failure = await api
      .putValue('c', 's1', 1, { source: ' ' }, 2)
      .catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect((failure as ApiError).status).toBe(400);
    expect((failure as ApiError).message).toContain('provenance');
  });
});
