import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError, type FetchLike } from '../src/api.js';

interface RecordedCall {
  url: string;
  init: RequestInit | undefined;
}

function jsonResponse(status: number, payload: unknown): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

function recordingFetch(
  calls: RecordedCall[],
  respond: (url: string) => Response,
): FetchLike {
  return async (url, init) => {
    calls.push({ url, init });
    return respond(url);
  };
}

describe('request shapes', () => {
  it('creates a session with an empty body when no config is given', async () => {
    const calls: RecordedCall[] = [];
    const client = new ApiClient(
      'http://host:1',
      recordingFetch(calls, () =>
        jsonResponse(201, { session_id: 's-1', iteration: 1, panel: [], image_uris: [] }),
      ),
    );
    const created = await client.createSession();
    expect(created.session_id).toBe('s-1');
    expect(calls[0]?.url).toBe('http://host:1/api/sessions');
    expect(calls[0]?.init?.method).toBe('POST');
    expect(JSON.parse(calls[0]?.init?.body as string)).toEqual({});
  });

  it('wraps an explicit config under a "config" key', async () => {
    const calls: RecordedCall[] = [];
    const client = new ApiClient(
      '',
      recordingFetch(calls, () =>
        jsonResponse(201, { session_id: 's-2', iteration: 1, panel: [], image_uris: [] }),
      ),
    );
    await client.createSession({ rng_seed: 7 });
    expect(JSON.parse(calls[0]?.init?.body as string)).toEqual({ config: { rng_seed: 7 } });
  });

  it('posts selections to the iteration-scoped endpoint', async () => {
    const calls: RecordedCall[] = [];
    const client = new ApiClient(
      '',
      recordingFetch(calls, () => jsonResponse(200, { next: 4 })),
    );
    const outcome = await client.submitSelection('s-1', 3, [2, 9]);
    expect(outcome.next).toBe(4);
    expect(calls[0]?.url).toBe('/api/sessions/s-1/iterations/3/selection');
    expect(JSON.parse(calls[0]?.init?.body as string)).toEqual({ selected: [2, 9] });
  });

  it('GET requests carry no body and no content type', async () => {
    const calls: RecordedCall[] = [];
    const client = new ApiClient(
      '',
      recordingFetch(calls, () => jsonResponse(200, { version: 1, items: [] })),
    );
    await client.catalog();
    expect(calls[0]?.init?.method).toBe('GET');
    expect(calls[0]?.init?.body).toBeUndefined();
    expect(calls[0]?.init?.headers).toBeUndefined();
  });

  it('strips a trailing slash from the base url', async () => {
    const calls: RecordedCall[] = [];
    const client = new ApiClient(
      'http://host:2/',
      recordingFetch(calls, () => jsonResponse(200, { version: 1, items: [] })),
    );
    await client.catalog();
    expect(calls[0]?.url).toBe('http://host:2/api/catalog');
  });
});

describe('error mapping', () => {
  it('maps the server error envelope onto ApiError', async () => {
    const client = new ApiClient('', async () =>
      jsonResponse(409, { error: 'wrong_state', detail: 'iteration 2 expected' }),
    );
    const failure = await client.panel('s-1').catch((e: unknown) => e);
    expect(failure).toBeInstanceOf(ApiError);
    const apiError = failure as ApiError;
    expect(apiError.status).toBe(409);
    expect(apiError.errorName).toBe('wrong_state');
    expect(apiError.detail).toBe('iteration 2 expected');
    expect(apiError.isConflict).toBe(true);
    expect(apiError.isNetwork).toBe(false);
  });

  it('falls back to a status-derived name when the body is not the envelope', async () => {
    const client = new ApiClient(
      '',
      async () => new Response('gateway exploded', { status: 502 }),
    );
    const failure = (await client.catalog().catch((e: unknown) => e)) as ApiError;
    expect(failure.errorName).toBe('http_502');
    expect(failure.detail).toBeNull();
  });

  it('turns transport failures into status 0 "network" errors', async () => {
    const client = new ApiClient('', async () => {
      throw new TypeError('fetch failed');
    });
    const failure = (await client.catalog().catch((e: unknown) => e)) as ApiError;
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(0);
    expect(failure.errorName).toBe('network');
    expect(failure.isNetwork).toBe(true);
    expect(failure.isConflict).toBe(false);
  });
});
