// Thin typed client over the sonification service JSON API.

export interface Meta {
  regions: string[];
  categories: string[];
  years: number[];
  config: unknown;
}

export interface SequentialRequest {
  region: string;
  category: string;
  mode: "frequency" | "amplitude";
}

export interface SequentialResponse {
  audio_url: string;
  graph: [string, number][];
  events: unknown[];
}

export interface ComparativeRequest {
  fixed: Record<string, string | number>;
  compare: (string | number)[];
}

export interface ComparativeResponse {
  audio_url: string;
  values: [number, number];
  louder: "a" | "b" | "equal";
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(detail);
  }
}

async function parseDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: string };
    return body.detail ?? `request failed with status ${response.status}`;
  } catch {
    return `request failed with status ${response.status}`;
  }
}

async function postJson<T>(url: string, body: unknown): Promise<T> {
  const response = await fetch(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!response.ok) {
    throw new ApiError(response.status, await parseDetail(response));
  }
  return (await response.json()) as T;
}

export interface ApiClient {
  fetchMeta(): Promise<Meta>;
  sonifySequential(request: SequentialRequest): Promise<SequentialResponse>;
  sonifyComparative(request: ComparativeRequest): Promise<ComparativeResponse>;
}

export function createApiClient(base = ""): ApiClient {
  return {
    async fetchMeta(): Promise<Meta> {
      const response = await fetch(`${base}/api/meta`);
      if (!response.ok) {
        throw new ApiError(response.status, await parseDetail(response));
      }
      return (await response.json()) as Meta;
    },
    sonifySequential(request: SequentialRequest): Promise<SequentialResponse> {
      return postJson(`${base}/api/sonify/sequential`, request);
    },
    sonifyComparative(request: ComparativeRequest): Promise<ComparativeResponse> {
      return postJson(`${base}/api/sonify/comparative`, request);
    },
  };
}
