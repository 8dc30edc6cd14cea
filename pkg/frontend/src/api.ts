/**
 * Typed client for the morphdes gateway JSON API.
 *
 * Every document shape mirrors docs/schema.md of the backend. The client
 * performs no computation on the payloads: whatever the service returns is
 * handed to the views verbatim. At most one request per supersession key is
 * in flight; firing a new one aborts the previous.
 */

export interface QualityDoc {
  w: number;
  n: number[];
}

/** Selection maps child part id to an alternative id or a nested decision. */
export interface DecisionDoc extends QualityDoc {
  selection: Record<string, string | DecisionDoc>;
}

export interface FrontierDoc {
  node: string;
  decisions: DecisionDoc[];
}

export interface SpaceDoc {
  design_space_size: number;
}

export interface AlternativeDoc {
  id: string;
  label?: string;
  estimates: number[];
  priority?: number;
}

export interface PartDoc {
  id: string;
  label?: string;
  weights?: number[];
  children?: PartDoc[];
  alternatives?: AlternativeDoc[];
}

export interface CriterionDoc {
  id: string;
  label: string;
  orientation: 'maximize' | 'minimize';
  scale: [number, number];
}

export interface ModelDoc {
  schema_version: number;
  name: string;
  config: {
    k: number;
    l: number;
    default_compat: number;
    concordance_p: number;
    discordance_q: number;
  };
  criteria: CriterionDoc[];
  root: PartDoc;
  compat: { leaves: [string, string]; entries: [string, string, number][] }[];
}

export interface ActionDoc {
  kind: 'element-upgrade' | 'compat-upgrade';
  target: string | [string, string];
  from_level: number;
  to_level: number;
  spec: string;
}

export interface BottlenecksDoc {
  node: string;
  decision: DecisionDoc;
  elements: { id: string; priority: number }[];
  pairs: { pair: [string, string]; level: number }[];
  actions: ActionDoc[];
}

export interface WhatIfDoc {
  node: string;
  actions: ActionDoc[];
  quality_before: QualityDoc;
  quality_after: QualityDoc;
  dominance_delta: 'first-dominates' | 'second-dominates' | 'equal' | 'incomparable';
  now_dominates: DecisionDoc[];
  decision_after: DecisionDoc;
}

export interface RankRowDoc {
  alt: string;
  given: number | null;
  computed: number;
  match?: boolean;
  priority: number;
}

export interface RankDoc {
  params: { p: number; q: number };
  recompute: boolean;
  leaves: { leaf: string; weights_part: string; items: RankRowDoc[]; agreement: number | null }[];
  overall_agreement: number | null;
}

export interface ErrorDoc {
  error: string;
  node?: string;
  message?: string;
  diagnostics?: { severity: string; line: number; column: number; message: string }[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public doc: ErrorDoc,
  ) {
    super(doc.message ?? doc.error);
  }
}

export class ApiClient {
  private inflight = new Map<string, AbortController>();

  constructor(private base: string = '') {}

  /** Later calls with the same key abort the earlier request. */
  private supersede(key: string): AbortSignal {
    this.inflight.get(key)?.abort();
    const controller = new AbortController();
    this.inflight.set(key, controller);
    return controller.signal;
  }

  private async request<T>(path: string, init: RequestInit, key?: string): Promise<T> {
    if (key) init.signal = this.supersede(key);
    const resp = await fetch(this.base + path, init);
    const text = await resp.text();
    const doc = text ? JSON.parse(text) : {};
    if (!resp.ok) throw new ApiError(resp.status, doc as ErrorDoc);
    return doc as T;
  }

  getModel(): Promise<ModelDoc> {
    return this.request('/api/model', { method: 'GET' });
  }

  putModelDoc(doc: ModelDoc): Promise<ModelDoc> {
    return this.request('/api/model', {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(doc),
    });
  }

  getSpace(): Promise<SpaceDoc> {
    return this.request('/api/space', { method: 'GET' });
  }

  solve(node?: string, carryLayers?: number): Promise<FrontierDoc> {
    const params = new URLSearchParams();
    if (node) params.set('node', node);
    if (carryLayers) params.set('carry_layers', String(carryLayers));
    const query = params.toString();
    return this.request(
      `/api/solve${query ? '?' + query : ''}`,
      { method: 'GET' },
      `solve:${node ?? ''}`,
    );
  }

  bottlenecks(node: string, decision: number): Promise<BottlenecksDoc> {
    const params = new URLSearchParams({ node, decision: String(decision) });
    return this.request(`/api/bottlenecks?${params}`, { method: 'GET' }, `bottlenecks:${node}`);
  }

  whatif(node: string, decision: number | DecisionDoc, actions: string[]): Promise<WhatIfDoc> {
    return this.request(
      '/api/whatif',
      {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify({ node, decision, actions }),
      },
      `whatif:${node}`,
    );
  }

  rank(recompute: boolean): Promise<RankDoc> {
    return this.request('/api/rank', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ recompute }),
    });
  }
}
