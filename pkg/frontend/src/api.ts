// Thin typed client over the decision service. Every mutation goes
// through postEdit and carries the caller's base_version; a stale
// version surfaces as ConflictError, never as a silent retry.

import type {
  CellWrite,
  DecisionSummaryDto,
  DocumentDto,
  EditResultDto,
  PromptDto,
  Redaction,
  ScoresDto,
  StatusDto,
  SuggestionsDto,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
    this.name = 'ServiceError';
  }
}

export class ConflictError extends ServiceError {
  constructor(message: string, readonly currentVersion: number) {
    super(message, 409);
    this.name = 'ConflictError';
  }
}

async function errorBody(response: Response): Promise<string> {
  try {
    const data = await response.json();
    if (data && typeof data.error === 'string') return data.error;
  } catch {
    // non-JSON error body, fall through to the status line
  }
  return `${response.status} ${response.statusText}`;
}

export class ServiceClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path);
    if (!response.ok) throw new ServiceError(await errorBody(response), response.status);
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (response.status === 409) {
      const data = await response.json();
      throw new ConflictError(String(data.error ?? 'version conflict'), Number(data.current_version));
    }
    if (!response.ok) throw new ServiceError(await errorBody(response), response.status);
    return (await response.json()) as T;
  }

  listDecisions(): Promise<{ decisions: DecisionSummaryDto[] }> {
    return this.getJson('/decisions');
  }

  createDecision(body: {
    goal: string;
    alternatives: string[];
    attributes?: string[];
    scoring_goal?: string;
    id?: string;
  }): Promise<{ id: string; version: number; document: DocumentDto }> {
    return this.postJson('/decisions', body);
  }

  getDocument(id: string): Promise<DocumentDto> {
    return this.getJson(`/decisions/${encodeURIComponent(id)}`);
  }

  getStatus(id: string): Promise<StatusDto> {
    return this.getJson(`/decisions/${encodeURIComponent(id)}/status`);
  }

  getScores(id: string, redaction: Redaction): Promise<ScoresDto> {
    return this.getJson(`/decisions/${encodeURIComponent(id)}/scores?redaction=${redaction}`);
  }

  getSuggestions(id: string, nodeId: number, k = 5): Promise<SuggestionsDto> {
    return this.getJson(`/decisions/${encodeURIComponent(id)}/suggestions?node=${nodeId}&k=${k}`);
  }

  getPrompt(id: string, nodeId: number): Promise<PromptDto> {
    return this.getJson(`/decisions/${encodeURIComponent(id)}/prompt?node=${nodeId}`);
  }

  postEdit(
    id: string,
    baseVersion: number,
    op: string,
    args: Record<string, unknown> = {},
  ): Promise<EditResultDto> {
    return this.postJson(`/decisions/${encodeURIComponent(id)}/edits`, {
      base_version: baseVersion,
      op,
      args,
    });
  }

  addChild(id: string, baseVersion: number, parentId: number, name: string): Promise<EditResultDto> {
    return this.postEdit(id, baseVersion, 'add_child', { parent_id: parentId, name });
  }

  removeNode(id: string, baseVersion: number, nodeId: number): Promise<EditResultDto> {
    return this.postEdit(id, baseVersion, 'remove_node', { node_id: nodeId });
  }

  renameNode(id: string, baseVersion: number, nodeId: number, name: string): Promise<EditResultDto> {
    return this.postEdit(id, baseVersion, 'rename_node', { node_id: nodeId, name });
  }

  setImportance(id: string, baseVersion: number, nodeId: number, level: number): Promise<EditResultDto> {
    return this.postEdit(id, baseVersion, 'set_importance', { node_id: nodeId, level });
  }

  setNote(id: string, baseVersion: number, nodeId: number, text: string): Promise<EditResultDto> {
    return this.postEdit(id, baseVersion, 'set_note', { node_id: nodeId, text });
  }

  setCells(id: string, baseVersion: number, cells: CellWrite[]): Promise<EditResultDto> {
    return this.postEdit(id, baseVersion, 'set_cells', { cells });
  }

  sync(id: string, baseVersion: number): Promise<EditResultDto> {
    return this.postEdit(id, baseVersion, 'sync', {});
  }
}
