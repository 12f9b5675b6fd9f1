// Client-side session state. The store never owns the document: every
// action posts an edit with the version it last fetched, then fetches
// the document again, so what the views render is always a service
// response. A stale version flips the store into a conflict state that
// only an explicit reload clears.

import { ConflictError, ServiceClient, ServiceError } from './api.js';
import { getNode } from './tree.js';
import type {
  CellWrite,
  DocumentDto,
  PromptDto,
  Redaction,
  ScoresDto,
  SuggestionsDto,
} from './types.js';

export type Listener = () => void;

export interface ConflictState {
  currentVersion: number;
  message: string;
}

export class AppStore {
  doc: DocumentDto | null = null;
  selectedId: number | null = null;
  scores: ScoresDto | null = null;
  scoreProblem: string | null = null;
  redaction: Redaction = 'bands';
  suggestions: SuggestionsDto | null = null;
  prompt: PromptDto | null = null;
  busy = false;
  conflict: ConflictState | null = null;
  lastError: string | null = null;

  private listeners: Listener[] = [];

  constructor(
    readonly client: ServiceClient,
    readonly docId: string,
  ) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  async load(): Promise<void> {
    this.doc = await this.client.getDocument(this.docId);
    if (this.selectedId === null || !this.doc.tree.nodes[String(this.selectedId)]) {
      this.selectedId = this.doc.tree.root_id;
    }
    await this.refreshSidecars();
    this.notify();
  }

  // scores, suggestions and the prompt all re-derive from the current
  // document, so they are refetched whenever the document is
  private async refreshSidecars(): Promise<void> {
    await Promise.all([this.refreshScores(), this.refreshSelection()]);
  }

  private async refreshScores(): Promise<void> {
    try {
      this.scores = await this.client.getScores(this.docId, this.redaction);
      this.scoreProblem = null;
    } catch (err) {
      if (err instanceof ServiceError && err.status === 400) {
        this.scores = null;
        this.scoreProblem = err.message;
      } else {
        throw err;
      }
    }
  }

  private async refreshSelection(): Promise<void> {
    if (this.selectedId === null || !this.doc) return;
    const [suggestions, prompt] = await Promise.all([
      this.client.getSuggestions(this.docId, this.selectedId).catch((err) => {
        this.lastError = err instanceof Error ? err.message : String(err);
        return null;
      }),
      this.client.getPrompt(this.docId, this.selectedId),
    ]);
    this.suggestions = suggestions;
    this.prompt = prompt;
  }

  async select(nodeId: number): Promise<void> {
    if (!this.doc) return;
    getNode(this.doc, nodeId);
    this.selectedId = nodeId;
    this.suggestions = null;
    this.prompt = null;
    this.notify();
    await this.refreshSelection();
    this.notify();
  }

  async setRedaction(mode: Redaction): Promise<void> {
    this.redaction = mode;
    await this.refreshScores();
    this.notify();
  }

  /**
   * Run one edit against the service and refetch. Refuses while a
   * mutation is already in flight or while a conflict is unresolved;
   * returns whether the edit was accepted.
   */
  private async applyEdit(
    run: (baseVersion: number) => Promise<unknown>,
  ): Promise<boolean> {
    if (!this.doc) return false;
    if (this.busy) {
      this.lastError = 'still saving the previous change';
      this.notify();
      return false;
    }
    if (this.conflict) {
      this.lastError = 'resolve the version conflict first (reload)';
      this.notify();
      return false;
    }
    this.busy = true;
    this.lastError = null;
    this.notify();
    try {
      await run(this.doc.version);
      await this.load();
      return true;
    } catch (err) {
      if (err instanceof ConflictError) {
        this.conflict = { currentVersion: err.currentVersion, message: err.message };
      } else {
        this.lastError = err instanceof Error ? err.message : String(err);
      }
      return false;
    } finally {
      this.busy = false;
      this.notify();
    }
  }

  // Discard what we were showing and refetch; the only way out of a
  // conflict. Never writes anything back.
  async reload(): Promise<void> {
    this.conflict = null;
    this.lastError = null;
    await this.load();
  }

  addChild(parentId: number, name: string): Promise<boolean> {
    return this.applyEdit((base) => this.client.addChild(this.docId, base, parentId, name));
  }

  // click-to-add from the suggestion pane: the candidate text becomes
  // a child of the selected node verbatim
  acceptSuggestion(candidate: string): Promise<boolean> {
    if (this.selectedId === null) return Promise.resolve(false);
    return this.addChild(this.selectedId, candidate);
  }

  removeNode(nodeId: number): Promise<boolean> {
    return this.applyEdit((base) => this.client.removeNode(this.docId, base, nodeId));
  }

  renameNode(nodeId: number, name: string): Promise<boolean> {
    return this.applyEdit((base) => this.client.renameNode(this.docId, base, nodeId, name));
  }

  setImportance(nodeId: number, level: number): Promise<boolean> {
    return this.applyEdit((base) => this.client.setImportance(this.docId, base, nodeId, level));
  }

  setNote(nodeId: number, text: string): Promise<boolean> {
    return this.applyEdit((base) => this.client.setNote(this.docId, base, nodeId, text));
  }

  setCells(cells: CellWrite[]): Promise<boolean> {
    return this.applyEdit((base) => this.client.setCells(this.docId, base, cells));
  }

  // the "Save and Sync to Sheet" action; the refetch inside applyEdit
  // is what refreshes the table view
  saveAndSync(): Promise<boolean> {
    return this.applyEdit((base) => this.client.sync(this.docId, base));
  }
}
