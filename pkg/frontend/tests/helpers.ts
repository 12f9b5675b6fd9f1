// Document fixtures shaped like service responses, plus a scripted
// client stub for store and DOM tests.

import type { ServiceClient } from '../src/api.js';
import type { CellDto, DocumentDto, NodeDto } from '../src/types.js';

export interface NodeSpec {
  id: number;
  name: string;
  importance?: number;
  note?: string;
  children?: NodeSpec[];
}

function flatten(
  spec: NodeSpec,
  nodes: Record<string, NodeDto>,
  children: Record<string, number[]>,
): void {
  nodes[String(spec.id)] = {
    id: spec.id,
    name: spec.name,
    importance: spec.importance ?? 1,
    note: spec.note ?? '',
    leaf_scale:
      spec.children && spec.children.length > 0
        ? null
        : { min: '0', max: '10', direction: 'higher_is_better' },
  };
  children[String(spec.id)] = (spec.children ?? []).map((c) => c.id);
  for (const child of spec.children ?? []) flatten(child, nodes, children);
}

export function makeDoc(
  root: NodeSpec,
  options: {
    alternatives?: string[];
    version?: number;
    cells?: Record<string, CellDto>;
    registry?: DocumentDto['registry'];
    goal?: string;
  } = {},
): DocumentDto {
  const nodes: Record<string, NodeDto> = {};
  const children: Record<string, number[]> = {};
  flatten(root, nodes, children);
  const labels = options.alternatives ?? ['Monday', 'Tuesday'];
  return {
    schema_version: 1,
    id: 'doc-1',
    goal: options.goal ?? 'Scoring days',
    scoring_goal: '',
    version: options.version ?? 0,
    alternatives: labels.map((label, i) => ({
      label,
      declaration_index: i,
      excluded: null,
    })),
    tree: {
      root_id: root.id,
      next_id: Math.max(...Object.keys(nodes).map(Number)) + 1,
      nodes,
      children,
    },
    grid: { cells: options.cells ?? {} },
    registry: options.registry ?? [],
    tombstones: [],
  };
}

// the five-attribute tree from the bundled walkthrough fixture
export function workdayDoc(version = 0): DocumentDto {
  return makeDoc(
    {
      id: 0,
      name: 'Scoring remote work days',
      children: [
        { id: 1, name: 'Employee preferences' },
        { id: 2, name: 'Calendar obligations' },
        { id: 3, name: 'Productivity impact' },
        { id: 4, name: 'Office space constraints' },
        { id: 5, name: 'Fairness across teams' },
      ],
    },
    {
      alternatives: ['Monday', 'Tuesday', 'Wednesday', 'Thursday', 'Friday'],
      version,
    },
  );
}

export interface Call {
  method: string;
  args: unknown[];
}

/**
 * Minimal scripted stand-in for ServiceClient: canned responses per
 * method, every call recorded. Pass overrides to make a method fail
 * or return something specific.
 */
export function stubClient(
  doc: DocumentDto,
  overrides: Partial<Record<string, (...args: unknown[]) => unknown>> = {},
): { client: ServiceClient; calls: Call[] } {
  const calls: Call[] = [];
  const state = { doc };

  const respond = (method: string, fallback: (...args: unknown[]) => unknown) =>
    (...args: unknown[]) => {
      calls.push({ method, args });
      const handler = overrides[method] ?? fallback;
      return Promise.resolve(handler(...args));
    };

  const edit = (method: string) =>
    respond(method, () => {
      state.doc = { ...state.doc, version: state.doc.version + 1 };
      return { id: state.doc.id, version: state.doc.version, result: {} };
    });

  const client = {
    baseUrl: 'stub://service',
    getDocument: respond('getDocument', () => state.doc),
    getStatus: respond('getStatus', () => ({
      id: state.doc.id,
      version: state.doc.version,
      sync_pending: false,
      live_alternatives: state.doc.alternatives.map((a) => a.label),
    })),
    getScores: respond('getScores', (_id, redaction) => ({
      redaction,
      entries: state.doc.alternatives.map((a) => ({ label: a.label, band: 'mid' })),
      recommendation: state.doc.alternatives[0]?.label ?? '',
      diagnostics: [],
      report: 'stub report',
    })),
    getSuggestions: respond('getSuggestions', (_id, node) => ({
      node,
      provider: 'static',
      candidates: ['workload', 'meetings'],
    })),
    getPrompt: respond('getPrompt', (_id, node) => ({
      node,
      prompt: 'Describe how you would judge/measure this attribute for each alternative.',
    })),
    listDecisions: respond('listDecisions', () => ({ decisions: [] })),
    createDecision: respond('createDecision', () => {
      throw new Error('not scripted');
    }),
    postEdit: edit('postEdit'),
    addChild: edit('addChild'),
    removeNode: edit('removeNode'),
    renameNode: edit('renameNode'),
    setImportance: edit('setImportance'),
    setNote: edit('setNote'),
    setCells: edit('setCells'),
    sync: edit('sync'),
  } as unknown as ServiceClient;

  return { client, calls };
}

export function callsTo(calls: Call[], method: string): Call[] {
  return calls.filter((c) => c.method === method);
}
