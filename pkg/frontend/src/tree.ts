// Read-side helpers over the document DTO: tree walking, importance
// cycling, effective weight shares, and cell text formatting.

import type { AlternativeDto, CellDto, DocumentDto, NodeDto, TableDto } from './types.js';

export const IMPORTANCE_LEVELS = [1, 2, 4, 10] as const;

export function importanceLabel(level: number): string {
  return `x${level}`;
}

// x1 -> x2 -> x4 -> x10 -> x1, the only importance edit the UI offers.
export function nextImportance(level: number): number {
  const at = IMPORTANCE_LEVELS.indexOf(level as (typeof IMPORTANCE_LEVELS)[number]);
  return IMPORTANCE_LEVELS[(at + 1) % IMPORTANCE_LEVELS.length] ?? 1;
}

export function getNode(doc: DocumentDto, nodeId: number): NodeDto {
  const node = doc.tree.nodes[String(nodeId)];
  if (!node) throw new Error(`no node ${nodeId}`);
  return node;
}

export function childrenOf(doc: DocumentDto, nodeId: number): number[] {
  return doc.tree.children[String(nodeId)] ?? [];
}

export function isPrimitive(doc: DocumentDto, nodeId: number): boolean {
  return childrenOf(doc, nodeId).length === 0;
}

export function parentOf(doc: DocumentDto, nodeId: number): number | null {
  for (const [pid, kids] of Object.entries(doc.tree.children)) {
    if (kids.includes(nodeId)) return Number(pid);
  }
  return null;
}

export function nodePath(doc: DocumentDto, nodeId: number): string[] {
  const names: string[] = [];
  let at: number | null = nodeId;
  while (at !== null) {
    names.unshift(getNode(doc, at).name);
    at = at === doc.tree.root_id ? null : parentOf(doc, at);
  }
  return names;
}

/**
 * Share of the root's weight carried by each node: the root holds 1,
 * and every child takes its importance fraction of its parent's share.
 * For leaves this matches the weights the scorer folds judgments with.
 */
export function weightShares(doc: DocumentDto): Map<number, number> {
  const shares = new Map<number, number>();
  const walk = (nodeId: number, share: number) => {
    shares.set(nodeId, share);
    const kids = childrenOf(doc, nodeId);
    if (kids.length === 0) return;
    let total = 0;
    for (const kid of kids) total += getNode(doc, kid).importance;
    for (const kid of kids) {
      walk(kid, share * (getNode(doc, kid).importance / total));
    }
  };
  walk(doc.tree.root_id, 1);
  return shares;
}

export function liveAlternatives(doc: DocumentDto): AlternativeDto[] {
  return doc.alternatives.filter((alt) => alt.excluded === null);
}

export function tableFor(doc: DocumentDto, nodeId: number): TableDto | undefined {
  return doc.registry.find((t) => t.node_id === nodeId);
}

export function cellAt(doc: DocumentDto, row: number, col: number): CellDto | undefined {
  return doc.grid.cells[`${row},${col}`];
}

export function cellText(cell: CellDto | undefined): string {
  if (!cell) return '';
  if (cell.kind === 'text') return cell.text ?? '';
  if (cell.kind === 'number') return cell.value ?? '';
  return 'X'.repeat(cell.count ?? 0);
}

export interface GridExtent {
  rows: number;
  cols: number;
}

// Smallest rectangle from the origin covering every cell and table.
export function gridExtent(doc: DocumentDto): GridExtent {
  let rows = 0;
  let cols = 0;
  for (const key of Object.keys(doc.grid.cells)) {
    const [r, c] = key.split(',').map(Number);
    rows = Math.max(rows, (r ?? 0) + 1);
    cols = Math.max(cols, (c ?? 0) + 1);
  }
  for (const table of doc.registry) {
    rows = Math.max(rows, table.anchor[0] + table.n_rows);
    cols = Math.max(cols, table.anchor[1] + table.n_cols);
  }
  return { rows, cols };
}

export type CellRole =
  | { kind: 'outside' }
  | { kind: 'header'; table: TableDto }
  | { kind: 'label'; table: TableDto; alternativeRow: number }
  | { kind: 'judgment'; table: TableDto; childId: number; alternativeRow: number };

// What a grid position means: judgment cells are the only editable
// ones, header and label cells belong to the managed structure.
export function roleAt(doc: DocumentDto, row: number, col: number): CellRole {
  for (const table of doc.registry) {
    const [ar, ac] = table.anchor;
    if (row < ar || row >= ar + table.n_rows) continue;
    if (col < ac || col >= ac + table.n_cols) continue;
    if (row === ar) return { kind: 'header', table };
    if (col === ac) return { kind: 'label', table, alternativeRow: row - ar - 1 };
    const childId = table.column_bindings[col - ac - 1];
    if (childId === undefined) return { kind: 'header', table };
    return { kind: 'judgment', table, childId, alternativeRow: row - ar - 1 };
  }
  return { kind: 'outside' };
}
