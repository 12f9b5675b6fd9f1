// Wire shapes, mirrored from the service's JSON responses.

export interface CellDto {
  kind: 'text' | 'number' | 'mark';
  text?: string;
  value?: string;
  count?: number;
}

export interface LeafScaleDto {
  min: string;
  max: string;
  direction: 'higher_is_better' | 'lower_is_better';
}

export interface NodeDto {
  id: number;
  name: string;
  importance: number;
  note: string;
  leaf_scale: LeafScaleDto | null;
}

export interface AlternativeDto {
  label: string;
  declaration_index: number;
  excluded: { rationale: string; at_version: number } | null;
}

export interface TableDto {
  node_id: number;
  anchor: [number, number];
  n_rows: number;
  n_cols: number;
  column_bindings: number[];
}

export interface DocumentDto {
  schema_version: number;
  id: string;
  goal: string;
  scoring_goal: string;
  version: number;
  alternatives: AlternativeDto[];
  tree: {
    root_id: number;
    next_id: number;
    nodes: Record<string, NodeDto>;
    children: Record<string, number[]>;
  };
  grid: { cells: Record<string, CellDto> };
  registry: TableDto[];
  tombstones: unknown[];
}

export interface StatusDto {
  id: string;
  version: number;
  sync_pending: boolean;
  live_alternatives: string[];
}

export interface EditResultDto {
  id: string;
  version: number;
  result: Record<string, unknown>;
}

export type Redaction = 'full' | 'bands' | 'ranks';

export interface ScoreEntryDto {
  label: string;
  score?: number;
  band?: string;
  source?: string;
  missing?: boolean;
}

export interface ScoresDto {
  redaction: Redaction;
  entries: ScoreEntryDto[];
  recommendation: string;
  diagnostics: string[];
  report: string;
}

export interface SuggestionsDto {
  node: number;
  provider: string;
  candidates: string[];
}

export interface PromptDto {
  node: number;
  prompt: string;
}

export interface DecisionSummaryDto {
  id: string;
  goal: string;
  scoring_goal: string;
  version: number;
}

// The value side of a set_cells write: raw typed text is interpreted
// server-side the way a spreadsheet would (blank erases, X runs are
// mark tallies, numerics are numbers).
export interface CellWrite {
  row: number;
  col: number;
  value: string | number | null | CellDto;
}
