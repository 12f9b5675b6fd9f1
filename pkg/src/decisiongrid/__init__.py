"""Decisions as value trees backed by spreadsheet-style tables.

The pieces: a sparse virtual grid (grid), a decision document with its
value tree (model), edit operations (ops), the tree-to-table sync
(materialize), judgment rollup and ranking (scoring), decomposition
aids (suggest), canonical persistence and exports (persistence), an
HTTP service (service) and a CLI (cli).
"""

from .errors import (
    DecisionError,
    NotFoundError,
    ParseError,
    ProviderError,
    SchemaVersionError,
    ScoreError,
    SyncRequiredError,
    ValidationError,
    VersionConflictError,
)
from .grid import (
    CellAddress,
    CellValue,
    ManagedTable,
    Rect,
    VirtualGrid,
    allocate_region,
    cell_display,
    mark_cell,
    number_cell,
    parse_cell_text,
    text_cell,
)
from .materialize import SyncReport, read_judgments, sync, sync_pending
from .model import (
    Alternative,
    AttributeNode,
    DecisionDocument,
    ExclusionRecord,
    Judgment,
    LeafScale,
    Tombstone,
    ValueTree,
    new_decision,
    validate,
)
from .ops import (
    add_child,
    exclude_alternative,
    include_alternative,
    remove_node,
    rename_node,
    restore_tombstone,
    set_cell,
    set_cells,
    set_importance,
    set_note,
)
from .persistence import (
    export_report,
    export_tables_csv,
    load,
    load_file,
    save,
    save_file,
)
from .scoring import (
    ScoreSheet,
    band_label,
    effective_leaf_weights,
    fuzzy_band,
    leaf_score,
    rank,
    rollup,
)
from .suggest import (
    RemoteCompletionProvider,
    StaticCorpusProvider,
    accept_suggestion,
    reflection_prompt,
    suggest_subattributes,
)

__version__ = "0.1.0"
