"""Exact computations with big Witt vectors and the K-groups they present."""

from .abgroup import AbGroupPresentation, GroupMap, format_group, snf
from .errors import DomainError, NotWellDefinedError, ResourceError, UsageError, WittkError
from .ktheory import (
    KGroupReport,
    k_group,
    k_group_even,
    ses_diagram_check,
    tower_cyclotomic,
    tower_fermat,
    unit_group_oracle,
    v_map,
)
from .nerve import cells, g_chain_map, homology, predicted_homology
from .truncation import TruncationSet, ts_divide, ts_interval
from .witt import (
    WittVector,
    decompose,
    frobenius,
    from_ghost,
    ghost,
    restrict,
    teichmuller,
    verschiebung,
)

__version__ = "0.1.0"
