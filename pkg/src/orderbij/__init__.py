"""Order-divisibility bijections from finite groups onto cyclic groups.

The core entry points are re-exported here; see the submodules for the rest.
"""

from .catalog import builtin_catalog, resolve_group
from .errors import OrderBijError
from .groups import CyclicModel, FiniteGroup, close_generators, from_cayley_table
from .lab import batch_verify, check_am, check_bij, check_min, classify
from .matching import divisibility_matching, find_coset_bijection, find_group_bijection
from .solutions import build_chain, is_nk_group, solution_set
from .symmetric import WeightFunction, psi_elementary, psi_power

__version__ = "0.1.0"

__all__ = [
    "CyclicModel",
    "FiniteGroup",
    "OrderBijError",
    "WeightFunction",
    "batch_verify",
    "build_chain",
    "builtin_catalog",
    "check_am",
    "check_bij",
    "check_min",
    "classify",
    "close_generators",
    "divisibility_matching",
    "find_coset_bijection",
    "find_group_bijection",
    "from_cayley_table",
    "is_nk_group",
    "psi_elementary",
    "psi_power",
    "resolve_group",
    "solution_set",
]
