"""Sortable elements, aligned elements, noncrossing partitions and clusters in finite Coxeter groups."""

from .alignment import alignment_violation, is_aligned, is_aligned_dyer, orient, orientation_cycle, reflection_order
from .classical import (
    Barring,
    OneLine,
    barring,
    condition_A,
    condition_B,
    condition_D,
    from_one_line,
    is_231_avoiding,
    to_one_line,
)
from .clusters import Cluster, cl_map, compatible, enumerate_clusters, mu, negative, sigma
from .elements import Element, format_word
from .enumeration import (
    CountReport,
    Degrees,
    VerificationReport,
    catalan_formula,
    count_report,
    degrees,
    positive_catalan_formula,
    verify_all,
)
from .errors import *  # noqa: F401,F403
from .noncrossing import NCPartition, TWord, absolute_length, canonical_T_word, le_T, nc_interval, nc_inverse, nc_map
from .root_system import CoxeterSystem, RankTwoParabolic, build_system, coxeter_matrix, named_matrix
from .sorting import (
    CoxeterElement,
    SortingWord,
    all_coxeter_elements,
    bipartite_path,
    enumerate_sortables,
    is_sortable,
    sortable_elements,
    sorting_word,
)

__version__ = "0.1.0"
