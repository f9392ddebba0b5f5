"""Slice-based Buchi complementation with its heuristics, the parity
conversion back end, and a lasso-word oracle for checking the results."""

from .automaton import (
    Automaton, AutomatonError, Buchi, Parity, StateStats, live, prune_dead, reachable,
    state_stats,
)
from .lasso import (
    LassoWord, Verdict, check_complement, check_equivalent, enumerate_lassos, member,
    member_nbw, member_npw,
)
from .oaf import emit_oaf, parse_oaf
from .parity import (
    complement_dpw, parity_equiv_classes, parity_to_buchi_improved, parity_to_buchi_typical,
    simplify_npw,
)
from .preopt import compute_simulation, maximize_acceptance, simplify_nbw
from .randgen import GenSpec, generate
from .slices import BudgetExceeded, SliceConfig, complement_slice

__all__ = [
    "Automaton", "AutomatonError", "Buchi", "Parity", "StateStats", "live", "prune_dead",
    "reachable", "state_stats", "LassoWord", "Verdict", "check_complement",
    "check_equivalent", "enumerate_lassos", "member", "member_nbw", "member_npw",
    "emit_oaf", "parse_oaf", "complement_dpw", "parity_equiv_classes",
    "parity_to_buchi_improved", "parity_to_buchi_typical", "simplify_npw",
    "compute_simulation", "maximize_acceptance", "simplify_nbw", "GenSpec", "generate",
    "BudgetExceeded", "SliceConfig", "complement_slice",
]
