"""Slice-based complementation of Buchi automata.

A slice is a tuple of nodes ``(mask, deco)`` read left to right, where
``mask`` is an int bitmask of automaton states and ``deco`` is one of
``"0"``, ``"*"``, ``"1"`` or ``None`` (undecorated).  The empty tuple is the
empty slice, which counts both as undecorated and decorated.

The complement's states are slices; undecorated slices follow the reduced
split tree, decorated slices verify a guessed cutoff.  The heuristics of the
improved construction are independent switches on :class:`SliceConfig`.
"""
from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .automaton import Automaton, AutomatonError, Buchi

ZERO, STAR, ONE = "0", "*", "1"
BOTTOM: tuple = ()

Node = tuple  # (mask: int, deco: str | None)
Slice = tuple  # tuple[Node, ...]

DEFAULT_MAX_STATES = 10**6


class BudgetExceeded(RuntimeError):
    def __init__(self, states_built: int):
        super().__init__(f"state budget exceeded after {states_built} states")
        self.states_built = states_built


class DeadlineExceeded(RuntimeError):
    pass


class NotDecorated(ValueError):
    pass


@dataclass(frozen=True)
class SliceConfig:
    use_d: bool = False
    use_r: bool = False
    use_m: bool = False

    @classmethod
    def parse(cls, flags: str | Iterable[str]) -> "SliceConfig":
        letters = set("".join(flags).upper())
        return cls("D" in letters, "R" in letters, "M" in letters)

    @property
    def name(self) -> str:
        return "".join(f for f, on in (("D", self.use_d), ("R", self.use_r), ("M", self.use_m)) if on)


ALL_CONFIGS = tuple(SliceConfig(d, r, m) for d in (False, True) for r in (False, True)
                    for m in (False, True))


# -- building and inspecting slices --------------------------------------------

def mask_of(states: Iterable[int]) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def states_of(mask: int) -> frozenset[int]:
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return frozenset(out)


def make_slice(sets: Sequence[Iterable[int]], decorations: Optional[str | Sequence[str]] = None) -> Slice:
    """``make_slice([{1}, {0}], "*1")`` builds ({q1},*)({q0},1)."""
    masks = [mask_of(s) for s in sets]
    if any(m == 0 for m in masks):
        raise ValueError("slice nodes must be nonempty")
    seen = 0
    for m in masks:
        if seen & m:
            raise ValueError("slice nodes must be pairwise disjoint")
        seen |= m
    if decorations is None:
        return tuple((m, None) for m in masks)
    decorations = list(decorations)
    if len(decorations) != len(masks) or any(d not in (ZERO, STAR, ONE) for d in decorations):
        raise ValueError("need one decoration from {0, *, 1} per node")
    return tuple(zip(masks, decorations))


def is_decorated(s: Slice) -> bool:
    return not s or s[0][1] is not None


def is_undecorated(s: Slice) -> bool:
    return not s or s[0][1] is None


def proj_q(s: Slice) -> Slice:
    return tuple((m, None) for m, _ in s)


def proj_d(s: Slice) -> frozenset[str]:
    return frozenset(d for _, d in s)


def slice_sets(s: Slice) -> list[frozenset[int]]:
    return [states_of(m) for m, _ in s]


def _need_decorated(s: Slice):
    if not is_decorated(s):
        raise NotDecorated("operation needs a decorated slice")


def is_reset(s: Slice) -> bool:
    _need_decorated(s)
    return all(d != ZERO for _, d in s)


def is_doomed(s: Slice) -> bool:
    _need_decorated(s)
    return all(d != ONE for _, d in s)


def _set_label(mask: int, names: Sequence[str] | None) -> str:
    qs = sorted(states_of(mask))
    return "{" + ",".join(names[q] if names else f"q{q}" for q in qs) + "}"


def slice_label(s: Slice, names: Sequence[str] | None = None) -> str:
    """Printable form, e.g. ``{q1}*|{q0}1``; the empty slice prints as ``⊥``."""
    if not s:
        return "⊥"
    return "|".join(_set_label(m, names) + (d or "") for m, d in s)


# -- transition functions -------------------------------------------------------

class SliceContext:
    """Per-automaton tables: successor masks by symbol, accepting mask."""

    def __init__(self, a: Automaton):
        if not a.is_buchi:
            raise AutomatonError("slice complementation needs a Buchi automaton")
        self.automaton = a
        self.acc_mask = mask_of(a.accepting)
        self.succ = [[mask_of(a.delta[q][i]) for q in range(a.num_states)]
                     for i in range(len(a.alphabet))]
        self._post_cache: list[dict[int, int]] = [{} for _ in a.alphabet]

    def sym(self, sym: str | int) -> int:
        return sym if isinstance(sym, int) else self.automaton.symbol_index(sym)

    def post(self, mask: int, i: int) -> int:
        cache = self._post_cache[i]
        out = cache.get(mask)
        if out is None:
            succ = self.succ[i]
            out = 0
            m, q = mask, 0
            while m:
                if m & 1:
                    out |= succ[q]
                m >>= 1
                q += 1
            cache[mask] = out
        return out

    def split(self, s: Slice, i: int) -> list[tuple[int, int]]:
        """Per node, the (accepting, nonaccepting) children before empty
        nodes are dropped."""
        acc = self.acc_mask
        seen = 0
        out = []
        for m, _ in s:
            post = self.post(m, i) & ~seen
            left = post & acc
            right = post & ~acc
            seen |= post
            out.append((left, right))
        return out


def slice_successor(ctx: SliceContext, s: Slice, sym) -> Slice:
    """Next level of the reduced split tree (undecorated)."""
    i = ctx.sym(sym)
    out = []
    for left, right in ctx.split(s, i):
        if left:
            out.append((left, None))
        if right:
            out.append((right, None))
    return tuple(out)


def guess_decorations(ctx: SliceContext, s: Slice, sym, use_d: bool) -> list[Slice]:
    """Decorated successors entering the second phase."""
    if not is_undecorated(s):
        raise ValueError("decorations are guessed from undecorated slices only")
    i = ctx.sym(sym)
    if use_d:
        out = []
        for left, right in ctx.split(s, i):
            if left:
                out.append((left, ZERO))
            if right:
                out.append((right, ONE))
        return [tuple(out)]
    masks = [m for m, _ in slice_successor(ctx, s, i)]
    return [tuple(zip(masks, decos)) for decos in itertools.product((ZERO, ONE), repeat=len(masks))]


def decorated_successor(ctx: SliceContext, s: Slice, sym, use_d: bool) -> Optional[Slice]:
    """Second-phase successor, or ``None`` when a 1-node has no
    nonaccepting child and C1 is in force (``use_d`` off)."""
    _need_decorated(s)
    i = ctx.sym(sym)
    reset = all(d != ZERO for _, d in s)
    out = []
    for (left, right), (_, d) in zip(ctx.split(s, i), s):
        if d == ONE:
            if not use_d and not right:
                return None
            dl, dr = (ZERO, ONE) if reset else (STAR, ONE)
        elif d == STAR:
            dl = dr = ZERO if reset else STAR
        else:
            dl = dr = ZERO
        if left:
            out.append((left, dl))
        if right:
            out.append((right, dr))
    return tuple(out)


def merge_slice(s: Slice) -> Slice:
    """Union adjacent nodes that are both 0 or both *."""
    _need_decorated(s)
    out: list[Node] = []
    for m, d in s:
        if out and d != ONE and out[-1][1] == d:
            out[-1] = (out[-1][0] | m, d)
        else:
            out.append((m, d))
    return tuple(out)


def _mergible(a: Node, b: Node) -> bool:
    return a[1] == b[1] and a[1] in (ZERO, STAR)


def merge_ij(s: Slice, i: int, j: int) -> Slice:
    """Merge at most ``j`` consecutive mergible nodes, starting at the
    ``i``-th mergible pair (1-based).  Unchanged if there is no such pair."""
    _need_decorated(s)
    pairs = [k for k in range(len(s) - 1) if _mergible(s[k], s[k + 1])]
    if i < 1 or i > len(pairs) or j < 2:
        return s
    start = pairs[i - 1]
    end = start + 1
    while end + 1 < len(s) and end - start + 1 < j and _mergible(s[end], s[end + 1]):
        end += 1
    mask = 0
    for m, _ in s[start:end + 1]:
        mask |= m
    return s[:start] + ((mask, s[start][1]),) + s[end + 1:]


def slice_transitions(ctx: SliceContext, s: Slice, sym, cfg: SliceConfig) -> list[Slice]:
    """Successors of complement state ``s`` on ``sym`` under ``cfg``,
    deduplicated, in a deterministic order."""
    if not s:
        return [BOTTOM]
    i = ctx.sym(sym)
    if s[0][1] is None:
        out = [slice_successor(ctx, s, i)]
        for g in guess_decorations(ctx, s, i, cfg.use_d):
            if cfg.use_r and g and is_doomed(g):
                continue
            out.append(merge_slice(g) if cfg.use_m else g)
    else:
        t = decorated_successor(ctx, s, i, cfg.use_d)
        if t is None or (cfg.use_r and is_doomed(t)):
            return []
        out = [merge_slice(t) if cfg.use_m else t]
    return list(dict.fromkeys(out))


# -- the construction ------------------------------------------------------------

def complement_slice(a: Automaton, cfg: SliceConfig = SliceConfig(),
                     max_states: int = DEFAULT_MAX_STATES,
                     deadline: Optional[float] = None) -> Automaton:
    """Complement NBW whose states are slices; only reachable states are
    built.  ``deadline`` is a ``time.monotonic()`` value."""
    ctx = SliceContext(a)
    init: Slice = ((1 << a.initial, None),)
    index = {init: 0}
    order = [init]
    rows: list[list[frozenset[int]]] = []
    nsym = len(a.alphabet)
    queue = deque([init])
    expanded = 0
    while queue:
        s = queue.popleft()
        expanded += 1
        if deadline is not None and (expanded & 127) == 1 and time.monotonic() > deadline:
            raise DeadlineExceeded()
        row = []
        for i in range(nsym):
            targets = []
            for t in slice_transitions(ctx, s, i, cfg):
                k = index.get(t)
                if k is None:
                    k = len(order)
                    if k >= max_states:
                        raise BudgetExceeded(k + 1)
                    index[t] = k
                    order.append(t)
                    queue.append(t)
                targets.append(k)
            row.append(frozenset(targets))
        rows.append(row)
    accepting = frozenset(k for k, s in enumerate(order) if is_decorated(s) and is_reset(s))
    names = a.labels
    labels = tuple(slice_label(s, names) for s in order)
    return Automaton(a.alphabet, len(order), 0, tuple(tuple(r) for r in rows),
                     Buchi(accepting), labels)


def reduced_split_tree_prefix(a: Automaton, word: Sequence[str]) -> list[Slice]:
    """Slices of the reduced split tree on a finite word, root first."""
    ctx = SliceContext(a)
    s: Slice = ((1 << a.initial, None),)
    out = [s]
    for sym in word:
        s = slice_successor(ctx, s, sym)
        out.append(s)
    return out


def decorated_trace(a: Automaton, word: Sequence[str], start: int = 1,
                    use_m: bool = False) -> list[Slice]:
    """Levels of the deterministically decorated reduced split tree: the
    first ``start - 1`` levels stay undecorated, level ``start`` takes the
    deterministic guess, later levels follow the decoration rules."""
    if start < 1:
        raise ValueError("decoration starts at level 1 or later")
    ctx = SliceContext(a)
    s: Slice = ((1 << a.initial, None),)
    out = [s]
    for level, sym in enumerate(word, 1):
        if level < start:
            s = slice_successor(ctx, s, sym)
        elif level == start:
            s = guess_decorations(ctx, s, sym, use_d=True)[0]
        else:
            s = decorated_successor(ctx, s, sym, use_d=True)
        if use_m and level >= start:
            s = merge_slice(s)
        out.append(s)
    return out
