"""Back end of the determinization route: complementing a DPW, simplifying
the resulting parity automaton, and converting parity automata to Buchi.

The determinizer itself is not provided; DPWs come from files or samplers.
Anything with ``__call__(nbw) -> dpw`` can be plugged in front of
:func:`complement_via_dpw`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Optional

from .automaton import Automaton, AutomatonError, Buchi, Parity
from .preopt import simplify_by_simulation

Determinizer = Callable[[Automaton], Automaton]


def complement_dpw(a: Automaton) -> Automaton:
    """Shift every priority by one; flips min-even acceptance."""
    if not a.is_parity:
        raise AutomatonError("complement_dpw needs a parity automaton")
    if not a.is_deterministic():
        raise AutomatonError("complement_dpw needs a deterministic (complete) automaton")
    return a.with_acceptance(Parity(tuple(p + 1 for p in a.priority)))


def simplify_npw(a: Automaton) -> Automaton:
    """+S: simulation-based simplification with equal-priority matching."""
    if not a.is_parity:
        raise AutomatonError("simplify_npw needs a parity automaton")
    return simplify_by_simulation(a)


@dataclass(frozen=True)
class ParityClass:
    members: frozenset[int]
    pivot: int

    def label(self, a: Automaton) -> str:
        return "{" + ",".join(a.label(q) for q in sorted(self.members)) + "}"


def _category(p: int, pivot: int) -> int:
    return (p > pivot) - (p < pivot)


def parity_equiv_classes(a: Automaton, pivot: int) -> list[ParityClass]:
    """Partition by identical successors and the same side of ``pivot``;
    classes are listed by their smallest member."""
    if pivot % 2 or pivot < 0:
        raise ValueError(f"pivot must be an even natural, got {pivot}")
    groups: dict[tuple, list[int]] = {}
    for q in range(a.num_states):
        key = (a.delta[q], _category(a.priority[q], pivot))
        groups.setdefault(key, []).append(q)
    return [ParityClass(frozenset(g), pivot) for g in groups.values()]


def _explore(a: Automaton, init: Hashable, step, accepting, label) -> Automaton:
    index = {init: 0}
    order = [init]
    rows = []
    queue = deque([init])
    while queue:
        s = queue.popleft()
        row = []
        for i in range(len(a.alphabet)):
            targets = set()
            for t in step(s, i):
                k = index.get(t)
                if k is None:
                    k = index[t] = len(order)
                    order.append(t)
                    queue.append(t)
                targets.add(k)
            row.append(frozenset(targets))
        rows.append(tuple(row))
    acc = frozenset(k for k, s in enumerate(order) if accepting(s))
    return Automaton(a.alphabet, len(order), 0, tuple(rows), Buchi(acc),
                     tuple(label(s) for s in order))


def parity_to_buchi_typical(a: Automaton) -> Automaton:
    """States (q, 2k): track 0 guesses a track 2k > 0, which then only
    visits priorities >= 2k and accepts on priority exactly 2k."""
    pri = a.priority
    tracks = range(0, 2 * a.acceptance.r + 1, 2)

    def step(s, i):
        q, k = s
        for t in a.delta[q][i]:
            if k == 0:
                yield (t, 0)
                for k2 in tracks[1:]:
                    yield (t, k2)
            elif pri[t] >= k:
                yield (t, k)

    return _explore(a, (a.initial, 0), step,
                    lambda s: pri[s[0]] == s[1],
                    lambda s: f"({a.label(s[0])},{s[1]})")


def parity_to_buchi_improved(a: Automaton) -> Automaton:
    """+E: states are (class w.r.t. 2k, 2k); a track 2k > 0 is entered only
    at a state of priority exactly 2k."""
    pri = a.priority
    tracks = list(range(0, 2 * a.acceptance.r + 1, 2))
    class_of: dict[int, list[ParityClass]] = {}
    for k in tracks:
        lookup: list[Optional[ParityClass]] = [None] * a.num_states
        for c in parity_equiv_classes(a, k):
            members = sorted(c.members)
            first = a.delta[members[0]]
            if any(a.delta[m] != first for m in members):
                raise AssertionError("class members must share successors")
            for m in members:
                lookup[m] = c
        class_of[k] = lookup

    def rep(c: ParityClass) -> int:
        return min(c.members)

    def step(s, i):
        c, k = s
        succ = a.delta[rep(c)][i]
        for t in succ:
            # TR2 (also the track-0 continuation)
            if pri[t] >= k:
                yield (class_of[k][t], k)
            # TR1
            if k == 0 and pri[t] > 0 and pri[t] % 2 == 0:
                yield (class_of[pri[t]][t], pri[t])

    return _explore(a, (class_of[0][a.initial], 0), step,
                    lambda s: pri[rep(s[0])] == s[1],
                    lambda s: f"({s[0].label(a)},{s[1]})")


def complement_via_dpw(dpw: Automaton, simplify: bool = True, improved: bool = True,
                       determinizer: Optional[Determinizer] = None) -> Automaton:
    """Complement NBW from a DPW (or from an NBW, given a determinizer)."""
    if determinizer is not None:
        dpw = determinizer(dpw)
    npw = complement_dpw(dpw)
    if simplify:
        npw = simplify_npw(npw)
    return parity_to_buchi_improved(npw) if improved else parity_to_buchi_typical(npw)
