"""Explicit omega-automata and the graph algorithms shared by every construction.

States are the integers ``0 .. num_states - 1``; symbols are opaque string
tokens.  The transition map is total: ``delta[q][i]`` is the (possibly empty)
frozenset of successors of ``q`` on ``alphabet[i]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union


@dataclass(frozen=True)
class Buchi:
    accepting: frozenset[int]


@dataclass(frozen=True)
class Parity:
    """Min-even parity: a run is accepting iff the least priority seen
    infinitely often is even."""

    priority: tuple[int, ...]

    @property
    def max_priority(self) -> int:
        return max(self.priority)

    @property
    def r(self) -> int:
        # priorities live in {0, .., 2r}; an odd maximum is padded up
        return (self.max_priority + 1) // 2


Acceptance = Union[Buchi, Parity]


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True)
class Automaton:
    alphabet: tuple[str, ...]
    num_states: int
    initial: int
    delta: tuple[tuple[frozenset[int], ...], ...]
    acceptance: Acceptance
    # printable state names; never part of structural equality
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.num_states < 1:
            raise AutomatonError("an automaton needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise AutomatonError("alphabet must be a nonempty sequence of distinct symbols")
        if not 0 <= self.initial < self.num_states:
            raise AutomatonError(f"initial state {self.initial} out of range")
        if len(self.delta) != self.num_states:
            raise AutomatonError("delta must have one row per state")
        k = len(self.alphabet)
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise AutomatonError(f"delta row of state {q} must cover every symbol")
            for succ in row:
                for t in succ:
                    if not 0 <= t < self.num_states:
                        raise AutomatonError(f"transition {q} -> {t} leaves the state space")
        acc = self.acceptance
        if isinstance(acc, Buchi):
            if any(not 0 <= q < self.num_states for q in acc.accepting):
                raise AutomatonError("accepting state out of range")
        elif isinstance(acc, Parity):
            if len(acc.priority) != self.num_states:
                raise AutomatonError("every state needs exactly one priority")
            if any(p < 0 for p in acc.priority):
                raise AutomatonError("priorities are natural numbers")
        else:
            raise AutomatonError(f"unsupported acceptance {acc!r}")
        if self.labels is not None and len(self.labels) != self.num_states:
            raise AutomatonError("labels must name every state")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        alphabet: Sequence[str],
        num_states: int,
        initial: int,
        edges: Iterable[tuple[int, str, int]],
        acceptance: Acceptance,
        labels: Sequence[str] | None = None,
    ) -> "Automaton":
        alphabet = tuple(alphabet)
        index = {a: i for i, a in enumerate(alphabet)}
        rows = [[set() for _ in alphabet] for _ in range(num_states)]
        for src, sym, dst in edges:
            if sym not in index:
                raise AutomatonError(f"unknown symbol {sym!r}")
            if not 0 <= src < num_states:
                raise AutomatonError(f"transition source {src} out of range")
            rows[src][index[sym]].add(dst)
        delta = tuple(tuple(frozenset(s) for s in row) for row in rows)
        return cls(alphabet, num_states, initial, delta, acceptance,
                   tuple(labels) if labels is not None else None)

    # -- queries -------------------------------------------------------------

    @property
    def is_buchi(self) -> bool:
        return isinstance(self.acceptance, Buchi)

    @property
    def is_parity(self) -> bool:
        return isinstance(self.acceptance, Parity)

    @property
    def accepting(self) -> frozenset[int]:
        if not isinstance(self.acceptance, Buchi):
            raise AutomatonError("automaton does not have Buchi acceptance")
        return self.acceptance.accepting

    @property
    def priority(self) -> tuple[int, ...]:
        if not isinstance(self.acceptance, Parity):
            raise AutomatonError("automaton does not have parity acceptance")
        return self.acceptance.priority

    def symbol_index(self, sym: str) -> int:
        try:
            return self.alphabet.index(sym)
        except ValueError:
            raise AutomatonError(f"symbol {sym!r} is not in the alphabet") from None

    def succ(self, q: int, sym: str) -> frozenset[int]:
        return self.delta[q][self.symbol_index(sym)]

    def edges(self):
        """Yield ``(src, symbol_index, dst)`` in canonical sorted order."""
        for q, row in enumerate(self.delta):
            for i, succ in enumerate(row):
                for t in sorted(succ):
                    yield q, i, t

    @property
    def num_transitions(self) -> int:
        return sum(len(s) for row in self.delta for s in row)

    def is_deterministic(self) -> bool:
        return all(len(s) == 1 for row in self.delta for s in row)

    def label(self, q: int) -> str:
        return self.labels[q] if self.labels is not None else f"q{q}"

    def with_acceptance(self, acceptance: Acceptance) -> "Automaton":
        return Automaton(self.alphabet, self.num_states, self.initial, self.delta,
                         acceptance, self.labels)

    def restrict(self, keep: Iterable[int]) -> "Automaton":
        """Sub-automaton on ``keep`` (must contain the initial state),
        renumbered in increasing original order."""
        kept = sorted(set(keep))
        if self.initial not in kept:
            raise AutomatonError("restriction must keep the initial state")
        new = {q: i for i, q in enumerate(kept)}
        delta = tuple(
            tuple(frozenset(new[t] for t in succ if t in new) for succ in self.delta[q])
            for q in kept
        )
        acc = self.acceptance
        if isinstance(acc, Buchi):
            acc = Buchi(frozenset(new[q] for q in acc.accepting if q in new))
        else:
            acc = Parity(tuple(acc.priority[q] for q in kept))
        labels = tuple(self.labels[q] for q in kept) if self.labels is not None else None
        return Automaton(self.alphabet, len(kept), new[self.initial], delta, acc, labels)


@dataclass(frozen=True)
class StateStats:
    reachable_count: int
    live_count: int


# -- graph algorithms --------------------------------------------------------

def successors_any(a: Automaton) -> list[set[int]]:
    """Symbol-blind adjacency lists."""
    return [set().union(*row) for row in a.delta]


def strongly_connected_components(n: int, adj: Sequence[Iterable[int]],
                                  nodes: Iterable[int] | None = None) -> list[list[int]]:
    """Iterative Tarjan.  Components come out in reverse topological order
    (sinks first).  ``nodes`` restricts the roots to start from; the search
    still follows every edge in ``adj``."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    roots = range(n) if nodes is None else nodes
    for root in roots:
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, iter(adj[root]))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def is_nontrivial(comp: Sequence[int], adj: Sequence[Iterable[int]]) -> bool:
    """True iff the component carries a cycle."""
    if len(comp) > 1:
        return True
    v = comp[0]
    return v in adj[v]


def _forward(start: Iterable[int], adj: Sequence[Iterable[int]]) -> set[int]:
    seen = set(start)
    todo = list(seen)
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def reachable(a: Automaton) -> frozenset[int]:
    return frozenset(_forward([a.initial], successors_any(a)))


def live(a: Automaton) -> frozenset[int]:
    """States that occur on some accepting run."""
    if not a.is_buchi:
        raise AutomatonError("liveness is only defined here for Buchi automata")
    adj = successors_any(a)
    reach = _forward([a.initial], adj)
    acc = a.accepting
    targets = set()
    for comp in strongly_connected_components(a.num_states, adj, sorted(reach)):
        if is_nontrivial(comp, adj) and any(q in acc for q in comp):
            targets.update(comp)
    pred = [[] for _ in range(a.num_states)]
    for q in reach:
        for t in adj[q]:
            pred[t].append(q)
    return frozenset(_forward(targets, pred) & reach)


def prune_dead(a: Automaton) -> Automaton:
    """Keep live states plus the initial state; language is unchanged."""
    return a.restrict(live(a) | {a.initial})


def trim_unreachable(a: Automaton) -> Automaton:
    return a.restrict(reachable(a))


def state_stats(a: Automaton) -> StateStats:
    return StateStats(len(reachable(a)), len(live(a)))
