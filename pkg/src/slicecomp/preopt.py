"""Input-side heuristics: acceptance maximization (+A) and simplification by
direct/reverse simulation (+P for NBWs, reused as +S for parity automata)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .automaton import (
    Automaton, AutomatonError, Buchi, Parity, is_nontrivial,
    strongly_connected_components, trim_unreachable,
)

Kind = Literal["direct", "reverse"]


def maximize_acceptance(a: Automaton) -> Automaton:
    """Add to F every state that cannot return to itself while avoiding F."""
    acc = a.accepting
    n = a.num_states
    adj = [set() for _ in range(n)]
    for q in range(n):
        if q in acc:
            continue
        for succ in a.delta[q]:
            adj[q].update(t for t in succ if t not in acc)
    on_free_cycle = set()
    rest = [q for q in range(n) if q not in acc]
    for comp in strongly_connected_components(n, adj, rest):
        if is_nontrivial(comp, adj):
            on_free_cycle.update(comp)
    new_acc = frozenset(q for q in range(n) if q in acc or q not in on_free_cycle)
    return a.with_acceptance(Buchi(new_acc))


@dataclass(frozen=True)
class SimulationRelation:
    """``(p, q)`` in ``pairs`` means p is simulated by q."""

    kind: str
    pairs: frozenset[tuple[int, int]]

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def strictly(self, p: int, q: int) -> bool:
        return (p, q) in self.pairs and (q, p) not in self.pairs


def _local_ok(a: Automaton, p: int, q: int) -> bool:
    acc = a.acceptance
    if isinstance(acc, Buchi):
        return p not in acc.accepting or q in acc.accepting
    return acc.priority[p] == acc.priority[q]


def _predecessors(a: Automaton) -> list[list[set[int]]]:
    pred = [[set() for _ in range(a.num_states)] for _ in a.alphabet]
    for q, i, t in a.edges():
        pred[i][t].add(q)
    return pred


def compute_simulation(a: Automaton, kind: Kind = "direct") -> SimulationRelation:
    """Greatest simulation, by counter-based refinement.

    ``count[i][x][q]`` is the number of i-moves of q (forward or backward,
    per ``kind``) that land on a state still simulating x.  A pair (p, q)
    dies when some i-move of p reaches an x whose counter at q hits zero.
    """
    n = a.num_states
    if kind == "direct":
        moves = [[a.delta[q][i] for q in range(n)] for i in range(len(a.alphabet))]
    elif kind == "reverse":
        moves = _predecessors(a)
    else:
        raise ValueError(f"unknown simulation kind {kind!r}")
    back = [[set() for _ in range(n)] for _ in moves]   # back[i][x] = {p : x in moves[i][p]}
    for i, row in enumerate(moves):
        for p in range(n):
            for x in row[p]:
                back[i][x].add(p)

    rel = [[_local_ok(a, p, q) for q in range(n)] for p in range(n)]
    if kind == "reverse":
        for p in range(n):
            for q in range(n):
                if p == a.initial and q != a.initial:
                    rel[p][q] = False

    count = [[[sum(1 for y in moves[i][q] if rel[x][y]) for q in range(n)]
              for x in range(n)] for i in range(len(moves))]
    dead = []
    for p in range(n):
        for q in range(n):
            if rel[p][q] and any(count[i][x][q] == 0 for i in range(len(moves))
                                 for x in moves[i][p]):
                rel[p][q] = False
                dead.append((p, q))
    while dead:
        x, y = dead.pop()
        for i in range(len(moves)):
            for q in back[i][y]:
                count[i][x][q] -= 1
                if count[i][x][q] == 0:
                    for p in back[i][x]:
                        if rel[p][q]:
                            rel[p][q] = False
                            dead.append((p, q))
    pairs = frozenset((p, q) for p in range(n) for q in range(n) if rel[p][q])
    return SimulationRelation(kind, pairs)


def quotient(a: Automaton, rel: SimulationRelation) -> Automaton:
    """Merge simulation-equivalent states.  Class ids follow the smallest
    member, so an automaton with only trivial classes comes back unchanged."""
    n = a.num_states
    rep = list(range(n))
    for p in range(n):
        for q in range(p):
            if rep[q] == q and (p, q) in rel and (q, p) in rel:
                rep[p] = q
                break
    reps = sorted(set(rep))
    new = {r: i for i, r in enumerate(reps)}
    rows = [[set() for _ in a.alphabet] for _ in reps]
    for q, i, t in a.edges():
        rows[new[rep[q]]][i].add(new[rep[t]])
    acc = a.acceptance
    if isinstance(acc, Buchi):
        acc = Buchi(frozenset(new[rep[q]] for q in acc.accepting))
    else:
        acc = Parity(tuple(acc.priority[r] for r in reps))
    labels = tuple(a.labels[r] for r in reps) if a.labels is not None else None
    delta = tuple(tuple(frozenset(s) for s in row) for row in rows)
    return Automaton(a.alphabet, len(reps), new[rep[a.initial]], delta, acc, labels)


def _replace_delta(a: Automaton, rows) -> Automaton:
    delta = tuple(tuple(frozenset(s) for s in row) for row in rows)
    return Automaton(a.alphabet, a.num_states, a.initial, delta, a.acceptance, a.labels)


def prune_direct(a: Automaton, rel: SimulationRelation) -> Automaton:
    """Drop p -i-> r when p also has p -i-> r' with r strictly simulated by r'."""
    rows = []
    for q in range(a.num_states):
        row = []
        for succ in a.delta[q]:
            row.append({r for r in succ if not any(rel.strictly(r, r2) for r2 in succ)})
        rows.append(row)
    return _replace_delta(a, rows)


def prune_reverse(a: Automaton, rel: SimulationRelation) -> Automaton:
    """Drop p -i-> r when some p' -i-> r has p strictly reverse-simulated by p'."""
    pred = _predecessors(a)
    rows = [[set(s) for s in row] for row in a.delta]
    for i, by_target in enumerate(pred):
        for r, ps in enumerate(by_target):
            for p in ps:
                if any(rel.strictly(p, p2) for p2 in ps):
                    rows[p][i].discard(r)
    return _replace_delta(a, rows)


def simplify_by_simulation(a: Automaton) -> Automaton:
    while True:
        before = (a.num_states, a.num_transitions)
        a = quotient(a, compute_simulation(a, "direct"))
        a = prune_direct(a, compute_simulation(a, "direct"))
        a = prune_reverse(a, compute_simulation(a, "reverse"))
        a = trim_unreachable(a)
        if (a.num_states, a.num_transitions) == before:
            return a


def simplify_nbw(a: Automaton) -> Automaton:
    """Preminimization (+P), iterated to a fixpoint."""
    if not a.is_buchi:
        raise AutomatonError("simplify_nbw needs a Buchi automaton")
    return simplify_by_simulation(a)
