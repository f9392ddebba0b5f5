"""Ground truth on ultimately periodic words.

``member_nbw``/``member_npw`` decide one lasso on the explicit product of
states and word positions.  :class:`LassoEvaluator` answers many lassos over
one automaton at once by summarising each period ``v`` as a graph on states;
the language checks use it and the test suite holds it to the product
version.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .automaton import Automaton, AutomatonError, strongly_connected_components


@dataclass(frozen=True)
class LassoWord:
    prefix: tuple[str, ...]
    period: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("the period of a lasso word must be nonempty")

    def __str__(self):
        u = " ".join(self.prefix) or "ε"
        return f"{u} ({' '.join(self.period)})^ω"


def _indices(a: Automaton, word: Sequence[str]) -> list[int]:
    return [a.symbol_index(s) for s in word]


def _product(a: Automaton, w: LassoWord):
    """Explicit product: node (q, pos); returns (start, successor fn, nodes)."""
    word = _indices(a, w.prefix) + _indices(a, w.period)
    nu, total = len(w.prefix), len(w.prefix) + len(w.period)

    def nxt(node):
        q, pos = node
        npos = pos + 1 if pos + 1 < total else nu
        return [(t, npos) for t in a.delta[q][word[pos]]]

    start = (a.initial, 0)
    seen = {start}
    todo = [start]
    while todo:
        n = todo.pop()
        for m in nxt(n):
            if m not in seen:
                seen.add(m)
                todo.append(m)
    return nxt, seen


def _on_cycle_within(node, nxt, allowed) -> bool:
    """Can ``node`` reach itself through nodes satisfying ``allowed``?"""
    seen = set()
    todo = [m for m in nxt(node) if allowed(m)]
    while todo:
        m = todo.pop()
        if m == node:
            return True
        if m in seen:
            continue
        seen.add(m)
        todo.extend(x for x in nxt(m) if allowed(x))
    return False


def member_nbw(a: Automaton, w: LassoWord) -> bool:
    acc = a.accepting
    nxt, nodes = _product(a, w)
    return any(q in acc and _on_cycle_within((q, pos), nxt, lambda _: True)
               for q, pos in nodes)


def member_npw(a: Automaton, w: LassoWord) -> bool:
    pri = a.priority
    nxt, nodes = _product(a, w)
    for d in sorted({p for p in pri if p % 2 == 0}):
        ok = lambda m, d=d: pri[m[0]] >= d
        if any(pri[q] == d and _on_cycle_within((q, pos), nxt, ok) for q, pos in nodes):
            return True
    return False


def member(a: Automaton, w: LassoWord) -> bool:
    return member_nbw(a, w) if a.is_buchi else member_npw(a, w)


def _words(alphabet: Sequence[str], lo: int, hi: int) -> list[tuple[str, ...]]:
    out = []
    for n in range(lo, hi + 1):
        out.extend(itertools.product(alphabet, repeat=n))
    return out


def enumerate_lassos(alphabet: Sequence[str], max_u: int, max_v: int) -> list[LassoWord]:
    """All lassos with |u| <= max_u and 1 <= |v| <= max_v, shortlex on u then v."""
    if max_v < 1:
        raise ValueError("max_v must be at least 1")
    us = _words(alphabet, 0, max_u)
    vs = _words(alphabet, 1, max_v)
    return [LassoWord(u, v) for u in us for v in vs]


def lasso_count(alphabet_size: int, max_u: int, max_v: int) -> int:
    k = alphabet_size
    return sum(k**i for i in range(max_u + 1)) * sum(k**j for j in range(1, max_v + 1))


# -- batched evaluation ----------------------------------------------------------

def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class LassoEvaluator:
    """Membership of many lassos in one automaton.

    For each period ``v`` the word graph on states has an edge x -> y when
    reading ``v`` from x can end in y, labelled by the acceptance seen on the
    way (start state counted, end state not).  A lasso ``u v^ω`` is accepted
    iff a state reached after ``u`` can reach an accepting cycle of that
    graph.
    """

    def __init__(self, a: Automaton):
        self.a = a
        n = a.num_states
        self._succ = [[sum(1 << t for t in a.delta[q][i]) for q in range(n)]
                      for i in range(len(a.alphabet))]
        self._post: list[dict[int, int]] = [{} for _ in a.alphabet]
        self._after_prefix: dict[tuple[int, ...], int] = {(): 1 << a.initial}
        self._good: dict[tuple[int, ...], int] = {}
        self._tables: dict[tuple[int, ...], list[dict]] = {}
        if a.is_buchi:
            accm = sum(1 << q for q in a.accepting)
            full = (1 << n) - 1
            self._weight_masks = [(w, m) for w, m in ((1, accm), (0, full & ~accm)) if m]
            self._combine = max
        else:
            by_pri: dict[int, int] = {}
            for q, p in enumerate(a.priority):
                by_pri[p] = by_pri.get(p, 0) | (1 << q)
            self._weight_masks = sorted(by_pri.items())
            self._combine = min

    def _post_mask(self, mask: int, i: int) -> int:
        cache = self._post[i]
        out = cache.get(mask)
        if out is None:
            succ = self._succ[i]
            out = 0
            for q in _bits(mask):
                out |= succ[q]
            cache[mask] = out
        return out

    def _prefix_mask(self, u: tuple[int, ...]) -> int:
        m = self._after_prefix.get(u)
        if m is None:
            m = self._post_mask(self._prefix_mask(u[:-1]), u[-1])
            self._after_prefix[u] = m
        return m

    def _period_edges(self, v: tuple[int, ...]) -> list[dict]:
        """For each start state: {label: mask of end states}.  Labels are
        0/1 (visited an accepting state) for Buchi, min priority for parity;
        ``None`` labels the empty period.  Built from the table of ``v[:-1]``."""
        table = self._tables.get(v)
        if table is not None:
            return table
        if not v:
            table = [{None: 1 << x} for x in range(self.a.num_states)]
        else:
            i = v[-1]
            table = []
            for row in self._period_edges(v[:-1]):
                out: dict = {}
                for lab, m in row.items():
                    for w, wmask in self._weight_masks:
                        sub = m & wmask
                        if sub:
                            nl = w if lab is None else self._combine(lab, w)
                            out[nl] = out.get(nl, 0) | self._post_mask(sub, i)
                table.append({lab: m for lab, m in out.items() if m})
        self._tables[v] = table
        return table

    def _good_mask(self, v: tuple[int, ...]) -> int:
        """States from which some run on v^ω is accepting."""
        g = self._good.get(v)
        if g is not None:
            return g
        a = self.a
        n = a.num_states
        table = self._period_edges(v)
        any_adj = [list(_bits(sum_masks(row.values()))) for row in table]
        if a.is_buchi:
            levels = [(1, lambda lab: True)]
        else:
            levels = [(d, lambda lab, d=d: lab >= d)
                      for d in sorted({p for p in a.priority if p % 2 == 0})]
        seeds = 0
        for d, keep in levels:
            adj = [list(_bits(sum_masks(m for lab, m in table[x].items() if keep(lab))))
                   for x in range(n)]
            comp_of = [-1] * n
            comps = strongly_connected_components(n, adj)
            for ci, comp in enumerate(comps):
                for x in comp:
                    comp_of[x] = ci
            for x in range(n):
                hit = table[x].get(d, 0)
                for y in _bits(hit):
                    if comp_of[y] == comp_of[x]:
                        seeds |= 1 << x
                        break
        # backward closure over the full word graph
        pred = [[] for _ in range(n)]
        for x in range(n):
            for y in any_adj[x]:
                pred[y].append(x)
        good = seeds
        todo = list(_bits(seeds))
        while todo:
            y = todo.pop()
            for x in pred[y]:
                if not good >> x & 1:
                    good |= 1 << x
                    todo.append(x)
        self._good[v] = good
        return good

    def accepts(self, w: LassoWord) -> bool:
        a = self.a
        u = tuple(_indices(a, w.prefix))
        v = tuple(_indices(a, w.period))
        return bool(self._prefix_mask(u) & self._good_mask(v))


def sum_masks(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


# -- language checks ---------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    passed: bool
    checked: int
    counterexample: Optional[LassoWord] = None
    member_a: Optional[bool] = None
    member_b: Optional[bool] = None

    def __bool__(self):
        return self.passed

    def describe(self) -> str:
        if self.passed:
            return f"pass ({self.checked} lassos)"
        return (f"fail on {self.counterexample}: a={self.member_a} b={self.member_b} "
                f"(after {self.checked} lassos)")


def _compare(a: Automaton, b: Automaton, max_u: int, max_v: int, want_equal: bool) -> Verdict:
    if set(a.alphabet) != set(b.alphabet):
        raise AutomatonError("automata have different alphabets")
    ea, eb = LassoEvaluator(a), LassoEvaluator(b)
    checked = 0
    for w in enumerate_lassos(a.alphabet, max_u, max_v):
        checked += 1
        ma, mb = ea.accepts(w), eb.accepts(w)
        if (ma == mb) != want_equal:
            return Verdict(False, checked, w, ma, mb)
    return Verdict(True, checked)


def check_complement(a: Automaton, c: Automaton, max_u: int = 3, max_v: int = 4) -> Verdict:
    """Pass iff exactly one of ``a``, ``c`` accepts each bounded lasso."""
    return _compare(a, c, max_u, max_v, want_equal=False)


def check_equivalent(a: Automaton, b: Automaton, max_u: int = 3, max_v: int = 4) -> Verdict:
    return _compare(a, b, max_u, max_v, want_equal=True)
