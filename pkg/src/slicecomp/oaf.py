"""OAF, a small line-oriented text format for omega-automata.

    # comment
    alphabet: p !p
    states: 2
    init: 0
    acc: buchi 1            (or: acc: parity 0=1 1=2)
    trans:
    0 p 0
    0 p 1

Symbols are arbitrary tokens without whitespace or ``#``.  ``emit_oaf`` is
canonical: sections in the order above, transitions sorted by (source,
symbol position, target).
"""
from __future__ import annotations

import re

from .automaton import Automaton, AutomatonError, Buchi, Parity

SECTIONS = ("alphabet", "states", "init", "acc", "trans")
_HEADER = re.compile(r"^(alphabet|states|init|acc|trans):(.*)$")


class OafError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class OafSyntaxError(OafError):
    pass


class UnknownSymbol(OafError):
    pass


class StateOutOfRange(OafError):
    pass


class MissingSection(OafError):
    pass


class DuplicateSection(OafError):
    pass


class UnassignedPriority(OafError):
    pass


def _int(tok: str, line: int) -> int:
    if not re.fullmatch(r"\d+", tok):
        raise OafSyntaxError(f"expected a natural number, got {tok!r}", line)
    return int(tok)


def parse_oaf(text: str) -> Automaton:
    found: dict[str, tuple[int, list[str]]] = {}
    trans: list[tuple[int, list[str]]] = []
    in_trans = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            key, rest = m.group(1), m.group(2).split()
            if key in found:
                raise DuplicateSection(f"section {key!r} appears twice", lineno)
            found[key] = (lineno, rest)
            in_trans = key == "trans"
            if in_trans and rest:
                trans.append((lineno, rest))
        elif in_trans:
            trans.append((lineno, line.split()))
        else:
            raise OafSyntaxError(f"unexpected line {line!r}", lineno)
    for key in SECTIONS:
        if key not in found:
            raise MissingSection(f"missing section {key!r}")

    ln, alphabet = found["alphabet"]
    if not alphabet:
        raise OafSyntaxError("alphabet is empty", ln)
    if len(set(alphabet)) != len(alphabet):
        raise OafSyntaxError("alphabet repeats a symbol", ln)
    symbols = set(alphabet)

    ln, toks = found["states"]
    if len(toks) != 1:
        raise OafSyntaxError("states takes one number", ln)
    n = _int(toks[0], ln)
    if n < 1:
        raise OafSyntaxError("need at least one state", ln)

    def state(tok: str, line: int) -> int:
        q = _int(tok, line)
        if q >= n:
            raise StateOutOfRange(f"state {q} out of range 0..{n - 1}", line)
        return q

    ln, toks = found["init"]
    if len(toks) != 1:
        raise OafSyntaxError("init takes one state", ln)
    init = state(toks[0], ln)

    ln, toks = found["acc"]
    if not toks or toks[0] not in ("buchi", "parity"):
        raise OafSyntaxError("acc must be 'buchi ...' or 'parity ...'", ln)
    if toks[0] == "buchi":
        acc = Buchi(frozenset(state(t, ln) for t in toks[1:]))
    else:
        pri: dict[int, int] = {}
        for t in toks[1:]:
            if t.count("=") != 1:
                raise OafSyntaxError(f"expected state=priority, got {t!r}", ln)
            q_tok, p_tok = t.split("=")
            q = state(q_tok, ln)
            if q in pri:
                raise OafSyntaxError(f"state {q} has two priorities", ln)
            pri[q] = _int(p_tok, ln)
        missing = [q for q in range(n) if q not in pri]
        if missing:
            raise UnassignedPriority(f"no priority for state {missing[0]}", ln)
        acc = Parity(tuple(pri[q] for q in range(n)))

    edges = []
    for ln, toks in trans:
        if len(toks) != 3:
            raise OafSyntaxError("transition must be 'src symbol dst'", ln)
        src, sym, dst = toks
        if sym not in symbols:
            raise UnknownSymbol(f"symbol {sym!r} not in alphabet", ln)
        edges.append((state(src, ln), sym, state(dst, ln)))
    try:
        return Automaton.from_edges(alphabet, n, init, edges, acc)
    except AutomatonError as e:  # pragma: no cover - guarded above
        raise OafError(str(e)) from e


def emit_oaf(a: Automaton, with_labels: bool = False) -> str:
    """Canonical text.  ``with_labels`` adds state names as comments, which
    the parser ignores."""
    lines = []
    if with_labels and a.labels is not None:
        lines.extend(f"# {q}: {a.labels[q]}" for q in range(a.num_states))
    lines.append("alphabet: " + " ".join(a.alphabet))
    lines.append(f"states: {a.num_states}")
    lines.append(f"init: {a.initial}")
    acc = a.acceptance
    if isinstance(acc, Buchi):
        lines.append(" ".join(["acc: buchi"] + [str(q) for q in sorted(acc.accepting)]))
    else:
        lines.append("acc: parity " + " ".join(f"{q}={p}" for q, p in enumerate(acc.priority)))
    lines.append("trans:")
    lines.extend(f"{q} {a.alphabet[i]} {t}" for q, i, t in a.edges())
    return "\n".join(lines) + "\n"


def read_oaf(path) -> Automaton:
    with open(path, encoding="utf-8") as fh:
        return parse_oaf(fh.read())


def write_oaf(a: Automaton, path, with_labels: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_oaf(a, with_labels))
