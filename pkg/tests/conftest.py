import pytest
from hypothesis import settings

from slicecomp.automaton import Automaton, Buchi, Parity

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

ACCEPTANCE_LINES: list[str] = []

P, NP = "p", "!p"


def make_fig1() -> Automaton:
    edges = [(0, P, 0), (0, P, 1), (0, NP, 0), (0, NP, 1), (1, P, 1)]
    return Automaton.from_edges((P, NP), 2, 0, edges, Buchi(frozenset({1})), ("q0", "q1"))


def make_u1(alphabet=(P, NP)) -> Automaton:
    return Automaton.from_edges(alphabet, 1, 0, [(0, s, 0) for s in alphabet],
                                Buchi(frozenset({0})))


def make_empty(alphabet=(P, NP)) -> Automaton:
    return Automaton.from_edges(alphabet, 1, 0, [(0, s, 0) for s in alphabet],
                                Buchi(frozenset()))


def one_state_parity(priority: int, alphabet=("a",)) -> Automaton:
    return Automaton.from_edges(alphabet, 1, 0, [(0, s, 0) for s in alphabet],
                                Parity((priority,)))


@pytest.fixture
def fig1():
    return make_fig1()


@pytest.fixture
def u1():
    return make_u1()


@pytest.fixture
def report():
    def _report(number: int, ok: bool, detail: str):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def random_decorated_slice(rng, n: int, decos: str = "0*1"):
    """Random decorated slice over states 0..n-1: a random ordered family of
    disjoint nonempty sets (possibly empty family) with random decorations."""
    from slicecomp.slices import make_slice

    states = [q for q in range(n) if rng.random() < 0.75]
    rng.shuffle(states)
    sets = []
    while states:
        k = rng.randint(1, len(states))
        sets.append(states[:k])
        states = states[k:]
    return make_slice(sets, [rng.choice(decos) for _ in sets])
