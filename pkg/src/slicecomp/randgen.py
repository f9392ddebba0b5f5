"""Random automata in the Tabakov-Vardi model, plus parity samplers for tests.

Randomness comes from ``random.Random`` (MT19937) seeded per automaton;
:data:`PRNG_ID` names the algorithm in corpus manifests.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, Union

from .automaton import Automaton, Buchi, Parity

PRNG_ID = "python-mt19937/random.sample"

# the benchmark grid: 11 transition densities x 10 acceptance densities
TRANSITION_DENSITIES = tuple(Fraction(10 + 2 * i, 10) for i in range(11))
ACCEPTANCE_DENSITIES = tuple(Fraction(i, 10) for i in range(1, 11))

Number = Union[int, float, str, Fraction]


def _rational(x: Number) -> Fraction:
    # via str so that 1.2 means 6/5, not the nearest double
    return x if isinstance(x, Fraction) else Fraction(str(x))


def default_alphabet(size: int) -> tuple[str, ...]:
    if size <= 26:
        return tuple(chr(ord("a") + i) for i in range(size))
    return tuple(f"s{i}" for i in range(size))


@dataclass(frozen=True)
class GenSpec:
    n: int
    alphabet_size: int
    r: Fraction
    f: Fraction
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "r", _rational(self.r))
        object.__setattr__(self, "f", _rational(self.f))
        if self.n < 1 or self.alphabet_size < 1:
            raise ValueError("need at least one state and one symbol")
        if self.r < 0:
            raise ValueError("transition density must be nonnegative")
        if not 0 < self.f <= 1:
            raise ValueError("acceptance density must lie in (0, 1]")
        if self.transitions_per_symbol > self.n * self.n:
            raise ValueError("more transition pairs requested than exist")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit value")

    @property
    def transitions_per_symbol(self) -> int:
        return math.ceil(self.r * self.n)

    @property
    def accepting_count(self) -> int:
        return math.ceil(self.f * self.n)


def generate(spec: GenSpec) -> Automaton:
    rng = random.Random(spec.seed)
    n = spec.n
    alphabet = default_alphabet(spec.alphabet_size)
    edges = []
    for sym in alphabet:
        for pair in rng.sample(range(n * n), spec.transitions_per_symbol):
            edges.append((pair // n, sym, pair % n))
    acc = frozenset(rng.sample(range(n), spec.accepting_count))
    return Automaton.from_edges(alphabet, n, 0, edges, Buchi(acc))


def derive_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(count)]


def random_dpw(n: int, alphabet_size: int, max_priority: int, seed: int) -> Automaton:
    """Complete deterministic parity automaton with uniform successors and
    priorities in 0..max_priority."""
    rng = random.Random(seed)
    alphabet = default_alphabet(alphabet_size)
    edges = [(q, a, rng.randrange(n)) for q in range(n) for a in alphabet]
    pri = tuple(rng.randint(0, max_priority) for _ in range(n))
    return Automaton.from_edges(alphabet, n, 0, edges, Parity(pri))


def random_npw(spec: GenSpec, max_priority: int) -> Automaton:
    """Tabakov-Vardi transition structure with random priorities."""
    a = generate(spec)
    rng = random.Random(spec.seed ^ 0x5DEECE66D)
    pri = tuple(rng.randint(0, max_priority) for _ in range(a.num_states))
    return a.with_acceptance(Parity(pri))


def grid_specs(n: int, per_cell: int, seed: int, alphabet_size: int = 2,
               rs: Sequence[Number] = TRANSITION_DENSITIES,
               fs: Sequence[Number] = ACCEPTANCE_DENSITIES) -> list[GenSpec]:
    cells = [(r, f) for r in rs for f in fs]
    seeds = derive_seeds(seed, len(cells) * per_cell)
    out = []
    k = 0
    for r, f in cells:
        for _ in range(per_cell):
            out.append(GenSpec(n, alphabet_size, r, f, seeds[k]))
            k += 1
    return out


def write_corpus(specs: Iterable[GenSpec], out_dir: Path | str) -> Path:
    """Write one .oaf per spec and a manifest ``id seed n |Σ| r f path``."""
    from .oaf import emit_oaf

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = [f"# prng {PRNG_ID}"]
    for k, spec in enumerate(specs):
        name = f"a{k:05d}.oaf"
        (out_dir / name).write_text(emit_oaf(generate(spec)), encoding="utf-8")
        lines.append(f"{k} {spec.seed} {spec.n} {spec.alphabet_size} {spec.r} {spec.f} {name}")
    manifest = out_dir / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest
