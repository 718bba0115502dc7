"""Vertex permutations and the action they induce on unordered vertex pairs."""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from .index_codec import (
    EdgePair,
    all_pairs,
    check_order,
    normalize_pair,
    pair_count,
    pair_weights,
)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[i - 1]`` is the image of vertex i."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images!r} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, text: str) -> "Permutation":
        """Parse cycle notation such as ``"(1 2 3 4)(5)"``; omitted points are fixed."""
        images = list(range(1, n + 1))
        stripped = text.strip()
        if stripped in ("", "()", "id", "e"):
            return cls(tuple(images))
        if not re.fullmatch(r"(\s*\(\s*\d+(\s+\d+)*\s*\)\s*)+", stripped):
            raise ValueError(f"malformed cycle notation: {text!r}")
        seen: set = set()
        for body in re.findall(r"\(([^)]*)\)", stripped):
            cycle = [int(tok) for tok in body.split()]
            for v in cycle:
                if not 1 <= v <= n:
                    raise ValueError(f"label {v} outside 1..{n}")
                if v in seen:
                    raise ValueError(f"label {v} appears twice in {text!r}")
                seen.add(v)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, a in enumerate(self.images, start=1):
            inv[a - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """``self * other``: apply ``other`` first."""
        return Permutation(tuple(self.images[b - 1] for b in other.images))

    def cycles(self) -> list:
        """Vertex cycles, each starting at its smallest label, fixed points included."""
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            v = start
            while not seen[v]:
                seen[v] = True
                cyc.append(v)
                v = self.images[v - 1]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> Tuple[int, ...]:
        return cycle_type(self.images)

    def to_cycles(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())

    def __str__(self) -> str:
        return self.to_cycles()


def cycle_type(images: Sequence[int]) -> Tuple[int, ...]:
    """Tuple m with m[k - 1] = number of k-cycles, k = 1..n."""
    n = len(images)
    m = [0] * n
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = images[v] - 1
            length += 1
        m[length - 1] += 1
    return tuple(m)


def apply_to_pair(alpha: Permutation, e: EdgePair) -> EdgePair:
    i, j = e
    return normalize_pair(alpha(i), alpha(j))


@dataclass(frozen=True)
class PairCycle:
    """One cycle of the induced pair permutation, leading with its heaviest pair."""

    n: int
    elements: Tuple[EdgePair, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def odd_positions(self) -> Tuple[EdgePair, ...]:
        return self.elements[0::2]

    def even_positions(self) -> Tuple[EdgePair, ...]:
        return self.elements[1::2]


@dataclass(frozen=True)
class CycleWeights:
    full: int
    odd: int
    even: int


@dataclass(frozen=True)
class PairDecomposition:
    alpha: Permutation
    cycles: Tuple[PairCycle, ...]
    cycle_type: Tuple[int, ...]


def canonical_rotation(n: int, cycle: Sequence[EdgePair]) -> Tuple[EdgePair, ...]:
    w = pair_weights(n)
    weights = [w[e] for e in cycle]
    top = max(range(len(cycle)), key=weights.__getitem__)
    assert weights.count(weights[top]) == 1
    return tuple(cycle[top:]) + tuple(cycle[:top])


def pair_decomposition(alpha: Permutation) -> PairDecomposition:
    n = check_order(alpha.n)
    images = alpha.images
    seen: set = set()
    cycles = []
    for e in all_pairs(n):
        if e in seen:
            continue
        cyc = []
        f = e
        while f not in seen:
            seen.add(f)
            cyc.append(f)
            a, b = images[f[0] - 1], images[f[1] - 1]
            f = (a, b) if a < b else (b, a)
        cycles.append(PairCycle(n, canonical_rotation(n, cyc)))
    w = pair_weights(n)
    cycles.sort(key=lambda z: w[z.elements[0]], reverse=True)
    return PairDecomposition(alpha, tuple(cycles), alpha.cycle_type())


def cycle_weights(z: PairCycle) -> CycleWeights:
    w = pair_weights(z.n)
    odd = sum(w[e] for e in z.odd_positions())
    even = sum(w[e] for e in z.even_positions())
    return CycleWeights(odd + even, odd, even)


def weight_table(alpha: Permutation) -> list:
    """CycleWeights for every pair cycle of alpha, in decomposition order."""
    return [cycle_weights(z) for z in pair_decomposition(alpha).cycles]


def _check_sc_order(n: int) -> None:
    check_order(n)
    if n < 4 or n % 4 not in (0, 1):
        raise ValueError(
            f"self-complementary graphs need n = 0 or 1 (mod 4) and n >= 4, got {n}"
        )


def is_sc_admissible(alpha: Permutation) -> bool:
    """True iff alpha can map some graph of its order onto the complement.

    That is: at most one fixed point, and every other cycle has length
    divisible by 4.
    """
    _check_sc_order(alpha.n)
    m = cycle_type(alpha.images)
    if m[0] > 1:
        return False
    return all(count == 0 for k, count in enumerate(m[1:], start=2) if k % 4)


def enumerate_permutations(
    n: int, start: int = 0, stop: int | None = None
) -> Iterator[Permutation]:
    """All permutations of 1..n in lexicographic order, ranks [start, stop)."""
    check_order(n)
    for images in itertools.islice(
        itertools.permutations(range(1, n + 1)), start, stop
    ):
        yield Permutation(images)


def enumerate_sc_permutations(
    n: int, start: int = 0, stop: int | None = None
) -> Iterator[Permutation]:
    """The admissible permutations among ranks [start, stop), in rank order."""
    _check_sc_order(n)
    for alpha in enumerate_permutations(n, start, stop):
        if is_sc_admissible(alpha):
            yield alpha


def rank_ranges(total: int, parts: int) -> list:
    """Split [0, total) into at most ``parts`` contiguous nonempty ranges."""
    parts = max(1, min(parts, total))
    q, r = divmod(total, parts)
    out = []
    lo = 0
    for k in range(parts):
        hi = lo + q + (1 if k < r else 0)
        out.append((lo, hi))
        lo = hi
    return out


def count_with_cycle_type(m: Sequence[int]) -> int:
    """n! / prod(k**m_k * m_k!) for the cycle type m (m[k - 1] = #k-cycles)."""
    n = sum(k * c for k, c in enumerate(m, start=1))
    denom = 1
    for k, c in enumerate(m, start=1):
        denom *= k**c * math.factorial(c)
    return math.factorial(n) // denom


def total_weight(n: int) -> int:
    return (1 << pair_count(n)) - 1
