"""Integer indices for labelled graphs on the vertex set {1, ..., n}.

A graph is encoded as a lam-bit integer (lam = n(n-1)/2).  Vertex pairs are
listed 12, 13, ..., 1n, 23, ..., (n-1)n; the pair at position p carries the
weight 2**(lam - p), so pair 12 is the most significant bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Tuple

MIN_ORDER = 3
# lam <= 120 keeps every index inside 128 bits
MAX_ORDER = 16

EdgePair = Tuple[int, int]


def check_order(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"order must be an int, got {type(n).__name__}")
    if n < MIN_ORDER or n > MAX_ORDER:
        raise ValueError(f"order must lie in [{MIN_ORDER}, {MAX_ORDER}], got {n}")
    return n


def pair_count(n: int) -> int:
    """Number of vertex pairs, n(n-1)/2."""
    check_order(n)
    return n * (n - 1) // 2


def check_pair(n: int, e: EdgePair) -> EdgePair:
    i, j = e
    if not (1 <= i < j <= n):
        raise ValueError(f"invalid pair {e!r} for order {n}: need 1 <= i < j <= {n}")
    return i, j


def normalize_pair(i: int, j: int) -> EdgePair:
    return (i, j) if i < j else (j, i)


def edge_position(n: int, e: EdgePair) -> int:
    i, j = check_pair(check_order(n), e)
    return (2 * n - i) * (i - 1) // 2 + (j - i)


def edge_weight(n: int, e: EdgePair) -> int:
    return 1 << (pair_count(n) - edge_position(n, e))


@lru_cache(maxsize=None)
def all_pairs(n: int) -> Tuple[EdgePair, ...]:
    """All pairs of {1..n} in position order (position p is element p-1)."""
    check_order(n)
    return tuple((i, j) for i in range(1, n) for j in range(i + 1, n + 1))


@dataclass(frozen=True)
class LabelledGraph:
    n: int
    edges: frozenset

    def __post_init__(self) -> None:
        check_order(self.n)
        edges = frozenset(self.edges)
        for e in edges:
            check_pair(self.n, e)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[EdgePair]) -> "LabelledGraph":
        return cls(n, frozenset(normalize_pair(i, j) for i, j in edges))

    def complement(self) -> "LabelledGraph":
        return LabelledGraph(self.n, frozenset(all_pairs(self.n)) - self.edges)

    def sorted_edges(self) -> list:
        return sorted(self.edges)


def encode(g: LabelledGraph) -> int:
    lam = pair_count(g.n)
    return sum(1 << (lam - edge_position(g.n, e)) for e in g.edges)


@lru_cache(maxsize=None)
def pair_weights(n: int) -> dict:
    """Mapping pair -> 2**(lam - position) for every pair of order n."""
    lam = pair_count(n)
    return {e: 1 << (lam - p) for p, e in enumerate(all_pairs(n), start=1)}


def check_index(n: int, L: int) -> int:
    lam = pair_count(n)
    if L < 0 or L >> lam:
        raise ValueError(f"index {L} out of range [0, 2**{lam} - 1] for order {n}")
    return L


def decode(n: int, L: int) -> LabelledGraph:
    check_index(n, L)
    lam = pair_count(n)
    edges = frozenset(
        e for p, e in enumerate(all_pairs(n), start=1) if (L >> (lam - p)) & 1
    )
    return LabelledGraph(n, edges)


def complement_index(n: int, L: int) -> int:
    check_index(n, L)
    return (1 << pair_count(n)) - 1 - L


def edge_bit(n: int, L: int, e: EdgePair) -> int:
    check_index(n, L)
    return (L >> (pair_count(n) - edge_position(n, e))) & 1


def to_binary(n: int, L: int) -> str:
    """Render L as exactly lam binary digits, leading zeros kept."""
    check_index(n, L)
    return format(L, f"0{pair_count(n)}b")


def from_binary(n: int, digits: str) -> int:
    if len(digits) != pair_count(n) or set(digits) - {"0", "1"}:
        raise ValueError(f"expected {pair_count(n)} binary digits, got {digits!r}")
    return int(digits, 2)
