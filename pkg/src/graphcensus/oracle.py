"""Brute-force ground truth computed straight from the definitions.

Nothing here uses pair cycles, weights or generating functions: permutations
are plain image tuples, graphs are edge sets, and every group is found by
trying all n! permutations.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .index_codec import LabelledGraph, check_order, decode, encode, pair_count

ORACLE_MAX_ORDER = 8
CENSUS_MAX_ORDER = 5


class OracleLimitError(RuntimeError):
    pass


def _guard(n: int, limit: int, what: str) -> None:
    check_order(n)
    if n > limit:
        raise OracleLimitError(
            f"{what} at n={n} would scan {math.factorial(n)} permutations per graph; "
            f"limit is n <= {limit}"
        )


def apply_permutation(alpha: tuple, g: LabelledGraph) -> LabelledGraph:
    """alpha G, where ``alpha[i - 1]`` is the image of vertex i."""
    if len(alpha) != g.n:
        raise ValueError("permutation and graph have different orders")
    edges = set()
    for i, j in g.edges:
        a, b = alpha[i - 1], alpha[j - 1]
        edges.add((min(a, b), max(a, b)))
    return LabelledGraph(g.n, frozenset(edges))


def _all_permutations(n: int):
    return itertools.permutations(range(1, n + 1))


def automorphisms(g: LabelledGraph) -> frozenset:
    _guard(g.n, ORACLE_MAX_ORDER, "automorphism scan")
    return frozenset(a for a in _all_permutations(g.n) if apply_permutation(a, g) == g)


def aut_order_bruteforce(g: LabelledGraph) -> int:
    return len(automorphisms(g))


def sc_witnesses_bruteforce(g: LabelledGraph) -> frozenset:
    """All alpha with alpha G equal to the complement of G."""
    _guard(g.n, ORACLE_MAX_ORDER, "complementing-permutation scan")
    target = g.complement()
    return frozenset(a for a in _all_permutations(g.n) if apply_permutation(a, g) == target)


def is_self_complementary(g: LabelledGraph) -> bool:
    _guard(g.n, ORACLE_MAX_ORDER, "complementing-permutation scan")
    target = g.complement()
    return any(apply_permutation(a, g) == target for a in _all_permutations(g.n))


def _inverse(alpha: tuple) -> tuple:
    inv = [0] * len(alpha)
    for i, a in enumerate(alpha, start=1):
        inv[a - 1] = i
    return tuple(inv)


def _compose(alpha: tuple, beta: tuple) -> tuple:
    # apply beta first
    return tuple(alpha[b - 1] for b in beta)


def verify_coset_theorem(g: LabelledGraph) -> bool:
    """Check alpha^-1 * A_S(G) == Aut(G) for every complementing alpha."""
    witnesses = sc_witnesses_bruteforce(g)
    if not witnesses:
        raise ValueError("graph is not self-complementary")
    aut = automorphisms(g)
    return all(
        frozenset(_compose(_inverse(a), b) for b in witnesses) == aut for a in witnesses
    )


@dataclass(frozen=True)
class OracleRecord:
    index: int
    aut_order: int
    sc_witnesses: frozenset

    @property
    def self_complementary(self) -> bool:
        return bool(self.sc_witnesses)


def full_oracle_census(n: int) -> dict:
    """One record per index L in [0, 2**lam)."""
    _guard(n, CENSUS_MAX_ORDER, "exhaustive oracle census")
    perms = list(_all_permutations(n))
    records = {}
    for L in range(1 << pair_count(n)):
        g = decode(n, L)
        comp = g.complement()
        aut = 0
        wit = []
        for a in perms:
            image = apply_permutation(a, g)
            if image == g:
                aut += 1
            if image == comp:
                wit.append(a)
        records[L] = OracleRecord(L, aut, frozenset(wit))
    return records


def orbits(n: int) -> list:
    """Isomorphism classes of all labelled graphs of order n, as sets of indices."""
    _guard(n, CENSUS_MAX_ORDER, "orbit computation")
    perms = list(_all_permutations(n))
    unseen = set(range(1 << pair_count(n)))
    out = []
    while unseen:
        L = min(unseen)
        g = decode(n, L)
        orbit = {encode(apply_permutation(a, g)) for a in perms}
        unseen -= orbit
        out.append(frozenset(orbit))
    return out
