"""Generating-function census of graphs and self-complementary graphs.

For every permutation alpha the product over its pair cycles z of
``1 + x**W(z)`` (all graphs) or ``x**W1(z) + x**W2(z)`` (self-complementary
graphs) is expanded, and the exponents are tallied over the whole sweep.
The tally at index L is the order of the automorphism group of the graph
with index L, so group-order histograms and unlabelled counts follow by
exact integer arithmetic.
"""
from __future__ import annotations

import enum
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import pairgroup
from .index_codec import check_order, pair_count
from .pairgroup import Permutation

log = logging.getLogger(__name__)


class Mode(str, enum.Enum):
    GRAPHS = "graphs"
    SC = "sc"


DEFAULT_CAPS = {Mode.GRAPHS: 7, Mode.SC: 9}
# exponents are held in int64
MAX_ENGINE_PAIRS = 63
# flush threshold for buffered sparse exponents
_SPARSE_FLUSH = 1 << 22


class CapExceededError(RuntimeError):
    """Requested census is beyond the configured resource cap."""


class ConsistencyError(RuntimeError):
    """An identity that must hold exactly was violated; indicates an engine bug."""


# ---------------------------------------------------------------------------
# per-permutation expansion


def _gray_walk(base: int, deltas: Sequence[int]) -> Iterator[int]:
    # one add or subtract per step: step t flips the choice for its lowest set bit
    s = base
    yield s
    flipped = [False] * len(deltas)
    for t in range(1, 1 << len(deltas)):
        b = (t & -t).bit_length() - 1
        s = s - deltas[b] if flipped[b] else s + deltas[b]
        flipped[b] = not flipped[b]
        yield s


def expand_graph_terms(alpha: Permutation) -> Iterator[int]:
    """Exponents of prod_z (1 + x**W(z)), one per subset of pair cycles."""
    return _gray_walk(0, [cw.full for cw in pairgroup.weight_table(alpha)])


def expand_sc_terms(alpha: Permutation) -> Iterator[int]:
    """Exponents of prod_z (x**W1(z) + x**W2(z)), one per choice of W1/W2 per cycle."""
    if not pairgroup.is_sc_admissible(alpha):
        raise ValueError(f"{alpha} cannot map any graph onto its complement")
    table = pairgroup.weight_table(alpha)
    return _gray_walk(sum(cw.odd for cw in table), [cw.even - cw.odd for cw in table])


def _doubling(base: int, deltas: Sequence[int]) -> np.ndarray:
    out = np.empty(1 << len(deltas), dtype=np.int64)
    out[0] = base
    size = 1
    for d in deltas:
        np.add(out[:size], d, out=out[size : 2 * size])
        size *= 2
    return out


def graph_exponents(alpha: Permutation) -> np.ndarray:
    """Vectorised form of :func:`expand_graph_terms` (same multiset, other order)."""
    return _doubling(0, [cw.full for cw in pairgroup.weight_table(alpha)])


def sc_exponents(alpha: Permutation) -> np.ndarray:
    """Vectorised form of :func:`expand_sc_terms`, without the admissibility check."""
    table = pairgroup.weight_table(alpha)
    return _doubling(sum(cw.even for cw in table), [cw.odd - cw.even for cw in table])


# ---------------------------------------------------------------------------
# accumulator


@dataclass
class CensusAccumulator:
    """Exponent -> coefficient tally.

    Dense backing stores ``values[L]`` for every L in [0, 2**lam); sparse
    backing stores sorted ``keys`` with matching ``values``.
    """

    mode: Mode
    n: int
    values: np.ndarray
    keys: np.ndarray | None = None

    @property
    def backing(self) -> str:
        return "dense" if self.keys is None else "sparse"

    @property
    def lam(self) -> int:
        return pair_count(self.n)

    def indices(self) -> np.ndarray:
        """Indices with nonzero coefficient, ascending."""
        if self.keys is None:
            return np.flatnonzero(self.values).astype(np.int64)
        return self.keys[self.values != 0]

    def coefficients(self) -> np.ndarray:
        """Nonzero coefficients, aligned with :meth:`indices`."""
        return self.values[self.values != 0]

    def __len__(self) -> int:
        return int(np.count_nonzero(self.values))

    def __getitem__(self, L: int) -> int:
        if self.keys is None:
            return int(self.values[L]) if 0 <= L < len(self.values) else 0
        pos = int(np.searchsorted(self.keys, L))
        if pos < len(self.keys) and self.keys[pos] == L:
            return int(self.values[pos])
        return 0

    def __contains__(self, L: int) -> bool:
        return self[L] != 0

    def items(self) -> Iterator[tuple]:
        for L, c in zip(self.indices().tolist(), self.coefficients().tolist()):
            yield L, c

    def to_dict(self) -> dict:
        return dict(self.items())

    def total(self) -> int:
        return int(self.values.sum(dtype=np.int64))

    def merge(self, other: "CensusAccumulator") -> "CensusAccumulator":
        if (self.mode, self.n, self.backing) != (other.mode, other.n, other.backing):
            raise ValueError("cannot merge accumulators of different shape")
        if self.keys is None:
            return CensusAccumulator(
                self.mode, self.n, self.values.astype(np.int64) + other.values
            )
        keys, values = _merge_sparse([(self.keys, self.values), (other.keys, other.values)])
        return CensusAccumulator(self.mode, self.n, values, keys)


def _merge_sparse(parts: Sequence[tuple]) -> tuple:
    parts = [p for p in parts if len(p[0])]
    if not parts:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    keys = np.concatenate([p[0] for p in parts])
    values = np.concatenate([p[1] for p in parts]).astype(np.int64)
    uniq, inverse = np.unique(keys, return_inverse=True)
    out = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(out, inverse, values)
    return uniq, out


def _tally(buffer: list) -> tuple:
    keys, counts = np.unique(np.concatenate(buffer), return_counts=True)
    return keys, counts.astype(np.int64)


# ---------------------------------------------------------------------------
# sweep


def _check_distinct(alpha: Permutation, terms: np.ndarray) -> None:
    if len(np.unique(terms)) != len(terms):
        raise ConsistencyError(
            f"expansion for {alpha} yields a repeated exponent; "
            "per-permutation coefficients must be 0 or 1"
        )


def _sweep(n: int, mode: Mode, lo: int, hi: int, dense: bool, verify: bool):
    if mode is Mode.GRAPHS:
        perms = pairgroup.enumerate_permutations(n, lo, hi)
        expand = graph_exponents
    else:
        perms = pairgroup.enumerate_sc_permutations(n, lo, hi)
        expand = sc_exponents
    if dense:
        counts = np.zeros(1 << pair_count(n), dtype=np.uint32)
        for alpha in perms:
            terms = expand(alpha)
            if verify:
                _check_distinct(alpha, terms)
            np.add.at(counts, terms, 1)
        return counts
    parts: list = []
    buffer: list = []
    buffered = 0
    for alpha in perms:
        terms = expand(alpha)
        if verify:
            _check_distinct(alpha, terms)
        buffer.append(terms)
        buffered += len(terms)
        if buffered >= _SPARSE_FLUSH:
            parts.append(_tally(buffer))
            buffer, buffered = [], 0
    if buffer:
        parts.append(_tally(buffer))
    return _merge_sparse(parts)


def _sweep_star(args):
    return _sweep(*args)


def check_census_order(n: int, mode: Mode | str) -> Mode:
    mode = Mode(mode)
    check_order(n)
    if mode is Mode.SC and (n < 4 or n % 4 not in (0, 1)):
        raise ValueError(
            f"self-complementary census needs n = 0 or 1 (mod 4) and n >= 4, got {n}"
        )
    return mode


def run_census(
    n: int,
    mode: Mode | str = Mode.GRAPHS,
    *,
    workers: int = 1,
    allow_large: bool = False,
    verify: bool = False,
) -> CensusAccumulator:
    """Sweep all (graphs) or all admissible (sc) permutations of order n.

    ``workers`` contiguous rank ranges are swept independently and merged in
    rank order; the result does not depend on the worker count.  With
    ``verify`` each permutation's exponents are checked to be distinct.
    """
    mode = check_census_order(n, mode)
    lam = pair_count(n)
    cap = DEFAULT_CAPS[mode]
    if n > cap and not allow_large:
        if mode is Mode.GRAPHS:
            need = f"a dense table of 2**{lam} counters ({(4 << lam) / 2**30:.1f} GiB)"
        else:
            need = f"a sweep over {math.factorial(n)} permutations"
        raise CapExceededError(
            f"{mode.value} census at n={n} exceeds the default cap n <= {cap}: "
            f"it needs {need}; pass --allow-large (allow_large=True) to override"
        )
    if lam > MAX_ENGINE_PAIRS:
        raise CapExceededError(
            f"n={n} has {lam} vertex pairs; the engine holds indices in "
            f"{MAX_ENGINE_PAIRS} bits"
        )
    if workers < 1:
        raise ValueError("workers must be positive")
    dense = mode is Mode.GRAPHS and n <= DEFAULT_CAPS[Mode.GRAPHS]
    if n > cap:
        log.warning(
            "n=%d is above the default %s cap; using %s storage, expect a long run",
            n, mode.value, "dense" if dense else "sparse",
        )

    ranges = pairgroup.rank_ranges(math.factorial(n), workers)
    jobs = [(n, mode, lo, hi, dense, verify) for lo, hi in ranges]
    if len(jobs) == 1:
        partials = [_sweep(*jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            partials = list(pool.map(_sweep_star, jobs))

    if dense:
        values = np.zeros(1 << lam, dtype=np.int64)
        for part in partials:
            values += part
        return CensusAccumulator(mode, n, values)
    keys, values = _merge_sparse(partials)
    return CensusAccumulator(mode, n, values, keys)


# ---------------------------------------------------------------------------
# derived tables


def histogram(acc: CensusAccumulator) -> dict:
    """Group order -> number of indices with that coefficient, ascending."""
    xi, counts = np.unique(acc.coefficients(), return_counts=True)
    return {int(a): int(b) for a, b in zip(xi, counts)}


@dataclass(frozen=True)
class ReportRow:
    group_order: int
    labelled: int
    unlabelled: int


@dataclass(frozen=True)
class CensusReport:
    n: int
    mode: Mode
    lam: int
    rows: tuple = field(default_factory=tuple)
    labelled_total: int = 0
    unlabelled_total: int = 0
    burnside_total: int = 0

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode.value,
            "lambda": self.lam,
            "rows": [
                {"group_order": r.group_order, "labelled": r.labelled, "unlabelled": r.unlabelled}
                for r in self.rows
            ],
            "labelled_total": self.labelled_total,
            "unlabelled_total": self.unlabelled_total,
            "burnside_total": self.burnside_total,
        }

    def labelled_pairs(self) -> list:
        return [(r.group_order, r.labelled) for r in self.rows]

    def unlabelled_pairs(self) -> list:
        return [(r.group_order, r.unlabelled) for r in self.rows]


def report(acc: CensusAccumulator) -> CensusReport:
    fact = math.factorial(acc.n)
    rows = []
    for xi, count in histogram(acc).items():
        q, r = divmod(xi * count, fact)
        if r:
            raise ConsistencyError(
                f"{xi} * {count} labelled graphs is not a multiple of {acc.n}!"
            )
        rows.append(ReportRow(xi, count, q))
    burnside = acc.total()
    if burnside != sum(r.group_order * r.labelled for r in rows):
        raise ConsistencyError("coefficient sum disagrees with the histogram")
    return CensusReport(
        n=acc.n,
        mode=acc.mode,
        lam=acc.lam,
        rows=tuple(rows),
        labelled_total=sum(r.labelled for r in rows),
        unlabelled_total=sum(r.unlabelled for r in rows),
        burnside_total=burnside,
    )


def labelled_sc_total(n: int, **kwargs) -> int:
    return len(run_census(n, Mode.SC, **kwargs))


def check_invariants(acc: CensusAccumulator) -> None:
    """Raise ConsistencyError if a structural identity of the census fails."""
    fact = math.factorial(acc.n)
    coeffs = acc.coefficients()
    if len(coeffs) and (fact % coeffs).any():
        raise ConsistencyError(f"a coefficient does not divide {acc.n}!")
    if acc.mode is Mode.GRAPHS:
        if len(acc) != 1 << acc.lam:
            raise ConsistencyError(
                f"graph census has {len(acc)} indices, expected 2**{acc.lam}"
            )
        return
    popcounts = np.bitwise_count(acc.indices())
    if (popcounts != acc.lam // 2).any():
        bad = int(acc.indices()[np.argmax(popcounts != acc.lam // 2)])
        raise ConsistencyError(
            f"index {bad} has {bin(bad).count('1')} edges; "
            f"self-complementary graphs have {acc.lam // 2}"
        )
    if len(coeffs) and coeffs.min() < 2:
        log.warning("a self-complementary index has coefficient 1 (trivial group)")
