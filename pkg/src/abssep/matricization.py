"""Ordering pairs and the eigenvalue matricizations they index.

Pairs ``(k, l)`` are 1-based throughout, matching the usual way the matrices are
written down. An :class:`OrderingPair` stores, for every pair of ``S+`` (and of
``S-``), its rank under the ordering, listed in lexicographic pair order.

For a spectrum ``lam_1 >= ... >= lam_N`` the non-symmetric matrix has

* ``lam_{N+1-sigma_plus(k,l)}`` at ``(k, l)`` for ``k <= l``,
* ``-lam_{sigma_minus(l,k)}`` at ``(k, l)`` for ``k > l``,

so the upper triangle holds the ``p(p+1)/2`` smallest eigenvalues and the strict
lower triangle the ``p(p-1)/2`` largest, negated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, combinations_with_replacement

import numpy as np

from .exceptions import DimensionMismatch, UnsupportedP, ZeroVector
from .spectrum import Spectrum

COMPATIBILITY_RTOL = 1e-12


@dataclass(frozen=True)
class IndexPairSets:
    p: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be positive")

    @cached_property
    def s_plus(self) -> tuple:
        return tuple(combinations_with_replacement(range(1, self.p + 1), 2))

    @cached_property
    def s_minus(self) -> tuple:
        return tuple(combinations(range(1, self.p + 1), 2))


@lru_cache(maxsize=None)
def index_pair_sets(p: int) -> IndexPairSets:
    return IndexPairSets(p)


def _check_bijection(ranks, size, label):
    if sorted(ranks) != list(range(1, size + 1)):
        raise ValueError(f"{label} is not a bijection onto 1..{size}: {ranks}")


@dataclass(frozen=True)
class OrderingPair:
    """A pair of linear orderings of ``S+`` and ``S-``.

    ``plus[i]`` is the rank of ``s_plus[i]``; ``minus[j]`` the rank of
    ``s_minus[j]``. The minus ordering must agree with the plus ordering on the
    pairs the two sets share.
    """

    p: int
    plus: tuple
    minus: tuple

    def __post_init__(self):
        object.__setattr__(self, "plus", tuple(int(r) for r in self.plus))
        object.__setattr__(self, "minus", tuple(int(r) for r in self.minus))
        sets = index_pair_sets(self.p)
        if len(self.plus) != len(sets.s_plus) or len(self.minus) != len(sets.s_minus):
            raise ValueError(f"rank lists have the wrong length for p={self.p}")
        _check_bijection(self.plus, len(sets.s_plus), "sigma_plus")
        _check_bijection(self.minus, len(sets.s_minus), "sigma_minus")
        if self.minus != _restrict(self.p, self.plus):
            raise ValueError("sigma_minus is not consistent with sigma_plus")

    @classmethod
    def from_plus_order(cls, p: int, order) -> "OrderingPair":
        """Build from ``S+`` pairs listed largest-first; ``S-`` follows along."""
        sets = index_pair_sets(p)
        pos = {pair: r for r, pair in enumerate(order, start=1)}
        if set(pos) != set(sets.s_plus) or len(pos) != len(order):
            raise ValueError("order must list every pair of S+ exactly once")
        plus = tuple(pos[pair] for pair in sets.s_plus)
        return cls(p, plus, _restrict(p, plus))

    def sigma_plus(self, k: int, l: int) -> int:
        return self.plus[_plus_pos(self.p)[(min(k, l), max(k, l))]]

    def sigma_minus(self, k: int, l: int) -> int:
        return self.minus[_minus_pos(self.p)[(min(k, l), max(k, l))]]

    def plus_order(self) -> tuple:
        """``S+`` pairs from rank 1 upward."""
        sets = index_pair_sets(self.p)
        return tuple(pair for _, pair in sorted(zip(self.plus, sets.s_plus)))

    @cached_property
    def upper_offsets(self) -> np.ndarray:
        """``d`` with ``upper[k, l] = lam_{N-d}``, 0-based ``k <= l``; -1 elsewhere."""
        grid = np.full((self.p, self.p), -1, dtype=int)
        for (k, l), r in zip(index_pair_sets(self.p).s_plus, self.plus):
            grid[k - 1, l - 1] = r - 1
        return grid

    @cached_property
    def lower_ranks(self) -> np.ndarray:
        """``r`` with ``lower[l, k] = -lam_r`` for 0-based ``k < l``; 0 elsewhere."""
        grid = np.zeros((self.p, self.p), dtype=int)
        for (k, l), r in zip(index_pair_sets(self.p).s_minus, self.minus):
            grid[l - 1, k - 1] = r
        return grid

    def signed_index_grid(self, total: int) -> list:
        """Eigenvalue indices of the non-symmetric matrix, negative below the diagonal."""
        up, lo = self.upper_offsets, self.lower_ranks
        return [
            [int(total - up[k, l]) if k <= l else -int(lo[k, l]) for l in range(self.p)]
            for k in range(self.p)
        ]

    def symbolic_grid(self) -> list:
        """Like :meth:`signed_index_grid` but with ``N`` written as ``{p}n``."""
        up, lo = self.upper_offsets, self.lower_ranks

        def upper(d):
            return f"{self.p}n" if d == 0 else f"{self.p}n-{d}"

        return [
            [upper(int(up[k, l])) if k <= l else f"-{int(lo[k, l])}" for l in range(self.p)]
            for k in range(self.p)
        ]


@lru_cache(maxsize=None)
def _plus_pos(p):
    return {pair: i for i, pair in enumerate(index_pair_sets(p).s_plus)}


@lru_cache(maxsize=None)
def _minus_pos(p):
    return {pair: i for i, pair in enumerate(index_pair_sets(p).s_minus)}


def _restrict(p, plus):
    """Ranks of ``S-`` induced by the plus ranks."""
    pos = _plus_pos(p)
    sm = index_pair_sets(p).s_minus
    keys = [plus[pos[pair]] for pair in sm]
    order = sorted(range(len(sm)), key=keys.__getitem__)
    ranks = [0] * len(sm)
    for r, j in enumerate(order, start=1):
        ranks[j] = r
    return tuple(ranks)


def _check_dims(values: np.ndarray, op: OrderingPair):
    p_needed = len(index_pair_sets(op.p).s_plus) + len(index_pair_sets(op.p).s_minus)
    if values.shape[-1] < p_needed:
        raise DimensionMismatch(f"{values.shape[-1]} eigenvalues cannot fill a {op.p}x{op.p} pattern")


def _values_of(s) -> tuple[np.ndarray, int]:
    if isinstance(s, Spectrum):
        return s.as_array(), s.dims.p
    arr = np.asarray(s, dtype=float)
    return arr, None


def build_lambda_hat(s: Spectrum, op: OrderingPair) -> np.ndarray:
    values, p = _values_of(s)
    if p is not None and p != op.p:
        raise DimensionMismatch(f"spectrum has p={p}, ordering pair has p={op.p}")
    _check_dims(values, op)
    total = values.shape[-1]
    up, lo = op.upper_offsets, op.lower_ranks
    out = np.zeros((op.p, op.p))
    for k in range(op.p):
        for l in range(op.p):
            out[k, l] = values[total - 1 - up[k, l]] if k <= l else -values[lo[k, l] - 1]
    return out


def sym_gather_indices(op: OrderingPair, total: int) -> tuple[np.ndarray, np.ndarray]:
    """0-based index grids ``(a, b)`` with ``sym = v[a] - v[b]`` on the off-diagonal.

    On the diagonal ``sym = 2 v[a]`` and ``b`` is unused.
    """
    up, lo = op.upper_offsets, op.lower_ranks
    upper = np.where(up >= 0, total - 1 - up, 0)
    a = np.triu(upper) + np.triu(upper, 1).T
    lower = np.where(lo > 0, lo - 1, 0)
    b = lower + lower.T
    return a, b


def build_lambda_sym_batch(values: np.ndarray, ops) -> np.ndarray:
    """Symmetric matricizations for many spectra and many pairs at once.

    ``values`` has shape ``(batch, N)``; the result has shape
    ``(batch, len(ops), p, p)``.
    """
    values = np.atleast_2d(np.asarray(values, dtype=float))
    total = values.shape[-1]
    ops = list(ops)
    if not ops:
        raise ValueError("no ordering pairs given")
    p = ops[0].p
    a = np.stack([sym_gather_indices(op, total)[0] for op in ops])
    b = np.stack([sym_gather_indices(op, total)[1] for op in ops])
    for op in ops:
        _check_dims(values, op)
    out = values[:, a] - values[:, b]
    diag = np.arange(p)
    out[:, :, diag, diag] = 2.0 * values[:, a[:, diag, diag]]
    return out


def build_lambda_sym(s: Spectrum, op: OrderingPair) -> np.ndarray:
    values, p = _values_of(s)
    if p is not None and p != op.p:
        raise DimensionMismatch(f"spectrum has p={p}, ordering pair has p={op.p}")
    return build_lambda_sym_batch(values[None, :], [op])[0, 0]


def row_major_pair(p: int) -> OrderingPair:
    return OrderingPair.from_plus_order(p, index_pair_sets(p).s_plus)


def column_major_pair(p: int) -> OrderingPair:
    order = sorted(index_pair_sets(p).s_plus, key=lambda kl: (kl[1], kl[0]))
    return OrderingPair.from_plus_order(p, order)


# Ququart templates: the upper-triangle ranks that differ from the row-major
# layout, keyed by 0-based (k, l) and given as 0-based offsets d (entry lam_{N-d}).
# The lower triangle uses one of two S- orderings, depending on whether x1*x4
# comes before x2*x3.
_ROW_MAJOR_4 = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (0, 3): 3, (1, 1): 4,
                (1, 2): 5, (1, 3): 6, (2, 2): 7, (2, 3): 8, (3, 3): 9}
_QUQUART_OVERRIDES = (
    {},
    {(1, 3): 7, (2, 2): 6},
    {(0, 3): 6, (1, 1): 3, (1, 2): 4, (1, 3): 7, (2, 2): 5},
    {(0, 2): 3, (0, 3): 6, (1, 1): 2, (1, 2): 4, (1, 3): 7, (2, 2): 5},
    {(0, 3): 5, (1, 1): 3, (1, 2): 4, (1, 3): 7, (2, 2): 6},
    {(0, 2): 3, (0, 3): 5, (1, 1): 2, (1, 2): 4, (1, 3): 7, (2, 2): 6},
    {(0, 3): 5, (1, 1): 3, (1, 2): 4, (1, 3): 6, (2, 2): 7},
    {(0, 2): 3, (0, 3): 5, (1, 1): 2, (1, 2): 4, (1, 3): 6, (2, 2): 7},
    {(0, 3): 4, (1, 1): 3, (1, 2): 5, (1, 3): 7, (2, 2): 6},
    {(0, 2): 3, (0, 3): 4, (1, 1): 2, (1, 2): 5, (1, 3): 7, (2, 2): 6},
    {(0, 3): 4, (1, 1): 3, (1, 2): 5, (1, 3): 6, (2, 2): 7},
    {(0, 2): 3, (0, 3): 4, (1, 1): 2, (1, 2): 5, (1, 3): 6, (2, 2): 7},
)


def _from_offsets(p, offsets) -> OrderingPair:
    order = sorted(offsets, key=offsets.__getitem__)
    return OrderingPair.from_plus_order(p, [(k + 1, l + 1) for k, l in order])


@lru_cache(maxsize=None)
def canonical_pairs(p: int) -> tuple:
    """All ordering pairs needed for the exact test, in a fixed order.

    p=3 gives the column-major pair first, then row-major. p=4 gives the twelve
    ququart templates; the first is row-major and the fourth column-major.
    """
    if p == 2:
        return (row_major_pair(2),)
    if p == 3:
        return (column_major_pair(3), row_major_pair(3))
    if p == 4:
        return tuple(_from_offsets(4, {**_ROW_MAJOR_4, **o}) for o in _QUQUART_OVERRIDES)
    raise UnsupportedP(f"no hardcoded ordering templates for p={p}; use sample_pairs")


def _schmidt(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("Schmidt vector must be one-dimensional and non-empty")
    if np.any(x < 0) or np.any(np.diff(x) > 0):
        raise ValueError("Schmidt vector must be non-negative and non-increasing")
    if not np.any(x > 0):
        raise ZeroVector("Schmidt vector is identically zero")
    return x


def _plus_products(x: np.ndarray) -> np.ndarray:
    """Products over ``S+`` in lexicographic order; works on ``(..., p)`` stacks."""
    k, l = np.triu_indices(x.shape[-1])
    return x[..., k] * x[..., l]


def compatible_pair_for(x) -> OrderingPair:
    """The pair sorting the products ``x_k x_l`` largest-first.

    Equal products keep lexicographic order of ``(k, l)``.
    """
    x = _schmidt(x)
    p = x.size
    order = np.argsort(-_plus_products(x), kind="stable")
    sp = index_pair_sets(p).s_plus
    return OrderingPair.from_plus_order(p, [sp[i] for i in order])


def is_compatible(x, op: OrderingPair) -> bool:
    x = _schmidt(x)
    if x.size != op.p:
        raise DimensionMismatch(f"vector has length {x.size}, ordering pair has p={op.p}")
    prods = _plus_products(x)
    ranked = prods[np.argsort(op.plus)]
    slack = COMPATIBILITY_RTOL * prods.max()
    # later ranks may never carry a strictly larger product
    return bool(np.all(np.maximum.accumulate(ranked[::-1])[::-1][1:] <= ranked[:-1] + slack))


def signed_products(x) -> list:
    x = np.asarray(x, dtype=float)
    p = x.size
    sets = index_pair_sets(p)
    plus = [x[k - 1] * x[l - 1] for k, l in sets.s_plus]
    minus = [-x[k - 1] * x[l - 1] for k, l in sets.s_minus]
    return plus + minus


@lru_cache(maxsize=32)
def sample_pairs(p: int, seed: int = 0, samples: int = 100_000) -> tuple:
    """Ordering pairs discovered from random descending positive vectors.

    Every returned pair is compatible with the vector that produced it, so the
    result is a subset of the full set. Orderings that only arise when some
    products tie exactly have probability zero and are not found. Output is
    sorted by the plus ranks so it does not depend on discovery order.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    rng = np.random.default_rng(seed)
    found = set()
    chunk = 50_000
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        x = -np.sort(-rng.random((size, p)), axis=1)
        order = np.argsort(-_plus_products(x), axis=1, kind="stable")
        found.update(map(tuple, np.unique(order, axis=0).tolist()))
        done += size
    sp = index_pair_sets(p).s_plus
    pairs = {OrderingPair.from_plus_order(p, [sp[i] for i in o]) for o in found}
    return tuple(sorted(pairs, key=lambda op: op.plus))
