"""Basis moments of a sampled measure and the operator matrices built from them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Callable, Iterable, NamedTuple

import numpy as np
import scipy.linalg

from .basis import BasisSpec, multiplication_table, x_moments
from .errors import (DegenerateMeasureError, EmptyMeasureError, GramNotPositiveDefiniteError,
                     InvalidArgumentError, InvalidMeasureError)

CHUNK = 2048


class Sample(NamedTuple):
    x: float
    f: float
    weight: float = 1.0


@dataclass(frozen=True)
class SampleTable:
    """Column-oriented samples; iterating yields :class:`Sample` rows."""

    x: np.ndarray
    f: np.ndarray
    weight: np.ndarray

    def __post_init__(self):
        cols = [np.asarray(c, dtype=float).ravel() for c in (self.x, self.f, self.weight)]
        if not (cols[0].size == cols[1].size == cols[2].size):
            raise InvalidArgumentError("sample columns differ in length")
        _validate(*cols)
        for name, col in zip(("x", "f", "weight"), cols):
            col.setflags(write=False)
            object.__setattr__(self, name, col)

    @classmethod
    def from_arrays(cls, x, f=None, weight=None) -> "SampleTable":
        x = np.asarray(x, dtype=float)
        f = np.zeros_like(x) if f is None else f
        weight = np.ones_like(x) if weight is None else weight
        return cls(x, f, weight)

    @classmethod
    def from_samples(cls, samples: Iterable[Sample]) -> "SampleTable":
        rows = np.array([tuple(s) for s in samples], dtype=float).reshape(-1, 3)
        return cls(rows[:, 0], rows[:, 1], rows[:, 2])

    def __len__(self):
        return self.x.size

    def __iter__(self):
        for row in zip(self.x.tolist(), self.f.tolist(), self.weight.tolist()):
            yield Sample(*row)


def _validate(x, f, w):
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(f)) and np.all(np.isfinite(w))):
        raise InvalidMeasureError("non-finite sample value")
    if np.any(w < 0):
        raise InvalidMeasureError("negative sample weight")


def iter_chunks(samples, size: int = CHUNK):
    """Yield (x, f, w) array triples from a SampleTable or an iterable of samples."""
    if isinstance(samples, SampleTable):
        for start in range(0, len(samples), size):
            stop = start + size
            yield samples.x[start:stop], samples.f[start:stop], samples.weight[start:stop]
        return
    it = iter(samples)
    while True:
        rows = list(islice(it, size))
        if not rows:
            return
        block = np.array([tuple(Sample(*r)) for r in rows], dtype=float).reshape(-1, 3)
        x, f, w = block[:, 0], block[:, 1], block[:, 2]
        _validate(x, f, w)
        yield x, f, w


class KahanSum:
    """Compensated running sum of equally shaped arrays."""

    def __init__(self, shape):
        self.total = np.zeros(shape)
        self._comp = np.zeros(shape)

    def add(self, value):
        y = value - self._comp
        t = self.total + y
        self._comp = (t - self.total) - y
        self.total = t

    def merge(self, other: "KahanSum"):
        self.add(other.total)
        self.add(-other._comp)


@dataclass(frozen=True)
class MomentSet:
    """Raw sums <Q_m> and <Q_m f>, m = 0 .. 2n-2.

    ``mu_next`` holds <Q_{2n-1}>, needed only for the f = x pencil;
    ``f2`` is <f^2> for the variance decomposition.
    """

    basis: BasisSpec
    n: int
    mu_moments: np.ndarray
    f_moments: np.ndarray
    mu_next: float | None = None
    f2: float | None = None
    count: int = 0

    def __post_init__(self):
        mu = np.asarray(self.mu_moments, dtype=float)
        fm = np.asarray(self.f_moments, dtype=float)
        if self.n < 1 or mu.shape != (2 * self.n - 1,) or fm.shape != (2 * self.n - 1,):
            raise InvalidArgumentError(f"moment sequences must have length 2n-1 = {2 * self.n - 1}")
        object.__setattr__(self, "mu_moments", mu)
        object.__setattr__(self, "f_moments", fm)

    @property
    def total_measure(self) -> float:
        return float(self.mu_moments[0])

    def __add__(self, other: "MomentSet") -> "MomentSet":
        if self.basis != other.basis or self.n != other.n:
            raise InvalidArgumentError("cannot merge moments of different bases or orders")

        def opt(a, b):
            return None if a is None or b is None else a + b

        return MomentSet(self.basis, self.n, self.mu_moments + other.mu_moments,
                         self.f_moments + other.f_moments, opt(self.mu_next, other.mu_next),
                         opt(self.f2, other.f2), self.count + other.count)


def accumulate_moments(samples, basis: BasisSpec, n: int, *, chunk_size: int = CHUNK) -> MomentSet:
    """Single pass over the samples; chunk sums are merged with compensation."""
    if n < 1:
        raise InvalidArgumentError("order n must be at least 1")
    size = 2 * n
    # a short custom recurrence cannot reach Q_{2n-1}; mu_next is then omitted
    with_next = basis.recurrence is None or len(basis.recurrence) >= size
    mu = KahanSum(size if with_next else size - 1)
    fm = KahanSum(size - 1)
    f2 = KahanSum(())
    count = 0
    for x, f, w in iter_chunks(samples, chunk_size):
        V = basis.vander(x, size if with_next else size - 1)
        mu.add(w @ V)
        fm.add((w * f) @ V[:, : size - 1])
        f2.add(float(w @ (f * f)))
        count += x.size
    if count == 0:
        raise EmptyMeasureError("no samples in measure")
    if mu.total[0] <= 0:
        raise EmptyMeasureError("total measure is zero")
    return MomentSet(basis, n, mu.total[: size - 1].copy(), fm.total.copy(),
                     float(mu.total[size - 1]) if with_next else None, float(f2.total), count)


@dataclass(frozen=True)
class OperatorPair:
    """The pencil (left, right) = (<Q_j|f|Q_k>, <Q_j|Q_k>)."""

    basis: BasisSpec
    left: np.ndarray
    right: np.ndarray

    @property
    def n(self) -> int:
        return self.right.shape[0]


def gram_from_moments(basis: BasisSpec, mu, n: int) -> np.ndarray:
    table = multiplication_table(basis, n)
    return np.einsum("jkm,m->jk", table, np.asarray(mu, dtype=float)[: 2 * n - 1])


def matrices_from_moments(moments: MomentSet) -> OperatorPair:
    table = multiplication_table(moments.basis, moments.n)
    left = np.einsum("jkm,m->jk", table, moments.f_moments)
    right = np.einsum("jkm,m->jk", table, moments.mu_moments)
    return OperatorPair(moments.basis, left, right)


def x_matrix(moments: MomentSet) -> np.ndarray:
    """<Q_j|x|Q_k> assembled from the measure moments (needs ``mu_next``)."""
    if moments.mu_next is None:
        raise InvalidArgumentError("the x operator needs the moment <Q_{2n-1}>")
    mu = np.append(moments.mu_moments, moments.mu_next)
    xm = x_moments(moments.basis, mu)
    return np.einsum("jkm,m->jk", multiplication_table(moments.basis, moments.n), xm)


def gaussian_pair(moments: MomentSet) -> OperatorPair:
    return OperatorPair(moments.basis, x_matrix(moments),
                        gram_from_moments(moments.basis, moments.mu_moments, moments.n))


def second_pass_matrix(samples, basis: BasisSpec, n: int,
                       g: Callable[[np.ndarray], np.ndarray], *, chunk_size: int = CHUNK) -> np.ndarray:
    """<Q_j|g|Q_k> summed directly over the observations.

    ``g`` is called with an array of x values and must return an array of the
    same length.
    """
    acc = KahanSum((n, n))
    count = 0
    for x, _, w in iter_chunks(samples, chunk_size):
        V = basis.vander(x, n)
        gx = np.asarray(g(x), dtype=float).reshape(x.shape)
        acc.add(V.T @ ((w * gx)[:, None] * V))
        count += x.size
    if count == 0:
        raise EmptyMeasureError("no samples in measure")
    m = acc.total
    return 0.5 * (m + m.T)


def cholesky_lower(matrix: np.ndarray) -> np.ndarray:
    """Lower factor L of ``matrix = L L^T``.

    Raises GramNotPositiveDefiniteError carrying the failing leading minor.
    """
    factor, info = scipy.linalg.lapack.dpotrf(np.asarray(matrix, dtype=float), lower=1, clean=1)
    if info > 0:
        raise GramNotPositiveDefiniteError(int(info))
    if info < 0:
        raise InvalidArgumentError("invalid matrix passed to factorization")
    return factor


def three_term_recurrence(moments: MomentSet) -> list[tuple[float, float]]:
    """Recurrence pairs (a_k, b_k), k = 0..n-1, of the measure's orthonormal polynomials.

    ``x pi_k = a_{k+1} pi_{k+1} + b_k pi_k + a_k pi_{k-1}`` with ``a_0 = 0``.
    Gram-Schmidt in the moment metric is the Cholesky factor of the Gram
    matrix; multiplication by x comes from the basis recurrence.
    """
    G = gram_from_moments(moments.basis, moments.mu_moments, moments.n)
    try:
        L = cholesky_lower(G)
    except GramNotPositiveDefiniteError as exc:
        raise DegenerateMeasureError(
            exc.minor, f"degenerate measure: leading minor {exc.minor} of the Gram matrix is not positive") from None
    X = x_matrix(moments)
    Y = scipy.linalg.solve_triangular(L, X, lower=True)
    J = scipy.linalg.solve_triangular(L, Y.T, lower=True)
    J = 0.5 * (J + J.T)
    b = np.diag(J)
    a = np.concatenate(([0.0], np.abs(np.diag(J, 1))))
    return [(float(ak), float(bk)) for ak, bk in zip(a, b)]
