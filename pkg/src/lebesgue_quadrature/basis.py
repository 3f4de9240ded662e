"""Polynomial bases Q_k(x), their evaluation and multiplication operator.

Every supported basis obeys a three term recurrence in the standard
variable ``t = (x - shift) / scale``::

    t Q_k(t) = A_k Q_{k+1}(t) + B_k Q_k(t) + C_k Q_{k-1}(t),   Q_0 = 1

The affine map lets a basis sit on the data range; it does not change any
generalized eigenproblem built from the basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import InsufficientRecurrenceError, InvalidArgumentError


class BasisKind(str, Enum):
    CHEBYSHEV = "chebyshev"
    LEGENDRE = "legendre"
    SHIFTED_LEGENDRE = "legendreshifted"
    HERMITEE = "hermitee"
    LAGUERRE = "laguerre"
    MONOMIAL = "monomial"
    CUSTOM = "custom"


# natural interval for the affine fit; None means no rescaling is applied
_NATURAL_INTERVAL = {
    BasisKind.CHEBYSHEV: (-1.0, 1.0),
    BasisKind.LEGENDRE: (-1.0, 1.0),
    BasisKind.SHIFTED_LEGENDRE: (0.0, 1.0),
    BasisKind.MONOMIAL: (-1.0, 1.0),
    BasisKind.HERMITEE: None,
    BasisKind.LAGUERRE: None,
    BasisKind.CUSTOM: None,
}


@dataclass(frozen=True)
class BasisSpec:
    """Identifies a polynomial basis and the affine map onto its variable.

    For ``CUSTOM`` the recurrence pairs ``(a_k, b_k)`` define orthonormal-style
    polynomials ``x pi_k = a_{k+1} pi_{k+1} + b_k pi_k + a_k pi_{k-1}``;
    ``a_0`` is unused (conventionally 0).
    """

    kind: BasisKind = BasisKind.CHEBYSHEV
    recurrence: tuple[tuple[float, float], ...] | None = None
    shift: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        kind = BasisKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if not (math.isfinite(self.shift) and math.isfinite(self.scale)) or self.scale <= 0:
            raise InvalidArgumentError("affine map needs finite shift and positive scale")
        if kind is BasisKind.CUSTOM:
            if not self.recurrence:
                raise InvalidArgumentError("custom basis requires recurrence coefficients")
            rec = tuple((float(a), float(b)) for a, b in self.recurrence)
            if rec[0][0] < 0 or any(a <= 0 for a, _ in rec[1:]):
                raise InvalidArgumentError("recurrence coefficients a_k must be positive")
            object.__setattr__(self, "recurrence", rec)
        elif self.recurrence is not None:
            raise InvalidArgumentError(f"{kind.value} basis takes no recurrence coefficients")

    @classmethod
    def from_name(cls, name: str) -> "BasisSpec":
        try:
            kind = BasisKind(name.lower())
        except ValueError:
            names = ", ".join(k.value for k in BasisKind if k is not BasisKind.CUSTOM)
            raise InvalidArgumentError(f"unknown basis {name!r}; expected one of {names}") from None
        if kind is BasisKind.CUSTOM:
            raise InvalidArgumentError("custom basis cannot be selected by name")
        return cls(kind)

    def fitted(self, x_min: float, x_max: float) -> "BasisSpec":
        """Copy whose affine map sends [x_min, x_max] onto the natural interval."""
        interval = _NATURAL_INTERVAL[self.kind]
        if interval is None or not x_max > x_min:
            return BasisSpec(self.kind, self.recurrence)
        lo, hi = interval
        scale = (x_max - x_min) / (hi - lo)
        return BasisSpec(self.kind, self.recurrence, shift=x_min - lo * scale, scale=scale)

    def standard(self, x):
        return (np.asarray(x, dtype=float) - self.shift) / self.scale

    def max_index(self) -> int | None:
        """Largest k for which the recurrence coefficients (A_k, B_k, C_k) exist."""
        if self.kind is BasisKind.CUSTOM:
            return len(self.recurrence) - 2
        return None

    def coefficients(self, k: int) -> tuple[float, float, float]:
        """(A_k, B_k, C_k) of ``t Q_k = A_k Q_{k+1} + B_k Q_k + C_k Q_{k-1}``."""
        kind = self.kind
        if kind is BasisKind.MONOMIAL:
            return 1.0, 0.0, 0.0
        if kind is BasisKind.CHEBYSHEV:
            return (1.0, 0.0, 0.0) if k == 0 else (0.5, 0.0, 0.5)
        if kind is BasisKind.LEGENDRE:
            return (k + 1) / (2 * k + 1), 0.0, k / (2 * k + 1)
        if kind is BasisKind.SHIFTED_LEGENDRE:
            return 0.5 * (k + 1) / (2 * k + 1), 0.5, 0.5 * k / (2 * k + 1)
        if kind is BasisKind.HERMITEE:
            return 1.0, 0.0, float(k)
        if kind is BasisKind.LAGUERRE:
            return -(k + 1.0), 2.0 * k + 1.0, -float(k)
        rec = self.recurrence
        if k + 1 >= len(rec):
            raise InsufficientRecurrenceError(
                f"custom basis needs {k + 2} recurrence pairs, has {len(rec)}")
        return rec[k + 1][0], rec[k][1], (rec[k][0] if k > 0 else 0.0)

    def recurrence_arrays(self, count: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Arrays of A_k, B_k, C_k for k = 0 .. count-1."""
        abc = np.array([self.coefficients(k) for k in range(count)], dtype=float).reshape(count, 3)
        return abc[:, 0], abc[:, 1], abc[:, 2]

    def vander(self, x, n: int) -> np.ndarray:
        """Matrix of Q_0..Q_{n-1} evaluated at x, shape ``x.shape + (n,)``."""
        t = self.standard(x)
        if not np.all(np.isfinite(t)):
            raise InvalidArgumentError("basis evaluation needs finite x")
        out = np.empty(t.shape + (n,))
        if n == 0:
            return out
        out[..., 0] = 1.0
        if n == 1:
            return out
        A, B, C = self.recurrence_arrays(n - 1)
        prev = np.zeros_like(t)
        for k in range(n - 1):
            out[..., k + 1] = ((t - B[k]) * out[..., k] - C[k] * prev) / A[k]
            prev = out[..., k]
        return out


def evaluate_basis(basis: BasisSpec, k: int, x):
    """Q_k(x) by upward recurrence."""
    if k < 0:
        raise InvalidArgumentError("basis index must be non-negative")
    values = basis.vander(x, k + 1)[..., k]
    return float(values) if np.ndim(values) == 0 else values


def _check_custom_length(basis: BasisSpec, top: int):
    # products up to degree `top` need recurrence pairs 0..top
    if basis.kind is BasisKind.CUSTOM and len(basis.recurrence) < top + 1:
        raise InsufficientRecurrenceError(
            f"custom basis needs {top + 1} recurrence pairs, has {len(basis.recurrence)}")


def multiplication_table(basis: BasisSpec, n: int) -> np.ndarray:
    """Dense c[j, k, m] with ``Q_j Q_k = sum_m c[j, k, m] Q_m`` for j, k < n.

    The table is exactly symmetric in (j, k).
    """
    size = max(2 * n - 1, 1)
    table = np.zeros((n, n, size))
    if n == 0:
        return table
    kind = basis.kind
    if kind is BasisKind.MONOMIAL:
        for j in range(n):
            table[j, np.arange(n), j + np.arange(n)] = 1.0
        return table
    if kind is BasisKind.CHEBYSHEV:
        for j in range(n):
            for k in range(n):
                table[j, k, j + k] += 0.5
                table[j, k, abs(j - k)] += 0.5
        return table

    _check_custom_length(basis, 2 * n - 2)
    A, B, C = basis.recurrence_arrays(size - 1) if size > 1 else (np.ones(0),) * 3

    def times_t(u):
        # Jacobi operator: coefficient vectors (columns) multiplied by t
        out = np.zeros_like(u)
        out[1:] += A[:, None] * u[:-1]
        out[:-1] += B[:, None] * u[:-1]
        out[:-2] += C[1:, None] * u[1:-1]
        return out

    # columns: Q_k for k < n; rows of `cur` are coefficients in Q_m
    cur = np.zeros((size, n))
    cur[np.arange(n), np.arange(n)] = 1.0
    prev = np.zeros_like(cur)
    table[0] = cur.T
    for j in range(n - 1):
        nxt = (times_t(cur) - B[j] * cur - C[j] * prev) / A[j]
        prev, cur = cur, nxt
        table[j + 1] = cur.T
    # use the lower-degree factor as the operator; mirror for exact symmetry
    upper = np.triu_indices(n, 1)
    table[upper[1], upper[0]] = table[upper[0], upper[1]]
    return table


def multiplication_coefficients(basis: BasisSpec, j: int, k: int) -> list[tuple[int, float]]:
    """Structurally nonzero (m, c_m^{jk}) of ``Q_j Q_k = sum_m c_m Q_m``."""
    if j < 0 or k < 0:
        raise InvalidArgumentError("basis indices must be non-negative")
    if basis.kind is BasisKind.MONOMIAL:
        return [(j + k, 1.0)]
    if basis.kind is BasisKind.CHEBYSHEV:
        if j == 0 or k == 0:
            return [(j + k, 1.0)]
        if j == k:
            return [(0, 0.5), (2 * j, 0.5)]
        return [(abs(j - k), 0.5), (j + k, 0.5)]
    lo, hi = min(j, k), max(j, k)
    row = multiplication_table(basis, hi + 1)[lo, hi]
    return [(m, float(c)) for m, c in enumerate(row) if c != 0.0]


@dataclass(frozen=True)
class PolynomialInBasis:
    """P(x) = sum_m coefficients[m] Q_m(x)."""

    basis: BasisSpec
    coefficients: np.ndarray = field(default_factory=lambda: np.zeros(1))

    def __post_init__(self):
        coeffs = np.array(self.coefficients, dtype=float).ravel()
        if coeffs.size == 0:
            coeffs = np.zeros(1)
        if not np.all(np.isfinite(coeffs)):
            raise InvalidArgumentError("polynomial coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def __call__(self, x):
        values = self.basis.vander(x, self.coefficients.size) @ self.coefficients
        return float(values) if np.ndim(values) == 0 else values


def multiply_polynomials(p: PolynomialInBasis, q: PolynomialInBasis) -> PolynomialInBasis:
    if p.basis != q.basis:
        raise InvalidArgumentError("cannot multiply polynomials in different bases")
    size = max(p.coefficients.size, q.coefficients.size)
    a = np.zeros(size)
    b = np.zeros(size)
    a[: p.coefficients.size] = p.coefficients
    b[: q.coefficients.size] = q.coefficients
    table = multiplication_table(p.basis, size)
    product = np.einsum("j,k,jkm->m", a, b, table)
    return PolynomialInBasis(p.basis, product[: p.degree + q.degree + 1])


def _times_x(basis: BasisSpec, coeffs: np.ndarray) -> np.ndarray:
    """Coefficients of x * P for P given by ``coeffs`` (length grows by one)."""
    size = coeffs.size
    A, B, C = basis.recurrence_arrays(size)
    out = np.zeros(size + 1)
    out[1:] += A * coeffs
    out[:-1] += B * coeffs
    out[:-2] += C[1:] * coeffs[1:]
    out *= basis.scale
    out[:-1] += basis.shift * coeffs
    return out


def x_moments(basis: BasisSpec, mu: Sequence[float]) -> np.ndarray:
    """<x Q_m> for m = 0 .. len(mu)-2 from the moments <Q_m>."""
    mu = np.asarray(mu, dtype=float)
    count = mu.size - 1
    A, B, C = basis.recurrence_arrays(count)
    shifted_down = np.concatenate(([0.0], mu[: count - 1]))
    return basis.shift * mu[:count] + basis.scale * (A * mu[1:] + B * mu[:count] + C * shifted_down)


def convert_polynomial(p: PolynomialInBasis, target: BasisSpec) -> PolynomialInBasis:
    """Re-expand ``p`` in another basis (same polynomial, new coefficients).

    Uses the source recurrence driven by multiplication-by-x in the target
    basis, so no monomial intermediate is formed.
    """
    size = p.coefficients.size
    src = p.basis
    A, B, C = src.recurrence_arrays(max(size - 1, 0)) if size > 1 else (np.zeros(0),) * 3
    prev = np.zeros(size)
    cur = np.zeros(size)
    cur[0] = 1.0
    result = p.coefficients[0] * cur
    for k in range(size - 1):
        # t_src = (x - shift) / scale, applied in target coordinates
        tx = _times_x(target, cur)[:size]
        t_cur = (tx - src.shift * cur) / src.scale
        nxt = (t_cur - B[k] * cur - C[k] * prev) / A[k]
        prev, cur = cur, nxt
        result = result + p.coefficients[k + 1] * cur
    return PolynomialInBasis(target, result)
