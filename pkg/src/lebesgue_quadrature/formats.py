"""Text readers and writers, histogramming, and the dataset generators."""

from __future__ import annotations

import math
import os
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (ColumnSpecError, EmptyInputError, InvalidArgumentError, ParseError)
from .moments import Sample, SampleTable

SPECTRUM_COLUMNS = ("index", "lambda", "x_psi", "w", "w_K")


@dataclass(frozen=True)
class ColumnSpec:
    """Column selection ``TOTAL:X:F[:W]``, 0-based.

    X and F may name the same column (f = x gives the Gaussian quadrature).
    """

    total_columns: int
    x_column: int
    f_column: int
    weight_column: int | None = None

    def __post_init__(self):
        if self.total_columns < 1:
            raise ColumnSpecError("total column count must be positive")
        used = [self.x_column, self.f_column] + ([] if self.weight_column is None else [self.weight_column])
        for idx in used:
            if not 0 <= idx < self.total_columns:
                raise ColumnSpecError(f"column index {idx} outside 0..{self.total_columns - 1}")
        if self.weight_column is not None and self.weight_column in (self.x_column, self.f_column):
            raise ColumnSpecError("weight column must differ from the x and f columns")

    @classmethod
    def parse(cls, text: str) -> "ColumnSpec":
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ColumnSpecError(f"column spec {text!r} is not TOTAL:X:F[:W]")
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise ColumnSpecError(f"column spec {text!r} has a non-integer field") from None
        return cls(*values)

    def __str__(self):
        parts = [self.total_columns, self.x_column, self.f_column]
        if self.weight_column is not None:
            parts.append(self.weight_column)
        return ":".join(map(str, parts))


def _split(line: str, delimiter: str | None):
    if delimiter is None:
        delimiter = "\t" if "\t" in line else ("," if "," in line else None)
    return [s.strip() for s in line.split(delimiter)], delimiter


def read_rows(path) -> Iterator[tuple[int, list[str]]]:
    """(line number, fields) for each data line; the delimiter is taken from the first one."""
    delimiter = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields, delimiter = _split(line, delimiter)
            yield lineno, fields


def read_samples(path, spec: ColumnSpec) -> Iterator[Sample]:
    for lineno, fields in read_rows(path):
        if len(fields) != spec.total_columns:
            raise ColumnSpecError(f"{path}:{lineno}: expected {spec.total_columns} columns, found {len(fields)}")
        try:
            x = float(fields[spec.x_column])
            f = float(fields[spec.f_column])
            w = 1.0 if spec.weight_column is None else float(fields[spec.weight_column])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno, path=path) from None
        yield Sample(x, f, w)


def read_table(path, spec: ColumnSpec) -> SampleTable:
    table = SampleTable.from_samples(read_samples(path, spec))
    if len(table) == 0:
        raise EmptyInputError(f"{path}: no data rows")
    return table


def format_float(value) -> str:
    """Shortest decimal string that round-trips."""
    return repr(float(value))


@contextmanager
def atomic_writer(path):
    """Write to a temporary file next to ``path``; rename only on success."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_columns(path, header: Sequence[str], columns: Sequence) -> None:
    cols = [np.asarray(c).ravel() for c in columns]
    if len({c.size for c in cols}) > 1:
        raise InvalidArgumentError("output columns differ in length")
    with atomic_writer(path) as fh:
        fh.write("#" + "\t".join(header) + "\n")
        for row in zip(*cols):
            fh.write("\t".join(str(v) if isinstance(v, (int, np.integer)) else format_float(v)
                               for v in row) + "\n")


@dataclass(frozen=True)
class Spectrum:
    """index, lambda, x_psi, w, w_K per eigenstate."""

    eigenvalues: np.ndarray
    x_psi: np.ndarray
    weights: np.ndarray
    christoffel_weights: np.ndarray

    def __len__(self):
        return self.eigenvalues.size


def write_spectrum(path, spectrum: Spectrum) -> None:
    index = np.arange(len(spectrum))
    write_columns(path, SPECTRUM_COLUMNS, [index, spectrum.eigenvalues, spectrum.x_psi,
                                           spectrum.weights, spectrum.christoffel_weights])


def read_spectrum(path) -> Spectrum:
    rows = []
    for lineno, fields in read_rows(path):
        if len(fields) != len(SPECTRUM_COLUMNS):
            raise ColumnSpecError(f"{path}:{lineno}: a spectrum row has {len(SPECTRUM_COLUMNS)} columns")
        try:
            rows.append([float(v) for v in fields[1:]])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno, path=path) from None
    if not rows:
        raise EmptyInputError(f"{path}: empty spectrum")
    data = np.array(rows)
    return Spectrum(data[:, 0], data[:, 1], data[:, 2], data[:, 3])


def write_cluster_report(path, values, weights) -> None:
    write_columns(path, ("cluster", "value", "weight"), [np.arange(len(values)), values, weights])


def histogram(values, weights, bins: int) -> list[tuple[float, float]]:
    """Equal-width bins over [min, max]; the maximum falls in the last bin.

    Each bin mass is an exactly rounded sum (math.fsum) of its weights.
    """
    values = np.asarray(values, dtype=float).ravel()
    weights = np.asarray(weights, dtype=float).ravel()
    if values.size == 0:
        raise EmptyInputError("histogram of an empty sequence")
    if values.size != weights.size:
        raise InvalidArgumentError("values and weights differ in length")
    if bins < 1:
        raise InvalidArgumentError("bins must be at least 1")
    if not np.all(np.isfinite(values)):
        raise InvalidArgumentError("histogram values must be finite")
    lo, hi = float(values.min()), float(values.max())
    width = (hi - lo) / bins
    if width > 0:
        idx = np.minimum(((values - lo) / width).astype(int), bins - 1)
    else:
        idx = np.zeros(values.size, dtype=int)
    masses = [math.fsum(weights[idx == b]) for b in range(bins)]
    return [(lo + (b + 0.5) * width, masses[b]) for b in range(bins)]


def write_histogram(path, hist) -> None:
    centers, masses = zip(*hist)
    write_columns(path, ("bin_center", "mass"), [centers, masses])


def two_stage_curve(M: int, N_total: float, N_break: float, slope1: float, slope2: float,
                    noise: float = 0.0, seed: int = 0, C0: float = 1.0):
    """Piecewise linear C(N) with slopes -slope1 then -slope2 on a uniform grid."""
    if not 0 < N_break < N_total:
        raise InvalidArgumentError("break point must satisfy 0 < N_break < N_total")
    if M < 2:
        raise InvalidArgumentError("at least two samples are needed")
    if noise < 0:
        raise InvalidArgumentError("noise amplitude must be nonnegative")
    N = np.linspace(0.0, N_total, M)
    C = np.where(N <= N_break, C0 - slope1 * N, C0 - slope1 * N_break - slope2 * (N - N_break))
    if noise > 0:
        C = C + noise * np.random.default_rng(seed).uniform(-1.0, 1.0, M)
    return N, C


def generate_two_stage(path, M: int, N_total: float, N_break: float, slope1: float, slope2: float,
                       noise: float = 0.0, seed: int = 0) -> None:
    N, C = two_stage_curve(M, N_total, N_break, slope1, slope2, noise, seed)
    write_columns(path, ("N", "C"), [N, C])


RUNGE_INTERVALS = 10000


def runge_table(intervals: int = RUNGE_INTERVALS) -> np.ndarray:
    """Columns 1, x, ..., x^6, 1/(1+25x^2), trapezoid weight for dx on [-1, 1]."""
    x = np.linspace(-1.0, 1.0, intervals + 1)
    h = 2.0 / intervals
    w = np.full(x.size, h)
    w[0] = w[-1] = h / 2
    powers = [x ** k for k in range(7)]
    return np.column_stack(powers + [1.0 / (1.0 + 25.0 * x * x), w])


def generate_runge(path) -> None:
    table = runge_table()
    header = ["1"] + [f"x^{k}" if k > 1 else "x" for k in range(1, 7)] + ["runge", "weight"]
    write_columns(path, header, table.T)
