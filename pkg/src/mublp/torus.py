"""Points of the (d-1)-torus and their orthogonality/unbiasedness classes.

A dephased column (1, e^(2*pi*i*x_1), ..., e^(2*pi*i*x_(d-1))) of a rescaled
Hadamard matrix is represented by the point (x_1, ..., x_(d-1)).  A point is

  * ORT        if 1 + sum_j e^(2*pi*i*x_j) = 0,
  * UB         if |1 + sum_j e^(2*pi*i*x_j)|^2 = d,
  * ZERO       if it is the origin,
  * FORBIDDEN  otherwise.

Points with rational coordinates a_j/m are classified exactly in Z[zeta_m]
(the exact path is authoritative); arbitrary points fall back to 64-bit
floating point with tolerance ``eps``.

Grid enumeration is vectorised: each chunk of linear indices is decoded to
digit vectors, folded to root-of-unity multiplicity counts, and classified by
integer arithmetic only.  Chunk boundaries are fixed, so results do not
depend on the worker count.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import (
    BudgetExceededError,
    DEFAULT_ENUM_BUDGET,
    DEFAULT_EPS,
    run_chunked,
)
from .cyclo import (
    _zeta_power_rows,
    cyclo_conj,
    cyclo_equals_integer,
    cyclo_from_counts,
    cyclo_mul,
    euler_phi,
)


class PointClass(enum.Enum):
    ZERO = "zero"
    ORT = "ort"
    UB = "ub"
    FORBIDDEN = "forbidden"


CODE_ZERO, CODE_ORT, CODE_UB, CODE_FORBIDDEN = 0, 1, 2, 3
_CLASS_BY_CODE = {
    CODE_ZERO: PointClass.ZERO,
    CODE_ORT: PointClass.ORT,
    CODE_UB: PointClass.UB,
    CODE_FORBIDDEN: PointClass.FORBIDDEN,
}

_CHUNK = 1 << 18


@dataclass(frozen=True)
class TorusPoint:
    """A point of T^(d-1), exact (numerators over a common denominator) or float.

    Exact coordinates are numerators reduced mod the ambient denominator m.
    Float coordinates live in the canonical window [-1/2, 1/2).
    """

    denominator: int | None
    coords: tuple

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def is_exact(self) -> bool:
        return self.denominator is not None

    @staticmethod
    def exact(denominator: int, numerators) -> "TorusPoint":
        m = int(denominator)
        if m < 1:
            raise ValueError("denominator must be positive")
        return TorusPoint(m, tuple(int(a) % m for a in numerators))

    @staticmethod
    def from_floats(values) -> "TorusPoint":
        window = tuple(((float(v) + 0.5) % 1.0) - 0.5 for v in values)
        return TorusPoint(None, window)

    def as_floats(self) -> tuple[float, ...]:
        if self.is_exact:
            return tuple(a / self.denominator for a in self.coords)
        return self.coords

    def is_zero(self, eps: float = DEFAULT_EPS) -> bool:
        if self.is_exact:
            return not any(self.coords)
        return all(abs(v) <= eps for v in self.coords)


def zero_point(d: int) -> TorusPoint:
    return TorusPoint.exact(1, (0,) * (d - 1))


def classify(point: TorusPoint, d: int, eps: float = DEFAULT_EPS) -> PointClass:
    """Class of ``point`` for dimension ``d`` (point lives on T^(d-1))."""
    if point.dim != d - 1:
        raise ValueError(f"point has dim {point.dim}, expected {d - 1}")
    if point.is_exact:
        if point.is_zero():
            return PointClass.ZERO
        m = point.denominator
        counts = [0] * m
        counts[0] += 1
        for a in point.coords:
            counts[a] += 1
        z = cyclo_from_counts(m, counts)
        n = cyclo_mul(z, cyclo_conj(z))
        if cyclo_equals_integer(n, 0):
            return PointClass.ORT
        if cyclo_equals_integer(n, d):
            return PointClass.UB
        return PointClass.FORBIDDEN
    if point.is_zero(eps):
        return PointClass.ZERO
    s = 1.0 + sum(np.exp(2j * np.pi * x) for x in point.coords)
    v = abs(s) ** 2
    if abs(v) <= eps:
        return PointClass.ORT
    if abs(v - d) <= eps:
        return PointClass.UB
    return PointClass.FORBIDDEN


def difference(p: TorusPoint, q: TorusPoint) -> TorusPoint:
    """Coordinatewise p - q mod 1, canonicalised.

    Exact points are lifted to the least common denominator; a mixed pair
    falls back to float coordinates.
    """
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} != {q.dim}")
    if p.is_exact and q.is_exact:
        m = math.lcm(p.denominator, q.denominator)
        sp = m // p.denominator
        sq = m // q.denominator
        return TorusPoint.exact(
            m, (a * sp - b * sq for a, b in zip(p.coords, q.coords))
        )
    pa = p.as_floats()
    qa = q.as_floats()
    return TorusPoint.from_floats(a - b for a, b in zip(pa, qa))


def negate(p: TorusPoint) -> TorusPoint:
    if p.is_exact:
        m = p.denominator
        return TorusPoint.exact(m, ((m - a) % m for a in p.coords))
    return TorusPoint.from_floats(-v for v in p.coords)


def column_to_point(
    column,
    snap_denominator: int | None = None,
    eps: float = DEFAULT_EPS,
) -> TorusPoint:
    """Point of T^(d-1) associated to a dephased unimodular column.

    The column must have first coordinate 1 (within ``eps``) and unimodular
    entries.  When ``snap_denominator`` m is given and every phase is within
    ``eps`` of a multiple of 1/m, the result is exact over m; otherwise it is
    a float point.
    """
    col = np.asarray(column, dtype=complex)
    if col.ndim != 1 or col.size < 1:
        raise ValueError("column must be a nonempty vector")
    moduli = np.abs(col)
    worst = float(np.max(np.abs(moduli - 1.0)))
    if worst > eps:
        raise ValueError(f"entry modulus deviates from 1 by {worst:.3g}")
    if abs(col[0] - 1.0) > eps:
        raise ValueError("column is not dephased (first coordinate must be 1)")
    rho = np.angle(col[1:]) / (2.0 * np.pi)
    rho = np.where(rho >= 0.5, rho - 1.0, rho)
    if snap_denominator is not None:
        m = int(snap_denominator)
        scaled = rho * m
        nearest = np.rint(scaled)
        if np.max(np.abs(scaled - nearest), initial=0.0) <= eps * m:
            return TorusPoint.exact(m, nearest.astype(int))
    return TorusPoint.from_floats(rho)


# ---------------------------------------------------------------------------
# vectorised grid classification


def _check_budget(d: int, m: int, budget: int) -> int:
    total = m ** (d - 1)
    if total > budget:
        raise BudgetExceededError(
            f"grid of {total} points exceeds enumeration budget {budget}"
        )
    return total


def _decode_digits(indices: np.ndarray, m: int, n: int) -> np.ndarray:
    """Big-endian base-m digits; linear index order is lexicographic order."""
    digits = np.empty((indices.size, n), dtype=np.int64)
    rest = indices
    for j in range(n - 1, -1, -1):
        digits[:, j] = rest % m
        rest = rest // m
    return digits


@lru_cache(maxsize=None)
def _reduction_matrix(m: int) -> np.ndarray:
    """(m, phi(m)) integer matrix sending multiplicity vectors to Z[zeta_m]."""
    rows = _zeta_power_rows(m)
    return np.array([rows[t] for t in range(m)], dtype=np.int64)


def _codes_from_digit_rows(digits: np.ndarray, d: int, m: int) -> np.ndarray:
    """Exact class codes for digit rows (zero point NOT special-cased)."""
    length = digits.shape[0]
    counts = np.zeros((length, m), dtype=np.int64)
    row_ids = np.arange(length)
    for j in range(digits.shape[1]):
        counts[row_ids, digits[:, j]] += 1
    counts[:, 0] += 1  # the leading 1 of the column
    corr = np.empty((length, m), dtype=np.int64)
    for s in range(m):
        corr[:, s] = np.einsum("ij,ij->i", counts, np.roll(counts, -s, axis=1))
    reduced = corr @ _reduction_matrix(m)
    codes = np.full(length, CODE_FORBIDDEN, dtype=np.uint8)
    codes[np.all(reduced == 0, axis=1)] = CODE_ORT
    is_d = (reduced[:, 0] == d) & np.all(reduced[:, 1:] == 0, axis=1)
    codes[is_d] = CODE_UB
    return codes


def _multiset_classification(d: int, m: int):
    """Exact codes for every sorted digit row, keyed for searchsorted.

    The root sum 1 + sum zeta^(a_j) only depends on the coordinate multiset,
    so the m**(d-1) grid points collapse onto C(m+d-2, d-1) exact
    classifications.
    """
    import itertools

    rows = np.array(
        list(itertools.combinations_with_replacement(range(m), d - 1)),
        dtype=np.int64,
    ).reshape(-1, d - 1)
    codes = _codes_from_digit_rows(rows, d, m)
    place = m ** np.arange(d - 2, -1, -1, dtype=np.int64)
    keys = rows @ place  # lexicographic rows give ascending keys
    return keys, codes


def _exact_codes_chunk(d, m, lo, hi, keys, ms_codes) -> np.ndarray:
    idx = np.arange(lo, hi, dtype=np.int64)
    digits = np.sort(_decode_digits(idx, m, d - 1), axis=1)
    place = m ** np.arange(d - 2, -1, -1, dtype=np.int64)
    codes = ms_codes[np.searchsorted(keys, digits @ place)]
    if lo == 0:
        codes = codes.copy()
        codes[0] = CODE_ZERO
    return codes


def exact_grid_codes(
    d: int,
    m: int,
    budget: int = DEFAULT_ENUM_BUDGET,
    workers: int | None = None,
) -> np.ndarray:
    """Class codes of every point of the m-grid on T^(d-1), exact path only.

    Returns a flat uint8 array in lexicographic (C) order with values
    CODE_ZERO/CODE_ORT/CODE_UB/CODE_FORBIDDEN.
    """
    total = _check_budget(d, m, budget)
    keys, ms_codes = _multiset_classification(d, m)
    bounds = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    parts = run_chunked(
        lambda b: _exact_codes_chunk(d, m, b[0], b[1], keys, ms_codes),
        bounds,
        workers,
    )
    return np.concatenate(parts)


def _float_codes_chunk(d: int, m: int, lo: int, hi: int, eps: float) -> np.ndarray:
    n = d - 1
    idx = np.arange(lo, hi, dtype=np.int64)
    digits = _decode_digits(idx, m, n)
    roots = np.exp(2j * np.pi * np.arange(m) / m)
    s = np.ones(idx.size, dtype=complex)
    for j in range(n):
        s = s + roots[digits[:, j]]
    v = np.abs(s) ** 2
    codes = np.full(idx.size, CODE_FORBIDDEN, dtype=np.uint8)
    codes[np.abs(v) <= eps] = CODE_ORT
    codes[np.abs(v - d) <= eps] = CODE_UB
    if lo == 0:
        codes[0] = CODE_ZERO
    return codes


def float_grid_codes(
    d: int,
    m: int,
    eps: float = DEFAULT_EPS,
    budget: int = DEFAULT_ENUM_BUDGET,
    workers: int | None = None,
) -> np.ndarray:
    """Class codes of every grid point via the floating path (cross-check)."""
    total = _check_budget(d, m, budget)
    bounds = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    parts = run_chunked(
        lambda b: _float_codes_chunk(d, m, b[0], b[1], eps), bounds, workers
    )
    return np.concatenate(parts)


@dataclass
class GridPartition:
    """The ORT/UB points of an m-grid, each list in lexicographic order."""

    d: int
    m: int
    ort: list[TorusPoint]
    ub: list[TorusPoint]


def enumerate_grid(
    d: int,
    m: int,
    budget: int = DEFAULT_ENUM_BUDGET,
    workers: int | None = None,
) -> GridPartition:
    """Exhaustively classify all m**(d-1) exact grid points (exact path).

    The zero point is excluded from both lists.
    """
    codes = exact_grid_codes(d, m, budget=budget, workers=workers)
    out: dict[int, list[TorusPoint]] = {CODE_ORT: [], CODE_UB: []}
    for code, target in out.items():
        indices = np.flatnonzero(codes == code)
        if indices.size:
            digits = _decode_digits(indices, m, d - 1)
            target.extend(TorusPoint.exact(m, row) for row in digits.tolist())
    return GridPartition(d=d, m=m, ort=out[CODE_ORT], ub=out[CODE_UB])


def grid_to_csv(
    d: int,
    m: int,
    stream,
    budget: int = DEFAULT_ENUM_BUDGET,
    workers: int | None = None,
) -> None:
    """One row per ORT/UB point: numerators then the class label."""
    codes = exact_grid_codes(d, m, budget=budget, workers=workers)
    labels = {CODE_ORT: "ORT", CODE_UB: "UB"}
    indices = np.flatnonzero((codes == CODE_ORT) | (codes == CODE_UB))
    if indices.size:
        digits = _decode_digits(indices, m, d - 1)
        for row, lin in zip(digits.tolist(), indices.tolist()):
            stream.write(",".join(str(v) for v in row))
            stream.write("," + labels[int(codes[lin])] + "\n")
