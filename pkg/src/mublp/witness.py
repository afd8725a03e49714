"""Witness functions and the linear-programming bound they certify.

An even trigonometric polynomial h with nonnegative Fourier coefficients,
hhat(0) = 1, and h <= 0 outside the allowed set bounds any point set B whose
pairwise differences stay inside the allowed set: |B| <= h(0).  The proof
compares two evaluations of

    S = sum_gamma |Bhat(gamma)|^2 * hhat(gamma)
      = sum_(j,k) h(b_j - b_k),

giving |B|^2 <= S <= h(0) * |B|.

The canonical witness here, for the set ORT_d union UB_d, is

    h(x) = |S(x)|^2 (|S(x)|^2 - d) / ((d-1) d),   S(x) = 1 + sum_j e^(2 pi i x_j),

which vanishes on ORT_d and UB_d by construction, has h(0) = d^2, and whose
Fourier coefficients are exact nonnegative rationals: expanding |S|^4 and
|S|^2 over the exponent vectors e_j - e_k + e_q - e_s (convention e_0 = 0)
gives the coefficient (N4(gamma) - d N2(gamma)) / ((d-1) d), where N4 and N2
count representations.  This yields the r <= d^2 bound for systems of
mutually orthogonal-or-unbiased vectors.

TrigPolynomial also hosts grid-mode polynomials: finitely supported
functions on Z_m^(d-1), used both for LP dual certificates (coefficients on
characters) and pseudo-MUB candidate functions (weights on points).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .config import DEFAULT_EPS
from .torus import PointClass, TorusPoint, classify

ExponentVector = tuple


class InversionMismatchError(RuntimeError):
    """Spectral and spatial sums disagree (a support or evenness bug)."""


@dataclass(eq=False)
class TrigPolynomial:
    """A finitely supported exponent-vector -> coefficient map.

    Continuous mode (``grid is None``): exponents in Z^dim, coefficients are
    exact ``Fraction``s or floats.  Grid mode: exponents are residues in
    [0, m)^dim and coefficients are floats.  Zero coefficients are never
    stored; ``even`` is verified by scan at construction.
    """

    dim: int
    terms: dict
    grid: int | None = None
    even: bool = False

    @staticmethod
    def from_terms(dim: int, terms, grid: int | None = None) -> "TrigPolynomial":
        canon: dict = {}
        for gamma, coeff in dict(terms).items():
            if len(gamma) != dim:
                raise ValueError(f"exponent {gamma} does not have dim {dim}")
            if grid is not None:
                gamma = tuple(int(g) % grid for g in gamma)
            else:
                gamma = tuple(int(g) for g in gamma)
            if coeff:
                canon[gamma] = canon.get(gamma, 0) + coeff
        canon = {g: c for g, c in canon.items() if c}
        poly = TrigPolynomial(dim=dim, terms=canon, grid=grid)
        poly.even = poly._scan_even()
        return poly

    def _scan_even(self) -> bool:
        for gamma, coeff in self.terms.items():
            if self.grid is not None:
                neg = tuple((-g) % self.grid for g in gamma)
            else:
                neg = tuple(-g for g in gamma)
            if self.terms.get(neg) != coeff:
                return False
        return True

    def constant_term(self):
        return self.terms.get((0,) * self.dim, 0)

    def value_at_zero(self):
        """Exact when all coefficients are Fractions/ints."""
        return sum(self.terms.values())

    def is_exact(self) -> bool:
        return all(isinstance(c, (Fraction, int)) for c in self.terms.values())


def eval_h(d: int, point: TorusPoint) -> float:
    """The canonical witness evaluated in floating point."""
    if point.dim != d - 1:
        raise ValueError(f"point has dim {point.dim}, expected {d - 1}")
    s = 1.0 + sum(np.exp(2j * np.pi * x) for x in point.as_floats())
    v = abs(s) ** 2
    return v * (v - d) / ((d - 1) * d)


@lru_cache(maxsize=None)
def expand_h(d: int) -> TrigPolynomial:
    """Exact Fourier expansion of the canonical witness for dimension d.

    Enumerates all d^4 exponent quadruples, so the documented range is
    2 <= d <= 12.  Guarantees constant term exactly 1 and all coefficients
    nonnegative rationals; the coefficients sum to h(0) = d^2.
    """
    if not 2 <= d <= 12:
        raise ValueError("supported range is 2 <= d <= 12")
    n = d - 1
    vecs = [(0,) * n]
    for j in range(n):
        e = [0] * n
        e[j] = 1
        vecs.append(tuple(e))
    diffs = [
        tuple(a - b for a, b in zip(vecs[j], vecs[k]))
        for j in range(d)
        for k in range(d)
    ]
    n2 = Counter(diffs)
    n4 = Counter(
        tuple(a + b for a, b in zip(g1, g2)) for g1 in diffs for g2 in diffs
    )
    denom = (d - 1) * d
    terms = {}
    for gamma, c4 in n4.items():
        coeff = Fraction(c4 - d * n2.get(gamma, 0), denom)
        if coeff < 0:
            raise AssertionError(f"negative coefficient at {gamma}: {coeff}")
        if coeff:
            terms[gamma] = coeff
    poly = TrigPolynomial.from_terms(n, terms)
    if poly.constant_term() != 1:
        raise AssertionError("constant term must be exactly 1")
    return poly


def _grid_residues(t: TrigPolynomial, point: TorusPoint) -> tuple[int, ...]:
    if not point.is_exact or t.grid % point.denominator != 0:
        raise ValueError(
            f"grid mode needs an exact point with denominator dividing {t.grid}"
        )
    scale = t.grid // point.denominator
    return tuple((a * scale) % t.grid for a in point.coords)


def eval_trig(t: TrigPolynomial, point: TorusPoint, eps: float = DEFAULT_EPS):
    """Evaluate sum_gamma c_gamma e^(2 pi i <gamma, x>) at a torus point.

    Even polynomials return the real part (the imaginary part must be
    negligible and is discarded); others return a complex value.
    """
    if point.dim != t.dim:
        raise ValueError(f"point has dim {point.dim}, expected {t.dim}")
    total = 0j
    if t.grid is not None:
        m = t.grid
        residues = _grid_residues(t, point)
        roots = np.exp(2j * np.pi * np.arange(m) / m)
        for gamma, coeff in t.terms.items():
            phase = sum(g * r for g, r in zip(gamma, residues)) % m
            total += complex(coeff) * roots[phase]
    else:
        xs = point.as_floats()
        for gamma, coeff in t.terms.items():
            total += complex(coeff) * np.exp(
                2j * np.pi * sum(g * x for g, x in zip(gamma, xs))
            )
    if t.even:
        scale = max(1.0, sum(abs(complex(c)) for c in t.terms.values()))
        if abs(total.imag) > eps * scale:
            raise InversionMismatchError(
                f"even polynomial produced imaginary part {total.imag:.3g}"
            )
        return total.real
    return total


def _support_matrix(t: TrigPolynomial):
    gammas = sorted(t.terms.keys())
    g = np.array(gammas, dtype=float)
    c = np.array([float(t.terms[gamma]) for gamma in gammas])
    return g, c


def eval_trig_at_floats(t: TrigPolynomial, xs: np.ndarray) -> np.ndarray:
    """Vectorised continuous-mode evaluation at rows of ``xs``; real parts."""
    g, c = _support_matrix(t)
    phases = np.exp(2j * np.pi * (np.asarray(xs, dtype=float) @ g.T))
    return (phases @ c.astype(complex)).real


def grid_values(t: TrigPolynomial) -> np.ndarray:
    """Values of a grid-mode polynomial at every grid point, via the FFT.

    Returns the full (m,)*dim real array; entry y is
    sum_gamma c_gamma e^(2 pi i <gamma, y> / m).
    """
    if t.grid is None:
        raise ValueError("grid mode only")
    m = t.grid
    a = np.zeros((m,) * t.dim, dtype=complex)
    for gamma, coeff in t.terms.items():
        a[gamma] += coeff
    values = np.fft.ifftn(a) * m**t.dim
    return values.real if t.even else values


@dataclass(frozen=True)
class BoundReport:
    """Both evaluations of S plus the slack of the two bounding inequalities."""

    cardinality: int
    s_spectral: float
    s_spatial: float
    bound: object             # h(0)/hhat(0); Fraction when the witness is exact
    slack_lower: float        # S - |B|^2              (>= 0 when hhat >= 0)
    slack_upper: float        # h(0)|B| - S            (>= 0 when B avoids A_d)
    max_offdiagonal: float    # worst h(b_j - b_k), j != k

    @property
    def hypothesis_ok(self) -> bool:
        return self.slack_upper >= -1e-9 * max(1.0, abs(self.s_spatial))


def check_point_set(
    points, t: TrigPolynomial, eps: float = DEFAULT_EPS
) -> BoundReport:
    """Replay the bound for a finite point set against an even witness.

    Computes S spectrally over the witness support and spatially over all
    pairwise differences, demands agreement within eps * |B|^2 (Fourier
    inversion), and reports the slack of |B|^2 <= S <= h(0) |B|.
    """
    if not t.even:
        raise ValueError("the witness polynomial must be even")
    if t.grid is not None:
        raise ValueError("continuous-mode witness expected")
    pts = list(points)
    nb = len(pts)
    xs = np.array([p.as_floats() for p in pts], dtype=float)
    g, c = _support_matrix(t)
    bhat = np.exp(2j * np.pi * (g @ xs.T)).sum(axis=1)
    s_spectral = float(np.abs(bhat) ** 2 @ c)
    diff = xs[:, None, :] - xs[None, :, :]
    values = eval_trig_at_floats(t, diff.reshape(nb * nb, -1)).reshape(nb, nb)
    s_spatial = float(values.sum())
    if abs(s_spectral - s_spatial) > eps * max(1.0, float(nb * nb)):
        raise InversionMismatchError(
            f"S disagrees: spectral {s_spectral!r} vs spatial {s_spatial!r}"
        )
    h0 = t.value_at_zero()
    term0 = t.constant_term()
    bound = h0 / term0 if isinstance(h0, Fraction) else float(h0) / float(term0)
    off = values[~np.eye(nb, dtype=bool)]
    return BoundReport(
        cardinality=nb,
        s_spectral=s_spectral,
        s_spatial=s_spatial,
        bound=bound,
        slack_lower=s_spectral - nb * nb,
        slack_upper=float(h0) * nb - s_spatial,
        max_offdiagonal=float(off.max()) if nb > 1 else 0.0,
    )


@dataclass(frozen=True)
class DelsarteReport:
    valid: bool
    bound: object             # rational for exact witnesses
    min_coefficient: object
    max_sample_value: float
    messages: tuple

    def __bool__(self) -> bool:
        return self.valid


def delsarte_bound(
    t: TrigPolynomial,
    allowed=None,
    samples=(),
    eps: float = DEFAULT_EPS,
) -> DelsarteReport:
    """Validate witness conditions and return h(0)/hhat(0).

    Checks: t is even; all Fourier coefficients are nonnegative (exactly for
    rational coefficients, within eps for floats); t <= eps-scaled zero on
    every supplied allowed-set sample point.  ``allowed``, when given, is a
    predicate each sample must satisfy (callers pass an ORT/UB membership
    test).  Any violation marks the bound invalid rather than raising.
    """
    messages = []
    if not t.even:
        messages.append("polynomial is not even")
    term0 = t.constant_term()
    if not term0 or term0 <= 0:
        messages.append("constant Fourier coefficient must be positive")
        return DelsarteReport(False, None, None, 0.0, tuple(messages))
    exact = t.is_exact()
    min_coeff = min(t.terms.values())
    if exact:
        if min_coeff < 0:
            messages.append(f"negative Fourier coefficient {min_coeff}")
    elif float(min_coeff) < -eps:
        messages.append(f"negative Fourier coefficient {float(min_coeff):.3g}")
    h0 = t.value_at_zero()
    bound = h0 / term0 if exact else float(h0) / float(term0)
    tol = eps * max(1.0, abs(float(h0)))

    samples = list(samples)
    max_sample = 0.0
    if samples:
        if allowed is not None:
            for p in samples:
                if not allowed(p):
                    messages.append(f"sample {p} is not in the allowed set")
                    return DelsarteReport(False, bound, min_coeff, 0.0,
                                          tuple(messages))
        if t.grid is not None and len(samples) > 64:
            values = grid_values(t)
            m = t.grid
            sampled = [float(values[_grid_residues(t, p)]) for p in samples]
            max_sample = max(sampled)
        else:
            max_sample = max(float(np.real(eval_trig(t, p, eps))) for p in samples)
        if max_sample > tol:
            messages.append(
                f"witness is positive on an allowed sample: {max_sample:.3g}"
            )
    return DelsarteReport(not messages, bound, min_coeff, max_sample, tuple(messages))


def ort_ub_predicate(d: int, eps: float = DEFAULT_EPS):
    """Membership test for the allowed set ORT_d union UB_d."""

    def allowed(p: TorusPoint) -> bool:
        return classify(p, d, eps) in (PointClass.ORT, PointClass.UB)

    return allowed


# ---------------------------------------------------------------------------
# JSON schema: {dim, mode, m?, terms: [{gamma: [...], coeff: "p/q" | float}]}


def trig_to_json_obj(t: TrigPolynomial) -> dict:
    obj: dict = {"dim": t.dim, "mode": "grid" if t.grid is not None else "continuous"}
    if t.grid is not None:
        obj["m"] = t.grid
    items = []
    for gamma in sorted(t.terms.keys()):
        coeff = t.terms[gamma]
        if isinstance(coeff, int):
            coeff = Fraction(coeff)
        items.append({"gamma": list(gamma), "coeff": coeff})
    obj["terms"] = items
    return obj


def trig_from_json_obj(obj) -> TrigPolynomial:
    grid = int(obj["m"]) if obj.get("mode") == "grid" else None
    terms = {}
    for item in obj["terms"]:
        coeff = item["coeff"]
        if isinstance(coeff, str):
            num, _, den = coeff.partition("/")
            coeff = Fraction(int(num), int(den or 1))
        terms[tuple(int(g) for g in item["gamma"])] = coeff
    return TrigPolynomial.from_terms(int(obj["dim"]), terms, grid=grid)
