"""The pseudo-MUB linear program on m-th-root grids.

A complete set of d+1 MUBs whose phases are m-th roots of unity would give a
function f on the grid Z_m^(d-1) with f(0) = d^2, support inside
ORT_d union UB_d union {0}, nonnegative Fourier transform, and total mass
d^4.  Normalising f(0) = 1 and maximising the total mass

    M = sum_y f(y)

subject to  fhat(gamma) >= 0  for every gamma in the cube [0, m-1]^(d-1)
(periodicity makes the cube sufficient) is a linear program; M reaching
d^2 exactly would exhibit a complete pseudo-MUB system on that grid, while
the optimal dual multipliers assemble into a witness polynomial proving M is
optimal (a sharpened bound for the grid-supported problem).

Symmetry reduction: negation and coordinate permutations fix both the
classification of points and the constraint set, so f may be averaged over
the group without changing feasibility or mass.  Variables are therefore
orbit weights, and constraints are deduplicated by the induced action on
characters.  An optional phase-shift symmetry (re-basing the d phases at one
of the coordinates) is available behind a flag; it also fixes |1 + sum e()|
and maps the grid to itself.

The solver is a constraint-generation loop: solve the restricted LP with the
bounded revised simplex, scan *all* cube characters via an FFT of the weight
array, add the most-violated deduplicated characters, repeat.  Convergence
requires a clean full scan, so the returned primal is feasible for the whole
cube, never just for the generated rows.  Weights carry the a-priori box
w <= 2: any fully feasible f has f(y) <= f(0) = 1 pointwise (nonnegative
transform), so the box is slack at convergence and never enters the dual.

The restricted master is posed to the simplex in its dual form (multipliers
lambda per generated constraint, box multipliers mu per weight), because the
master is row-rich: a few dozen weight variables against hundreds of
generated rows.  The dual basis has one row per weight, which avoids the
heavy stalling a row-sized basis suffers on these degenerate instances; the
weights come back as the simplex duals and are validated against the full
scan.
"""

from __future__ import annotations

import itertools
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .config import (
    BudgetExceededError,
    DEFAULT_ENUM_BUDGET,
    DEFAULT_EPS,
    DEFAULT_EPS_FEAS,
    DEFAULT_LP_ADD_PER_ROUND,
    DEFAULT_LP_MAX_ROUNDS,
)
from .serialize import load_json, write_json
from .simplex import ITERATION_LIMIT, OPTIMAL, solve_equality_form
from .torus import (
    CODE_ORT,
    CODE_UB,
    PointClass,
    TorusPoint,
    _decode_digits,
    classify,
    exact_grid_codes,
)
from .witness import TrigPolynomial, delsarte_bound

_WEIGHT_BOX = 2.0


class CertificateError(RuntimeError):
    """The LP dual failed independent witness validation."""


# ---------------------------------------------------------------------------
# symmetry canonicalisation


def _point_images(vec: tuple[int, ...], m: int, use_shift: bool):
    """Sorted representatives of all symmetry images of a grid point."""
    neg = tuple((-v) % m for v in vec)
    yield tuple(sorted(vec))
    yield tuple(sorted(neg))
    if use_shift:
        full = (0,) + vec
        for t in range(1, len(full)):
            shifted = tuple(
                (full[j] - full[t]) % m for j in range(len(full)) if j != t
            )
            yield tuple(sorted(shifted))
            yield tuple(sorted((-v) % m for v in shifted))


def canonical_point(vec: tuple[int, ...], m: int, use_shift: bool = False):
    return min(_point_images(vec, m, use_shift))


def _char_images(gamma: tuple[int, ...], m: int, use_shift: bool):
    neg = tuple((-g) % m for g in gamma)
    yield tuple(sorted(gamma))
    yield tuple(sorted(neg))
    if use_shift:
        # dual of re-basing at coordinate t: drop one entry of the zero-sum
        # extension (-sum(gamma), gamma_1, ..., gamma_(d-1))
        full = ((-sum(gamma)) % m,) + gamma
        for t in range(1, len(full)):
            img = tuple(full[j] for j in range(len(full)) if j != t)
            yield tuple(sorted(img))
            yield tuple(sorted((-g) % m for g in img))


def canonical_char(gamma: tuple[int, ...], m: int, use_shift: bool = False):
    return min(_char_images(gamma, m, use_shift))


def char_orbit(gamma: tuple[int, ...], m: int, use_shift: bool = False) -> set:
    """All characters equivalent to gamma (full orbit, not just sorted reps)."""
    seen = set()
    frontier = [tuple(g % m for g in gamma)]
    while frontier:
        g = frontier.pop()
        if g in seen:
            continue
        seen.add(g)
        candidates = [tuple((-v) % m for v in g)]
        candidates.extend(itertools.permutations(g))
        if use_shift:
            full = ((-sum(g)) % m,) + g
            for t in range(1, len(full)):
                candidates.append(
                    tuple(full[j] for j in range(len(full)) if j != t)
                )
        for cand in candidates:
            if cand not in seen:
                frontier.append(cand)
    return seen


# ---------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class Orbit:
    representative: tuple[int, ...]
    members: tuple
    point_class: PointClass


@dataclass
class OrbitTable:
    d: int
    m: int
    symmetric: bool            # False: every point is its own orbit
    use_shift: bool
    orbits: list

    @property
    def generators(self) -> tuple[str, ...]:
        if not self.symmetric:
            return ()
        base = ("negation", "permutation")
        return base + ("shift",) if self.use_shift else base

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(o.members) for o in self.orbits], dtype=float)

    def total_points(self) -> int:
        return int(sum(len(o.members) for o in self.orbits))


def build_orbits(
    d: int,
    m: int,
    use_shift_symmetry: bool = False,
    symmetric: bool = True,
    budget: int = DEFAULT_ENUM_BUDGET,
    workers: int | None = None,
) -> OrbitTable:
    """Partition the ORT/UB grid points under the symmetry group.

    Group generators: negation and coordinate permutations (plus the optional
    phase-shift maps).  Representatives are lexicographic minima; orbits are
    listed by representative.  With ``symmetric=False`` every point is a
    singleton orbit (used for symmetrisation cross-checks).
    """
    codes = exact_grid_codes(d, m, budget=budget, workers=workers)
    classes = {CODE_ORT: PointClass.ORT, CODE_UB: PointClass.UB}
    groups: dict = {}
    for code, cls in classes.items():
        idx = np.flatnonzero(codes == code)
        if not idx.size:
            continue
        digits = _decode_digits(idx, m, d - 1)
        for row in map(tuple, digits.tolist()):
            key = canonical_point(row, m, use_shift_symmetry) if symmetric else row
            entry = groups.get(key)
            if entry is None:
                groups[key] = (cls, [row])
            else:
                if entry[0] is not cls:
                    raise AssertionError(
                        f"orbit {key} mixes classes {entry[0]} and {cls}"
                    )
                entry[1].append(row)
    orbits = [
        Orbit(representative=key, members=tuple(sorted(members)), point_class=cls)
        for key, (cls, members) in sorted(groups.items())
    ]
    return OrbitTable(d=d, m=m, symmetric=symmetric,
                      use_shift=use_shift_symmetry, orbits=orbits)


# ---------------------------------------------------------------------------
# the LP


@dataclass
class LpProblem:
    """max 1 + sum |orbit| * w  s.t.  1 + sum_o w_o C_o(gamma) >= 0, w >= 0.

    One variable per orbit; f(0) = 1 is fixed; C_o(gamma) is the cosine sum
    of the orbit at character gamma.  The gamma = 0 constraint has all
    coefficients positive and is dropped.  Constraints are deduplicated under
    the dual group action (identical rows).
    """

    d: int
    m: int
    table: OrbitTable
    member_matrix: np.ndarray = field(init=False)   # stacked members
    member_orbit: np.ndarray = field(init=False)    # orbit id per member
    member_linear: np.ndarray = field(init=False)   # linear grid index per member
    _char_reps: list | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        rows = []
        ids = []
        for i, orbit in enumerate(self.table.orbits):
            rows.extend(orbit.members)
            ids.extend([i] * len(orbit.members))
        n = self.d - 1
        self.member_matrix = (
            np.array(rows, dtype=np.int64) if rows else np.zeros((0, n), np.int64)
        )
        self.member_orbit = np.array(ids, dtype=np.int64)
        weights = self.m ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.member_linear = self.member_matrix @ weights

    @property
    def n_orbits(self) -> int:
        return len(self.table.orbits)

    @property
    def objective(self) -> np.ndarray:
        return self.table.sizes

    def constraint_row(self, gamma) -> np.ndarray:
        """C_o(gamma) for every orbit, one pass over all support points."""
        dots = (self.member_matrix @ np.asarray(gamma, dtype=np.int64)) % self.m
        cos_table = np.cos(2.0 * np.pi * np.arange(self.m) / self.m)
        return np.bincount(
            self.member_orbit, weights=cos_table[dots], minlength=self.n_orbits
        )

    def char_representatives(self) -> list:
        """Deduplicated characters of the cube (cached; excludes gamma = 0)."""
        if self._char_reps is None:
            n = self.d - 1
            seen = set()
            total = self.m**n
            for chunk_lo in range(0, total, 1 << 16):
                idx = np.arange(chunk_lo, min(chunk_lo + (1 << 16), total))
                digits = _decode_digits(idx, self.m, n)
                for row in map(tuple, digits.tolist()):
                    if not self.table.symmetric:
                        seen.add(row)
                        continue
                    seen.add(canonical_char(row, self.m, self.table.use_shift))
            seen.discard((0,) * n)
            self._char_reps = sorted(seen)
        return self._char_reps

    def weight_grid(self, weights: np.ndarray) -> np.ndarray:
        """The function f on the full grid for orbit weights (f(0) = 1)."""
        n = self.d - 1
        flat = np.zeros(self.m**n)
        flat[self.member_linear] = np.asarray(weights)[self.member_orbit]
        flat[0] = 1.0
        return flat.reshape((self.m,) * n)


def build_pseudo_mub_lp(d: int, m: int, orbits: OrbitTable) -> LpProblem:
    if orbits.d != d or orbits.m != m:
        raise ValueError("orbit table does not match (d, m)")
    return LpProblem(d=d, m=m, table=orbits)


@dataclass
class LpSolution:
    status: str                 # optimal | unbounded | budget_exceeded
    M: float
    weights: np.ndarray
    dual: dict                  # canonical gamma -> nonnegative multiplier
    iterations: int
    rounds: int
    active_constraints: int
    final_scan_min: float
    duality_gap: float


def _transform_scan(problem: LpProblem, weights: np.ndarray) -> np.ndarray:
    """fhat over the whole cube as a flat real array (FFT of the weights)."""
    w = problem.weight_grid(weights)
    return np.fft.fftn(w).real.ravel()


def solve_lp(
    problem: LpProblem,
    eps_feas: float = DEFAULT_EPS_FEAS,
    max_rounds: int = DEFAULT_LP_MAX_ROUNDS,
    add_per_round: int = DEFAULT_LP_ADD_PER_ROUND,
    max_simplex_iterations: int | None = None,
    checkpoint_dir: str | None = None,
    progress=None,
    workers: int | None = None,
) -> LpSolution:
    """Constraint-generation solve; see the module docstring.

    ``progress`` may be a callable taking a message, or True for stderr
    lines.  ``checkpoint_dir`` persists the generated constraint set between
    rounds so long jobs can resume.
    """
    if progress is True:
        progress = lambda msg: print(msg, file=sys.stderr, flush=True)
    d, m = problem.d, problem.m
    n_orb = problem.n_orbits
    c = problem.objective
    reps: list = []
    rows: list = []

    if checkpoint_dir:
        loaded = _load_checkpoint(checkpoint_dir, problem)
        if loaded:
            reps = loaded
            rows = [problem.constraint_row(g) for g in reps]
            if progress:
                progress(f"resumed from checkpoint with {len(reps)} constraints")

    weights = np.full(n_orb, _WEIGHT_BOX)
    lam = np.zeros(0)
    mu = np.zeros(n_orb)
    total_iterations = 0
    solved_rows = False
    rounds = 0
    while True:
        if rounds >= max_rounds:
            raise BudgetExceededError(
                f"no convergence after {max_rounds} constraint-generation rounds"
            )
        rounds += 1
        if rows:
            # dual form of  max c.w  s.t.  A w >= -1,  0 <= w <= BOX:
            #   max -sum(lam) - BOX*sum(mu)
            #   s.t. -A^T lam + mu - sigma = c,   lam, mu, sigma >= 0
            # start from the identity mu-basis (mu = c > 0); w returns as -y.
            A = np.array(rows)
            r = len(rows)
            G = np.hstack([-A.T, np.eye(n_orb), -np.eye(n_orb)])
            cd = np.concatenate(
                [-np.ones(r), -_WEIGHT_BOX * np.ones(n_orb), np.zeros(n_orb)]
            )
            basis = np.arange(r, r + n_orb)
            result = solve_equality_form(
                G, c, cd, np.zeros(r + 2 * n_orb),
                np.full(r + 2 * n_orb, np.inf), basis,
                max_iterations=max_simplex_iterations,
            )
            total_iterations += result.iterations
            if result.status == ITERATION_LIMIT:
                return LpSolution(
                    status="budget_exceeded", M=float("nan"),
                    weights=weights, dual={},
                    iterations=total_iterations, rounds=rounds,
                    active_constraints=len(rows),
                    final_scan_min=float("nan"), duality_gap=float("nan"),
                )
            if result.status != OPTIMAL:
                # the witness bound guarantees boundedness; reaching this is a bug
                return LpSolution(
                    status="unbounded", M=float("inf"),
                    weights=weights, dual={},
                    iterations=total_iterations, rounds=rounds,
                    active_constraints=len(rows),
                    final_scan_min=float("nan"), duality_gap=float("nan"),
                )
            lam = result.x[:r]
            mu = result.x[r : r + n_orb]
            weights = np.clip(-result.duals, 0.0, _WEIGHT_BOX)
            restricted_resid = float((A @ weights + 1.0).min())
            if restricted_resid < -1e-8:
                raise AssertionError(
                    f"recovered weights violate a generated row by "
                    f"{restricted_resid:.3e}"
                )
            solved_rows = True

        scan = _transform_scan(problem, weights)
        worst = float(scan.min()) if scan.size else 0.0
        if progress:
            progress(
                f"round={rounds} rows={len(rows)} M={1.0 + float(c @ weights):.6f} "
                f"min_fhat={worst:.3e}"
            )
        violated = np.flatnonzero(scan < -eps_feas)
        if violated.size == 0:
            break
        order = np.lexsort((violated, scan[violated]))
        existing = set(reps)
        seen_this_round: set = set()
        added = 0
        for lin in violated[order]:
            gamma = tuple(
                _decode_digits(np.array([lin]), m, d - 1)[0].tolist()
            )
            key = (
                canonical_char(gamma, m, problem.table.use_shift)
                if problem.table.symmetric
                else gamma
            )
            if key in existing:
                raise AssertionError(
                    f"generated constraint {key} violated after optimisation "
                    f"({scan[lin]:.3e}); row arithmetic is inconsistent"
                )
            if key in seen_this_round:
                continue
            seen_this_round.add(key)
            row = problem.constraint_row(key)
            # distinct characters can induce identical rows (grid automorphisms
            # permute the orbits); duplicated rows make bases singular
            if rows and float(
                np.min(np.max(np.abs(np.asarray(rows) - row), axis=1))
            ) < 1e-10:
                continue
            reps.append(key)
            rows.append(row)
            added += 1
            if added >= add_per_round:
                break
        if added == 0:
            raise AssertionError(
                "violations persist but every candidate row is already present"
            )
        if checkpoint_dir:
            _write_checkpoint(checkpoint_dir, problem, reps, rounds)

    M = 1.0 + float(c @ weights)
    if M > d * d + 1e-6:
        raise AssertionError(
            f"optimum {M} exceeds the witness bound {d * d}; modelling bug"
        )
    dual: dict = {}
    gap = 0.0
    if solved_rows:
        box_mult = float(mu.max(initial=0.0))
        if box_mult > 1e-8:
            # a fully feasible f has f(y) <= f(0) = 1 < BOX, so the box must
            # be slack at convergence
            raise AssertionError(
                f"box multiplier {box_mult:.3e} active at convergence"
            )
        dual = {
            reps[i]: float(lam[i]) for i in range(len(reps)) if lam[i] > 1e-12
        }
        gap = abs((M - 1.0) - sum(dual.values()))
    return LpSolution(
        status="optimal",
        M=M,
        weights=weights.copy(),
        dual=dual,
        iterations=total_iterations,
        rounds=rounds,
        active_constraints=len(dual),
        final_scan_min=float(_transform_scan(problem, weights).min()),
        duality_gap=gap,
    )


def extract_dual_witness(
    sol: LpSolution,
    problem: LpProblem,
    eps: float = DEFAULT_EPS,
    gap_tolerance: float = 1e-4,
) -> TrigPolynomial:
    """Assemble the dual multipliers into a grid witness certifying M.

    Each multiplier is spread uniformly over its character orbit, which makes
    the polynomial constant on point orbits; dual feasibility then gives
    h' <= 0 pointwise on every ORT/UB grid point, h'(0) = M, coefficients
    >= 0 with the constant term 1.  The certificate is validated through
    ``delsarte_bound`` against all ORT/UB grid points before being returned.
    """
    if sol.status != "optimal":
        raise ValueError("dual witness extraction needs an optimal solution")
    d, m = problem.d, problem.m
    n = d - 1
    terms: dict = {(0,) * n: 1.0}
    for rep, lam in sol.dual.items():
        if lam <= 0:
            continue
        if problem.table.symmetric:
            orbit = char_orbit(rep, m, problem.table.use_shift)
        else:
            orbit = {tuple(rep), tuple((-g) % m for g in rep)}
        share = lam / len(orbit)
        for gamma in orbit:
            terms[gamma] = terms.get(gamma, 0.0) + share
    witness = TrigPolynomial.from_terms(n, terms, grid=m)
    if not witness.even:
        raise CertificateError("assembled witness is not even")
    h0 = float(witness.value_at_zero())
    if abs(h0 - sol.M) > gap_tolerance:
        raise CertificateError(
            f"duality gap {abs(h0 - sol.M):.3e} exceeds {gap_tolerance}"
        )
    samples = [
        TorusPoint.exact(m, row) for row in problem.member_matrix.tolist()
    ]
    report = delsarte_bound(witness, allowed=None, samples=samples, eps=eps)
    if not report.valid:
        raise CertificateError(
            "certificate failed witness validation: " + "; ".join(report.messages)
        )
    if abs(float(report.bound) - sol.M) > gap_tolerance:
        raise CertificateError(
            f"certified bound {report.bound} differs from M={sol.M}"
        )
    return witness


# ---------------------------------------------------------------------------
# pseudo-MUB candidate check


@dataclass(frozen=True)
class PseudoMubReport:
    support_ok: bool
    transform_ok: bool
    min_transform: float
    mass_ok: bool
    mass: float
    origin_ok: bool
    origin_value: float

    @property
    def ok(self) -> bool:
        return self.support_ok and self.transform_ok and self.mass_ok and self.origin_ok

    def __bool__(self) -> bool:
        return self.ok


def pseudo_mub_check(
    f: TrigPolynomial, d: int, eps: float = DEFAULT_EPS
) -> PseudoMubReport:
    """Check the four defining conditions of a complete pseudo-MUB system.

    ``f`` is a grid-mode polynomial whose terms are point weights: support
    inside ORT_d union UB_d union {0} (exact classification), fhat >= -eps on
    the whole cube, total mass d^4, and f(0) = d^2, each within eps and each
    reported separately.
    """
    if f.grid is None:
        raise ValueError("pseudo-MUB candidates live on a grid")
    if f.dim != d - 1:
        raise ValueError(f"candidate has dim {f.dim}, expected {d - 1}")
    m = f.grid
    support_ok = True
    for y, weight in f.terms.items():
        if float(weight) < -eps:
            support_ok = False
            break
        cls = classify(TorusPoint.exact(m, y), d)
        if cls not in (PointClass.ORT, PointClass.UB, PointClass.ZERO):
            support_ok = False
            break
    a = np.zeros((m,) * f.dim, dtype=complex)
    for y, weight in f.terms.items():
        a[y] += float(weight)
    fhat = np.fft.fftn(a).conj()  # fhat(gamma) = sum f(y) e^(+2 pi i <gamma,y>/m)
    min_real = float(fhat.real.min())
    max_imag = float(np.abs(fhat.imag).max())
    transform_ok = min_real >= -eps and max_imag <= eps * max(
        1.0, float(np.abs(fhat).max())
    )
    mass = float(sum(float(w) for w in f.terms.values()))
    origin = float(f.terms.get((0,) * f.dim, 0.0))
    return PseudoMubReport(
        support_ok=support_ok,
        transform_ok=transform_ok,
        min_transform=min_real,
        mass_ok=abs(mass - d**4) <= eps * d**4,
        mass=mass,
        origin_ok=abs(origin - d**2) <= eps * d**2,
        origin_value=origin,
    )


# ---------------------------------------------------------------------------
# solution/problem I/O


def solution_to_json_obj(problem: LpProblem, sol: LpSolution) -> dict:
    return {
        "d": problem.d,
        "m": problem.m,
        "status": sol.status,
        "M": float(sol.M),
        "weights": [
            {"orbit": i, "value": float(v)} for i, v in enumerate(sol.weights)
        ],
        "dual": [
            {"gamma": list(gamma), "value": float(lam)}
            for gamma, lam in sorted(sol.dual.items())
        ],
    }


_CHECKPOINT_NAME = "constraints.json"


def _checkpoint_key(problem: LpProblem) -> dict:
    return {
        "d": problem.d,
        "m": problem.m,
        "symmetric": problem.table.symmetric,
        "shift": problem.table.use_shift,
    }


def _write_checkpoint(directory: str, problem: LpProblem, reps, rounds: int) -> None:
    os.makedirs(directory, exist_ok=True)
    payload = dict(_checkpoint_key(problem))
    payload["round"] = rounds
    payload["written"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    payload["constraints"] = [list(g) for g in reps]
    write_json(os.path.join(directory, _CHECKPOINT_NAME), payload)


def _load_checkpoint(directory: str, problem: LpProblem):
    path = os.path.join(directory, _CHECKPOINT_NAME)
    if not os.path.exists(path):
        return None
    payload = load_json(path)
    key = _checkpoint_key(problem)
    if any(payload.get(k) != v for k, v in key.items()):
        raise ValueError(f"checkpoint at {path} was written for a different problem")
    return [tuple(g) for g in payload["constraints"]]


# ---------------------------------------------------------------------------
# LP text export
#
# Grammar (one token stream, ASCII, newline-separated sections):
#
#   file        := comment* "Maximize" objective "Subject To" constraint*
#                  "Bounds" bound* "End"
#   comment     := "\\" <free text to end of line>
#   objective   := " mass:" term+
#   constraint  := " g_<g1>_<g2>_...:" term+ ">=" number
#   bound       := " <number> <= f_<idx> <= <number>"
#   term        := ("+" | "-") number name | number name
#   name        := "f_<idx>"
#
# Numbers carry 17 significant digits, so re-parsing reproduces the exact
# coefficient matrix.  The objective omits the fixed origin weight: the
# optimum of the file equals M - 1 (stated in the header comment).


def export_lp(problem: LpProblem, path: str) -> None:
    reps = problem.char_representatives()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"\\ pseudo-MUB linear program d={problem.d} m={problem.m}\n")
        fh.write("\\ variables: one weight per ORT/UB orbit; f(0) fixed to 1\n")
        fh.write("\\ objective value equals M - 1 (total mass minus the origin)\n")
        fh.write("Maximize\n mass:")
        fh.write(_terms_text(problem.objective))
        fh.write("\nSubject To\n")
        for gamma in reps:
            row = problem.constraint_row(gamma)
            name = "g_" + "_".join(str(v) for v in gamma)
            fh.write(f" {name}:")
            fh.write(_terms_text(row))
            fh.write(" >= -1\n")
        fh.write("Bounds\n")
        for i in range(problem.n_orbits):
            fh.write(f" 0 <= f_{i} <= {_num(_WEIGHT_BOX)}\n")
        fh.write("End\n")


def _num(x: float) -> str:
    from .serialize import format_float

    return format_float(float(x))


def _terms_text(row) -> str:
    parts = []
    for i, v in enumerate(np.asarray(row)):
        if v == 0.0:
            continue
        sign = " + " if v >= 0 else " - "
        parts.append(f"{sign}{_num(abs(float(v)))} f_{i}")
    return "".join(parts) if parts else " 0 f_0"


def parse_lp(path: str) -> dict:
    """Re-parse an exported file: objective/constraint coefficient maps."""
    objective: dict = {}
    constraints: dict = {}
    bounds: dict = {}
    section = None
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("\\"):
                continue
            if line in ("Maximize", "Subject To", "Bounds", "End"):
                section = line
                continue
            if section == "Maximize":
                _, _, rest = line.partition(":")
                objective.update(_parse_terms(rest))
            elif section == "Subject To":
                name, _, rest = line.partition(":")
                body, _, rhs = rest.partition(">=")
                constraints[name.strip()] = {
                    "coefficients": _parse_terms(body),
                    "rhs": float(rhs),
                }
            elif section == "Bounds":
                lo, _, rest = line.partition("<=")
                name, _, hi = rest.partition("<=")
                bounds[name.strip()] = (float(lo), float(hi))
    return {"objective": objective, "constraints": constraints, "bounds": bounds}


def _parse_terms(text: str) -> dict:
    tokens = text.split()
    out: dict = {}
    sign = 1.0
    value = None
    for tok in tokens:
        if tok == "+":
            sign = 1.0
        elif tok == "-":
            sign = -1.0
        elif tok.startswith("f_"):
            if value is None:
                raise ValueError(f"variable {tok} without a coefficient")
            out[tok] = sign * value
            sign, value = 1.0, None
        else:
            value = float(tok)
    return out
