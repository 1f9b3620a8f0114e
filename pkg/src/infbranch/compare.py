"""Convergence of infinity branches and the asymptotic-behavior decision.

Two leaves converge iff their terms with non-negative exponent agree. At the
branch level the comparison runs over conjugates: with both non-negative
parts written as ``a_l z^(1 - n_l/n)`` for the common reduced degree ``n``,
the branches converge iff some n-th root of unity ``c`` maps the first
coefficient list onto the second via ``a_l c^(n_l)``.

The numeric evidence helpers (:func:`approach_profile`,
:func:`hausdorff_estimate`) only exhibit trends; they certify nothing.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .branches import (InfinityBranch, InfinityPoint, Leaf, branch_degree,
                       infinity_branches, infinity_points, nonnegative_part,
                       prepare_pair)
from .config import Config
from .errors import DegeneratePolynomialError, EmptySampleError, ExpansionError
from .polynomial import BivariatePolynomial, is_square_free, square_free_part
from .puiseux import format_exponent
from .roots import DEFAULT_TOL, resolve_fiber

DEFAULT_COMPARE_TOL = 1e-6


class PointMatchingError(ExpansionError):
    """Two infinity points of one curve match a single point of the other."""


@dataclass(frozen=True)
class ConvergenceWitness:
    conjugation_root: complex
    matched_exponents: tuple[Fraction, ...]
    max_coefficient_deviation: float

    def to_record(self) -> dict:
        return {
            "c_re": self.conjugation_root.real,
            "c_im": self.conjugation_root.imag,
            "deviation": self.max_coefficient_deviation,
            "exponents": [format_exponent(e) for e in self.matched_exponents],
        }


def _as_leaf(x) -> Leaf:
    return x if isinstance(x, Leaf) else Leaf(x, 0)


def _within(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * (1 + abs(a))


def leaves_convergent(r, rbar, tol: float = DEFAULT_COMPARE_TOL) -> bool:
    """Whether ``r(z) - rbar(z) -> 0`` as ``z -> oo``.

    ``r`` and ``rbar`` are :class:`Leaf` objects (a branch stands for its
    leaf 0). A term present on one side only counts as coefficient 0.
    """
    a = dict(nonnegative_part(_as_leaf(r)))
    b = dict(nonnegative_part(_as_leaf(rbar)))
    return all(_within(a.get(e, 0j), b.get(e, 0j), tol) for e in set(a) | set(b))


def branches_convergent(B: InfinityBranch, Bbar: InfinityBranch,
                        tol: float = DEFAULT_COMPARE_TOL) -> ConvergenceWitness | None:
    """Witness that some leaves of ``B`` and ``Bbar`` converge, or None."""
    a = dict(nonnegative_part(B))
    b = dict(nonnegative_part(Bbar))
    if not B.point.matches(Bbar.point):
        return None
    n = branch_degree(B)
    if branch_degree(Bbar) != n:
        return None
    exps = sorted(set(a) | set(b), reverse=True)
    for k in range(n):
        c = cmath.exp(2j * math.pi * k / n) if k else 1 + 0j
        worst = 0.0
        ok = True
        for e in exps:
            n_l = (1 - e) * n
            assert n_l.denominator == 1
            target = a.get(e, 0j) * c ** int(n_l)
            dev = abs(b.get(e, 0j) - target)
            if dev > tol * (1 + abs(a.get(e, 0j))):
                ok = False
                break
            worst = max(worst, dev)
        if ok:
            return ConvergenceWitness(c, tuple(exps), worst)
    return None


def leaf_pairing(B: InfinityBranch, Bbar: InfinityBranch,
                 tol: float = DEFAULT_COMPARE_TOL) -> list[tuple[int, int]]:
    """All (i, j) with leaf i of ``B`` convergent to leaf j of ``Bbar``."""
    return [(l1.index, l2.index) for l1 in B.leaves() for l2 in Bbar.leaves()
            if l1.branch.point.matches(l2.branch.point) and leaves_convergent(l1, l2, tol)]


@dataclass(frozen=True)
class Pairing:
    point: InfinityPoint
    branch_a: int
    branch_b: int
    witness: ConvergenceWitness

    def to_record(self) -> dict:
        return {"point": self.point.to_record(), "branch_a": self.branch_a,
                "branch_b": self.branch_b, "witness": self.witness.to_record()}


@dataclass(frozen=True)
class Unmatched:
    point: InfinityPoint
    branch: int | None = None

    def to_record(self) -> dict:
        return {"point": self.point.to_record(), "branch": self.branch}


@dataclass(frozen=True)
class BehaviorReport:
    verdict: str
    failure_stage: str | None
    shear: int
    points_a: tuple[InfinityPoint, ...]
    points_b: tuple[InfinityPoint, ...]
    branches_a: tuple[InfinityBranch, ...]
    branches_b: tuple[InfinityBranch, ...]
    pairing: tuple[Pairing, ...]
    unmatched_a: tuple[Unmatched, ...] = ()
    unmatched_b: tuple[Unmatched, ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def same(self) -> bool:
        return self.verdict == "same"

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "failure_stage": self.failure_stage,
            "lambda": self.shear,
            "points": {"a": [p.to_record() for p in self.points_a],
                       "b": [p.to_record() for p in self.points_b]},
            "branches": {"a": [b.to_record() for b in self.branches_a],
                         "b": [b.to_record() for b in self.branches_b]},
            "pairing": [p.to_record() for p in self.pairing],
            "unmatched": {"a": [u.to_record() for u in self.unmatched_a],
                          "b": [u.to_record() for u in self.unmatched_b]},
            "notes": list(self.notes),
        }


def _reduce(f: BivariatePolynomial) -> BivariatePolynomial:
    if f.is_constant():
        raise DegeneratePolynomialError("curve polynomial is constant")
    if not is_square_free(f):
        warnings.warn("input polynomial has repeated factors; using its square-free part",
                      stacklevel=3)
        return square_free_part(f)
    return f


def _match_points(pa, pb):
    """Index map a -> b (or None) and b -> a; raises on ambiguity."""
    fwd = {}
    for i, p in enumerate(pa):
        hits = [j for j, q in enumerate(pb) if p.matches(q)]
        if len(hits) > 1:
            raise PointMatchingError(f"point m={p.m} matches several points of the other curve")
        fwd[i] = hits[0] if hits else None
    bwd = {}
    for j, q in enumerate(pb):
        hits = [i for i, p in enumerate(pa) if p.matches(q)]
        if len(hits) > 1:
            raise PointMatchingError(f"point m={q.m} matches several points of the other curve")
        bwd[j] = hits[0] if hits else None
    return fwd, bwd


def same_asymptotic_behavior(f: BivariatePolynomial, fbar: BivariatePolynomial,
                             config: Config | None = None) -> BehaviorReport:
    """Decide whether every infinity branch of each curve converges to one of the other.

    Both curves are reduced to their square-free parts and sheared by a common
    λ first. Point sets are compared by location only (multiplicities are
    ignored). The pairing lists every convergent pair found.
    """
    config = config or Config()
    f, fbar = _reduce(f), _reduce(fbar)
    f, fbar, lam = prepare_pair(f, fbar)
    pa, _ = infinity_points(f, config.tol)
    pb, _ = infinity_points(fbar, config.tol)
    fwd, bwd = _match_points(pa, pb)
    ba = infinity_branches(f, config.min_exponent, config.tol)
    bb = infinity_branches(fbar, config.min_exponent, config.tol)
    notes = (f"shear lambda={lam} applied to both curves" if lam else "no shear needed",)

    if any(v is None for v in fwd.values()) or any(v is None for v in bwd.values()):
        return BehaviorReport(
            "different", "points", lam, tuple(pa), tuple(pb), tuple(ba), tuple(bb), (),
            tuple(Unmatched(pa[i]) for i, j in fwd.items() if j is None),
            tuple(Unmatched(pb[j]) for j, i in bwd.items() if i is None),
            notes)

    pairing = []
    unmatched_a, unmatched_b = [], []
    stage = None
    for ia, point in enumerate(pa):
        qb = pb[fwd[ia]]
        idx_a = [k for k, b in enumerate(ba) if b.point.matches(point)]
        idx_b = [k for k, b in enumerate(bb) if b.point.matches(qb)]
        matched_a, matched_b = set(), set()
        for i in idx_a:
            for j in idx_b:
                w = branches_convergent(ba[i], bb[j], config.compare_tol)
                if w is not None:
                    pairing.append(Pairing(point, i, j, w))
                    matched_a.add(i)
                    matched_b.add(j)
        miss_a = [i for i in idx_a if i not in matched_a]
        miss_b = [j for j in idx_b if j not in matched_b]
        unmatched_a += [Unmatched(point, i) for i in miss_a]
        unmatched_b += [Unmatched(qb, j) for j in miss_b]
        if stage is None and miss_a:
            stage = "branch_unmatched_forward"
        elif stage is None and miss_b:
            stage = "branch_unmatched_backward"
    verdict = "same" if stage is None else "different"
    return BehaviorReport(verdict, stage, lam, tuple(pa), tuple(pb), tuple(ba), tuple(bb),
                          tuple(pairing), tuple(unmatched_a), tuple(unmatched_b), notes)


def approach_profile(B: InfinityBranch, fbar: BivariatePolynomial, radii: Sequence[float],
                     tol: float = DEFAULT_TOL) -> list[tuple[float, float]]:
    """Vertical distance from ``(rho, r(rho))`` on leaf 0 of ``B`` to ``fbar``.

    The vertical gap ``min_q |r(rho) - q|`` over the fiber of ``fbar`` at
    ``x = rho`` bounds the true point-to-curve distance from above.
    """
    leaf = Leaf(B, 0)
    out = []
    for rho in radii:
        if rho <= 0:
            raise ValueError("radii must be positive")
        y = leaf(complex(rho, 0.0))
        fiber = resolve_fiber(fbar, complex(rho, 0.0), tol)
        out.append((float(rho), min(abs(y - q) for q in fiber)))
    return out


def sample_curve(f: BivariatePolynomial, window: float, grid_count: int,
                 tol: float = DEFAULT_TOL) -> np.ndarray:
    """Points of ``f`` over a real x-grid on [-window, window] as rows in R^4.

    Columns are (Re x, Im x, Re y, Im y); points with |y| > 10·window are dropped.
    """
    rows = []
    for x in np.linspace(-window, window, grid_count):
        try:
            ys = resolve_fiber(f, complex(x, 0.0), tol)
        except DegeneratePolynomialError:
            continue
        for y in ys:
            if abs(y) <= 10 * window:
                rows.append((x, 0.0, y.real, y.imag))
    return np.array(rows, dtype=float).reshape(-1, 4)


def hausdorff_estimate(f: BivariatePolynomial, fbar: BivariatePolynomial, window: float,
                       grid_count: int = 64, tol: float = DEFAULT_TOL) -> float:
    """Discrete symmetric Hausdorff distance between windowed samples of two curves.

    A finite-window proxy: growth or boundedness across windows is the signal,
    the value itself is not the Hausdorff distance of the curves.
    """
    if window <= 0:
        raise ValueError("window must be positive")
    if grid_count < 8:
        raise ValueError("grid_count must be at least 8")
    A = sample_curve(f, window, grid_count, tol)
    B = sample_curve(fbar, window, grid_count, tol)
    if len(A) == 0 or len(B) == 0:
        raise EmptySampleError("no sample points for one of the curves in this window")
    D = cdist(A, B)
    return float(max(D.min(axis=1).max(), D.min(axis=0).max()))
