"""Infinity points and infinity branches of an affine plane curve f(x, y) = 0.

Every branch is represented in the form ``y = r(z)`` for large ``z = x``:
the curve is sheared beforehand (see :func:`prepare_pair`) so that (0:1:0)
is not at infinity, which means all infinity points are ``(1:m:0)``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import (DegeneratePolynomialError, ExpansionError,
                     InsufficientTruncationError)
from .polynomial import (BivariatePolynomial, apply_shear, homogenize,
                         is_square_free, leading_form, restrict_chart,
                         shift_y, square_free_part)
from .puiseux import evaluate_terms, expand_at_origin, format_exponent, term_records
from .roots import DEFAULT_TOL, find_roots, resolve_fiber

DEFAULT_MIN_EXPONENT = Fraction(-2)
POINT_TOL = 1e-8


@dataclass(frozen=True)
class InfinityPoint:
    m: complex
    multiplicity: int

    def matches(self, other: "InfinityPoint", tol: float = POINT_TOL) -> bool:
        return abs(self.m - other.m) <= tol * (1 + abs(self.m))

    def to_record(self) -> dict:
        return {"re": self.m.real, "im": self.m.imag, "mult": self.multiplicity}


@dataclass(frozen=True)
class InfinityBranch:
    """Branch ``{(z, r_k(z)) : |z| > M}`` at the infinity point ``(1:m:0)``.

    ``r_terms`` are ``(exponent, coefficient)`` pairs in descending exponent
    order; every term with exponent ≥ ``watermark`` is present.
    """

    point: InfinityPoint
    ramification_index: int
    degree: int
    r_terms: tuple[tuple[Fraction, complex], ...]
    watermark: Fraction

    @property
    def N(self) -> int:
        return self.ramification_index

    def leaves(self) -> list["Leaf"]:
        return [Leaf(self, k) for k in range(self.ramification_index)]

    def to_record(self) -> dict:
        return {
            "point": self.point.to_record(),
            "N": self.ramification_index,
            "degree": self.degree,
            "watermark": format_exponent(self.watermark),
            "terms": term_records(self.r_terms),
        }


@dataclass(frozen=True)
class Leaf:
    branch: InfinityBranch
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.branch.ramification_index:
            raise ValueError(f"leaf index {self.index} outside [0, {self.branch.N})")

    @property
    def terms(self) -> tuple[tuple[Fraction, complex], ...]:
        """r-terms of this leaf: the z^(e) coefficient times exp(2πi k/N)^(eN)."""
        N = self.branch.ramification_index
        eps = cmath.exp(2j * math.pi * self.index / N)
        return tuple((e, a * eps ** int(e * N)) for e, a in self.branch.r_terms)

    @property
    def watermark(self) -> Fraction:
        return self.branch.watermark

    def __call__(self, z: complex) -> complex:
        return evaluate_terms(self.branch.r_terms, self.branch.N, z, self.index)


def _snap(z: complex, tol: float) -> complex:
    re = 0.0 if abs(z.real) <= tol * (1 + abs(z)) else z.real
    im = 0.0 if abs(z.imag) <= tol * (1 + abs(z)) else z.imag
    return complex(re, im)


def _leading_coeffs(f: BivariatePolynomial) -> list[Fraction]:
    L = leading_form(f)
    d = L.degree
    coeffs = [Fraction(0)] * (d + 1)
    for (a, b), c in L.items():
        coeffs[b] += c
    return coeffs


def has_vertical_point(f: BivariatePolynomial) -> bool:
    """True iff (0:1:0) lies on the projective closure."""
    L = leading_form(f)
    return L.coefficient(0, L.degree) == 0


def infinity_points(f: BivariatePolynomial, tol: float = DEFAULT_TOL
                    ) -> tuple[list[InfinityPoint], bool]:
    """Infinity points ``(1:m:0)`` with multiplicities, and the vertical-point flag."""
    if f.is_constant():
        raise DegeneratePolynomialError("curve polynomial is constant")
    coeffs = _leading_coeffs(f)
    vertical = coeffs[-1] == 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        return [], vertical
    roots = find_roots([complex(c) for c in coeffs], tol)
    points = [InfinityPoint(_snap(r.value, tol), r.multiplicity) for r in roots]
    return points, vertical


def prepare_pair(f: BivariatePolynomial, fbar: BivariatePolynomial | None = None
                 ) -> tuple[BivariatePolynomial, BivariatePolynomial | None, int]:
    """Shear both curves by the least λ ≥ 0 that keeps (0:1:0) off both closures."""
    curves = [f] if fbar is None else [f, fbar]
    for c in curves:
        if c.is_constant():
            raise DegeneratePolynomialError("curve polynomial is constant")
    forms = [leading_form(c) for c in curves]
    lam = 0
    # L(x + λy, y) at (0, 1) equals L(λ, 1)
    while any(L(lam, 1) == 0 for L in forms):
        lam += 1
    sheared = [apply_shear(c, lam) for c in curves]
    return sheared[0], (sheared[1] if fbar is not None else None), lam


def _r_degree(exponents: Sequence[Fraction]) -> int:
    n = 1
    for e in exponents:
        if e >= 0:
            n = math.lcm(n, e.denominator)
    return n


def infinity_branches(f: BivariatePolynomial, min_exponent=DEFAULT_MIN_EXPONENT,
                      tol: float = DEFAULT_TOL) -> list[InfinityBranch]:
    """All infinity branches of ``f``, one per conjugacy class, grouped by point.

    Parameters
    ----------
    f : BivariatePolynomial
        Curve with (0:1:0) not at infinity; run :func:`prepare_pair` first.
        A non square-free input is reduced with a warning.
    min_exponent : Fraction
        Every r-term with exponent ≥ ``min_exponent`` is computed.
    tol : float
        Root-finder tolerance.
    """
    min_exponent = Fraction(min_exponent)
    if f.is_constant():
        raise DegeneratePolynomialError("curve polynomial is constant")
    if not is_square_free(f):
        warnings.warn("input polynomial has repeated factors; using its square-free part",
                      stacklevel=2)
        f = square_free_part(f)
    if has_vertical_point(f):
        raise ValueError("(0:1:0) is an infinity point; apply prepare_pair first")
    points, _ = infinity_points(f, tol)
    g = restrict_chart(homogenize(f))
    order = 1 - min_exponent
    out = []
    for point in points:
        G = shift_y(g, point.m)
        classes = expand_at_origin(G, order, tol)
        total = sum(s.ramification_index for s in classes)
        if total != point.multiplicity:
            raise ExpansionError(
                f"at m={point.m}: classes account for {total} solutions, "
                f"expected {point.multiplicity}")
        for s in classes:
            terms = [(1 - e, a) for e, a in s.terms]
            if point.m != 0:
                terms.append((Fraction(1), point.m))
            terms.sort(key=lambda t: t[0], reverse=True)
            out.append(InfinityBranch(point, s.ramification_index,
                                      _r_degree([e for e, _ in terms]),
                                      tuple(terms), 1 - s.watermark))
    return out


def _require_depth(b):
    if b.watermark > 0:
        raise InsufficientTruncationError(
            f"watermark {b.watermark} > 0: non-negative part not fully computed")


def nonnegative_part(b: InfinityBranch | Leaf) -> list[tuple[Fraction, complex]]:
    """Terms with exponent ≥ 0 (the ones that decide convergence)."""
    _require_depth(b)
    terms = b.terms if isinstance(b, Leaf) else b.r_terms
    return [(e, a) for e, a in terms if e >= 0]


def branch_degree(b: InfinityBranch) -> int:
    """Reduced common denominator of the non-negative exponents."""
    return _r_degree([e for e, _ in nonnegative_part(b)])


def branch_from_leaf(leaf: Leaf) -> InfinityBranch:
    """Rebuild a branch using ``leaf`` as its base conjugate."""
    b = leaf.branch
    return InfinityBranch(b.point, b.ramification_index, b.degree, leaf.terms, b.watermark)


def same_up_to_conjugation(a: InfinityBranch, b: InfinityBranch, tol: float = 1e-9) -> bool:
    """True iff some leaf of ``b`` has exactly the r-terms of ``a`` (within tol)."""
    if a.ramification_index != b.ramification_index:
        return False
    for leaf in b.leaves():
        lt = leaf.terms
        if len(lt) == len(a.r_terms) and all(
                e1 == e2 and abs(c1 - c2) <= tol * (1 + abs(c1))
                for (e1, c1), (e2, c2) in zip(a.r_terms, lt)):
            return True
    return False


def sample_leaf(leaf: Leaf, radii: Sequence[float], angle: float = 0.0
                ) -> list[tuple[complex, complex]]:
    """Points ``(z, r(z))`` at ``z = radius * exp(i angle)``."""
    out = []
    for rho in radii:
        if rho <= 0:
            raise ValueError("sampling radius must be positive")
        z = rho * cmath.exp(1j * angle)
        if angle == 0:
            z = complex(rho, 0.0)
        out.append((z, leaf(z)))
    return out


def all_leaves(branches: Sequence[InfinityBranch]) -> list[Leaf]:
    return [leaf for b in branches for leaf in b.leaves()]


def match_fiber(f: BivariatePolynomial, branches: Sequence[InfinityBranch],
                x0: complex, tol: float = DEFAULT_TOL) -> tuple[float, list[tuple[int, int]]]:
    """Pair fiber roots of ``f`` at ``x0`` with leaf values ``r_k(x0)`` one-to-one.

    Returns the largest pairing error and the (root index, leaf index) pairs.
    The root and leaf counts must agree; otherwise the error is infinite.
    """
    roots = np.array(resolve_fiber(f, x0, tol))
    leaves = all_leaves(branches)
    values = np.array([leaf(x0) for leaf in leaves])
    if roots.size != values.size:
        return math.inf, []
    cost = np.abs(roots[:, None] - values[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()), list(zip(rows.tolist(), cols.tolist()))
