"""Complex univariate root finding (Aberth–Ehrlich) with multiplicity clustering,
and the fiber solver built on it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegeneratePolynomialError, RootFindingError
from .polynomial import BivariatePolynomial

EPS = np.finfo(float).eps
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 200
# fixed phase offset for the initial circle; keeps runs reproducible
_SEED_ANGLE = 0.4


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int

    def __iter__(self):
        yield self.value
        yield self.multiplicity


def trim(coeffs: Sequence[complex], rel: float = 0.0) -> np.ndarray:
    """Drop leading (highest-degree) coefficients with modulus ≤ rel·max|c|."""
    c = np.asarray(coeffs, dtype=complex)
    if c.size == 0:
        return c
    scale = np.max(np.abs(c))
    n = c.size
    while n > 0 and abs(c[n - 1]) <= rel * scale:
        n -= 1
    return c[:n]


def _horner(c_desc: np.ndarray, z: np.ndarray):
    """Values of p, p' and the rounding-error bound sum |a_i||z|^i."""
    p = np.full_like(z, c_desc[0])
    dp = np.zeros_like(z)
    az = np.abs(z)
    bound = np.full(z.shape, abs(c_desc[0]))
    for a in c_desc[1:]:
        dp = dp * z + p
        p = p * z + a
        bound = bound * az + abs(a)
    return p, dp, bound


def _aberth(c_asc: np.ndarray, max_iter: int) -> np.ndarray:
    deg = c_asc.size - 1
    c_desc = c_asc[::-1]
    radius = 1.0 + np.max(np.abs(c_asc[:-1] / c_asc[-1]))
    k = np.arange(deg)
    z = radius * np.exp(1j * (2 * np.pi * k / deg + _SEED_ANGLE))
    # slight radial perturbation breaks symmetry for lacunary polynomials
    z = z * (1.0 + 0.01 * np.cos(3.0 * k + 1.0))
    done = np.zeros(deg, dtype=bool)
    for _ in range(max_iter):
        p, dp, bound = _horner(c_desc, z)
        done |= np.abs(p) <= 4 * deg * EPS * bound
        if done.all():
            return z
        for i in np.flatnonzero(~done):
            diff = z[i] - np.delete(z, i)
            if np.any(diff == 0):
                z[i] += 1e-12 * (1 + abs(z[i]))
                continue
            ratio = p[i] / dp[i] if dp[i] != 0 else np.inf
            if not np.isfinite(ratio):
                z[i] += 1e-8 * (1 + abs(z[i])) * cmath.exp(1j * (i + 1))
                continue
            s = np.sum(1.0 / diff)
            w = ratio / (1.0 - ratio * s)
            z[i] -= w
            pi = np.polyval(c_desc, z[i])
            if abs(pi) <= 4 * deg * EPS * np.polyval(np.abs(c_desc), abs(z[i])):
                done[i] = True
    p, _, bound = _horner(c_desc, z)
    if (np.abs(p) <= 4 * deg * EPS * bound).all():
        return z
    raise RootFindingError(
        f"Aberth iteration did not converge in {max_iter} iterations",
        residuals=[float(abs(v)) for v in p],
    )


def _cluster(c_asc: np.ndarray, z: np.ndarray, tol: float) -> list[list[int]]:
    deg = c_asc.size - 1
    c_desc = c_asc[::-1]
    p, dp, bound = _horner(c_desc, z)
    # inclusion disc radius deg·|p/p'|, with |p| inflated by its rounding error
    with np.errstate(divide="ignore", invalid="ignore"):
        disc = np.where(dp != 0, deg * (np.abs(p) + 4 * deg * EPS * bound) / np.abs(dp), np.inf)
    disc = np.where(np.isfinite(disc), disc, np.max(np.abs(z)) + 1.0)
    parent = list(range(deg))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(deg):
        for j in range(i + 1, deg):
            d = abs(z[i] - z[j])
            near = d <= tol * (1 + max(abs(z[i]), abs(z[j])))
            overlap = d <= disc[i] + disc[j]
            if near or overlap:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(deg):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _polish(c_asc: np.ndarray, z0: complex, k: int) -> complex:
    """Newton on the (k-1)-th derivative, whose root at a k-fold zero is simple."""
    c = np.polynomial.polynomial.polyder(c_asc, k - 1) if k > 1 else c_asc
    c_desc = c[::-1]
    dc_desc = np.polyder(c_desc)
    z = complex(z0)
    for _ in range(8):
        d = np.polyval(dc_desc, z)
        if d == 0:
            break
        step = np.polyval(c_desc, z) / d
        if not np.isfinite(step) or abs(step) > 1e-3 * (1 + abs(z)):
            break
        z -= step
        if abs(step) <= 4 * EPS * (1 + abs(z)):
            break
    return z


def find_roots(coeffs: Sequence[complex], tol: float = DEFAULT_TOL,
               max_iter: int = DEFAULT_MAX_ITER) -> list[Root]:
    """All complex roots of a univariate polynomial with multiplicities.

    Parameters
    ----------
    coeffs : sequence of complex
        Coefficients in ascending degree. Trailing (leading-degree) zeros
        are dropped before solving.
    tol : float
        Roots closer than ``tol * (1 + |root|)`` are merged; roots whose
        Newton inclusion discs overlap are merged as well.
    max_iter : int
        Iteration cap for the simultaneous Aberth–Ehrlich sweep.

    Returns
    -------
    list of Root
        Sorted by (real, imaginary) part; multiplicities sum to the degree.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    c = trim(coeffs)
    if c.size < 2:
        raise DegeneratePolynomialError("polynomial of degree < 1 has no roots")
    # factor out zero roots exactly
    zeros = 0
    while c[zeros] == 0:
        zeros += 1
    c = c[zeros:]
    roots: list[Root] = []
    if zeros:
        roots.append(Root(0j, zeros))
    if c.size >= 2:
        if c.size == 2:
            z = np.array([-c[0] / c[1]])
        else:
            z = _aberth(c, max_iter)
        for group in _cluster(c, z, tol):
            k = len(group)
            centre = complex(np.mean(z[group]))
            roots.append(Root(complex(_polish(c, centre, k)), k))
    roots.sort(key=lambda r: (round(r.value.real, 12), round(r.value.imag, 12)))
    return _merge_zero(roots, tol)


def _merge_zero(roots: list[Root], tol: float) -> list[Root]:
    # a numerically tiny root clusters with an exact zero root
    zero = [r for r in roots if abs(r.value) <= tol]
    if len(zero) < 2:
        return roots
    rest = [r for r in roots if abs(r.value) > tol]
    merged = Root(0j, sum(r.multiplicity for r in zero))
    return sorted(rest + [merged], key=lambda r: (round(r.value.real, 12), round(r.value.imag, 12)))


def min_separation(roots: Sequence[Root]) -> float:
    best = math.inf
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            best = min(best, abs(a.value - b.value))
    return best


def resolve_fiber(f: BivariatePolynomial, x0: complex, tol: float = DEFAULT_TOL,
                  polish: bool = True) -> list[complex]:
    """All ``y`` with ``f(x0, y) = 0``, repeated by multiplicity.

    Raises
    ------
    DegeneratePolynomialError
        If ``f(x0, y)`` is constant in ``y``.
    """
    coeffs = trim(f.coefficients_in_second(x0), rel=1e-14)
    if coeffs.size < 2:
        raise DegeneratePolynomialError(f"fiber of f at x={x0} is degenerate")
    out = []
    for r in find_roots(coeffs, tol):
        value = r.value
        if polish and r.multiplicity == 1:
            value = complex(_polish(coeffs, value, 1))
        out.extend([value] * r.multiplicity)
    return out
