"""Newton–Puiseux expansion of the solutions y(z) of G(y, z) = 0 at the origin.

The singular part is found by Newton polygon recursion, one conjugacy class at
a time: on an edge whose slope is p/q in the current ``t = z^(1/N)`` scale the
edge polynomial is a polynomial in ``u = c^q``, and a single q-th root of each
``u`` is kept, so each class is produced exactly once. As soon as the working
coefficient is a simple root, the remaining terms are lifted one ``t``-step at
a time.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ExpansionError
from .roots import DEFAULT_TOL, find_roots, min_separation

ZERO_THRESHOLD = 1e-10
MAX_POLYGON_DEPTH = 64

ChartTerms = dict[tuple[int, Fraction], complex]


@dataclass(frozen=True)
class PuiseuxSeries:
    """Truncated series ``sum a_k z^(e_k)`` with exponents in (1/N)Z.

    ``watermark`` is the largest exponent up to which the truncation is
    complete; terms above it may be missing.
    """

    terms: tuple[tuple[Fraction, complex], ...]
    ramification_index: int
    watermark: Fraction

    def __post_init__(self):
        exps = [e for e, _ in self.terms]
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("exponents must be strictly increasing")
        N = self.ramification_index
        if N < 1 or any(N % e.denominator for e in exps):
            raise ValueError("exponent denominators must divide N")

    @property
    def N(self) -> int:
        return self.ramification_index

    def coefficient(self, exponent) -> complex:
        exponent = Fraction(exponent)
        for e, a in self.terms:
            if e == exponent:
                return a
        return 0j

    def order(self) -> Fraction | None:
        return self.terms[0][0] if self.terms else None

    def truncate(self, watermark) -> "PuiseuxSeries":
        watermark = Fraction(watermark)
        return PuiseuxSeries(
            tuple(t for t in self.terms if t[0] <= watermark),
            self.ramification_index,
            min(watermark, self.watermark),
        )


@dataclass(frozen=True)
class Edge:
    """One lower-hull segment of the Newton polygon with negative slope.

    ``slope`` is dj/di (negative); ``order = -slope`` is the exponent of the
    leading term it produces. ``characteristic`` holds the ascending
    coefficients of the edge polynomial in ``c``, starting at the edge's
    left endpoint.
    """

    slope: Fraction
    points: tuple[tuple[int, Fraction], ...]
    characteristic: tuple[complex, ...]

    @property
    def order(self) -> Fraction:
        return -self.slope

    @property
    def height(self) -> int:
        return self.points[-1][0] - self.points[0][0]


@dataclass(frozen=True)
class NewtonPolygon:
    support: frozenset
    edges: tuple[Edge, ...]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(G: Mapping[tuple[int, Fraction], complex]) -> NewtonPolygon:
    """Lower hull edges of the support that yield solutions of positive order.

    Points are ``(deg_y, exponent of z)``; edges are returned left to right,
    i.e. by increasing (negative) slope.
    """
    support = frozenset(k for k, v in G.items() if v != 0)
    pts = sorted(support)
    hull: list = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    edges = []
    for a, b in zip(hull, hull[1:]):
        if b[1] >= a[1]:
            break
        slope = Fraction(b[1] - a[1]) / (b[0] - a[0])
        on_edge = sorted(q for q in support
                         if q[1] - a[1] == slope * (q[0] - a[0]) and a[0] <= q[0] <= b[0])
        char = [0j] * (b[0] - a[0] + 1)
        for i, j in on_edge:
            char[i - a[0]] = complex(G[(i, j)])
        edges.append(Edge(slope, tuple(on_edge), tuple(char)))
    return NewtonPolygon(support, tuple(edges))


def _clean(G: Mapping, rel: float = ZERO_THRESHOLD) -> dict:
    if not G:
        return {}
    scale = max(abs(v) for v in G.values())
    return {k: v for k, v in G.items() if abs(v) > rel * scale}


def _substitute(G: Mapping, gamma: Fraction, c: complex) -> ChartTerms:
    """``z^(-mu) G(z^gamma (c + y1), z)`` with mu the edge value."""
    mu = min(j + gamma * i for i, j in G)
    out: dict = {}
    for (i, j), a in G.items():
        shift = j + gamma * i - mu
        for k in range(i + 1):
            key = (k, shift)
            out[key] = out.get(key, 0j) + a * comb(i, k) * c ** (i - k)
    out.pop((0, Fraction(0)), None)  # vanishes since c solves the edge polynomial
    return _clean(out)


def _series_mul(a: np.ndarray, b: np.ndarray, K: int) -> np.ndarray:
    return np.convolve(a, b)[: K + 1]


def _lift(G: Mapping, N: int, K: int) -> np.ndarray:
    """Coefficients b_1..b_K of the simple solution y1(t) = sum b_k t^k, t = z^(1/N)."""
    b = np.zeros(K + 1, dtype=complex)
    if K < 1:
        return b
    deg = max(i for i, _ in G)
    rows = [np.zeros(K + 1, dtype=complex) for _ in range(deg + 1)]
    for (i, j), a in G.items():
        J = j * N
        if J.denominator != 1:
            raise ExpansionError("non-integral exponent during lifting")
        if J <= K:
            rows[i][int(J)] += a
    slope = rows[1][0] if deg >= 1 else 0
    if abs(slope) == 0:
        raise ExpansionError("lifting requires a simple root")
    for k in range(1, K + 1):
        acc = rows[deg].copy()
        for i in range(deg - 1, -1, -1):
            acc = _series_mul(acc, b, K) + rows[i]
        b[k] = -acc[k] / slope
    return b


def _pick_root(u: complex, q: int) -> complex:
    return cmath.exp(cmath.log(u) / q) if u != 0 else 0j


def expand_at_origin(G: Mapping, order=Fraction(3), tol: float = DEFAULT_TOL,
                     max_depth: int = MAX_POLYGON_DEPTH) -> list[PuiseuxSeries]:
    """One canonical representative per conjugacy class of positive-order solutions.

    Parameters
    ----------
    G : mapping
        Coefficients keyed by ``(deg_y, deg_z)``; ``deg_z`` may be an int or
        a Fraction. ``G(0, 0)`` must vanish.
    order : Fraction
        Every returned series is complete through this exponent.
    tol : float
        Root-finder tolerance for the edge polynomials.
    max_depth : int
        Cap on the number of polygon stages before a simple root is reached.

    Raises
    ------
    ExpansionError
        Depth cap exceeded, or two edge-polynomial roots closer than 10·tol.
    """
    order = Fraction(order)
    start = {(int(i), Fraction(j)): complex(v) for (i, j), v in G.items()}
    start = _clean(start)
    if not start:
        raise ExpansionError("polynomial is identically zero")
    if any(i == 0 and j == 0 for i, j in start):
        raise ExpansionError("G(0, 0) != 0: origin is not on the curve")
    out: list[PuiseuxSeries] = []
    _expand(start, [], Fraction(0), 1, 0, order, tol, max_depth, out)
    return [canonical_representative(s) for s in out]


def _emit(prefix, N, order, out):
    terms = tuple((e, a) for e, a in prefix if e <= order)
    out.append(PuiseuxSeries(terms, N, order))


def _expand(G, prefix, offset, N, depth, order, tol, max_depth, out):
    if depth > max_depth:
        raise ExpansionError(f"Newton polygon recursion exceeded {max_depth} stages")
    i_min = min(i for i, _ in G)
    if i_min > 0:
        # y1 = 0 solves exactly; the series terminates here
        _emit(prefix, N, order, out)
        G = {(i - i_min, j): v for (i, j), v in G.items()}
    for edge in newton_polygon(G).edges:
        gamma = edge.order
        q = (gamma * N).denominator
        char = edge.characteristic
        reduced = [char[k] for k in range(0, len(char), q)]
        roots = find_roots(reduced, tol)
        roots = [r for r in roots if abs(r.value) > tol]
        if len(roots) > 1 and min_separation(roots) < 10 * tol:
            raise ExpansionError("ambiguous root clusters in edge polynomial")
        for r in roots:
            c = _pick_root(r.value, q)
            N1 = N * q
            offset1 = offset + gamma
            G1 = _substitute(G, gamma, c)
            prefix1 = prefix + [(offset1, c)]
            if r.multiplicity == 1:
                K = math.floor((order - offset1) * N1) if order >= offset1 else 0
                b = _lift(G1, N1, K)
                scale = max(abs(c), float(np.max(np.abs(b))))
                tail = [(offset1 + Fraction(k, N1), complex(b[k]))
                        for k in range(1, K + 1) if abs(b[k]) > ZERO_THRESHOLD * scale]
                _emit(prefix1 + tail, N1, order, out)
            else:
                _expand(G1, prefix1, offset1, N1, depth + 1, order, tol, max_depth, out)


def conjugates(s: PuiseuxSeries) -> list[PuiseuxSeries]:
    """All N conjugates; index k multiplies the z^(i/N) coefficient by exp(2πik/N)^i."""
    N = s.ramification_index
    out = []
    for k in range(N):
        eps = cmath.exp(2j * math.pi * k / N)
        terms = tuple((e, a * eps ** int(e * N)) for e, a in s.terms)
        out.append(PuiseuxSeries(terms, N, s.watermark))
    return out


def _close(a: float, b: float, scale: float) -> bool:
    return abs(a - b) <= 1e-9 * (1 + scale)


def _compare(s1: PuiseuxSeries, s2: PuiseuxSeries) -> int:
    for (_, a), (_, b) in zip(s1.terms, s2.terms):
        scale = max(abs(a), abs(b))
        if not _close(a.real, b.real, scale):
            return 1 if a.real > b.real else -1
        if not _close(a.imag, b.imag, scale):
            return 1 if a.imag > b.imag else -1
    return 0


def canonical_representative(s: PuiseuxSeries) -> PuiseuxSeries:
    """Conjugate with lexicographically largest (Re, Im) coefficient sequence."""
    best = s
    for cand in conjugates(s):
        if _compare(cand, best) > 0:
            best = cand
    # tie within tolerance: prefer the earliest conjugate for determinism
    for cand in conjugates(s):
        if _compare(cand, best) == 0:
            return cand
    return best


def evaluate_terms(terms: Iterable[tuple[Fraction, complex]], N: int,
                   z0: complex, leaf: int = 0) -> complex:
    """``sum a (z0^(1/N) exp(2πi leaf/N))^(e N)`` with the principal N-th root."""
    z0 = complex(z0)
    if z0 == 0:
        raise ValueError("cannot evaluate a Puiseux series at z = 0")
    if not 0 <= leaf < N:
        raise ValueError(f"leaf index {leaf} outside [0, {N})")
    w = cmath.exp(cmath.log(z0) / N) * cmath.exp(2j * math.pi * leaf / N)
    return sum((a * w ** int(e * N) for e, a in terms), 0j)


def evaluate_series(s: PuiseuxSeries, z0: complex, leaf: int = 0) -> complex:
    return evaluate_terms(s.terms, s.ramification_index, z0, leaf)


def format_exponent(e: Fraction) -> str:
    return f"{e.numerator}/{e.denominator}"


def parse_exponent(text: str) -> Fraction:
    return Fraction(text)


def term_records(terms: Sequence[tuple[Fraction, complex]]) -> list[dict]:
    return [{"exponent": format_exponent(e), "re": a.real, "im": a.imag} for e, a in terms]


def series_to_record(s: PuiseuxSeries) -> dict:
    return {
        "N": s.ramification_index,
        "watermark": format_exponent(s.watermark),
        "terms": term_records(s.terms),
    }


def series_from_record(rec: Mapping) -> PuiseuxSeries:
    terms = tuple((parse_exponent(t["exponent"]), complex(t["re"], t["im"]))
                  for t in rec["terms"])
    return PuiseuxSeries(terms, int(rec["N"]), parse_exponent(rec["watermark"]))
