"""Exact bivariate polynomials over the rationals and the projective helpers
built on them (homogenization, leading form, chart restriction, shears).

Coefficients are :class:`fractions.Fraction`; floating point only appears in
:func:`shift_y`, which returns complex coefficients for the expansion engine.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .errors import DegeneratePolynomialError

Monomial = tuple[int, int]
TrivariateTerms = dict[tuple[int, int, int], Fraction]


class BivariatePolynomial:
    """Sparse polynomial in two variables with rational coefficients.

    ``terms`` maps exponent pairs ``(a, b)`` to the coefficient of
    ``v0^a * v1^b``. The default variable names are ``("x", "y")``; chart
    polynomials use ``("y", "z")``.

    Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "variables", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None,
                 variables: tuple[str, str] = ("x", "y")):
        clean = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in monomial {(a, b)}")
            c = Fraction(c)
            if c:
                clean[(int(a), int(b))] = c
        self._terms = clean
        self.variables = tuple(variables)
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def constant(cls, c, variables=("x", "y")):
        return cls({(0, 0): c}, variables)

    @classmethod
    def variable(cls, index: int, variables=("x", "y")):
        return cls({(1, 0) if index == 0 else (0, 1): 1}, variables)

    def _new(self, terms):
        return BivariatePolynomial(terms, self.variables)

    # -- basic accessors --------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((m[index] for m in self._terms), default=-1)

    def coefficient(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BivariatePolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return BivariatePolynomial.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = BivariatePolynomial.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BivariatePolynomial.constant(other, self.variables)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus / evaluation -------------------------------------------
    def derivative(self, index: int) -> "BivariatePolynomial":
        out = {}
        for (a, b), c in self._terms.items():
            if index == 0 and a:
                out[(a - 1, b)] = c * a
            elif index == 1 and b:
                out[(a, b - 1)] = c * b
        return self._new(out)

    def __call__(self, u, v):
        return sum((c * u ** a * v ** b for (a, b), c in self._terms.items()), 0)

    def evaluate(self, u: complex, v: complex) -> complex:
        """Floating-point evaluation at a complex point."""
        return sum(complex(c) * u ** a * v ** b for (a, b), c in self._terms.items())

    def coefficients_in_second(self, u: complex) -> list[complex]:
        """Ascending coefficients of ``p(u, v)`` as a polynomial in ``v``."""
        deg = self.degree_in(1)
        coeffs = [0j] * (deg + 1)
        for (a, b), c in self._terms.items():
            coeffs[b] += complex(c) * u ** a
        return coeffs

    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        from math import gcd, lcm
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "BivariatePolynomial":
        """Scale to coprime integer coefficients with a positive leading term.

        The leading term is the first in the order used by :meth:`to_text`.
        """
        if not self._terms:
            return self
        c = self.content()
        lead = self._terms[_print_order(self._terms)[0]]
        if lead < 0:
            c = -c
        return self._new({m: v / c for m, v in self._terms.items()})

    # -- printing ---------------------------------------------------------
    def to_text(self) -> str:
        """Render in the input grammar, so that ``parse(p.to_text()) == p``."""
        if not self._terms:
            return "0"
        pieces = []
        for m in _print_order(self._terms):
            c = self._terms[m]
            factors = []
            for name, e in zip(self.variables, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"BivariatePolynomial({self.to_text()!r}, variables={self.variables})"


def _print_order(terms: Iterable[Monomial]) -> list[Monomial]:
    # descending total degree, then descending power of the second variable
    return sorted(terms, key=lambda m: (-(m[0] + m[1]), -m[1]))


def _require_nonzero(f: BivariatePolynomial):
    if not f:
        raise DegeneratePolynomialError("zero polynomial")


def homogenize(f: BivariatePolynomial) -> TrivariateTerms:
    """Terms of ``F(x, y, z) = z^d f(x/z, y/z)`` keyed by ``(i, j, k)``."""
    _require_nonzero(f)
    d = f.degree
    return {(a, b, d - a - b): c for (a, b), c in f.items()}


def dehomogenize(F: Mapping[tuple[int, int, int], Fraction]) -> BivariatePolynomial:
    """``F(x, y, 1)``."""
    out: dict[Monomial, Fraction] = {}
    for (a, b, _), c in F.items():
        out[(a, b)] = out.get((a, b), 0) + c
    return BivariatePolynomial(out)


def leading_form(f: BivariatePolynomial) -> BivariatePolynomial:
    """Homogeneous part of top total degree, i.e. ``F(x, y, 0)``."""
    _require_nonzero(f)
    d = f.degree
    return BivariatePolynomial({m: c for m, c in f.items() if sum(m) == d}, f.variables)


def restrict_chart(F: Mapping[tuple[int, int, int], Fraction]) -> BivariatePolynomial:
    """``g(y, z) = F(1, y, z)`` as a polynomial in the variables ``(y, z)``."""
    out: dict[Monomial, Fraction] = {}
    for (i, j, k), c in F.items():
        if i < 0 or j < 0 or k < 0:
            raise ValueError(f"malformed monomial {(i, j, k)}")
        out[(j, k)] = out.get((j, k), 0) + c
    return BivariatePolynomial(out, ("y", "z"))


def shift_y(g: BivariatePolynomial, m: complex) -> dict[Monomial, complex]:
    """Coefficients of ``g(y + m, z)`` (keys ``(deg_y, deg_z)``).

    Exact when ``m`` is an integer or Fraction; otherwise complex floats.
    """
    exact = isinstance(m, (int, Fraction))
    out: dict[Monomial, object] = {}
    for (a, b), c in g.items():
        c = c if exact else complex(c)
        for k in range(a + 1):
            key = (k, b)
            out[key] = out.get(key, 0) + c * comb(a, k) * m ** (a - k)
    return {key: complex(v) for key, v in out.items() if v != 0}


def apply_shear(f: BivariatePolynomial, lam) -> BivariatePolynomial:
    """``f(x + lam*y, y)``, expanded exactly."""
    lam = Fraction(lam)
    if lam == 0:
        return f
    out: dict[Monomial, Fraction] = {}
    for (a, b), c in f.items():
        # (x + lam y)^a y^b
        for k in range(a + 1):
            key = (k, b + a - k)
            out[key] = out.get(key, 0) + c * comb(a, k) * lam ** (a - k)
    return BivariatePolynomial(out, f.variables)


def to_sympy(f: BivariatePolynomial):
    import sympy
    x, y = sympy.symbols(f.variables)
    return sympy.Poly(
        {m: sympy.Rational(c.numerator, c.denominator) for m, c in f.items()}, x, y
    )


def from_sympy(poly, variables=("x", "y")) -> BivariatePolynomial:
    return BivariatePolynomial(
        {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()}, variables
    )


def square_free_part(f: BivariatePolynomial) -> BivariatePolynomial:
    """Remove repeated factors: ``f / gcd(f, df/dy)``, made primitive.

    Raises
    ------
    DegeneratePolynomialError
        If ``f`` is constant.
    """
    if f.is_constant():
        raise DegeneratePolynomialError("constant polynomial has no square-free part")
    fy = f.derivative(1)
    if not fy:
        # f depends on x alone
        return f.primitive()
    P = to_sympy(f)
    G = P.gcd(to_sympy(fy))
    if G.total_degree() == 0:
        return f.primitive()
    q, r = P.div(G)
    assert r.is_zero
    return from_sympy(q, f.variables).primitive()


def is_square_free(f: BivariatePolynomial) -> bool:
    fy = f.derivative(1)
    if not fy:
        return True
    return to_sympy(f).gcd(to_sympy(fy)).total_degree() == 0
