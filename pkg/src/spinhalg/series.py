"""Truncated power series with exact rational coefficients, and the
characteristic-class calculus built on them.

One formal variable per series; the variable carries a cohomological
degree (2 for a Chern root x, 4 for a Pontryagin-type class p).  All
arithmetic is truncated at a fixed top power and exact throughout.

The geometric layer provides the single-root A-hat factor
x/(2 sinh(x/2)), the rank-two twist 2 cosh(sqrt(p)/2) stored directly as
a series in p, genus evaluation for closed oriented 4-manifolds, and the
quaternionic projective pairing table computed three independent ways
(binomial formula, residue extraction, Chebyshev recursion).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence, Union

Rational = Union[int, Fraction]

DEFAULT_TRUNC = 48


class NonIntegralCoefficient(ArithmeticError):
    """An extraction that must be an integer produced a proper fraction."""


class GradedSeries:
    """Polynomial-truncated power series a_0 + a_1 t + ... + a_trunc t^trunc
    where the variable t has a fixed cohomological degree."""

    __slots__ = ("variable_degree", "coeffs")

    def __init__(self, variable_degree: int, coeffs: Sequence[Rational]):
        if variable_degree < 1:
            raise ValueError("variable degree must be positive")
        if not coeffs:
            raise ValueError("need at least the constant coefficient")
        object.__setattr__(self, "variable_degree", variable_degree)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, *args):
        raise AttributeError("GradedSeries is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, variable_degree: int, trunc: int) -> "GradedSeries":
        return cls(variable_degree, [0] * (trunc + 1))

    @classmethod
    def one(cls, variable_degree: int, trunc: int) -> "GradedSeries":
        return cls(variable_degree, [1] + [0] * trunc)

    @classmethod
    def variable(cls, variable_degree: int, trunc: int) -> "GradedSeries":
        c = [0] * (trunc + 1)
        if trunc >= 1:
            c[1] = 1
        return cls(variable_degree, c)

    # -- basics ----------------------------------------------------------------

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, power: int) -> Fraction:
        if not 0 <= power <= self.trunc:
            raise ValueError(f"power {power} beyond truncation {self.trunc}")
        return self.coeffs[power]

    @property
    def constant(self) -> Fraction:
        return self.coeffs[0]

    def with_trunc(self, trunc: int) -> "GradedSeries":
        if trunc <= self.trunc:
            return GradedSeries(self.variable_degree, self.coeffs[:trunc + 1])
        return GradedSeries(self.variable_degree,
                            self.coeffs + (Fraction(0),) * (trunc - self.trunc))

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def _check(self, other: "GradedSeries"):
        if self.variable_degree != other.variable_degree:
            raise ValueError("variable degrees differ")
        if self.trunc != other.trunc:
            raise ValueError("truncations differ; align with with_trunc first")

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        self._check(other)
        return GradedSeries(self.variable_degree,
                            [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        self._check(other)
        return GradedSeries(self.variable_degree,
                            [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "GradedSeries":
        return GradedSeries(self.variable_degree, [-a for a in self.coeffs])

    def scale(self, factor: Rational) -> "GradedSeries":
        f = Fraction(factor)
        return GradedSeries(self.variable_degree, [f * a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        top = self.trunc
        out = [Fraction(0)] * (top + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(top + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return GradedSeries(self.variable_degree, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "GradedSeries":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = GradedSeries.one(self.variable_degree, self.trunc)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def reciprocal(self) -> "GradedSeries":
        """Multiplicative inverse; requires an invertible constant term."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ValueError("reciprocal requires a unit constant term")
        inv = [Fraction(0)] * (self.trunc + 1)
        inv[0] = 1 / c0
        for k in range(1, self.trunc + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if self.coeffs[i]:
                    acc += self.coeffs[i] * inv[k - i]
            inv[k] = -acc / c0
        return GradedSeries(self.variable_degree, inv)

    def scale_variable(self, factor: Rational) -> "GradedSeries":
        """Substitute t -> factor * t."""
        f = Fraction(factor)
        out, power = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * power)
            power *= f
        return GradedSeries(self.variable_degree, out)

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (self.variable_degree == other.variable_degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.variable_degree, self.coeffs))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.trunc >= 8 else ""
        return f"GradedSeries(deg={self.variable_degree}, [{head}{tail}])"


def compose_even(outer: Sequence[Rational], inner: GradedSeries) -> GradedSeries:
    """Evaluate the polynomial sum(outer[k] * u^k) at u = inner by Horner.

    Exact when outer is a genuine polynomial (our use: Chebyshev values,
    even-function power series evaluated at even arguments); if inner has
    a nonzero constant term the outer coefficients beyond the list do not
    exist, so the caller must pass the full polynomial.
    """
    result = GradedSeries.zero(inner.variable_degree, inner.trunc)
    for c in reversed(list(outer)):
        result = result * inner
        result = GradedSeries(
            inner.variable_degree,
            [result.coeffs[0] + Fraction(c)] + list(result.coeffs[1:]))
    return result


# --------------------------------------------------------------------------
# characteristic-class series
# --------------------------------------------------------------------------

def sinh_quotient_series(trunc: int) -> GradedSeries:
    """sinh(x/2)/(x/2) = sum x^(2k) / (4^k (2k+1)!), an even series in x."""
    coeffs = [Fraction(0)] * (trunc + 1)
    for k in range(0, trunc // 2 + 1):
        coeffs[2 * k] = Fraction(1, 4 ** k * factorial(2 * k + 1))
    return GradedSeries(2, coeffs)


def a_hat_series(trunc: int = DEFAULT_TRUNC) -> GradedSeries:
    """Single Chern-root A-hat factor x / (2 sinh(x/2)).

    Expansion starts 1 - x^2/24 + 7 x^4/5760 - ...
    """
    return sinh_quotient_series(trunc).reciprocal()


def cosh_sqrt_series(trunc: int = DEFAULT_TRUNC // 4) -> GradedSeries:
    """2 cosh(sqrt(p)/2) as a series in the degree-4 variable p:
    2 * sum p^k / (4^k (2k)!), starting 2 + p/4 + p^2/192 + ...

    The square root never materializes; cosh is even."""
    coeffs = [2 * Fraction(1, 4 ** k * factorial(2 * k)) for k in range(trunc + 1)]
    return GradedSeries(4, coeffs)


def character_ratio_series(i: int, trunc: int) -> GradedSeries:
    """sinh((i+1)x)/sinh(x) as an even series in x (the Chern character
    of the weight-i bundle pulled back to the projective-space variable)."""
    if i < 0:
        raise ValueError("bundle index must be nonnegative")
    num = [Fraction(0)] * (trunc + 1)
    den = [Fraction(0)] * (trunc + 1)
    for k in range(0, trunc // 2 + 1):
        num[2 * k] = Fraction((i + 1) ** (2 * k + 1), factorial(2 * k + 1))
        den[2 * k] = Fraction(1, factorial(2 * k + 1))
    return GradedSeries(2, num) * GradedSeries(2, den).reciprocal()


def hp_a_hat_class(j: int, trunc: int) -> GradedSeries:
    """A-hat class of the j-th quaternionic projective space written in
    the complex projective variable x: F(x)^(2j+2) / F(2x)."""
    f = a_hat_series(trunc)
    return f ** (2 * j + 2) * f.scale_variable(2).reciprocal()


# --------------------------------------------------------------------------
# closed manifold models
# --------------------------------------------------------------------------

class P1EulerPoly:
    """Polynomial in p1 and e over a closed oriented 4-manifold, truncated
    above cohomological degree 4 (so products of top classes vanish)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # keys: (a, b) = exponents of p1 and e; degree is 4(a+b)
        clean = {}
        for key, value in (terms or {}).items():
            a, b = key
            if a + b > 1:
                continue
            v = Fraction(value)
            if v:
                clean[key] = v
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("P1EulerPoly is immutable")

    @classmethod
    def constant(cls, c: Rational) -> "P1EulerPoly":
        return cls({(0, 0): c})

    @classmethod
    def p1(cls) -> "P1EulerPoly":
        return cls({(1, 0): 1})

    @classmethod
    def euler(cls) -> "P1EulerPoly":
        return cls({(0, 1): 1})

    def __add__(self, other: "P1EulerPoly") -> "P1EulerPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return P1EulerPoly(out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return P1EulerPoly({k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for (a1, b1), v1 in self.terms.items():
            for (a2, b2), v2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, Fraction(0)) + v1 * v2
        return P1EulerPoly(out)

    __rmul__ = __mul__


@dataclass(frozen=True)
class ClosedManifoldModel:
    """Integration rule of a closed manifold in one of the two shapes the
    genus computations need: a quaternionic projective space modelled
    inside the complex projective variable, or an oriented 4-manifold
    carrying (signature, euler) data."""

    name: str
    dim: int
    kind: str                 # "hp" | "four"
    j: int = 0                # hp: projective index
    signature: int = 0        # four-manifold invariants
    euler: int = 0

    @classmethod
    def hp(cls, j: int) -> "ClosedManifoldModel":
        if j < 0:
            raise ValueError("projective index must be nonnegative")
        return cls(name=f"HP{j}", dim=4 * j, kind="hp", j=j)

    @classmethod
    def four_manifold(cls, signature: int, euler: int, name: str = "M4") -> "ClosedManifoldModel":
        return cls(name=name, dim=4, kind="four", signature=signature, euler=euler)

    def integrate(self, cls_object) -> Fraction:
        """Pair a total cohomology class against the fundamental class:
        only the top-degree part contributes."""
        if self.kind == "hp":
            if not isinstance(cls_object, GradedSeries) or cls_object.variable_degree != 2:
                raise TypeError("projective integration expects a series in the degree-2 variable")
            if cls_object.trunc < 2 * self.j:
                raise ValueError("series truncated below the fundamental-class degree")
            return cls_object.coeff(2 * self.j)
        if not isinstance(cls_object, P1EulerPoly):
            raise TypeError("4-manifold integration expects a polynomial in p1 and e")
        # Hirzebruch signature input convention: integral of p1 is 3*signature
        p1_part = cls_object.terms.get((1, 0), Fraction(0))
        e_part = cls_object.terms.get((0, 1), Fraction(0))
        return p1_part * 3 * self.signature + e_part * self.euler


# --------------------------------------------------------------------------
# genus of oriented 4-manifolds (self-dual / anti-self-dual twists)
# --------------------------------------------------------------------------

def _orientation_value(orientation) -> int:
    if orientation in (1, "+", "+1"):
        return 1
    if orientation in (-1, "-", "-1"):
        return -1
    raise ValueError("orientation must be '+' or '-'")


def genus_4manifold(signature: int, euler: int, orientation="+") -> Fraction:
    """Twisted A-hat genus of a closed oriented 4-manifold whose rank-3
    twist is the bundle of (anti-)self-dual two-forms.

    Closed form (signature +- euler)/2; recomputed internally from the
    class product (2 + p1(twist)/4)(1 - p1/24) with p1(twist) = p1 +- 2e
    and the signature convention integral(p1) = 3*signature.  Both paths
    must agree.
    """
    o = _orientation_value(orientation)
    closed_form = Fraction(signature + o * euler, 2)

    p1 = P1EulerPoly.p1()
    e = P1EulerPoly.euler()
    twist = P1EulerPoly.constant(2) + (p1 + e * (2 * o)) * Fraction(1, 4)
    a_hat = P1EulerPoly.constant(1) + p1 * Fraction(-1, 24)
    model = ClosedManifoldModel.four_manifold(signature, euler)
    integrated = model.integrate(twist * a_hat)
    if integrated != closed_form:
        raise ArithmeticError(
            f"genus paths disagree: series {integrated} vs closed form {closed_form}")
    return closed_form


# --------------------------------------------------------------------------
# quaternionic projective pairing table, three ways
# --------------------------------------------------------------------------

def hp_pairing_binomial(i: int, j: int) -> int:
    """Pairing of the weight-i bundle against the j-th quaternionic
    projective space: binomial(i+j+1, i-j), zero below the diagonal."""
    if i < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    k = i - j
    if k < 0 or k > i + j + 1:
        return 0
    return comb(i + j + 1, k)


def hp_pairing_residue(i: int, j: int, trunc: int | None = None) -> int:
    """Same pairing computed as the x^(2j) coefficient of
    ch(weight-i bundle) * A-hat(HP^j), all inside the complex projective
    variable.  The extraction must land on an integer."""
    if i < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    top = 2 * j if trunc is None else trunc
    if top < 2 * j:
        raise ValueError("truncation too small for the requested coefficient")
    integrand = character_ratio_series(i, top) * hp_a_hat_class(j, top)
    value = ClosedManifoldModel.hp(j).integrate(integrand)
    if value.denominator != 1:
        raise NonIntegralCoefficient(
            f"pairing ({i},{j}) extracted {value}; series engine is inconsistent")
    return int(value)


def chebyshev_theta(i: int, trunc: int | None = None) -> GradedSeries:
    """Second-kind Chebyshev polynomial U_i evaluated at 1 + y^2/2,
    as a polynomial series in y whose y^(2j) coefficient is the pairing
    binomial(i+j+1, i-j)."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    top = 2 * i if trunc is None else trunc
    prev = [1]          # U_0
    cur = [0, 2]        # U_1
    if i == 0:
        poly = prev
    elif i == 1:
        poly = cur
    else:
        for _ in range(i - 1):
            nxt = [0] + [2 * c for c in cur]
            for k, c in enumerate(prev):
                nxt[k] -= c
            prev, cur = cur, nxt
        poly = cur
    inner_coeffs = [Fraction(1), Fraction(0), Fraction(1, 2)][:top + 1]
    inner_coeffs += [Fraction(0)] * (top + 1 - len(inner_coeffs))
    inner = GradedSeries(2, inner_coeffs)
    return compose_even(poly, inner)


def hp_pairing_matrix(max_i: int, max_j: int, method: str = "binomial",
                      trunc: int | None = None) -> list[list[int]]:
    """Pairing table with rows indexed by the bundle weight i and columns
    by the projective index j.  trunc overrides the automatic series
    truncation of the non-closed-form methods."""
    if method == "binomial":
        entry = hp_pairing_binomial
    elif method == "residue":
        def entry(i, j):
            return hp_pairing_residue(i, j, trunc)
    elif method == "chebyshev":
        def entry(i, j):
            theta = chebyshev_theta(i, trunc if trunc is not None else 2 * max(i, j))
            c = theta.coeff(2 * j)
            if c.denominator != 1:
                raise NonIntegralCoefficient(f"theta coefficient {c} not integral")
            return int(c)
    else:
        raise ValueError("method must be binomial, residue or chebyshev")
    return [[entry(i, j) for j in range(max_j + 1)] for i in range(max_i + 1)]


# --------------------------------------------------------------------------
# Chern character factor of the weak Thom class
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class WeakThomFactor:
    """The non-Thom factor of the weak complex Thom class character for a
    rank-2n bundle: (-1)^n * 2cosh(sqrt(p)/2) * (product of per-root
    reciprocal A-hat factors).  Stored as separate commuting factors."""

    half_rank: int
    sign: int
    cosh_factor: GradedSeries       # degree-4 variable p (the twist class)
    a_hat_inverse_root: GradedSeries  # degree-2 single Chern root

    @property
    def virtual_rank(self) -> int:
        """Value with all characteristic classes set to zero."""
        return 2 * self.sign

    def single_root_series(self) -> GradedSeries:
        """One Chern root x, twist class zero: sign * 2 * A-hat(x)^(-1)."""
        return self.a_hat_inverse_root.scale(2 * self.sign)


def weak_thom_chern_character(half_rank: int, trunc: int = DEFAULT_TRUNC) -> WeakThomFactor:
    if half_rank < 0:
        raise ValueError("half rank must be nonnegative")
    sign = -1 if half_rank % 2 else 1
    return WeakThomFactor(
        half_rank=half_rank,
        sign=sign,
        cosh_factor=cosh_sqrt_series(max(1, trunc // 4)),
        a_hat_inverse_root=a_hat_series(trunc).reciprocal(),
    )
