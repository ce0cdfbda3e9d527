"""Bott-periodic coefficient tables for the three K-theories, with
coefficient changes, torsion-sphere computations, mod-k index
arithmetic, and an algebraic double-duality check for finitely
generated abelian groups.

Q/Z is modelled as exact rationals in [0, 1) with addition mod 1; Z_k
sits inside as the multiples of 1/k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Union

from .modules import AbGroupExpr

Rational = Union[int, Fraction]

THEORIES = ("KO", "KU", "KSp")


class IntegralityError(ArithmeticError):
    """Input data violating an integrality forced by the index theory."""


class UndeterminedExtension(ValueError):
    """A universal-coefficient extension this module refuses to guess."""

    def __init__(self, sub: AbGroupExpr, quot: AbGroupExpr):
        self.sub = sub
        self.quot = quot
        super().__init__(f"extension of {quot} by {sub} undetermined")


# --------------------------------------------------------------------------
# coefficient rings and Q/Z arithmetic
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientRing:
    tag: str        # "Z" | "Q" | "Q/Z" | "Zk"
    k: int = 0

    def __post_init__(self):
        if self.tag not in ("Z", "Q", "Q/Z", "Zk"):
            raise ValueError(f"unknown coefficient ring {self.tag!r}")
        if self.tag == "Zk" and self.k < 2:
            raise ValueError("Zk needs k >= 2")
        if self.tag != "Zk" and self.k:
            raise ValueError("k only applies to Zk")

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        text = text.strip()
        if text in ("Z", "Q", "Q/Z"):
            return cls(text)
        if text.startswith("Z") and text[1:].isdigit():
            return cls("Zk", int(text[1:]))
        raise ValueError(f"cannot parse coefficient ring {text!r}")

    def __str__(self):
        return f"Z{self.k}" if self.tag == "Zk" else self.tag


def qz(x: Rational) -> Fraction:
    """Canonical representative of x in Q/Z: the fractional part in [0, 1)."""
    f = Fraction(x)
    return f - (f.numerator // f.denominator)


def zk_to_qz(residue: int, k: int) -> Fraction:
    """Embed Z_k into Q/Z as multiples of 1/k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return qz(Fraction(residue, k))


# --------------------------------------------------------------------------
# integral coefficient tables (period 8 / 2)
# --------------------------------------------------------------------------

_Z = AbGroupExpr.free()
_Z2 = AbGroupExpr.cyclic(2)
_0 = AbGroupExpr.zero()

_KO_TABLE = (_Z, _Z2, _Z2, _0, _Z, _0, _0, _0)
_KSP_TABLE = (_Z, _0, _0, _0, _Z, _Z2, _Z2, _0)  # KO shifted by four


def integral_table(theory: str, n: int) -> AbGroupExpr:
    """Homotopy of the coefficient spectrum: theory_n(pt), any integer n."""
    if theory == "KU":
        return _Z if n % 2 == 0 else _0
    if theory == "KO":
        return _KO_TABLE[n % 8]
    if theory == "KSp":
        return _KSP_TABLE[n % 8]
    raise ValueError(f"theory must be one of {THEORIES}")


def _tensor_with(group: AbGroupExpr, ring: CoefficientRing) -> AbGroupExpr:
    parts = []
    for token in group.summands:
        if token == "Z":
            if ring.tag == "Q":
                parts.append("Q")
            elif ring.tag == "Q/Z":
                parts.append("Q/Z")
            else:
                parts.append(ring.k)
        else:  # finite cyclic of order token
            if ring.tag in ("Q", "Q/Z"):
                continue
            d = gcd(token, ring.k)
            if d > 1:
                parts.append(d)
    return AbGroupExpr(tuple(parts))


def _tor_with(group: AbGroupExpr, ring: CoefficientRing) -> AbGroupExpr:
    if ring.tag == "Q":
        return _0
    parts = []
    for token in group.torsion:
        if ring.tag == "Q/Z":
            parts.append(token)  # Tor(Z_m, Q/Z) = Z_m
        else:
            d = gcd(token, ring.k)
            if d > 1:
                parts.append(d)
    return AbGroupExpr(tuple(parts))


@dataclass(frozen=True)
class CoefficientGroup:
    """Universal-coefficient answer: the group when the extension is
    forced, otherwise the two ends with a flag."""

    theory: str
    n: int
    ring: CoefficientRing
    determined: bool
    group: AbGroupExpr | None
    sub: AbGroupExpr
    quot: AbGroupExpr

    def __str__(self):
        if self.determined:
            return str(self.group)
        return f"extension({self.quot} by {self.sub})"


def k_coefficients_extension(theory: str, n: int, ring: CoefficientRing) -> CoefficientGroup:
    """theory_n(pt; ring) through the universal-coefficient sequence
    0 -> G_n (x) ring -> result -> Tor(G_{n-1}, ring) -> 0."""
    base = integral_table(theory, n)
    if ring.tag == "Z":
        return CoefficientGroup(theory, n, ring, True, base, base, _0)
    sub = _tensor_with(base, ring)
    quot = _tor_with(integral_table(theory, n - 1), ring)
    if ring.tag in ("Q", "Q/Z"):
        # divisible subgroup: the sequence splits, no ambiguity
        return CoefficientGroup(theory, n, ring, True, sub + quot, sub, quot)
    if quot.is_zero():
        return CoefficientGroup(theory, n, ring, True, sub, sub, quot)
    if sub.is_zero():
        return CoefficientGroup(theory, n, ring, True, quot, sub, quot)
    return CoefficientGroup(theory, n, ring, False, None, sub, quot)


def k_coefficients(theory: str, n: int, ring: CoefficientRing | str = "Z") -> AbGroupExpr:
    """Coefficient group as an abelian-group expression; raises
    UndeterminedExtension when both ends of the sequence are nonzero
    over Z_k (e.g. KO_2(pt; Z_2), which is in fact a nonsplit Z_4)."""
    if isinstance(ring, str):
        ring = CoefficientRing.parse(ring)
    result = k_coefficients_extension(theory, n, ring)
    if not result.determined:
        raise UndeterminedExtension(result.sub, result.quot)
    return result.group


# --------------------------------------------------------------------------
# reduced K-theory of torsion spheres
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ZkSphereResult:
    theory: str
    m: int
    k: int
    star: int
    determined: bool
    group: AbGroupExpr | None
    sub: AbGroupExpr
    quot: AbGroupExpr
    complexification: str | None  # "iso" | "x2" | None

    def __str__(self):
        body = str(self.group) if self.determined \
            else f"extension({self.quot} by {self.sub})"
        if self.complexification:
            body += f" [complexification: {self.complexification}]"
        return body


def zk_sphere_group(theory: str, m: int, k: int, star: int = 0) -> ZkSphereResult:
    """Reduced theory of the mod-k sphere in dimension m at degree star.

    Assembled from the splitting into a wedge of (k-1) ordinary
    (m-1)-spheres and a mod-k Moore part:

      0 -> h^{star-m+1}(pt)^(k-1) (+) (h^{star-m}(pt) (x) Z_k)
             -> reduced h^star -> Tor(h^{star-m+1}(pt), Z_k) -> 0.

    When the Tor term vanishes the middle group is reported; otherwise
    the two ends come back flagged.  For KO in dimensions divisible by
    four the complexification map is an isomorphism (m = 0 mod 8) or
    multiplication by two (m = 4 mod 8).
    """
    if theory not in ("KO", "KU"):
        raise ValueError("torsion-sphere groups computed for KO and KU")
    if m < 2:
        raise ValueError("need m >= 2")
    if k < 2:
        raise ValueError("need k >= 2")
    ring = CoefficientRing("Zk", k)
    # cohomology of a point: h^j(pt) = h_{-j}(pt)
    wedge_piece = integral_table(theory, -(star - m + 1))
    tensor_part = _tensor_with(integral_table(theory, -(star - m)), ring)
    tor_part = _tor_with(wedge_piece, ring)
    sub = AbGroupExpr(wedge_piece.summands * (k - 1)) + tensor_part
    comparison = None
    if theory == "KO" and star == 0 and m % 4 == 0:
        comparison = "iso" if m % 8 == 0 else "x2"
    if tor_part.is_zero():
        return ZkSphereResult(theory, m, k, star, True, sub, sub, tor_part, comparison)
    return ZkSphereResult(theory, m, k, star, False, None, sub, tor_part, comparison)


# --------------------------------------------------------------------------
# mod-k index arithmetic
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ZkIndexInput:
    """Arithmetic inputs of the mod-k index: the characteristic-class
    integral and the (already k-scaled) boundary eta correction."""

    n: int
    k: int
    integral_term: Fraction
    eta_term: Fraction

    def __post_init__(self):
        if self.n % 4 != 0:
            raise ValueError("dimension must be divisible by four")
        if self.k < 2:
            raise ValueError("modulus must be at least two")
        object.__setattr__(self, "integral_term", Fraction(self.integral_term))
        object.__setattr__(self, "eta_term", Fraction(self.eta_term))

    @property
    def epsilon(self) -> int:
        return 2 if self.n % 8 == 0 else 1


def zk_index(data: ZkIndexInput) -> int:
    """((integral - eta) / epsilon) mod k, with epsilon = 2 in dimensions
    divisible by eight (the quaternionic structure makes the un-reduced
    index even) and 1 otherwise.  A non-integral quotient means the
    inputs cannot come from an actual geometry."""
    quotient = (data.integral_term - data.eta_term) / data.epsilon
    if quotient.denominator != 1:
        raise IntegralityError(
            f"({data.integral_term} - {data.eta_term})/{data.epsilon} "
            "is not an integer")
    return int(quotient) % data.k


# --------------------------------------------------------------------------
# index classification by dimension residue
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class IndexClassification:
    n: int
    group: AbGroupExpr
    value: int

    def __str__(self):
        if self.group.is_zero():
            return "0 (zero group)"
        return f"{self.value} in {self.group}"


def aind_classify(n: int, genus_value: Rational | None = None,
                  harmonic_dim: int | None = None) -> IndexClassification:
    """Element of the degree-n symplectic coefficient group carried by a
    closed manifold: genus-valued in residues 0 and 4 mod 8 (halved, and
    forced even, in residue 0), a harmonic-kernel parity in residues 5
    and 6, and zero otherwise."""
    residue = n % 8
    if residue in (0, 4):
        if genus_value is None:
            raise ValueError(f"residue {residue}: genus value required")
        g = Fraction(genus_value)
        if g.denominator != 1:
            raise IntegralityError(f"genus value {g} is not an integer")
        if residue == 0:
            if g % 2:
                raise IntegralityError(
                    f"genus value {g} must be even in dimensions 0 mod 8")
            return IndexClassification(n, _Z, int(g) // 2)
        return IndexClassification(n, _Z, int(g))
    if residue in (5, 6):
        if harmonic_dim is None:
            raise ValueError(f"residue {residue}: harmonic dimension required")
        return IndexClassification(n, _Z2, harmonic_dim % 2)
    return IndexClassification(n, _0, 0)


# --------------------------------------------------------------------------
# finitely generated abelian groups and double duality
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FGAbelianGroup:
    """rank + invariant factors n1 | n2 | ... (each dividing the next)."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(self.torsion))
        for t in self.torsion:
            if t < 2:
                raise ValueError("invariant factors are at least two")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def from_summands(cls, rank: int = 0, orders: Iterable[int] = ()) -> "FGAbelianGroup":
        """Normalize an arbitrary direct sum of cyclic groups into
        invariant-factor form."""
        primary: dict[int, list[int]] = {}
        for m in orders:
            if m < 1:
                raise ValueError("cyclic orders must be positive")
            for p, e in _factor(m).items():
                primary.setdefault(p, []).append(e)
        if not primary:
            return cls(rank, ())
        slots = max(len(v) for v in primary.values())
        factors = []
        for i in range(slots):
            f = 1
            for p, exps in primary.items():
                exps_sorted = sorted(exps, reverse=True)
                if i < len(exps_sorted):
                    f *= p ** exps_sorted[i]
            factors.append(f)
        return cls(rank, tuple(sorted(factors)))

    @property
    def order(self) -> int:
        """Order of the torsion part."""
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def is_finite(self) -> bool:
        return self.rank == 0

    def to_expr(self) -> AbGroupExpr:
        return AbGroupExpr(("Z",) * self.rank + self.torsion)

    def __str__(self):
        return str(self.to_expr())


def _factor(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


class VerificationBoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class DualityReport:
    group: FGAbelianGroup
    verified: bool
    torsion_candidates: int      # candidate generator assignments enumerated
    torsion_valid: int           # how many were genuine homomorphisms
    evaluation_bijective: bool
    orders_match: bool
    free_witnesses: tuple[tuple[Fraction, bool], ...]


def _element_orders(factors: tuple[int, ...]) -> dict[int, int]:
    """Multiset (order -> count) of element orders of a product of
    cyclic groups, by enumeration."""
    counts: dict[int, int] = {}
    for tup in itertools.product(*(range(n) for n in factors)):
        o = 1
        for x, n in zip(tup, factors):
            if x:
                o = lcm(o, n // gcd(x, n))
        counts[o] = counts.get(o, 0) + 1
    if not factors:
        counts[1] = 1
    return counts


def _rational_descends(q: Fraction) -> bool:
    """Does multiplication by q on Q send Z into Z (so that it descends
    to an endomorphism of Q/Z liftable over Q)?"""
    return (q * 1).denominator == 1


DEFAULT_WITNESSES = (Fraction(3), Fraction(1, 2), Fraction(-7), Fraction(5, 3), Fraction(0))


def dual_group(group: FGAbelianGroup, max_order: int = 1000,
               witnesses: Iterable[Rational] = DEFAULT_WITNESSES) -> DualityReport:
    """Double dual of a finitely generated abelian group under the
    rational-circle pairing, with a brute-force verification.

    The duality is the identity on isomorphism classes.  For the torsion
    part every homomorphism into Q/Z is liftable (there is nothing to
    lift), so the verification enumerates all candidate generator
    assignments for maps Hom(A, Q/Z) -> Q/Z, checks each really is a
    homomorphism realized by evaluation at an element, and compares
    element-order statistics with A.  For free factors the liftable
    endomorphisms of Q/Z are exactly the integer multiplications, checked
    on a witness set of rationals.
    """
    if group.rank > 2:
        raise VerificationBoundExceeded("free rank capped at two for verification")
    if group.order > max_order:
        raise VerificationBoundExceeded(
            f"torsion order {group.order} exceeds bound {max_order}")

    factors = group.torsion
    elements = list(itertools.product(*(range(n) for n in factors)))

    # pairing values live in (1/N)Z/Z for N = exponent; store numerators
    denominator = 1
    for n in factors:
        denominator = lcm(denominator, n)
    weights = [denominator // n for n in factors]

    def pairing(a, x) -> int:
        return sum(ai * xi * w for ai, xi, w in zip(a, x, weights)) % denominator

    # dual side: each a defines phi_a = <a, .>; all duals are of this form
    dual_tables = {a: tuple(pairing(a, x) for x in elements) for a in elements}
    evaluation_bijective = len(set(dual_tables.values())) == len(elements)

    # spot-check additivity of the evaluation functionals against the
    # dual group's addition (a tautology worth a cheap audit)
    stride = max(1, len(elements) // 12)
    sample = elements[::stride]
    for x in sample:
        for a1 in sample:
            for a2 in sample:
                s = tuple((u + v) % n for u, v, n in zip(a1, a2, factors))
                if (pairing(a1, x) + pairing(a2, x)) % denominator != pairing(s, x):
                    evaluation_bijective = False

    # double dual: candidate images of each dual generator delta_i are
    # drawn from the (1/n_i^2)-grid; the valid ones are exactly those of
    # order dividing n_i, and each valid assignment must be realized by
    # evaluation at the element with those coordinates.
    basis = [tuple(1 if j == i else 0 for j in range(len(factors)))
             for i in range(len(factors))]
    candidates = 0
    valid = 0
    for raw in itertools.product(*(range(n * n) for n in factors)):
        candidates += 1
        if any(t % n for t, n in zip(raw, factors)):
            continue  # image order does not divide n_i: not a homomorphism
        x = tuple(t // n for t, n in zip(raw, factors))
        if all(Fraction(pairing(b, x), denominator) == qz(Fraction(t, n * n))
               for b, t, n in zip(basis, raw, factors)):
            valid += 1
    orders_match = _element_orders(factors) == _dual_orders(dual_tables, elements,
                                                            denominator)

    witness_results = tuple((Fraction(q), _rational_descends(Fraction(q)))
                            for q in witnesses)
    free_ok = all((q.denominator == 1) == descended
                  for q, descended in witness_results)

    verified = (evaluation_bijective and valid == len(elements)
                and orders_match and (group.rank == 0 or free_ok))
    return DualityReport(group, verified, candidates, valid,
                         evaluation_bijective, orders_match, witness_results)


def _dual_orders(dual_tables, elements, denominator) -> dict[int, int]:
    counts: dict[int, int] = {}
    for a in elements:
        shared = denominator
        for value in dual_tables[a]:
            shared = gcd(shared, value)
        counts[denominator // shared] = counts.get(denominator // shared, 0) + 1
    if not elements:
        counts[1] = 1
    return counts
