"""Mod-2 polynomial algebra in Stiefel-Whitney generators with the
Steenrod square action.

The ambient ring is Z2[w2, w3, w4, ...] (oriented: w1 = 0), optionally
with a second primed family truncated at w3' to model an SO(3) factor.
Squares act on generators through Wu's explicit formula

    Sq^i(w_j) = sum_t binom(i - j, t) w_{i-t} w_{j+t}   (mod 2)

with the generalized binomial coefficient reduced mod 2, and extend to
products by the Cartan rule.  On top of that sit Wu classes (triangular
solve of Sq(v) = w), Adem reduction of Steenrod monomials to admissible
form, the antipode chi, degreewise ideal membership by F2 row reduction,
and the Poincare / Sq1-homology series of the quotient presentations of
the classifying-space cohomologies this package cares about.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable

# A generator is (index, family): family 0 unprimed, 1 primed.
# A monomial is a sorted tuple of ((index, family), exponent) pairs.
Gen = tuple[int, int]
Monomial = tuple[tuple[Gen, int], ...]

UNIT: Monomial = ()


class DegreeCapExceeded(ValueError):
    """A linear-algebra request went past the configured degree cap."""


def binom2(a: int, t: int) -> int:
    """Generalized binomial coefficient binom(a, t) mod 2, a any integer."""
    if t < 0:
        return 0
    if a >= 0:
        return comb(a, t) % 2 if t <= a else 0
    # binom(-n, t) = (-1)^t binom(n+t-1, t); signs vanish mod 2
    return comb(-a + t - 1, t) % 2


def monomial_degree(mono: Monomial) -> int:
    return sum(g[0] * e for g, e in mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    out = dict(a)
    for g, e in b:
        out[g] = out.get(g, 0) + e
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class StiefelWhitneyRing:
    """Z2[w_i | i >= 2] (oriented), with an optional primed family
    truncated at index primed_max for the SO(3) factor."""

    two_family: bool = False
    primed_max: int = 3

    def gen(self, index: int, primed: bool = False) -> "F2Polynomial":
        """The class w_index (or w_index'), with w0 = 1 and w1 = 0."""
        if index < 0:
            raise ValueError("generator index must be nonnegative")
        if primed and not self.two_family:
            raise ValueError("ring has no primed family")
        if index == 0:
            return self.one()
        if index == 1:
            return self.zero()
        if primed and index > self.primed_max:
            return self.zero()
        return F2Polynomial(self, frozenset({(((index, 1 if primed else 0), 1),)}))

    def w(self, index: int) -> "F2Polynomial":
        return self.gen(index)

    def wp(self, index: int) -> "F2Polynomial":
        return self.gen(index, primed=True)

    def zero(self) -> "F2Polynomial":
        return F2Polynomial(self, frozenset())

    def one(self) -> "F2Polynomial":
        return F2Polynomial(self, frozenset({UNIT}))

    def from_monomials(self, monomials: Iterable[Monomial]) -> "F2Polynomial":
        acc: set[Monomial] = set()
        for m in monomials:
            acc.symmetric_difference_update({m})
        return F2Polynomial(self, frozenset(acc))

    # -- monomial bases ------------------------------------------------------

    def generators_up_to(self, degree: int) -> list[Gen]:
        gens = [(i, 0) for i in range(2, degree + 1)]
        if self.two_family:
            gens += [(i, 1) for i in range(2, min(degree, self.primed_max) + 1)]
        return gens

    def monomial_basis(self, degree: int) -> list[Monomial]:
        """All monomials of the exact degree, graded-lex ordered."""
        if degree < 0:
            return []
        gens = sorted(self.generators_up_to(degree), key=lambda g: (g[1], g[0]))

        def build(remaining: int, pos: int) -> list[list[tuple[Gen, int]]]:
            if remaining == 0:
                return [[]]
            if pos >= len(gens):
                return []
            out = []
            idx = gens[pos]
            weight = idx[0]
            max_e = remaining // weight
            for e in range(max_e, -1, -1):
                for tail in build(remaining - e * weight, pos + 1):
                    out.append(([(idx, e)] if e else []) + tail)
            return out

        return [tuple(sorted(m)) for m in build(degree, 0)]


class F2Polynomial:
    """F2 linear combination of monomials: a frozenset with symmetric
    difference as addition."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: StiefelWhitneyRing, terms: frozenset[Monomial]):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, *args):
        raise AttributeError("F2Polynomial is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Top degree present; -1 for the zero polynomial."""
        return max((monomial_degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({monomial_degree(m) for m in self.terms}) <= 1

    def graded_part(self, degree: int) -> "F2Polynomial":
        return F2Polynomial(self.ring, frozenset(
            m for m in self.terms if monomial_degree(m) == degree))

    def __add__(self, other: "F2Polynomial") -> "F2Polynomial":
        if self.ring != other.ring:
            raise ValueError("polynomials live in different rings")
        return F2Polynomial(self.ring, self.terms ^ other.terms)

    def __mul__(self, other: "F2Polynomial") -> "F2Polynomial":
        if self.ring != other.ring:
            raise ValueError("polynomials live in different rings")
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                acc.symmetric_difference_update({_mono_mul(a, b)})
        return F2Polynomial(self.ring, frozenset(acc))

    def __pow__(self, e: int) -> "F2Polynomial":
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, F2Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        def mono_key(m):
            return (monomial_degree(m), sorted(m))
        bits = []
        for m in sorted(self.terms, key=mono_key):
            if m == UNIT:
                bits.append("1")
                continue
            factors = []
            for (i, fam), e in sorted(m, key=lambda ge: (ge[0][1], ge[0][0])):
                name = f"w{i}" + ("'" if fam else "")
                factors.append(name if e == 1 else f"{name}^{e}")
            bits.append("*".join(factors))
        return "+".join(bits)

    __repr__ = __str__


# --------------------------------------------------------------------------
# Steenrod squares
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _sq_generator(ring: StiefelWhitneyRing, k: int, gen: Gen) -> frozenset[Monomial]:
    """Wu's formula on a single Stiefel-Whitney generator."""
    index, fam = gen
    if k == 0:
        return frozenset({((gen, 1),)})
    if k > index:
        return frozenset()
    primed = fam == 1
    total = ring.zero()
    for t in range(0, k + 1):
        if binom2(k - index, t):
            total = total + ring.gen(k - t, primed) * ring.gen(index + t, primed)
    return total.terms


@lru_cache(maxsize=None)
def _sq_monomial(ring: StiefelWhitneyRing, k: int, mono: Monomial) -> frozenset[Monomial]:
    if k == 0:
        return frozenset({mono})
    if mono == UNIT:
        return frozenset()
    if k > monomial_degree(mono):
        return frozenset()
    # peel one generator off and apply the Cartan rule
    gen, e = mono[0]
    rest = _mono_mul(mono[1:], ((gen, e - 1),)) if e > 1 else mono[1:]
    acc: set[Monomial] = set()
    top = min(k, gen[0])
    for i in range(0, top + 1):
        left = _sq_generator(ring, i, gen)
        if not left:
            continue
        right = _sq_monomial(ring, k - i, rest)
        for a in left:
            for b in right:
                acc.symmetric_difference_update({_mono_mul(a, b)})
    return frozenset(acc)


def sq(k: int, p: F2Polynomial) -> F2Polynomial:
    """k-th Steenrod square, extended by Cartan's formula."""
    if k < 0:
        raise ValueError("Steenrod squares are indexed by nonnegative integers")
    acc: set[Monomial] = set()
    for mono in p.terms:
        acc.symmetric_difference_update(_sq_monomial(p.ring, k, mono))
    return F2Polynomial(p.ring, frozenset(acc))


def total_sq(p: F2Polynomial, max_degree: int) -> F2Polynomial:
    """Sum of Sq^k(p) for all k contributing up to max_degree."""
    out = p.ring.zero()
    for k in range(0, max_degree + 1):
        out = out + sq(k, p)
    return out


def wu_classes(ring: StiefelWhitneyRing, max_degree: int) -> list[F2Polynomial]:
    """Wu classes v_0..v_max solving Sq(v) = w degree by degree.

    The triangular system v_k = w_k + sum_{i>=1} Sq^i(v_{k-i}) determines
    each class uniquely; orientation forces v_1 = 0."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    nu = [ring.one()]
    for k in range(1, max_degree + 1):
        total = ring.w(k)
        for i in range(1, k):
            total = total + sq(i, nu[k - i])
        nu.append(total)
    return nu


# --------------------------------------------------------------------------
# Steenrod monomials: Adem reduction and the antipode
# --------------------------------------------------------------------------

SteenrodMonomial = tuple[int, ...]


def is_admissible(mono: SteenrodMonomial) -> bool:
    return all(mono[t] >= 2 * mono[t + 1] for t in range(len(mono) - 1))


def _normalize(mono: Iterable[int]) -> SteenrodMonomial:
    out = tuple(i for i in mono if i != 0)
    if any(i < 0 for i in out):
        raise ValueError("negative Steenrod index")
    return out


@lru_cache(maxsize=None)
def adem_reduce(mono: SteenrodMonomial) -> frozenset[SteenrodMonomial]:
    """Rewrite Sq^{i1}...Sq^{ik} as an F2 sum of admissible monomials
    using the Adem relations
    Sq^a Sq^b = sum_c binom(b-c-1, a-2c) Sq^{a+b-c} Sq^c  for a < 2b."""
    mono = _normalize(mono)
    for pos in range(len(mono) - 1):
        a, b = mono[pos], mono[pos + 1]
        if a >= 2 * b:
            continue
        head, tail = mono[:pos], mono[pos + 2:]
        acc: dict[SteenrodMonomial, int] = {}
        for c in range(0, a // 2 + 1):
            upper, t = b - c - 1, a - 2 * c
            if 0 <= t <= upper and comb(upper, t) % 2:
                replacement = (a + b - c,) + ((c,) if c else ())
                for reduced in adem_reduce(head + replacement + tail):
                    acc[reduced] = acc.get(reduced, 0) ^ 1
        return frozenset(m for m, parity in acc.items() if parity)
    return frozenset({mono})


@lru_cache(maxsize=None)
def chi_sq(k: int) -> frozenset[SteenrodMonomial]:
    """Antipode of Sq^k, as an admissible F2 sum, from the recursion
    chi(Sq^n) = sum_{i=1..n} Sq^i chi(Sq^{n-i})."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return frozenset({()})
    acc: dict[SteenrodMonomial, int] = {}
    for i in range(1, k + 1):
        for tail in chi_sq(k - i):
            for reduced in adem_reduce((i,) + tail):
                acc[reduced] = acc.get(reduced, 0) ^ 1
    return frozenset(m for m, parity in acc.items() if parity)


def apply_monomial(mono: SteenrodMonomial, p: F2Polynomial) -> F2Polynomial:
    """Evaluate Sq^{i1}...Sq^{ik} on a polynomial, rightmost factor first."""
    out = p
    for i in reversed(_normalize(mono)):
        out = sq(i, out)
    return out


def apply_operation(ops: Iterable[SteenrodMonomial], p: F2Polynomial) -> F2Polynomial:
    """Evaluate an F2 sum of Steenrod monomials."""
    out = p.ring.zero()
    for mono in ops:
        out = out + apply_monomial(mono, p)
    return out


# --------------------------------------------------------------------------
# graded ideals over F2
# --------------------------------------------------------------------------

@dataclass
class _Slice:
    monomials: list[Monomial]
    index: dict[Monomial, int]
    rows: list[int]            # reduced rows, poly bits | certificate bits
    pivots: dict[int, int]     # pivot bit position -> row number
    products: list[tuple[Monomial, int]]  # (multiplier, generator number)
    width: int                 # number of monomial columns


class GradedIdeal:
    """Ideal of a Stiefel-Whitney ring given by homogeneous generators,
    with a per-degree row-reduced basis cache.

    Rows are packed into Python ints: the low `width` bits are monomial
    coordinates, the high bits track which products were combined, so
    membership tests come with certificates for free.  Cache population
    is the only mutation and is lock-guarded; queries afterwards are
    read-only.
    """

    def __init__(self, ring: StiefelWhitneyRing, generators: Iterable[F2Polynomial],
                 degree_cap: int = 24):
        self.ring = ring
        self.generators = [g for g in generators if not g.is_zero()]
        for g in self.generators:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if not g.is_homogeneous():
                raise ValueError("ideal generators must be homogeneous")
        self.degree_cap = degree_cap
        self._slices: dict[int, _Slice] = {}
        self._lock = threading.Lock()

    def slice(self, degree: int) -> _Slice:
        if degree > self.degree_cap:
            raise DegreeCapExceeded(
                f"degree {degree} exceeds cap {self.degree_cap}")
        cached = self._slices.get(degree)
        if cached is not None:
            return cached
        with self._lock:
            return self._build_slice(degree)

    def _build_slice(self, degree: int) -> _Slice:
        cached = self._slices.get(degree)
        if cached is not None:
            return cached
        monomials = self.ring.monomial_basis(degree)
        index = {m: i for i, m in enumerate(monomials)}
        width = len(monomials)
        products: list[tuple[Monomial, int]] = []
        raw_rows: list[int] = []
        for gnum, g in enumerate(self.generators):
            gdeg = g.degree()
            if gdeg > degree:
                continue
            for mult in self.ring.monomial_basis(degree - gdeg):
                bits = 0
                for mono in g.terms:
                    bits ^= 1 << index[_mono_mul(mult, mono)]
                products.append((mult, gnum))
                raw_rows.append(bits | (1 << (width + len(products) - 1)))
        rows: list[int] = []
        pivots: dict[int, int] = {}
        mask = (1 << width) - 1
        for row in raw_rows:
            row = self._reduce_row(row, rows, pivots, mask)
            if row & mask:
                pivot = (row & mask).bit_length() - 1
                pivots[pivot] = len(rows)
                rows.append(row)
        sl = _Slice(monomials, index, rows, pivots, products, width)
        self._slices[degree] = sl
        return sl

    @staticmethod
    def _reduce_row(row: int, rows: list[int], pivots: dict[int, int], mask: int) -> int:
        # Eliminate every pivot column present, not just the leading one,
        # so the monomial part ends up a canonical coset representative.
        # Stored rows have their pivot as leading monomial bit, so each
        # XOR strictly decreases the monomial part.
        while True:
            bits = row & mask
            hit = None
            while bits:
                b = bits.bit_length() - 1
                hit = pivots.get(b)
                if hit is not None:
                    break
                bits &= (1 << b) - 1
            if hit is None:
                return row
            row ^= rows[hit]

    def rank(self, degree: int) -> int:
        return len(self.slice(degree).rows)

    def coordinates(self, p: F2Polynomial, degree: int) -> int:
        sl = self.slice(degree)
        bits = 0
        for mono in p.terms:
            if monomial_degree(mono) != degree:
                raise ValueError("polynomial not homogeneous of the slice degree")
            bits ^= 1 << sl.index[mono]
        return bits

    def reduce(self, p: F2Polynomial) -> F2Polynomial:
        """Canonical representative of p modulo the ideal slice."""
        if p.is_zero():
            return p
        if not p.is_homogeneous():
            raise ValueError("reduce expects a homogeneous polynomial")
        degree = p.degree()
        sl = self.slice(degree)
        mask = (1 << sl.width) - 1
        row = self._reduce_row(self.coordinates(p, degree), sl.rows, sl.pivots, mask) & mask
        monos = [sl.monomials[i] for i in range(sl.width) if row & (1 << i)]
        return self.ring.from_monomials(monos)


@dataclass(frozen=True)
class MembershipCertificate:
    member: bool
    # list of (multiplier monomial, generator index) pairs whose products sum to p
    combination: tuple[tuple[Monomial, int], ...] = ()


def ideal_membership(p: F2Polynomial, ideal: GradedIdeal) -> MembershipCertificate:
    """Decide membership of a homogeneous polynomial in the degree slice
    of the ideal; on success the certificate recombines to p exactly."""
    if p.is_zero():
        return MembershipCertificate(True, ())
    if not p.is_homogeneous():
        raise ValueError("membership test expects a homogeneous polynomial")
    degree = p.degree()
    sl = ideal.slice(degree)
    mask = (1 << sl.width) - 1
    row = GradedIdeal._reduce_row(
        ideal.coordinates(p, degree), sl.rows, sl.pivots, mask)
    if row & mask:
        return MembershipCertificate(False)
    combo = tuple(sl.products[i]
                  for i in range((row >> sl.width).bit_length())
                  if row & (1 << (sl.width + i)))
    # replay the certificate against the original polynomial
    check = ideal.ring.zero()
    for mult, gnum in combo:
        check = check + ideal.ring.from_monomials([mult]) * ideal.generators[gnum]
    if check != p:
        raise AssertionError("certificate replay failed; row bookkeeping bug")
    return MembershipCertificate(True, combo)


# --------------------------------------------------------------------------
# quotient models of classifying-space cohomology
# --------------------------------------------------------------------------

def quotient_poincare_series(ideal: GradedIdeal, max_degree: int) -> list[int]:
    """Dimensions of (ambient ring / ideal) per degree, 0..max_degree."""
    out = []
    for d in range(0, max_degree + 1):
        out.append(len(ideal.ring.monomial_basis(d)) - ideal.rank(d))
    return out


def free_subalgebra_series(allowed_degrees: Iterable[int], max_degree: int) -> list[int]:
    """Poincare series of a free commutative F2 algebra with one
    generator per listed degree (repeats mean several generators):
    product of 1/(1-t^d)."""
    series = [0] * (max_degree + 1)
    series[0] = 1
    for d in sorted(allowed_degrees):
        if d < 1:
            raise ValueError("generator degrees must be positive")
        if d > max_degree:
            continue
        for k in range(d, max_degree + 1):
            series[k] += series[k - d]
    return series


def _excluded_degrees(kind: str, max_degree: int) -> set[int]:
    powers = []
    p = 4
    while p + 1 <= max_degree:
        powers.append(p + 1)
        p *= 2
    if kind == "spinh":
        return set(powers)                      # 5, 9, 17, ...
    if kind == "spinc":
        return {3} | set(powers)                # 3, 5, 9, 17, ...
    if kind == "spin":
        return {2, 3} | set(powers)             # plus the degree-2 generator
    raise ValueError("kind must be spinh, spin or spinc")


@dataclass(frozen=True)
class QuotientModel:
    """A quotient of Z2[w2, w3, ...] by Sq1-of-Wu-class relations, paired
    with the free subalgebra predicted to survive."""

    kind: str
    max_degree: int
    ideal: GradedIdeal = field(compare=False)
    allowed_degrees: tuple[int, ...] = ()

    def poincare_series(self) -> list[int]:
        return quotient_poincare_series(self.ideal, self.max_degree)

    def free_series(self) -> list[int]:
        return free_subalgebra_series(self.allowed_degrees, self.max_degree)


def bso_quotient_model(kind: str, max_degree: int) -> QuotientModel:
    """Quotient presentation of the classifying-space cohomology:

    spinh: kill Sq1 v_{2^{r+1}} for r >= 1;
    spinc: also kill Sq1 v_2;
    spin:  also kill v_2 itself.

    Relation generators whose degree exceeds max_degree + 1 cannot meet
    the window and are omitted."""
    ring = StiefelWhitneyRing()
    top = max_degree + 1  # slices up to here are used by Sq1-homology
    nu = wu_classes(ring, top)
    gens: list[F2Polynomial] = []
    if kind == "spin":
        gens.append(nu[2])
    if kind in ("spin", "spinc"):
        if 3 <= top:
            gens.append(sq(1, nu[2]))
    power = 4
    while power + 1 <= top:
        gens.append(sq(1, nu[power]))
        power *= 2
    ideal = GradedIdeal(ring, gens, degree_cap=top)
    allowed = tuple(d for d in range(2, max_degree + 1)
                    if d not in _excluded_degrees(kind, max_degree))
    return QuotientModel(kind, max_degree, ideal, allowed)


def sq1_homology_series(max_degree: int, model: QuotientModel | None = None) -> list[int]:
    """Per-degree dimension of ker Sq1 / im Sq1 on the quotient model
    (default: the spinh quotient), computed by honest linear algebra."""
    if model is None:
        model = bso_quotient_model("spinh", max_degree)
    ideal = model.ideal
    ring = ideal.ring

    # quotient bases: non-pivot monomials of each slice
    def basis(degree: int) -> list[Monomial]:
        sl = ideal.slice(degree)
        return [m for i, m in enumerate(sl.monomials) if i not in sl.pivots]

    def to_quotient_coords(p: F2Polynomial, degree: int, monos: list[Monomial]) -> int:
        reduced = ideal.reduce(p)
        pos = {m: i for i, m in enumerate(monos)}
        bits = 0
        for mono in reduced.terms:
            bits ^= 1 << pos[mono]
        return bits

    bases = {d: basis(d) for d in range(0, max_degree + 2)}
    ranks: dict[int, int] = {}
    for d in range(0, max_degree + 1):
        rows = []
        target = bases[d + 1]
        for mono in bases[d]:
            image = sq(1, ring.from_monomials([mono]))
            rows.append(to_quotient_coords(image, d + 1, target))
        # rank of the Sq1 matrix out of degree d
        pivots: dict[int, int] = {}
        kept: list[int] = []
        for row in rows:
            while row:
                pivot = row.bit_length() - 1
                hit = pivots.get(pivot)
                if hit is None:
                    pivots[pivot] = len(kept)
                    kept.append(row)
                    break
                row ^= kept[hit]
        ranks[d] = len(kept)

    out = []
    for d in range(0, max_degree + 1):
        kernel = len(bases[d]) - ranks[d]
        image_in = ranks[d - 1] if d > 0 else 0
        out.append(kernel - image_in)
    return out


def sq1_homology_oracle(max_degree: int) -> list[int]:
    """Poincare series of Z2[w2^2, w_{2k}^2 (k not a 2-power), v_{2^{r+1}}]:
    generators in degree 4, degrees 4k for k >= 3 not a power of two, and
    degrees 2^{r+1} for r >= 1."""
    degrees = [4]
    k = 3
    while 4 * k <= max_degree:
        if k & (k - 1):  # not a power of two
            degrees.append(4 * k)
        k += 1
    power = 4
    while power <= max_degree:
        degrees.append(power)
        power *= 2
    return free_subalgebra_series(degrees, max_degree)


# --------------------------------------------------------------------------
# polynomial text grammar (CLI surface): w<i>, v<i>, +, *, ^
# --------------------------------------------------------------------------

def parse_polynomial(ring: StiefelWhitneyRing, text: str,
                     wu_cache: list[F2Polynomial] | None = None) -> F2Polynomial:
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    if text == "0":
        return ring.zero()
    total = ring.zero()
    for term in text.split("+"):
        if not term:
            raise ValueError("empty term in polynomial")
        factor_total = ring.one()
        for factor in term.split("*"):
            base, _, exp = factor.partition("^")
            e = int(exp) if exp else 1
            if e < 0:
                raise ValueError("negative exponent")
            if base == "1":
                poly = ring.one()
            elif base.startswith("w") and base[1:].isdigit():
                poly = ring.w(int(base[1:]))
            elif base.startswith("v") and base[1:].isdigit():
                k = int(base[1:])
                if wu_cache is None or len(wu_cache) <= k:
                    wu_cache = wu_classes(ring, k)
                poly = wu_cache[k]
            else:
                raise ValueError(f"cannot parse factor {factor!r}")
            factor_total = factor_total * poly ** e
        total = total + factor_total
    return total
