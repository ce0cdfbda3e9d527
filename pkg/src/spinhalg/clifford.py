"""Exact Clifford algebra arithmetic over the rationals.

Elements of Cl(r,s) are sparse rational combinations of basis blades
e_{i1}...e_{ik}.  The first r generators square to -1, the last s square
to +1, and distinct generators anticommute.  A blade is encoded as a
bitmask over the generator set, so a blade product reduces to a
transposition count plus a sign for each repeated generator.

The classification half of the module turns an algebra label (definite
or indefinite signature, optionally tensored with the quaternions or
complexified) into the matrix-algebra normal form K(N) or K(N)+K(N)
with K one of R, C, H.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]


class SignatureMismatch(ValueError):
    """Raised when combining elements that live in different algebras."""


# --------------------------------------------------------------------------
# signatures and blades
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Signature (r, s): r generators squaring to -1, then s squaring to +1."""

    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError("signature components must be nonnegative")

    @property
    def n(self) -> int:
        return self.r + self.s

    def generator_square(self, i: int) -> int:
        """Square of e_i, generators numbered 1..n."""
        if not 1 <= i <= self.n:
            raise ValueError(f"generator index {i} out of range for {self}")
        return -1 if i <= self.r else 1

    def __str__(self):
        return f"Cl({self.r},{self.s})"


def blade_from_indices(indices: Iterable[int]) -> int:
    """Bitmask blade for strictly ascending 1-based generator indices."""
    mask = 0
    prev = 0
    for i in indices:
        if i <= prev:
            raise ValueError("blade indices must be strictly ascending")
        mask |= 1 << (i - 1)
        prev = i
    return mask


def blade_indices(blade: int) -> tuple[int, ...]:
    out = []
    i = 1
    while blade:
        if blade & 1:
            out.append(i)
        blade >>= 1
        i += 1
    return tuple(out)


def blade_degree(blade: int) -> int:
    return bin(blade).count("1")


def _merge_sign(a: int, b: int) -> int:
    # Number of pairs (i in a, j in b) with j < i = transpositions needed
    # to sort the concatenation of the two ascending index lists.
    swaps = 0
    a >>= 1
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(sig: Signature, a: int, b: int) -> tuple[int, int]:
    """Product of two basis blades: returns (sign, result blade)."""
    sign = _merge_sign(a, b)
    common = a & b
    # repeated generators collapse, each contributing its square
    neg_mask = (1 << sig.r) - 1
    if blade_degree(common & neg_mask) & 1:
        sign = -sign
    return sign, a ^ b


# --------------------------------------------------------------------------
# elements
# --------------------------------------------------------------------------

class CliffordElement:
    """Rational linear combination of blades in a fixed Cl(r,s).

    Immutable; all arithmetic returns fresh elements and never stores a
    zero coefficient.
    """

    __slots__ = ("signature", "terms")

    def __init__(self, signature: Signature, terms: Mapping[int, Rational] = ()):
        clean: dict[int, Fraction] = {}
        top = 1 << signature.n
        for blade, coeff in dict(terms).items():
            if not 0 <= blade < top:
                raise ValueError(f"blade {blade:#b} invalid for {signature}")
            c = Fraction(coeff)
            if c:
                clean[blade] = c
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("CliffordElement is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, sig: Signature) -> "CliffordElement":
        return cls(sig)

    @classmethod
    def scalar(cls, sig: Signature, value: Rational) -> "CliffordElement":
        return cls(sig, {0: value})

    @classmethod
    def generator(cls, sig: Signature, i: int) -> "CliffordElement":
        sig.generator_square(i)  # range check
        return cls(sig, {1 << (i - 1): 1})

    @classmethod
    def blade(cls, sig: Signature, indices: Iterable[int], coeff: Rational = 1) -> "CliffordElement":
        return cls(sig, {blade_from_indices(indices): coeff})

    # -- helpers -------------------------------------------------------------

    def _check(self, other: "CliffordElement"):
        if self.signature != other.signature:
            raise SignatureMismatch(
                f"cannot combine {self.signature} and {other.signature}")

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, blade: int) -> Fraction:
        return self.terms.get(blade, Fraction(0))

    def scalar_part(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def grade_part(self, k: int) -> "CliffordElement":
        return CliffordElement(
            self.signature,
            {b: c for b, c in self.terms.items() if blade_degree(b) == k})

    def even_part(self) -> "CliffordElement":
        return CliffordElement(
            self.signature,
            {b: c for b, c in self.terms.items() if blade_degree(b) % 2 == 0})

    def odd_part(self) -> "CliffordElement":
        return CliffordElement(
            self.signature,
            {b: c for b, c in self.terms.items() if blade_degree(b) % 2 == 1})

    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements, None for mixed (0 for zero)."""
        seen = {blade_degree(b) & 1 for b in self.terms}
        if not seen:
            return 0
        if len(seen) == 1:
            return seen.pop()
        return None

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        self._check(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, Fraction(0)) + c
        return CliffordElement(self.signature, out)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.signature, {b: -c for b, c in self.terms.items()})

    def scale(self, factor: Rational) -> "CliffordElement":
        f = Fraction(factor)
        return CliffordElement(self.signature, {b: c * f for b, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        sig = self.signature
        out: dict[int, Fraction] = {}
        for b1, c1 in self.terms.items():
            for b2, c2 in other.terms.items():
                sign, blade = blade_product(sig, b1, b2)
                out[blade] = out.get(blade, Fraction(0)) + sign * c1 * c2
        return CliffordElement(sig, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def transpose(self) -> "CliffordElement":
        """Blade reversal e_{i1}..e_{ik} -> e_{ik}..e_{i1}.

        Reversal of a degree-k blade contributes (-1)^(k(k-1)/2).  The
        quaternion conjugation of the scalar-extended transpose is not
        modelled here; coefficients are plain rationals.
        """
        out = {}
        for b, c in self.terms.items():
            k = blade_degree(b)
            sign = -1 if (k * (k - 1) // 2) & 1 else 1
            out[b] = sign * c
        return CliffordElement(self.signature, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.signature == other.signature and self.terms == other.terms

    def __hash__(self):
        return hash((self.signature, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for blade in sorted(self.terms, key=lambda b: (blade_degree(b), b)):
            c = self.terms[blade]
            name = "1" if blade == 0 else "e" + "e".join(str(i) for i in blade_indices(blade))
            bits.append(f"{c}*{name}" if blade else f"{c}")
        return " + ".join(bits)


def volume_element(sig: Signature) -> CliffordElement:
    """The top blade e_1 e_2 ... e_n."""
    return CliffordElement(sig, {(1 << sig.n) - 1: 1})


def volume_square_sign(r: int, s: int) -> int:
    """Closed-form sign of the volume element squared in Cl(r,s)."""
    exponent = ((r + s) ** 2 + (r - s)) // 2
    return -1 if exponent & 1 else 1


# --------------------------------------------------------------------------
# matrix-algebra normal forms
# --------------------------------------------------------------------------

_FIELD_DIM = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Normal form K(N) (simple) or K(N)+K(N) (simple=False), K in {R,C,H}."""

    field: str
    size: int
    simple: bool = True

    def __post_init__(self):
        if self.field not in _FIELD_DIM:
            raise ValueError(f"unknown base field {self.field!r}")
        if self.size < 1:
            raise ValueError("matrix size must be positive")

    @property
    def real_dimension(self) -> int:
        d = self.size ** 2 * _FIELD_DIM[self.field]
        return d if self.simple else 2 * d

    @property
    def irreducible_real_dimension(self) -> int:
        """Real dimension of an irreducible (column) module K^N."""
        return self.size * _FIELD_DIM[self.field]

    def tensor_matrices(self, m: int) -> "AlgebraDescriptor":
        """Tensor with R(m) over the reals."""
        return AlgebraDescriptor(self.field, self.size * m, self.simple)

    def tensor_quaternions(self) -> "AlgebraDescriptor":
        """Tensor with H over the reals."""
        rules = {"R": ("H", 1), "C": ("C", 2), "H": ("R", 4)}
        field, factor = rules[self.field]
        return AlgebraDescriptor(field, self.size * factor, self.simple)

    def complexify(self) -> "AlgebraDescriptor":
        """Tensor with C over the reals."""
        if self.field == "R":
            return AlgebraDescriptor("C", self.size, self.simple)
        if self.field == "H":
            return AlgebraDescriptor("C", self.size * 2, self.simple)
        # C(N) (x)_R C = C(N) + C(N)
        if not self.simple:
            raise ValueError("complexification of a split complex algebra "
                             "is not a one- or two-factor normal form")
        return AlgebraDescriptor("C", self.size, simple=False)

    def to_json(self) -> dict:
        return {"field": self.field, "size": self.size, "simple": self.simple}

    def __str__(self):
        one = self.field if self.size == 1 else f"{self.field}({self.size})"
        return one if self.simple else f"{one}+{one}"


# Definite classification, period 8 with R(16) steps:
#   _CL_POS[n] = Cl(n,0),  _CL_NEG[n] = Cl(0,n)  for 0 <= n <= 7.
_CL_POS = (
    AlgebraDescriptor("R", 1),
    AlgebraDescriptor("C", 1),
    AlgebraDescriptor("H", 1),
    AlgebraDescriptor("H", 1, simple=False),
    AlgebraDescriptor("H", 2),
    AlgebraDescriptor("C", 4),
    AlgebraDescriptor("R", 8),
    AlgebraDescriptor("R", 8, simple=False),
)
_CL_NEG = (
    AlgebraDescriptor("R", 1),
    AlgebraDescriptor("R", 1, simple=False),
    AlgebraDescriptor("R", 2),
    AlgebraDescriptor("C", 2),
    AlgebraDescriptor("H", 2),
    AlgebraDescriptor("H", 2, simple=False),
    AlgebraDescriptor("H", 4),
    AlgebraDescriptor("C", 8),
)

VARIANTS = ("Cl", "CCl", "Clh", "CClh")


def _definite(n: int, table) -> AlgebraDescriptor:
    return table[n % 8].tensor_matrices(16 ** (n // 8))


def classify(n: int, variant: str = "Cl") -> AlgebraDescriptor:
    """Normal form of Cl_n and its quaternionic/complex companions.

    variant: "Cl" (real), "CCl" (complexified), "Clh" (tensored with H),
    "CClh" (both).  n >= 8 is reduced mod 8 and padded with R(16) factors.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    desc = _definite(n, _CL_POS)
    if variant in ("Clh", "CClh"):
        desc = desc.tensor_quaternions()
    if variant in ("CCl", "CClh"):
        desc = desc.complexify()
    return desc


def classify_indefinite(r: int, s: int, quaternionic: bool = False) -> AlgebraDescriptor:
    """Normal form of Cl(r,s), optionally tensored with H.

    Uses the (1,1)-shift Cl(r+1,s+1) = Cl(r,s) (x) R(2) to reduce to a
    definite signature.
    """
    if r < 0 or s < 0:
        raise ValueError("signature components must be nonnegative")
    m = min(r, s)
    r, s = r - m, s - m
    desc = _definite(r, _CL_POS) if s == 0 else _definite(s, _CL_NEG)
    desc = desc.tensor_matrices(2 ** m)
    if quaternionic:
        desc = desc.tensor_quaternions()
    return desc


# --------------------------------------------------------------------------
# graded tensor decomposition check
# --------------------------------------------------------------------------

PairElement = dict[tuple[int, int], Fraction]


def _pair_mul(sig1: Signature, sig2: Signature, x: PairElement, y: PairElement) -> PairElement:
    out: PairElement = {}
    for (a1, b1), c1 in x.items():
        right_deg = blade_degree(b1)
        for (a2, b2), c2 in y.items():
            sign = 1
            if (right_deg & 1) and (blade_degree(a2) & 1):
                sign = -1  # Koszul rule
            s1, a = blade_product(sig1, a1, a2)
            s2, b = blade_product(sig2, b1, b2)
            key = (a, b)
            out[key] = out.get(key, Fraction(0)) + sign * s1 * s2 * c1 * c2
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class GradedTensorReport:
    m: int
    n: int
    dimension: int
    relations_ok: bool
    basis_bijective: bool

    @property
    def passed(self) -> bool:
        return self.relations_ok and self.basis_bijective


def graded_tensor_check(m: int, n: int, max_total: int = 12) -> GradedTensorReport:
    """Verify Cl_{m+n} = Cl_m (graded tensor) Cl_n on generators and blades.

    Sends e_i to e'_i(x)1 for i <= m and to 1(x)e''_{i-m} otherwise, checks
    the Clifford relations under the Koszul product, then maps every basis
    blade through and checks the images are (up to sign) the 2^(m+n)
    distinct basis pairs.
    """
    if m < 0 or n < 0:
        raise ValueError("m, n must be nonnegative")
    if m + n > max_total:
        raise ValueError(f"m+n={m + n} exceeds blade enumeration cap {max_total}")
    sig1, sig2 = Signature(m, 0), Signature(n, 0)
    total = m + n

    def image(i: int) -> PairElement:
        if i <= m:
            return {(1 << (i - 1), 0): Fraction(1)}
        return {(0, 1 << (i - m - 1)): Fraction(1)}

    unit_key = (0, 0)
    relations_ok = True
    for i in range(1, total + 1):
        sq = _pair_mul(sig1, sig2, image(i), image(i))
        if sq != {unit_key: Fraction(-1)}:
            relations_ok = False
    for i in range(1, total + 1):
        for j in range(i + 1, total + 1):
            anti = _pair_mul(sig1, sig2, image(i), image(j))
            for k, v in _pair_mul(sig1, sig2, image(j), image(i)).items():
                anti[k] = anti.get(k, Fraction(0)) + v
            if any(anti.values()):
                relations_ok = False

    seen: set[tuple[int, int]] = set()
    bijective = True
    for blade in range(1 << total):
        acc: PairElement = {unit_key: Fraction(1)}
        for i in range(1, total + 1):
            if blade & (1 << (i - 1)):
                acc = _pair_mul(sig1, sig2, acc, image(i))
        if len(acc) != 1:
            bijective = False
            break
        (key, coeff), = acc.items()
        if coeff not in (1, -1) or key in seen:
            bijective = False
            break
        seen.add(key)
    if bijective and len(seen) != 1 << total:
        bijective = False

    return GradedTensorReport(m, n, 1 << total, relations_ok, bijective)
