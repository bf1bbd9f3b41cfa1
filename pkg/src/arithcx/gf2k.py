"""Arithmetic in binary fields GF(2^k) on bit-packed polynomials.

An element of F2[t]/<m(t)> is stored as an int whose bit i is the
coefficient of t^i; the modulus m(t) uses the same encoding.  Addition
is XOR, multiplication is carry-less product followed by reduction, and
inversion is an exhaustive search over the nonzero elements (cached in
a table for small fields).  The two fields the rest of the package
relies on are module constants:

    GF2     m(t) = t + 1            mask 0b11
    GF16    m(t) = t^4 + t + 1      mask 0b10011

Any other irreducible modulus up to degree 16 is accepted, which lets
tests cross-check GF(16) against an independently constructed copy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "FieldSpec",
    "FieldElem",
    "GF2",
    "GF16",
    "add",
    "mul",
    "inv",
    "format_poly",
    "parse_poly",
]

_MAX_DEGREE = 16
_TABLE_DEGREE = 8  # full mul/inv tables are built up to this degree


def _poly_mul_bits(a: int, b: int) -> int:
    """Carry-less product of two polynomial bitmasks."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def _poly_mod_bits(a: int, m: int) -> int:
    """Remainder of a modulo m (polynomial division over GF(2))."""
    dm = m.bit_length()
    da = a.bit_length()
    while da >= dm:
        a ^= m << (da - dm)
        da = a.bit_length()
    return a


def _is_irreducible(m: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(m)/2."""
    deg = m.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if _poly_mod_bits(m, cand) == 0:
                return False
    return True


def format_poly(bits: int) -> str:
    """Render a coefficient bitmask as a polynomial string in t."""
    if bits < 0:
        raise ValueError("negative bitmask")
    if bits == 0:
        return "0"
    terms = []
    for k in range(bits.bit_length() - 1, -1, -1):
        if bits >> k & 1:
            terms.append("1" if k == 0 else "t" if k == 1 else f"t^{k}")
    return "+".join(terms)


def parse_poly(text: str) -> int:
    """Parse a polynomial string such as 't^3+t+1' into a bitmask.

    'x' is accepted as a synonym for 't'.  Repeated monomials add, so
    't+t' parses to 0.
    """
    s = text.replace(" ", "").lower().replace("x", "t")
    if s in ("", "0"):
        return 0
    bits = 0
    for term in s.split("+"):
        if term == "1":
            k = 0
        elif term == "t":
            k = 1
        elif term.startswith("t^") and term[2:].isdigit():
            k = int(term[2:])
        else:
            raise ValueError(f"bad polynomial term {term!r} in {text!r}")
        bits ^= 1 << k
    return bits


class FieldSpec:
    """A binary field GF(2^k) = F2[t]/<m(t)>.

    Parameters
    ----------
    modulus : int
        Bitmask of an irreducible polynomial m(t).  For GF(16) with
        m(t) = t^4 + t + 1 this is 0b10011.

    Raises
    ------
    ValueError
        If the modulus is reducible or its degree is outside 1..16.
    """

    __slots__ = ("modulus", "degree", "size", "_mul_table", "_inv_table")

    def __init__(self, modulus: int) -> None:
        degree = modulus.bit_length() - 1
        if degree < 1 or degree > _MAX_DEGREE:
            raise ValueError(
                f"modulus degree must be in 1..{_MAX_DEGREE}, got {degree}"
            )
        if not _is_irreducible(modulus):
            raise ValueError(
                f"modulus {format_poly(modulus)} is reducible over GF(2)"
            )
        self.modulus = modulus
        self.degree = degree
        self.size = 1 << degree
        self._mul_table: list[list[int]] | None = None
        self._inv_table: list[int] | None = None

    # fields with the same modulus are the same field
    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(2^{self.degree}; m={format_poly(self.modulus)})"

    # ------------------------------------------------------------------
    # raw int arithmetic

    def _build_tables(self) -> None:
        size = self.size
        tbl = [[0] * size for _ in range(size)]
        for x in range(size):
            row = tbl[x]
            for y in range(x, size):
                v = _poly_mod_bits(_poly_mul_bits(x, y), self.modulus)
                row[y] = v
                tbl[y][x] = v
        # inverse by exhaustive search over the nonzero elements
        inv_tbl = [0] * size
        for x in range(1, size):
            row = tbl[x]
            for y in range(1, size):
                if row[y] == 1:
                    inv_tbl[x] = y
                    break
        self._mul_table = tbl
        self._inv_table = inv_tbl

    def add(self, a: int, b: int) -> int:
        """Sum of two elements given as bitmasks."""
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        """Product of two elements given as bitmasks."""
        if self.degree <= _TABLE_DEGREE:
            if self._mul_table is None:
                self._build_tables()
            return self._mul_table[a][b]
        return _poly_mod_bits(_poly_mul_bits(a, b), self.modulus)

    def inv(self, a: int) -> int:
        """Multiplicative inverse of a nonzero element bitmask."""
        if a == 0:
            raise ValueError("zero has no multiplicative inverse")
        if self.degree <= _TABLE_DEGREE:
            if self._inv_table is None:
                self._build_tables()
            return self._inv_table[a]
        for b in range(1, self.size):
            if self.mul(a, b) == 1:
                return b
        raise AssertionError("unreachable for an irreducible modulus")

    # ------------------------------------------------------------------
    # typed element API

    def elem(self, bits: int) -> "FieldElem":
        """Wrap a bitmask as a checked element of this field."""
        if not 0 <= bits < self.size:
            raise ValueError(f"bitmask {bits} out of range for {self!r}")
        return FieldElem(bits, self)

    def parse(self, text: str) -> "FieldElem":
        return self.elem(parse_poly(text))

    def elements(self) -> Iterator["FieldElem"]:
        for bits in range(self.size):
            yield FieldElem(bits, self)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(0, self)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(1, self)


@dataclass(frozen=True, slots=True)
class FieldElem:
    """A field element: coefficient bitmask plus its field."""

    bits: int
    spec: FieldSpec

    def __add__(self, other: "FieldElem") -> "FieldElem":
        _check_specs(self, other)
        return FieldElem(self.bits ^ other.bits, self.spec)

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        _check_specs(self, other)
        return FieldElem(self.spec.mul(self.bits, other.bits), self.spec)

    def inv(self) -> "FieldElem":
        return FieldElem(self.spec.inv(self.bits), self.spec)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return format_poly(self.bits)

    def __repr__(self) -> str:
        return f"FieldElem({format_poly(self.bits)!r}, {self.spec!r})"


def _check_specs(a: FieldElem, b: FieldElem) -> None:
    if a.spec != b.spec:
        raise ValueError(f"mismatched field specs: {a.spec!r} vs {b.spec!r}")


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    """a + b; raises ValueError on mismatched field specs."""
    return a + b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    """a * b; raises ValueError on mismatched field specs."""
    return a * b


def inv(a: FieldElem) -> FieldElem:
    """Multiplicative inverse; raises ValueError on zero."""
    return a.inv()


GF2 = FieldSpec(0b11)
GF16 = FieldSpec(0b10011)
