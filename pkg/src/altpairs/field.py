"""Exact arithmetic in GF(2^k) for small k.

Elements are represented by their coefficient bitmask: bit i of ``bits`` is
the coefficient of t^i in the residue class modulo the defining polynomial.
GF(2) (k = 1) is plain XOR/AND and never touches the modulus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

MAX_K = 16

# largest k for which a full 2^k x 2^k multiplication table is built lazily
_TABLE_MAX_K = 8


class FieldError(ValueError):
    """Invalid field construction or mixed-field operation."""


def _gf2_poly_degree(p: int) -> int:
    return p.bit_length() - 1


def _gf2_poly_mulmod(a: int, b: int, modulus: int) -> int:
    """Carry-less product of bitmask polynomials, reduced mod ``modulus``."""
    deg = _gf2_poly_degree(modulus)
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= modulus
    return r


def _gf2_poly_mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return r


def _gf2_poly_mod(a: int, m: int) -> int:
    dm = _gf2_poly_degree(m)
    da = _gf2_poly_degree(a)
    while da >= dm:
        a ^= m << (da - dm)
        da = _gf2_poly_degree(a)
    return a


def _gf2_poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_poly_mod(a, b)
    return a


def _gf2_poly_powmod(a: int, n: int, m: int) -> int:
    r = 1
    a = _gf2_poly_mod(a, m)
    while n:
        if n & 1:
            r = _gf2_poly_mod(_gf2_poly_mul(r, a), m)
        a = _gf2_poly_mod(_gf2_poly_mul(a, a), m)
        n >>= 1
    return r


def is_irreducible_gf2(p: int) -> bool:
    """Irreducibility of a bitmask polynomial over GF(2)."""
    d = _gf2_poly_degree(p)
    if d < 1:
        return False
    if d == 1:
        return True
    # x^(2^d) == x mod p, and x^(2^(d/q)) - x coprime to p for prime q | d
    x = 0b10
    if _gf2_poly_powmod(x, 1 << d, p) != _gf2_poly_mod(x, p):
        return False
    q = 2
    dd = d
    while q * q <= dd:
        if dd % q == 0:
            t = _gf2_poly_powmod(x, 1 << (d // q), p) ^ _gf2_poly_mod(x, p)
            if _gf2_poly_gcd(p, t) != 1:
                return False
            while dd % q == 0:
                dd //= q
        q += 1
    if dd > 1:
        t = _gf2_poly_powmod(x, 1 << (d // dd), p) ^ _gf2_poly_mod(x, p)
        if _gf2_poly_gcd(p, t) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(k: int) -> int:
    """Smallest irreducible degree-k bitmask polynomial over GF(2)."""
    if not 1 <= k <= MAX_K:
        raise FieldError(f"extension degree must be in 1..{MAX_K}, got {k}")
    for cand in range(1 << k, 1 << (k + 1)):
        if is_irreducible_gf2(cand):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^k) together with its defining modulus bitmask."""

    k: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise FieldError(f"extension degree must be in 1..{MAX_K}, got {self.k}")
        if _gf2_poly_degree(self.modulus) != self.k:
            raise FieldError(f"modulus 0x{self.modulus:x} does not have degree {self.k}")
        if not is_irreducible_gf2(self.modulus):
            raise FieldError(f"modulus 0x{self.modulus:x} is reducible over GF(2)")

    # -- construction ------------------------------------------------------

    @staticmethod
    def gf2() -> "FieldSpec":
        return FieldSpec(1, default_modulus(1))

    @staticmethod
    def gf(k: int, modulus: int | None = None) -> "FieldSpec":
        return FieldSpec(k, default_modulus(k) if modulus is None else modulus)

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        """Parse ``gf2`` or ``gf2^k:0xMM``."""
        s = text.strip().lower()
        if s == "gf2":
            return FieldSpec.gf2()
        if s.startswith("gf2^"):
            body = s[4:]
            if ":" in body:
                kpart, mpart = body.split(":", 1)
                try:
                    k = int(kpart)
                    modulus = int(mpart, 16)
                except ValueError as exc:
                    raise FieldError(f"bad field spec {text!r}") from exc
                return FieldSpec(k, modulus)
            try:
                k = int(body)
            except ValueError as exc:
                raise FieldError(f"bad field spec {text!r}") from exc
            return FieldSpec.gf(k)
        raise FieldError(f"bad field spec {text!r}")

    def __str__(self) -> str:
        if self.k == 1:
            return "gf2"
        return f"gf2^{self.k}:0x{self.modulus:x}"

    # -- arithmetic on raw bitmask values ----------------------------------

    @property
    def order(self) -> int:
        return 1 << self.k

    def check(self, bits: int) -> int:
        if not 0 <= bits < (1 << self.k):
            raise FieldError(f"value 0x{bits:x} out of range for {self}")
        return bits

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul_table(self):
        """Full multiplication table for small k; None when k is too large."""
        table = self.__dict__.get("_table_cache", _MISSING)
        if table is _MISSING:
            table = _build_mul_table(self.k, self.modulus) if self.k <= _TABLE_MAX_K else None
            object.__setattr__(self, "_table_cache", table)
        return table

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a & b
        table = self.mul_table()
        if table is not None:
            return table[a][b]
        return _gf2_poly_mulmod(a, b, self.modulus)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a = self.inv(a)
            n = -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in " + str(self))
        if a == 1:
            return 1
        if self.k <= _TABLE_MAX_K:
            table = self.__dict__.get("_inv_table_cache")
            if table is None:
                table = [0, 1] + [self.pow(v, self.order - 2) for v in range(2, self.order)]
                object.__setattr__(self, "_inv_table_cache", table)
            return table[a]
        return self.pow(a, self.order - 2)

    def sqrt(self, a: int) -> int:
        """Unique square root: the Frobenius inverse a^(2^(k-1))."""
        return self.pow(a, 1 << (self.k - 1))

    def enumerate_bits(self) -> Iterator[int]:
        return iter(range(self.order))

    # -- element helpers ----------------------------------------------------

    def element(self, bits: int) -> "FieldElement":
        return FieldElement(self.check(bits), self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)


_MISSING = object()


@lru_cache(maxsize=None)
def _build_mul_table(k: int, modulus: int):
    n = 1 << k
    return [[_gf2_poly_mulmod(a, b, modulus) for b in range(n)] for a in range(n)]


@dataclass(frozen=True)
class FieldElement:
    """A residue class in GF(2^k), tied to its FieldSpec."""

    bits: int
    spec: FieldSpec

    def _coerce(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldError(f"mixed fields: {self.spec} vs {other.spec}")
        return other.bits

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.bits ^ self._coerce(other), self.spec)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.spec.mul(self.bits, self._coerce(other)), self.spec)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        b = self._coerce(other)
        return FieldElement(self.spec.mul(self.bits, self.spec.inv(b)), self.spec)

    def __pow__(self, n: int) -> "FieldElement":
        return FieldElement(self.spec.pow(self.bits, n), self.spec)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec.inv(self.bits), self.spec)

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.spec.sqrt(self.bits), self.spec)

    def is_zero(self) -> bool:
        return self.bits == 0

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return f"{self.bits:x}"


# -- spec-level operation names ---------------------------------------------


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def field_enumerate(spec: FieldSpec) -> list[FieldElement]:
    """All 2^k elements, ordered by increasing bitmask (0, 1, t, t+1, ...)."""
    return [FieldElement(b, spec) for b in spec.enumerate_bits()]


# -- subfield embeddings -----------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Ring embedding GF(2^k) -> GF(2^(k*j)) determined by a root of the
    source modulus in the target field."""

    src: FieldSpec
    dst: FieldSpec
    root_powers: tuple[int, ...] = field(compare=False)
    _inverse: dict = field(compare=False, repr=False)

    def map(self, bits: int) -> int:
        acc = 0
        i = 0
        while bits:
            if bits & 1:
                acc ^= self.root_powers[i]
            bits >>= 1
            i += 1
        return acc

    def unmap(self, bits: int) -> int:
        try:
            return self._inverse[bits]
        except KeyError:
            raise FieldError(
                f"0x{bits:x} is not in the image of {self.src} inside {self.dst}"
            ) from None


@lru_cache(maxsize=None)
def embed(src: FieldSpec, dst: FieldSpec) -> Embedding:
    """Find an embedding of src into dst (requires src.k | dst.k)."""
    if dst.k % src.k != 0:
        raise FieldError(f"{src} does not embed into {dst}")
    if src == dst or src.k == 1:
        powers = tuple(1 << i for i in range(src.k))
    else:
        root = None
        for x in dst.enumerate_bits():
            # evaluate the source modulus (a GF(2) polynomial) at x in dst
            acc = 0
            xp = 1
            m = src.modulus
            while m:
                if m & 1:
                    acc ^= xp
                xp = dst.mul(xp, x)
                m >>= 1
            if acc == 0 and x != 0:
                root = x
                break
        if root is None:
            raise AssertionError("no root of subfield modulus found")  # unreachable
        acc_powers = [1]
        for _ in range(src.k - 1):
            acc_powers.append(dst.mul(acc_powers[-1], root))
        powers = tuple(acc_powers)

    def map_bits(bits: int) -> int:
        acc = 0
        i = 0
        while bits:
            if bits & 1:
                acc ^= powers[i]
            bits >>= 1
            i += 1
        return acc

    inverse = {map_bits(b): b for b in src.enumerate_bits()}
    return Embedding(src, dst, powers, inverse)
