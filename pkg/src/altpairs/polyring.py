"""Univariate polynomials over GF(2^k), homogeneous binary forms, and the
GL(2) substitution action on projective points.

Polynomials are coefficient tuples (index i = coefficient of t^i, raw field
bitmasks, no trailing zeros).  Over GF(2) the arithmetic kernels convert to
int bitmasks, which keeps Smith-form elimination and factoring fast.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .field import FieldError, FieldSpec


class PolyError(ValueError):
    """Precondition violation in polynomial arithmetic."""


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class Poly:
    """Element of GF(2^k)[t]."""

    coeffs: tuple[int, ...]
    spec: FieldSpec

    # -- constructors --------------------------------------------------------

    @staticmethod
    def make(spec: FieldSpec, coeffs: Sequence[int]) -> "Poly":
        return Poly(_trim(coeffs), spec)

    @staticmethod
    def zero(spec: FieldSpec) -> "Poly":
        return Poly((), spec)

    @staticmethod
    def one(spec: FieldSpec) -> "Poly":
        return Poly((1,), spec)

    @staticmethod
    def t(spec: FieldSpec) -> "Poly":
        return Poly((0, 1), spec)

    @staticmethod
    def constant(spec: FieldSpec, bits: int) -> "Poly":
        return Poly((bits,) if bits else (), spec)

    @staticmethod
    def monomial(spec: FieldSpec, deg: int, bits: int = 1) -> "Poly":
        if bits == 0:
            return Poly((), spec)
        return Poly((0,) * deg + (bits,), spec)

    @staticmethod
    def from_bitmask(spec: FieldSpec, mask: int) -> "Poly":
        """GF(2)-coefficient polynomial from an int bitmask."""
        coeffs = []
        while mask:
            coeffs.append(mask & 1)
            mask >>= 1
        return Poly(tuple(coeffs), spec)

    # -- basic structure -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise PolyError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def bitmask(self) -> int:
        """Coefficients as an int bitmask (GF(2) coefficients only)."""
        mask = 0
        for i, c in enumerate(self.coeffs):
            if c:
                if c != 1:
                    raise PolyError("bitmask form requires GF(2) coefficients")
                mask |= 1 << i
        return mask

    def _check(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldError(f"mixed fields: {self.spec} vs {other.spec}")
        return other

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] ^= c
        return Poly(_trim(out), self.spec)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "Poly") -> "Poly":
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly((), self.spec)
        spec = self.spec
        if spec.k == 1:
            return Poly.from_bitmask(spec, _clmul(self.bitmask(), other.bitmask()))
        mul = spec.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] ^= mul(ai, bj)
        return Poly(_trim(out), spec)

    def scale(self, bits: int) -> "Poly":
        if bits == 0:
            return Poly((), self.spec)
        if bits == 1:
            return self
        mul = self.spec.mul
        return Poly(tuple(mul(bits, c) for c in self.coeffs), self.spec)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        spec = self.spec
        if spec.k == 1:
            q, r = _gf2_divmod(self.bitmask(), other.bitmask())
            return Poly.from_bitmask(spec, q), Poly.from_bitmask(spec, r)
        rem = list(self.coeffs)
        db = other.degree
        lead_inv = spec.inv(other.leading)
        mul = spec.mul
        quot = [0] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                factor = mul(c, lead_inv)
                quot[i - db] = factor
                for j, bc in enumerate(other.coeffs):
                    rem[i - db + j] ^= mul(factor, bc)
        return Poly(_trim(quot), spec), Poly(_trim(rem), spec)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero() or self.coeffs[-1] == 1:
            return self
        return self.scale(self.spec.inv(self.coeffs[-1]))

    def evaluate(self, x: int) -> int:
        spec = self.spec
        acc = 0
        for c in reversed(self.coeffs):
            acc = spec.mul(acc, x) ^ c
        return acc

    def shift(self, n: int) -> "Poly":
        """Multiply by t^n."""
        if self.is_zero() or n == 0:
            return self
        return Poly((0,) * n + self.coeffs, self.spec)

    # -- ordering and display --------------------------------------------------

    def sort_key(self) -> tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    def __str__(self) -> str:
        return format_poly(self)

    # mod-power helper used by factoring
    def powmod(self, n: int, modulus: "Poly") -> "Poly":
        r = Poly.one(self.spec)
        base = self % modulus
        while n:
            if n & 1:
                r = (r * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return r


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return r


def _gf2_divmod(a: int, b: int) -> tuple[int, int]:
    db = b.bit_length() - 1
    q = 0
    da = a.bit_length() - 1
    while da >= db:
        shift = da - db
        q |= 1 << shift
        a ^= b << shift
        da = a.bit_length() - 1
    return q, a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd."""
    a._check(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, u, v) with u*a + v*b = g, g monic."""
    spec = a.spec
    r0, r1 = a, b
    s0, s1 = Poly.one(spec), Poly.zero(spec)
    t0, t1 = Poly.zero(spec), Poly.one(spec)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 + q * s1
        t0, t1 = t1, t0 + q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = spec.inv(r0.leading)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def derivative(f: Poly) -> Poly:
    """Formal derivative; even-exponent terms vanish in characteristic 2."""
    out = [f.coeffs[i] if i % 2 == 1 else 0 for i in range(1, len(f.coeffs))]
    return Poly(_trim(out), f.spec)


def poly_sqrt(f: Poly) -> Poly:
    """Square root of a perfect square (Frobenius inverse per coefficient)."""
    if any(f.coeff(i) for i in range(1, len(f.coeffs), 2)):
        raise PolyError("polynomial is not a square")
    spec = f.spec
    return Poly(_trim([spec.sqrt(c) for c in f.coeffs[::2]]), spec)


def reverse_star(g: Poly) -> Poly:
    """Coefficient reversal t^d * g(1/t); requires g(0) != 0."""
    if g.is_zero():
        raise PolyError("reverse of the zero polynomial")
    if g.coeff(0) == 0:
        raise PolyError("reverse requires a nonzero constant term")
    return Poly(tuple(reversed(g.coeffs)), g.spec)


def series_inverse_trunc(g: Poly, m: int) -> Poly:
    """The unique h of degree < m with g*h = 1 mod t^m (needs g(0) = 1).

    Coefficients follow the convolution recurrence
    h_j = g_1 h_{j-1} + g_2 h_{j-2} + ... + g_j h_0 with h_0 = 1.
    """
    if m < 1:
        raise PolyError("truncation order must be positive")
    if g.coeff(0) != 1:
        raise PolyError("series inverse requires constant term 1")
    spec = g.spec
    mul = spec.mul
    h = [0] * m
    h[0] = 1
    for j in range(1, m):
        acc = 0
        for i in range(1, j + 1):
            gi = g.coeff(i)
            if gi and h[j - i]:
                acc ^= mul(gi, h[j - i])
        h[j] = acc
    return Poly(_trim(h), spec)


# -- irreducibility and factorization -----------------------------------------


def _prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test over GF(q), q = 2^k."""
    d = f.degree
    if d < 1:
        return False
    f = f.monic()
    q = f.spec.order
    t = Poly.t(f.spec)
    if t.powmod(q**d, f) != t % f:
        return False
    for p in _prime_divisors(d):
        h = t.powmod(q ** (d // p), f) + (t % f)
        if poly_gcd(f, h).degree != 0:
            return False
    return True


def _squarefree_decomposition(f: Poly) -> dict[Poly, int]:
    """Monic f as a product of pairwise-coprime squarefree parts to powers.

    Characteristic-2 aware: when the derivative vanishes, f is a perfect
    square and the multiplicities double through the coefficient Frobenius
    inverse.
    """
    out: dict[Poly, int] = {}
    if f.degree < 1:
        return out
    df = derivative(f)
    if df.is_zero():
        for g, m in _squarefree_decomposition(poly_sqrt(f)).items():
            out[g] = out.get(g, 0) + 2 * m
        return out
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out[z] = out.get(z, 0) + i
        c = c // y
        w = y
        i += 1
    if c.degree > 0:
        for g, m in _squarefree_decomposition(poly_sqrt(c)).items():
            out[g] = out.get(g, 0) + 2 * m
    return out


def _distinct_degree_split(f: Poly) -> list[tuple[Poly, int]]:
    """Squarefree monic f -> [(product of its degree-d factors, d)]."""
    spec = f.spec
    q = spec.order
    out = []
    t = Poly.t(spec)
    h = t % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, f)
        g = poly_gcd(h + t, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split a squarefree product of degree-d irreducibles (char-2 trace maps)."""
    if f.degree == d:
        return [f]
    spec = f.spec
    n = f.degree
    while True:
        r = Poly(_trim([rng.randrange(spec.order) for _ in range(n)]), spec)
        if r.degree < 1:
            continue
        # trace to GF(2): r + r^2 + r^4 + ... over kd squarings
        acc = r % f
        term = r % f
        for _ in range(spec.k * d - 1):
            term = (term * term) % f
            acc = acc + term
        g = poly_gcd(acc, f)
        if 0 < g.degree < n:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(f // g, d, rng)
        g = poly_gcd(acc + Poly.one(spec), f)
        if 0 < g.degree < n:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(f // g, d, rng)


_FACTOR_SEED = 0x5EED


def set_factor_seed(seed: int) -> None:
    """Reseed the randomized equal-degree splitting (it is deterministic for
    a fixed seed; the output order never depends on it)."""
    global _FACTOR_SEED
    _FACTOR_SEED = seed


def factor(g: Poly, rng: random.Random | None = None) -> list[tuple[Poly, int]]:
    """Factor into monic irreducibles with multiplicities.

    Deterministic output order: by degree, then coefficient order from the
    leading term down.  The product of the factors times the leading
    coefficient of g reproduces g.
    """
    if g.is_zero():
        raise PolyError("cannot factor the zero polynomial")
    if rng is None:
        rng = random.Random(_FACTOR_SEED)
    out: dict[Poly, int] = {}
    for part, mult in _squarefree_decomposition(g.monic()).items():
        for block, d in _distinct_degree_split(part):
            for irr in _equal_degree_split(block, d, rng):
                out[irr] = out.get(irr, 0) + mult
    return sorted(out.items(), key=lambda it: it[0].sort_key())


def monic_irreducibles(spec: FieldSpec, degree: int) -> Iterator[Poly]:
    """All monic irreducible polynomials of the given degree, in sort order."""
    q = spec.order
    for idx in range(q**degree):
        coeffs = []
        v = idx
        for _ in range(degree):
            coeffs.append(v % q)
            v //= q
        coeffs.append(1)
        f = Poly(tuple(coeffs), spec)
        if is_irreducible(f):
            yield f


def lagrange_interpolate(spec: FieldSpec, points: Sequence[int], values: Sequence[int]) -> Poly:
    """Unique polynomial of degree < len(points) through the given points."""
    if len(points) != len(values):
        raise PolyError("point/value length mismatch")
    if len(set(points)) != len(points):
        raise PolyError("interpolation points must be distinct")
    acc = Poly.zero(spec)
    for i, (xi, yi) in enumerate(zip(points, values)):
        if yi == 0:
            continue
        num = Poly.one(spec)
        denom = 1
        for j, xj in enumerate(points):
            if j == i:
                continue
            num = num * Poly((xj, 1), spec)
            denom = spec.mul(denom, xi ^ xj)
        acc = acc + num.scale(spec.mul(yi, spec.inv(denom)))
    return acc


# -- homogeneous binary forms --------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous polynomial in (x1, x2); coeffs[i] is the x1^i x2^(d-i)
    coefficient.  The zero form has empty coeffs."""

    coeffs: tuple[int, ...]
    spec: FieldSpec

    @staticmethod
    def make(spec: FieldSpec, coeffs: Sequence[int]) -> "BinaryForm":
        if all(c == 0 for c in coeffs):
            return BinaryForm((), spec)
        return BinaryForm(tuple(coeffs), spec)

    @staticmethod
    def zero(spec: FieldSpec) -> "BinaryForm":
        return BinaryForm((), spec)

    @staticmethod
    def one(spec: FieldSpec) -> "BinaryForm":
        return BinaryForm((1,), spec)

    @staticmethod
    def x1(spec: FieldSpec) -> "BinaryForm":
        return BinaryForm((0, 1), spec)

    @staticmethod
    def x2(spec: FieldSpec) -> "BinaryForm":
        return BinaryForm((1, 0), spec)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check(self, other: "BinaryForm") -> "BinaryForm":
        if other.spec != self.spec:
            raise FieldError(f"mixed fields: {self.spec} vs {other.spec}")
        return other

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return BinaryForm((), self.spec)
        mul = self.spec.mul
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] ^= mul(a, b)
        return BinaryForm(tuple(out), self.spec)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        other = self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise PolyError("cannot add forms of different degrees")
        return BinaryForm.make(self.spec, [a ^ b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, bits: int) -> "BinaryForm":
        if bits == 0:
            return BinaryForm((), self.spec)
        if bits == 1:
            return self
        mul = self.spec.mul
        return BinaryForm(tuple(mul(bits, c) for c in self.coeffs), self.spec)

    def power(self, n: int) -> "BinaryForm":
        acc = BinaryForm.one(self.spec)
        for _ in range(n):
            acc = acc * self
        return acc

    def evaluate(self, a: int, b: int) -> int:
        spec = self.spec
        acc = 0
        apow = 1
        d = self.degree
        for i, c in enumerate(self.coeffs):
            if c:
                term = spec.mul(c, apow)
                term = spec.mul(term, spec.pow(b, d - i))
                acc ^= term
            apow = spec.mul(apow, a)
        return acc

    def is_unital(self) -> bool:
        if self.is_zero():
            return False
        if self.coeffs[-1] == 1:
            return True
        return self.coeffs == (1, 0)  # exactly x2

    def sort_key(self) -> tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    def __str__(self) -> str:
        return format_form(self)


def homogenize(f: Poly, total_degree: int) -> BinaryForm:
    """x2^D * f(x1/x2) cleared of denominators; needs D >= deg f."""
    if f.is_zero():
        return BinaryForm.zero(f.spec)
    if total_degree < f.degree:
        raise PolyError(f"total degree {total_degree} below deg f = {f.degree}")
    out = [0] * (total_degree + 1)
    for i, c in enumerate(f.coeffs):
        out[i] = c
    return BinaryForm(tuple(out), f.spec)


def dehomogenize(form: BinaryForm) -> tuple[Poly, int]:
    """Return (form(t, 1), exponent of x2 dividing the form)."""
    if form.is_zero():
        raise PolyError("cannot dehomogenize the zero form")
    f = Poly(_trim(form.coeffs), form.spec)
    return f, form.degree - f.degree


def unital_normalize(form: BinaryForm) -> tuple[BinaryForm, int]:
    """Scale a nonzero form to unital shape; returns (normal form, scalar)."""
    if form.is_zero():
        raise PolyError("cannot normalize the zero form")
    lead = form.coeffs[-1]
    if lead != 0:
        if lead == 1:
            return form, 1
        return form.scale(form.spec.inv(lead)), lead
    # x2 divides the form; for irreducible points this is the x2 point itself
    f, mult = dehomogenize(form)
    if f.degree != 0 or mult != 1:
        raise PolyError("form divisible by x2 is not an irreducible point")
    return BinaryForm.x2(form.spec), f.coeff(0)


# -- projective points and the GL(2) substitution action ----------------------


class _EpsType:
    """The extra projective symbol for odd-dimensional blocks."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "eps"


EPS = _EpsType()

ProjPoint = _EpsType | BinaryForm


def point_sort_key(point: ProjPoint) -> tuple:
    """Total order on projective points: eps first, then (degree, coeffs)."""
    if isinstance(point, _EpsType):
        return (0, -1, ())
    return (1,) + point.sort_key()


def point_from_poly(f: Poly) -> BinaryForm:
    """The unital projective point attached to a monic irreducible f."""
    return homogenize(f.monic(), f.degree)


def moebius_act(q: Sequence[Sequence[int]], point: ProjPoint, spec: FieldSpec) -> ProjPoint:
    """Substitute (x1,x2) -> (x1,x2)Q into the form and renormalize.

    Row-vector convention: x1 -> q11*x1 + q21*x2, x2 -> q12*x1 + q22*x2.
    Eps is a fixed point.  Defines a left-compatible action:
    act(Q1*Q2, g) = act(Q1, act(Q2, g)).
    """
    (q11, q12), (q21, q22) = q
    det = spec.mul(q11, q22) ^ spec.mul(q12, q21)
    if det == 0:
        raise PolyError("singular substitution matrix")
    if isinstance(point, _EpsType):
        return EPS
    y1 = BinaryForm.make(spec, (q21, q11))
    y2 = BinaryForm.make(spec, (q22, q12))
    d = point.degree
    acc = BinaryForm.zero(spec)
    y1pow = BinaryForm.one(spec)
    powers1 = []
    for _ in range(d + 1):
        powers1.append(y1pow)
        y1pow = y1pow * y1
    y2pow = BinaryForm.one(spec)
    for i in range(d, -1, -1):
        c = point.coeff(i)
        if c:
            term = (powers1[i] * y2pow).scale(c)
            acc = acc + term if not acc.is_zero() else term
        y2pow = y2pow * y2
    normal, _ = unital_normalize(acc)
    return normal


# -- text forms ----------------------------------------------------------------

_POLY_TERM_RE = re.compile(
    r"^(?:\{(?P<coef>[0-9a-fA-F]+)\}\*?)?(?:(?P<var>t)(?:\^(?P<exp>\d+))?)?$"
)


def format_poly(f: Poly, var: str = "t") -> str:
    if f.is_zero():
        return "0"
    terms = []
    for i in range(f.degree, -1, -1):
        c = f.coeff(i)
        if not c:
            continue
        if i == 0:
            terms.append("1" if c == 1 else f"{{{c:x}}}")
            continue
        v = var if i == 1 else f"{var}^{i}"
        terms.append(v if c == 1 else f"{{{c:x}}}*{v}")
    return "+".join(terms)


def parse_poly(spec: FieldSpec, text: str, var: str = "t") -> Poly:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return Poly.zero(spec)
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        if term == "1":
            coeffs[0] = coeffs.get(0, 0) ^ 1
            continue
        m = _POLY_TERM_RE.match(term.replace(var, "t"))
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise PolyError(f"bad polynomial term {term!r} in {text!r}")
        c = int(m.group("coef"), 16) if m.group("coef") is not None else 1
        spec.check(c)
        if m.group("var") is None:
            e = 0
        else:
            e = int(m.group("exp")) if m.group("exp") is not None else 1
        coeffs[e] = coeffs.get(e, 0) ^ c
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return Poly(_trim(out), spec)


_FORM_TERM_RE = re.compile(
    r"^(?:\{(?P<coef>[0-9a-fA-F]+)\}\*?)?"
    r"(?:x1(?:\^(?P<e1>\d+))?)?\*?(?:x2(?:\^(?P<e2>\d+))?)?$"
)


def format_form(form: BinaryForm) -> str:
    if form.is_zero():
        return "0"
    d = form.degree
    terms = []
    for i in range(d, -1, -1):
        c = form.coeff(i)
        if not c:
            continue
        parts = []
        if c != 1:
            parts.append(f"{{{c:x}}}")
        if i > 0:
            parts.append("x1" if i == 1 else f"x1^{i}")
        if d - i > 0:
            parts.append("x2" if d - i == 1 else f"x2^{d - i}")
        if not parts:
            parts.append("1")
        terms.append("*".join(parts))
    return "+".join(terms)


def parse_form(spec: FieldSpec, text: str) -> BinaryForm:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return BinaryForm.zero(spec)
    seen: dict[int, int] = {}
    degree = None
    for term in s.split("+"):
        if term == "1":
            if degree is None:
                degree = 0
            elif degree != 0:
                raise PolyError(f"form {text!r} is not homogeneous")
            seen[0] = seen.get(0, 0) ^ 1
            continue
        m = _FORM_TERM_RE.match(term)
        if not m or term == "":
            raise PolyError(f"bad form term {term!r} in {text!r}")
        has_x1 = "x1" in term
        has_x2 = "x2" in term
        if m.group("coef") is None and not has_x1 and not has_x2:
            raise PolyError(f"bad form term {term!r} in {text!r}")
        c = int(m.group("coef"), 16) if m.group("coef") is not None else 1
        spec.check(c)
        e1 = (int(m.group("e1")) if m.group("e1") else 1) if has_x1 else 0
        e2 = (int(m.group("e2")) if m.group("e2") else 1) if has_x2 else 0
        total = e1 + e2
        if degree is None:
            degree = total
        elif degree != total:
            raise PolyError(f"form {text!r} is not homogeneous")
        seen[e1] = seen.get(e1, 0) ^ c
    out = [0] * (degree + 1)
    for e, c in seen.items():
        out[e] = c
    return BinaryForm.make(spec, out)
