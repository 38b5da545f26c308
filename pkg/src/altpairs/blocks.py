"""Canonical indecomposable alternating pairs and the residue-form oracle.

Three block families over GF(2^k):

* finite blocks: A = [[0,I],[I,0]], B = [[0,Phi],[Phi^T,0]] with Phi the
  companion matrix of f^n for a monic irreducible f;
* infinity blocks: A = [[0,J],[J^T,0]], B = [[0,I],[I,0]] with J the
  nilpotent lower Jordan block;
* plus blocks of odd dimension 2*eps+1 built from the eps x (eps+1)
  staircase matrices [I|0] and [0|I].

``residue_oracle`` rebuilds the finite blocks from the residue pairing
u, v |-> res of t^j / f^n at infinity, entirely independently of the
companion construction, and serves as a correctness oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldSpec
from .linalg import Mat
from .polyring import (
    EPS,
    BinaryForm,
    Poly,
    PolyError,
    ProjPoint,
    _EpsType,
    dehomogenize,
    format_poly,
    is_irreducible,
    parse_poly,
    point_from_poly,
)


class BlockError(ValueError):
    """Invalid block parameters."""


@dataclass(frozen=True)
class AlternatingPair:
    """A pair (A, B) of n x n alternating matrices over a common field."""

    a: Mat
    b: Mat

    def __post_init__(self):
        if self.a.spec != self.b.spec:
            raise BlockError("matrices over different fields")
        if self.a.shape != self.b.shape or self.a.nrows != self.a.cols:
            raise BlockError(f"need equal square shapes, got {self.a.shape} and {self.b.shape}")

    @property
    def dim(self) -> int:
        return self.a.nrows

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    @property
    def matrices(self) -> tuple[Mat, Mat]:
        return (self.a, self.b)


def companion(g: Poly) -> Mat:
    """Companion (Frobenius) matrix: subdiagonal ones, coefficients of g in
    the last column."""
    if not g.is_monic() or g.degree < 1:
        raise BlockError("companion matrix needs a monic polynomial of degree >= 1")
    d = g.degree
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = g.coeff(i)
    return Mat.from_rows(g.spec, rows)


def _paired(upper: Mat, rows_first: int) -> Mat:
    """[[0, U],[U^T, 0]] with U of shape rows_first x (n - rows_first)."""
    spec = upper.spec
    r, c = upper.shape
    n = r + c
    rows = [[0] * n for _ in range(n)]
    for i in range(r):
        for j in range(c):
            v = upper.rows[i][j]
            if v:
                rows[i][r + j] = v
                rows[r + j][i] = v
    return Mat.from_rows(spec, rows, n)


def build_finite(f: Poly, n: int) -> AlternatingPair:
    """The 2d x 2d finite block for f^n, d = n * deg f."""
    if n < 1:
        raise BlockError("multiplicity must be positive")
    if not f.is_monic() or not is_irreducible(f):
        raise BlockError(f"{f} is not monic irreducible")
    g = f
    for _ in range(n - 1):
        g = g * f
    d = g.degree
    spec = f.spec
    a = _paired(Mat.identity(spec, d), d)
    b = _paired(companion(g), d)
    return AlternatingPair(a, b)


def build_infinity(n: int) -> AlternatingPair:
    """The 2n x 2n block at the infinite point; equals the finite block for
    t^n with its two matrices swapped."""
    if n < 1:
        raise BlockError("size must be positive")
    spec = FieldSpec.gf2()
    return build_infinity_over(spec, n)


def build_infinity_over(spec: FieldSpec, n: int) -> AlternatingPair:
    if n < 1:
        raise BlockError("size must be positive")
    jordan = Mat.from_rows(
        spec, [[1 if j == i - 1 else 0 for j in range(n)] for i in range(n)], n
    )
    a = _paired(jordan, n)
    b = _paired(Mat.identity(spec, n), n)
    return AlternatingPair(a, b)


def build_plus(eps: int) -> AlternatingPair:
    if eps < 0:
        raise BlockError("minimal index must be nonnegative")
    return build_plus_over(FieldSpec.gf2(), eps)


def build_plus_over(spec: FieldSpec, eps: int) -> AlternatingPair:
    """Odd block of dimension 2*eps+1; eps = 0 is the 1 x 1 zero pair."""
    if eps < 0:
        raise BlockError("minimal index must be nonnegative")
    left = Mat.from_rows(
        spec, [[1 if j == i else 0 for j in range(eps + 1)] for i in range(eps)], eps + 1
    )
    right = Mat.from_rows(
        spec, [[1 if j == i + 1 else 0 for j in range(eps + 1)] for i in range(eps)], eps + 1
    )
    return AlternatingPair(_paired(left, eps), _paired(right, eps))


def direct_sum(pairs: list[AlternatingPair], spec: FieldSpec | None = None) -> AlternatingPair:
    """Orthogonal direct sum: block-diagonal assembly of both matrices."""
    if not pairs:
        if spec is None:
            raise BlockError("empty direct sum needs an explicit field")
        return AlternatingPair(Mat.zeros(spec, 0, 0), Mat.zeros(spec, 0, 0))
    spec = pairs[0].spec
    for p in pairs:
        if p.spec != spec:
            raise BlockError("mixed fields in direct sum")
    a = Mat.block_diag(spec, [p.a for p in pairs])
    b = Mat.block_diag(spec, [p.b for p in pairs])
    return AlternatingPair(a, b)


# -- block identifiers ---------------------------------------------------------


@dataclass(frozen=True)
class BlockId:
    """Tagged name of an indecomposable block: finite (f, n), infinity (n),
    or plus (minimal index eps)."""

    kind: str  # "fin" | "inf" | "plus"
    f: Poly | None
    n: int

    @staticmethod
    def finite(f: Poly, n: int) -> "BlockId":
        if not f.is_monic() or not is_irreducible(f):
            raise BlockError(f"{f} is not monic irreducible")
        if n < 1:
            raise BlockError("multiplicity must be positive")
        return BlockId("fin", f, n)

    @staticmethod
    def infinity(n: int) -> "BlockId":
        if n < 1:
            raise BlockError("size must be positive")
        return BlockId("inf", None, n)

    @staticmethod
    def plus(eps: int) -> "BlockId":
        if eps < 0:
            raise BlockError("minimal index must be nonnegative")
        return BlockId("plus", None, eps)

    @property
    def dim(self) -> int:
        if self.kind == "fin":
            return 2 * self.n * self.f.degree
        if self.kind == "inf":
            return 2 * self.n
        return 2 * self.n + 1

    def point(self) -> tuple[ProjPoint, int]:
        """The (projective point, n) label of this block."""
        if self.kind == "fin":
            return point_from_poly(self.f), self.n
        if self.kind == "inf":
            return BinaryForm.x2(self.spec_or_gf2()), self.n
        return EPS, self.n + 1

    def spec_or_gf2(self) -> FieldSpec:
        return self.f.spec if self.f is not None else FieldSpec.gf2()

    def build(self, spec: FieldSpec | None = None) -> AlternatingPair:
        if self.kind == "fin":
            return build_finite(self.f, self.n)
        spec = spec or FieldSpec.gf2()
        if self.kind == "inf":
            return build_infinity_over(spec, self.n)
        return build_plus_over(spec, self.n)

    def __str__(self) -> str:
        if self.kind == "fin":
            return f"fin:{format_poly(self.f)}^{self.n}"
        if self.kind == "inf":
            return f"inf:{self.n}"
        return f"plus:{self.n}"

    @staticmethod
    def parse(text: str, spec: FieldSpec | None = None) -> "BlockId":
        spec = spec or FieldSpec.gf2()
        s = text.strip()
        if s.startswith("inf:"):
            return BlockId.infinity(int(s[4:]))
        if s.startswith("plus:"):
            return BlockId.plus(int(s[5:]))
        if s.startswith("fin:"):
            body = s[4:]
            if "^" not in body:
                raise BlockError(f"finite block needs a ^<n> suffix: {text!r}")
            ptext, ntext = body.rsplit("^", 1)
            try:
                n = int(ntext)
            except ValueError:
                raise BlockError(f"finite block needs a ^<n> suffix: {text!r}") from None
            return BlockId.finite(parse_poly(spec, ptext), n)
        raise BlockError(f"bad block id {text!r}")


def block_for_point(point: ProjPoint, n: int, spec: FieldSpec) -> AlternatingPair:
    """The canonical pair attached to a projective point with multiplicity n."""
    if isinstance(point, _EpsType):
        return build_plus_over(spec, n - 1)
    if point.coeffs == (1, 0):  # the x2 point
        return build_infinity_over(spec, n)
    f, x2_mult = dehomogenize(point)
    if x2_mult != 0:
        raise BlockError("projective point must be unital irreducible or x2")
    return build_finite(f, n)


# -- residue-form oracle -------------------------------------------------------


def res_at_infinity(num: Poly, den: Poly) -> int:
    """Residue at infinity of num/den: the t^-1 coefficient of the Laurent
    expansion in 1/t.  Matching coefficients in (num mod den) = den * (c1/t +
    c2/t^2 + ...) gives c1 as the t^(deg den - 1) coefficient of num mod den.
    """
    if den.is_zero():
        raise PolyError("residue needs a nonzero denominator")
    den = den.monic()
    r = num % den
    return r.coeff(den.degree - 1)


def residue_oracle(f: Poly, n: int) -> AlternatingPair:
    """Gram matrices of the residue pairing on the module for f^n, in the
    basis u_k = t^(d-k-1) u, v_k = t^k v.

    The pairing sends (u, v) to 1/f^n and (u, u), (v, v) to 0; the two Gram
    matrices take the residues of F(u_l, v_k) and F(t u_l, v_k).  Works for
    f = t as well (direct expansion in the same basis).
    """
    if n < 1:
        raise BlockError("multiplicity must be positive")
    if not f.is_monic() or not is_irreducible(f):
        raise BlockError(f"{f} is not monic irreducible")
    spec = f.spec
    g = f
    for _ in range(n - 1):
        g = g * f
    d = g.degree
    a_rows = [[0] * (2 * d) for _ in range(2 * d)]
    b_rows = [[0] * (2 * d) for _ in range(2 * d)]
    for l in range(d):
        for k in range(d):
            # F(u_l, v_k) = t^(d+k-l-1)/g; F(t u_l, v_k) = t^(d+k-l)/g
            av = res_at_infinity(Poly.monomial(spec, d + k - l - 1), g)
            bv = res_at_infinity(Poly.monomial(spec, d + k - l), g)
            if av:
                a_rows[l][d + k] = av
                a_rows[d + k][l] = av
            if bv:
                b_rows[l][d + k] = bv
                b_rows[d + k][l] = bv
    return AlternatingPair(
        Mat.from_rows(spec, a_rows), Mat.from_rows(spec, b_rows)
    )
