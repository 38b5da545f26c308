"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache

from altpairs.blocks import AlternatingPair
from altpairs.field import FieldSpec
from altpairs.linalg import Mat
from altpairs.pencil import ClassFunction
from altpairs.polyring import EPS, BinaryForm, monic_irreducibles, point_from_poly

GF2 = FieldSpec.gf2()
GF4 = FieldSpec.gf(2)


# -- random generators ---------------------------------------------------------


def random_matrix(spec: FieldSpec, rng: random.Random, nrows: int, ncols: int) -> Mat:
    return Mat.from_rows(
        spec, [[rng.randrange(spec.order) for _ in range(ncols)] for _ in range(nrows)], ncols
    )


def random_invertible(spec: FieldSpec, rng: random.Random, n: int) -> Mat:
    while True:
        m = random_matrix(spec, rng, n, n)
        if m.is_invertible():
            return m


def random_alternating(spec: FieldSpec, rng: random.Random, n: int) -> Mat:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randrange(spec.order)
            rows[i][j] = rows[j][i] = v
    return Mat.from_rows(spec, rows, n)


def random_alternating_pair(spec: FieldSpec, rng: random.Random, n: int) -> AlternatingPair:
    return AlternatingPair(
        random_alternating(spec, rng, n), random_alternating(spec, rng, n)
    )


def small_irreducibles(spec: FieldSpec, max_deg: int = 3):
    out = []
    for d in range(1, max_deg + 1):
        out.extend(monic_irreducibles(spec, d))
    return out


def random_class_function(
    spec: FieldSpec, rng: random.Random, max_dim: int, max_eps: int = 2
) -> ClassFunction:
    """Random blocks until the dimension budget is spent."""
    irr = small_irreducibles(spec)
    acc: dict = {}
    dim = 0
    while True:
        kind = rng.randrange(4)
        if kind == 0:
            eps = rng.randrange(0, max_eps + 1)
            key, bd = (EPS, eps + 1), 2 * eps + 1
        elif kind == 1:
            n = rng.randrange(1, 4)
            key, bd = (BinaryForm.x2(spec), n), 2 * n
        else:
            f = irr[rng.randrange(len(irr))]
            n = rng.randrange(1, 3)
            key, bd = (point_from_poly(f), n), 2 * n * f.degree
        if dim + bd > max_dim:
            break
        acc[key] = acc.get(key, 0) + 1
        dim += bd
    return ClassFunction.from_dict(spec, acc)


# -- exhaustive GL(n, 2) and packed-congruence oracles ----------------------------


@lru_cache(maxsize=None)
def gl_n_2(n: int) -> tuple[Mat, ...]:
    """Every invertible n x n matrix over GF(2), by brute force."""
    out = []
    for bits in range(1 << (n * n)):
        rows = [[(bits >> (n * i + j)) & 1 for j in range(n)] for i in range(n)]
        m = Mat.from_rows(GF2, rows, n)
        if m.det():
            out.append(m)
    return tuple(out)


def pack_alternating(m: Mat) -> int:
    """Upper-triangle bits of an alternating GF(2) matrix as one int."""
    n = m.nrows
    acc = 0
    pos = 0
    for i in range(n):
        for j in range(i + 1, n):
            if m.rows[i][j]:
                acc |= 1 << pos
            pos += 1
    return acc


def unpack_alternating(bits: int, n: int) -> Mat:
    rows = [[0] * n for _ in range(n)]
    pos = 0
    for i in range(n):
        for j in range(i + 1, n):
            v = (bits >> pos) & 1
            rows[i][j] = rows[j][i] = v
            pos += 1
    return Mat.from_rows(GF2, rows, n)


@lru_cache(maxsize=None)
def congruence_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """For each S in GL(n,2), the images of the packed basis alternating
    matrices under A -> S A S^T (congruence is linear in A)."""
    nbits = n * (n - 1) // 2
    tables = []
    for s in gl_n_2(n):
        st = s.transpose()
        images = []
        for b in range(nbits):
            img = s @ unpack_alternating(1 << b, n) @ st
            images.append(pack_alternating(img))
        tables.append(tuple(images))
    return tuple(tables)


def apply_packed(table: tuple[int, ...], packed: int) -> int:
    acc = 0
    b = 0
    while packed:
        if packed & 1:
            acc ^= table[b]
        packed >>= 1
        b += 1
    return acc


def brute_congruent(pa: int, pb: int, ra: int, rb: int, n: int) -> bool:
    """Exhaustive congruence search over GL(n,2) on packed pairs."""
    for table in congruence_tables(n):
        if apply_packed(table, pa) == ra and apply_packed(table, pb) == rb:
            return True
    return False


GL2_COMBOS = (
    # (q11, q12, q21, q22) over GF(2), all six invertible matrices
    (1, 0, 0, 1),
    (0, 1, 1, 0),
    (1, 1, 0, 1),
    (1, 0, 1, 1),
    (0, 1, 1, 1),
    (1, 1, 1, 0),
)


def brute_weakly_equivalent(pa: int, pb: int, ra: int, rb: int, n: int) -> bool:
    """Exhaustive search over GL(n,2) x GL(2,2) on packed pairs."""
    target = (ra, rb)
    for table in congruence_tables(n):
        ca = apply_packed(table, pa)
        cb = apply_packed(table, pb)
        for q11, q12, q21, q22 in GL2_COMBOS:
            na = (ca if q11 else 0) ^ (cb if q21 else 0)
            nb = (ca if q12 else 0) ^ (cb if q22 else 0)
            if (na, nb) == target:
                return True
    return False
