"""Classification engine: validation, Pfaffian, invariants, decomposition."""

import random

import pytest

from altpairs.blocks import (
    AlternatingPair,
    build_finite,
    build_infinity,
    build_infinity_over,
    build_plus,
    direct_sum,
)
from altpairs.field import FieldError, FieldSpec, embed
from altpairs.linalg import Mat
from altpairs.pencil import (
    ClassFunction,
    assemble,
    congruent,
    decompose,
    kronecker_invariants,
    pfaffian_form,
    pfaffian_of_class,
    transform_congruence,
    validate,
)
from altpairs.polyring import (
    EPS,
    BinaryForm,
    monic_irreducibles,
    parse_form,
    parse_poly,
    point_from_poly,
)

from conftest import (
    GF2,
    GF4,
    random_alternating_pair,
    random_class_function,
    random_invertible,
)


def tp(text, spec=GF2):
    return parse_poly(spec, text)


# -- validation -------------------------------------------------------------------


def test_validate_canonical_block():
    assert validate(build_infinity(2)).ok


def test_validate_nonzero_diagonal():
    pair = AlternatingPair(
        Mat.from_rows(GF2, [[0, 0], [0, 1]]), Mat.zeros(GF2, 2, 2)
    )
    report = validate(pair)
    assert not report.ok
    assert report.matrix == "A"
    assert report.position == (1, 1)


def test_validate_asymmetric_b():
    a = Mat.zeros(GF2, 2, 2)
    b = Mat.from_rows(GF2, [[0, 1], [0, 0]])
    report = validate(AlternatingPair(a, b))
    assert not report.ok
    assert report.matrix == "B"


# -- Pfaffian ----------------------------------------------------------------------


def test_pfaffian_infinity_blocks():
    for n in range(1, 9):
        expected = parse_form(GF2, "x2" if n == 1 else f"x2^{n}")
        assert pfaffian_form(build_infinity(n)) == expected


def test_pfaffian_finite_blocks_power_of_point():
    for d in (1, 2, 3):
        for f in monic_irreducibles(GF2, d):
            for n in range(1, 8 // d + 1):
                expected = point_from_poly(f).power(n)
                assert pfaffian_form(build_finite(f, n)) == expected


def test_pfaffian_t_block_is_x1():
    assert pfaffian_form(build_finite(tp("t"), 1)) == BinaryForm.x1(GF2)


def test_pfaffian_odd_block_zero():
    assert pfaffian_form(build_plus(1)).is_zero()
    assert pfaffian_form(build_plus(0)).is_zero()


def test_pfaffian_empty_pair_is_one():
    zero = direct_sum([], spec=GF2)
    assert pfaffian_form(zero).coeffs == (1,)


def test_pfaffian_square_matches_determinant():
    # independent oracle: evaluate det(aA + bB) on extension points in both
    # charts and compare with the squared Pfaffian value
    rng = random.Random(77)
    for spec in (GF2, GF4):
        ext = FieldSpec.gf(spec.k * (3 if spec.k == 2 else 4))
        emb = embed(spec, ext)
        for _ in range(30):
            n = rng.randrange(1, 13)
            pair = random_alternating_pair(spec, rng, n)
            pf = pfaffian_form(pair)
            a_ext = Mat.from_rows(ext, [[emb.map(v) for v in r] for r in pair.a.rows], n)
            b_ext = Mat.from_rows(ext, [[emb.map(v) for v in r] for r in pair.b.rows], n)
            pf_ext = BinaryForm.make(ext, tuple(emb.map(c) for c in pf.coeffs))
            for _ in range(2 * n + 3):
                x1 = rng.randrange(ext.order)
                x2 = rng.randrange(ext.order)
                detval = (a_ext.scale(x1) + b_ext.scale(x2)).det()
                pv = pf_ext.evaluate(x1, x2) if not pf_ext.is_zero() else 0
                assert ext.mul(pv, pv) == detval


def test_pfaffian_rejects_invalid_pair():
    bad = AlternatingPair(Mat.from_rows(GF2, [[0, 1], [0, 0]]), Mat.zeros(GF2, 2, 2))
    with pytest.raises(Exception):
        pfaffian_form(bad)


# -- Kronecker invariants ------------------------------------------------------------


def test_invariants_plus_block():
    inv = kronecker_invariants(build_plus(1))
    assert inv.minimal_indices == (1,)
    assert inv.elementary_divisors == ()


def test_invariants_finite_block():
    inv = kronecker_invariants(build_finite(tp("t^2+t+1"), 1))
    assert inv.minimal_indices == ()
    assert dict(inv.elementary_divisors) == {(point_from_poly(tp("t^2+t+1")), 1): 2}


def test_invariants_infinity_block():
    inv = kronecker_invariants(build_infinity(2))
    assert inv.minimal_indices == ()
    assert dict(inv.elementary_divisors) == {(BinaryForm.x2(GF2), 2): 2}


def test_invariants_mixed_sum():
    pair = direct_sum([build_plus(0), build_plus(2), build_infinity(1)])
    inv = kronecker_invariants(pair)
    assert inv.minimal_indices == (0, 2)
    assert dict(inv.elementary_divisors) == {(BinaryForm.x2(GF2), 1): 2}


# -- decomposition --------------------------------------------------------------------


def test_decompose_zero_pair():
    pair = AlternatingPair(Mat.zeros(GF2, 2, 2), Mat.zeros(GF2, 2, 2))
    rho = decompose(pair)
    assert rho.get(EPS, 1) == 2
    assert rho.total_dim == 2


def test_decompose_mixed_example():
    pair = direct_sum([build_finite(tp("t"), 1), build_infinity(1)])
    rho = decompose(pair)
    assert rho.get(BinaryForm.x1(GF2), 1) == 1
    assert rho.get(BinaryForm.x2(GF2), 1) == 1


def test_decompose_congruence_invariance():
    rng = random.Random(3)
    pair = build_finite(tp("t^2+t+1"), 2)
    rho = decompose(pair)
    for _ in range(5):
        s = random_invertible(GF2, rng, pair.dim)
        assert decompose(transform_congruence(pair, s)) == rho
    assert rho.get(point_from_poly(tp("t^2+t+1")), 2) == 1


def test_decompose_roundtrip_random():
    rng = random.Random(8)
    for spec in (GF2, GF4):
        for _ in range(25):
            rho = random_class_function(spec, rng, 20)
            pair = assemble(rho)
            if pair.dim == 0:
                assert rho.total_dim == 0
                continue
            s = random_invertible(spec, rng, pair.dim)
            assert decompose(transform_congruence(pair, s)) == rho


def test_congruent_basic():
    rng = random.Random(10)
    pair = random_alternating_pair(GF2, rng, 5)
    s = random_invertible(GF2, rng, 5)
    assert congruent(pair, transform_congruence(pair, s))
    assert not congruent(build_finite(tp("t"), 1), build_infinity(1))


def test_congruent_rejects_mixed_fields():
    with pytest.raises(FieldError):
        congruent(build_infinity(1), build_infinity_over(GF4, 1))


def test_degenerate_iff_x2_or_eps_blocks():
    rng = random.Random(21)
    for _ in range(40):
        rho = random_class_function(GF2, rng, 12)
        pair = assemble(rho)
        if pair.dim == 0:
            continue
        degenerate_entries = any(
            (p is EPS) or p.coeffs == (1, 0) for p, _, _ in rho.entries
        )
        assert pair.a.is_invertible() == (not degenerate_entries)


def test_pfaffian_recoverable_from_class_function():
    rng = random.Random(12)
    for _ in range(25):
        rho = random_class_function(GF2, rng, 16)
        if any(p is EPS for p, _, _ in rho.entries):
            continue
        pair = assemble(rho)
        assert pfaffian_form(pair) == pfaffian_of_class(rho)


# -- class function plumbing -----------------------------------------------------------


def test_class_function_json_roundtrip():
    rng = random.Random(14)
    for spec in (GF2, GF4):
        for _ in range(10):
            rho = random_class_function(spec, rng, 16)
            assert ClassFunction.from_json_dict(spec, rho.to_json_dict()) == rho


def test_class_function_ordering_eps_first():
    rho = ClassFunction.from_dict(
        GF2,
        {
            (BinaryForm.x1(GF2), 1): 1,
            (EPS, 2): 1,
            (BinaryForm.x2(GF2), 1): 1,
            (EPS, 1): 2,
        },
    )
    kinds = [p is EPS for p, _, _ in rho.entries]
    assert kinds == [True, True, False, False]
    # x2 sorts before x1
    non_eps = [p for p, _, _ in rho.entries if p is not EPS]
    assert non_eps[0].coeffs == (1, 0)


def test_class_function_total_dim():
    rho = ClassFunction.from_dict(
        GF2,
        {
            (EPS, 2): 1,  # dim 3
            (BinaryForm.x2(GF2), 2): 1,  # dim 4
            (point_from_poly(tp("t^2+t+1")), 1): 2,  # dim 8
        },
    )
    assert rho.total_dim == 15
    assert assemble(rho).dim == 15


def test_assemble_respects_field():
    rho = random_class_function(GF4, random.Random(2), 12)
    pair = assemble(rho)
    assert pair.spec == GF4
    assert decompose(pair) == rho
