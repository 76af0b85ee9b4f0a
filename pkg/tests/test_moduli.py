import random
from fractions import Fraction

import pytest

from involute.involutive import cartan_test, involutivity_test
from involute.moduli import (
    EXPORT_FORMATS, export_ideal, generator_for, instantiate, involutivity_ideal, parametric_endovolutive, point_check,
    validate_characters,
)
from involute.polyring import parse_poly
from involute.tableau import Frame, from_blocks
from conftest import GOLDEN

KNOWN_320_GENERATORS = [
    "x0*x3 + x1*x4 + x2*x5 - x0*x11",
    "x0*x6 + x1*x7 + x2*x8 - x1*x11",
    "x0*x9 + x1*x10",
    "x0*x12 + x1*x13 - x5",
    "x0*x14 + x1*x15 - x8",
]


@pytest.fixture(scope="module")
def pt320():
    return parametric_endovolutive(3, 3, (3, 2, 0))


@pytest.fixture(scope="module")
def ideal320(pt320):
    return involutivity_ideal(pt320)


def test_parameter_counts():
    assert len(parametric_endovolutive(3, 3, (3, 2, 0)).vars) == 16
    assert len(parametric_endovolutive(2, 3, (2, 1, 0)).vars) == 7
    assert len(parametric_endovolutive(3, 3, (3, 3, 3)).vars) == 0


def test_block_placement(pt320):
    render = lambda lam, i: [[x.render() for x in row] for row in pt320.block(lam, i)]
    assert render(0, 1) == [["0", "0", "0"], ["0", "0", "0"], ["x0", "x1", "x2"]]
    assert render(0, 2) == [["x3", "x6", "x9"], ["x4", "x7", "x10"], ["x5", "x8", "x11"]]
    assert render(1, 2) == [["x12", "x14", "0"], ["x13", "x15", "0"], ["0", "0", "0"]]


def test_invalid_characters():
    for bad in [(1, 2, 0), (4, 0, 0), (2, 1), (-1, 0, 0)]:
        with pytest.raises(ValueError):
            validate_characters(3, 3, bad)


def test_ideal_matches_known_generators(pt320, ideal320):
    expected = {parse_poly(p, pt320.vars).content_normalized() for p in KNOWN_320_GENERATORS}
    got = {g.content_normalized() for g in ideal320.polys()}
    assert got == expected and len(ideal320.generators) == 5


def test_full_characters_give_empty_ideal():
    assert involutivity_ideal(parametric_endovolutive(2, 2, (2, 2))).generators == ()


def test_onedim_values_are_a_zero():
    pt = parametric_endovolutive(2, 3, (2, 1, 0))
    ideal = involutivity_ideal(pt)
    values = [Fraction(1, 9), 0, 5, 1, 0, 5, 9]
    ok, bad = point_check(ideal, values)
    assert ok and bad == []
    b = instantiate(pt, values)
    assert b[0, 2].tolist() == [[5, 0], [1, 5]] and b[1, 2].tolist() == [[9, 0], [0, 0]]


def test_point_check_examples(ideal320):
    rng = random.Random(10)
    for _ in range(10):
        vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(16)]
        for k in (0, 1, 5, 8):
            vals[k] = Fraction(0)
        assert point_check(ideal320, vals)[0]
    assert point_check(ideal320, [0] * 16)[0]
    vals = [0] * 16
    vals[5] = 1
    ok, bad = point_check(ideal320, vals)
    assert not ok and [(ideal320.generators[i].poly.render(), v) for i, v in bad] == [("x0*x12 + x1*x13 - x5", -1)]


def test_point_check_requires_full_assignment(ideal320):
    with pytest.raises(ValueError):
        point_check(ideal320, {0: 1})


def test_generator_provenance(ideal320):
    gen = generator_for(ideal320, (1, 1, 2, 3, 3, 3))
    assert gen.poly.render() == "x0*x9 + x1*x10"
    assert generator_for(ideal320, (9, 9, 9, 9, 9, 9)) is None


def _solved_zero(rng):
    v = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(16)]
    while v[0] == 0:
        v[0] = Fraction(rng.randint(-6, 6))
    v[5] = v[0] * v[12] + v[1] * v[13]
    v[8] = v[0] * v[14] + v[1] * v[15]
    v[9] = -v[1] * v[10] / v[0]
    v[3] = (v[0] * v[11] - v[1] * v[4] - v[2] * v[5]) / v[0]
    v[6] = (v[1] * v[11] - v[1] * v[7] - v[2] * v[8]) / v[0]
    return v


def _assignments():
    rng = random.Random(50)
    out = []
    for k in range(50):
        kind = k % 3
        if kind == 0:
            v = [Fraction(rng.randint(-5, 5)) for _ in range(16)]
            for j in (0, 1, 5, 8):
                v[j] = Fraction(0)
        elif kind == 1:
            v = _solved_zero(rng)
        else:
            v = [Fraction(rng.randint(-3, 3)) for _ in range(16)]
        out.append(v)
    return out


def test_symbolic_numeric_agreement(pt320, ideal320):
    seen = {True: 0, False: 0}
    for vals in _assignments():
        ok, _ = point_check(ideal320, vals)
        rep = involutivity_test(instantiate(pt320, vals))
        assert ok == rep.involutive
        seen[ok] += 1
    assert seen[True] >= 30 and seen[False] >= 5


def test_zeros_pass_cartan(pt320):
    rng = random.Random(3)
    for _ in range(6):
        t = from_blocks(instantiate(pt320, _solved_zero(rng)))
        assert cartan_test(t, Frame.identity(3, 3, (3, 2, 0))) == (7, 7, True)


def test_ideal_is_deterministic():
    a = involutivity_ideal(parametric_endovolutive(3, 3, (3, 2, 0)))
    b = involutivity_ideal(parametric_endovolutive(3, 3, (3, 2, 0)))
    assert [g.poly.render() for g in a.generators] == [g.poly.render() for g in b.generators]


def test_export_formats(ideal320):
    m2 = export_ideal(ideal320, "macaulay2")
    assert m2.startswith("R = QQ[x0, x1") and "G = ideal(" in m2
    sing = export_ideal(ideal320, "singular")
    assert sing.startswith("ring R = 0, (x0,") and sing.rstrip().endswith(";")
    sage = export_ideal(ideal320, "sage-text")
    assert "PolynomialRing(QQ" in sage and "R.ideal([" in sage
    with pytest.raises(ValueError):
        export_ideal(ideal320, "maple")
    assert set(EXPORT_FORMATS) == {"singular", "macaulay2", "sage-text"}


def test_export_empty_ideal():
    empty = involutivity_ideal(parametric_endovolutive(2, 2, (2, 2)))
    # no parameters: a placeholder variable keeps each ring declaration valid
    assert export_ideal(empty, "singular") == "ring R = 0, (x), dp;\nideal G =\n  0;\n"
    assert export_ideal(empty, "macaulay2") == "R = QQ[x];\nG = ideal(\n  0_R\n);\n"
    assert export_ideal(empty, "sage-text").endswith("G = R.ideal([R(0)])\n")


def test_export_goldens(ideal320):
    text = (GOLDEN / "moduli_3_3_320.m2").read_text()
    assert text.endswith(export_ideal(ideal320, "macaulay2"))
    pt = parametric_endovolutive(2, 3, (2, 1, 0))
    text = (GOLDEN / "moduli_2_3_210.sing").read_text()
    assert text.endswith(export_ideal(involutivity_ideal(pt), "singular"))
