"""Acceptance checks, one per criterion, each printing a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` for just the 13 lines.
"""

import random
import sys
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from involute import gallery  # noqa: E402
from involute.charvar import (  # noqa: E402
    generic_phis, guillemin_check, mutual_eigenspace, rank1_ideal, rational_rank1_samples, scheme_summary, xi_fibers,
)
from involute.eikonal import closure_probe, parse_generators, phase_space, poisson_bracket  # noqa: E402
from involute.exactlin import Matrix, rank  # noqa: E402
from involute.involutive import cartan_test, involutivity_test, standard_form  # noqa: E402
from involute.moduli import involutivity_ideal, instantiate, parametric_endovolutive, point_check  # noqa: E402
from involute.polyring import MPoly, parse_poly  # noqa: E402
from involute.prolong import (  # noqa: E402
    as_tableau, guillemin_sequence_check, prolongation, prolongation_dim, quillen_exactness_check, rank1_prolong_check,
    symbol_kernel_dim,
)
from involute.report import analyze  # noqa: E402
from involute.tableau import generic_frame  # noqa: E402

from conftest import GOLDEN  # noqa: E402
from test_involutive import WAVE_DISPLAY, hankel_blocks  # noqa: E402
from test_moduli import KNOWN_320_GENERATORS, _assignments  # noqa: E402
from test_prolong import symmetric_oracle_dim  # noqa: E402
from test_tableau import HANKEL_BLOCKS  # noqa: E402


def involutive_names():
    return [n for n in gallery.GALLERY if standard_form(gallery.get(n)).endovolutive]


def c01_characters():
    chars = {seed: generic_frame(gallery.hankel(), seed).characters for seed in range(3)}
    return all(c == (3, 2, 0) for c in chars.values()), f"hankel characters {chars[0]}"


def c02_blocks():
    b = hankel_blocks()
    bad = [(lam + 1, i + 1) for (lam, i), m in HANKEL_BLOCKS.items() if b[lam, i] != Matrix(m)]
    return not bad and b.ell == 2, f"mismatched blocks {bad}"


def c03_involutivity():
    clean = involutivity_test(WAVE_DISPLAY)
    jet = involutivity_test(standard_form(gallery.wave()).blocks)
    m = WAVE_DISPLAY[0, 2].tolist()
    m[2][1] = Fraction(2)
    bent = involutivity_test(WAVE_DISPLAY.replace(0, 2, Matrix(m)))
    named = bent.violations[0].render() if bent.violations else "none"
    ok = clean.involutive and not clean.violations and jet.involutive and bent.endovolutive and bool(bent.violations)
    return ok, f"perturbed certificate {named}"


def c04_cartan():
    out = {}
    for name in ("hankel", "wave"):
        t = gallery.get(name)
        ch = generic_frame(t).characters
        out[name] = (prolongation_dim(t), symmetric_oracle_dim(t), ch[0] + 2 * ch[1])
    return all(v == (7, 7, 7) for v in out.values()), f"(delta kernel, symmetric oracle, s1+2s2) {out}"


def c05_rank_one():
    t = gallery.hankel()
    ideal = rank1_ideal(t)
    ok = True
    for k, tau in product(range(4), repeat=2):
        alpha = gallery.veronese(k, tau)
        pi = t.element(alpha)
        ok &= t.contains(pi) and rank(pi) == (0 if k == tau == 0 else 1)
        ok &= all(g.evaluate(dict(enumerate(alpha))) == 0 for g in ideal.generators)
    gens = rank1_ideal(gallery.onedim()).generators
    ok &= len(gens) == 1 and gens[0].monic().render() == "alpha0^2 - 9*alpha1*alpha2"
    return ok, f"onedim ideal {[g.render() for g in gens]}"


def c06_scheme():
    want = {"wave": (1, 2), "hankel": (1, 2), "onedim": (1, 1),
            "zerodim-a": (0, 4), "zerodim-b": (0, 4), "zerodim-c": (0, 4), "zerodim-d": (0, 4)}
    patterns = {"zerodim-a": (1, 1, 1, 1), "zerodim-b": (2, 1, 1), "zerodim-c": (2, 1, 1), "zerodim-d": (3, 1)}
    got, pats = {}, {}
    for name in want:
        s = scheme_summary(gallery.get(name))
        got[name] = (s.dim, s.degree)
        if name in patterns:
            pats[name] = s.multiplicity_pattern()
    return got == want and pats == patterns, f"patterns {pats}"


def c07_eigenspaces():
    ok = True
    for name in involutive_names():
        sf = standard_form(gallery.get(name))
        ok &= all(len(mutual_eigenspace(sf.blocks, phi)) == sf.frame.cartan_integer for phi in generic_phis(sf.blocks, 12))
    b = gallery.onedim_blocks()
    for tau in range(5):
        (w,) = mutual_eigenspace(b, (3, tau))
        (sheet,) = xi_fibers(b, (3, tau)).sheets
        ok &= w == (3 * tau, 1) and sheet.xi == (3, tau, 15 + 9 * tau)
    return ok, f"{len(involutive_names())} involutive gallery tableaux"


def c08_gnf():
    ok, total = True, 0
    for name in involutive_names():
        b = standard_form(gallery.get(name)).blocks
        rng = random.Random(8)
        for _ in range(10):
            phi = [rng.randint(-20, 20) for _ in range(b.ell)]
            if not any(phi):
                phi[0] = 1
            v = [rng.randint(-20, 20) for _ in range(b.n)]
            v2 = [rng.randint(-20, 20) for _ in range(b.n)]
            ok &= guillemin_check(b, phi, v, v2).ok
            total += 1
    return ok, f"{total} triples"


def c09_prolongation():
    ok, counts = True, {}
    for name in gallery.GALLERY:
        t = gallery.get(name)
        samples = rational_rank1_samples(t, 6)
        if name == "hankel":
            samples += [(v[:3], (k * k, k * tau, tau * tau)) for k, tau in product((1, 2, 3), repeat=2) for v in [gallery.veronese(k, tau)]]
        rep = rank1_prolong_check(t, samples)
        a1 = as_tableau(prolongation(t))
        ok &= rep.passed and rep.forward_checked > 0 and rep.converse_checked > 0 and cartan_test(a1, generic_frame(a1))[2]
        counts[name] = (rep.forward_checked, rep.converse_checked)
    return ok, f"(forward, converse) {counts}"


def c10_moduli():
    pt = parametric_endovolutive(3, 3, (3, 2, 0))
    ideal = involutivity_ideal(pt)
    same = {g.content_normalized() for g in ideal.polys()} == {parse_poly(p, pt.vars).content_normalized() for p in KNOWN_320_GENERATORS}
    rng = random.Random(10)
    comp = True
    for _ in range(10):
        vals = [Fraction(rng.randint(-9, 9)) for _ in range(16)]
        for k in (0, 1, 5, 8):
            vals[k] = Fraction(0)
        comp &= point_check(ideal, vals)[0]
    agree = all(point_check(ideal, v)[0] == involutivity_test(instantiate(pt, v)).involutive for v in _assignments())
    return same and comp and agree, f"generators {len(ideal.generators)}, component ok {comp}, agreement ok {agree}"


def c11_exactness():
    ok = True
    rng = random.Random(11)
    for name in ("wave", "hankel"):
        t = gallery.get(name)
        sf = standard_form(t)
        phi = [rng.randint(-20, 20) for _ in range(3)]
        while symbol_kernel_dim(t, phi):
            phi = [rng.randint(-20, 20) for _ in range(3)]
        ok &= quillen_exactness_check(t, phi).exact
        ok &= guillemin_sequence_check(t, sf.frame).exact
    w = gallery.wave()
    ok &= quillen_exactness_check(w, standard_form(w).frame.covector_to_original((1, 0, 0))).exact
    return ok, "wave and hankel"


def c12_eikonal():
    vt = phase_space(3)
    rng = random.Random(12)

    def obs():
        out = MPoly(vt)
        for _ in range(3):
            out = out + MPoly(vt, {tuple(rng.randint(0, 2) for _ in range(6)): rng.randint(1, 5)})
        return out

    ok = True
    br = poisson_bracket
    for _ in range(25):
        F, G, H = obs(), obs(), obs()
        ok &= br(F, G) == -br(G, F)
        ok &= (br(F, br(G, H)) + br(G, br(H, F)) + br(H, br(F, G))).is_zero()
        ok &= br(F, G * H) == br(F, G) * H + G * br(F, H)
    cases = {"translations": ["p2", "p3"], "wave_cone": ["p1^2 - p2^2 - p3^2"],
             "sheared": ["p2 - x2*p1", "p3"], "twisted": ["p2 - x3*p1", "p3"]}
    for name, texts in cases.items():
        verdict = closure_probe(parse_generators(texts, 3)).render().splitlines()[-1]
        ok &= verdict == (GOLDEN / f"eikonal_{name}.txt").read_text().splitlines()[-1]
    return ok, "25 triples, 4 closure goldens"


def c13_determinism():
    ok = True
    for name in gallery.GALLERY:
        t = gallery.get(name)
        phi = gallery.extras(name).get("sample_phi")
        runs = {analyze(t, 0, phi).render() for _ in range(3)}
        ok &= len(runs) == 1 and runs.pop() == (GOLDEN / f"analyze_{name}.txt").read_text()
    return ok, "8 gallery reports x 3 runs"


CRITERIA = [
    (1, "Cartan characters of the Hankel tableau", c01_characters),
    (2, "Hankel symbol blocks", c02_blocks),
    (3, "wave involutivity and violation certificate", c03_involutivity),
    (4, "Cartan test for Hankel and wave", c04_cartan),
    (5, "rank-one variety and ideal", c05_rank_one),
    (6, "characteristic scheme dimension, degree, multiplicities", c06_scheme),
    (7, "mutual eigenspaces and one-dimensional sheets", c07_eigenspaces),
    (8, "normal form invariance and commutation", c08_gnf),
    (9, "rank-one prolongation and prolonged Cartan test", c09_prolongation),
    (10, "moduli ideal, component points, agreement", c10_moduli),
    (11, "exactness sequences", c11_exactness),
    (12, "Poisson identities and closure verdicts", c12_eikonal),
    (13, "determinism of analyze", c13_determinism),
]


def line(num, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {title} ({detail})"


@pytest.mark.parametrize("num,title,check", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, title, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, title, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(line(num, title, ok, detail))
    sys.exit(1 if failed else 0)
