"""Plain-text analysis report for one tableau."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .charvar import (
    char_ideal,
    generic_phis,
    guillemin_check,
    hyperbolic_probe,
    incidence_check,
    is_determined,
    rank1_ideal,
    rational_rank1_samples,
    scheme_summary,
    xi_fibers,
)
from .exactlin import Matrix, format_q
from .involutive import cartan_test, involutivity_test, standard_form
from .prolong import rank1_prolong_check, spencer_dims
from .tableau import Tableau


class InternalInconsistency(RuntimeError):
    pass


def fmt_matrix(m: Matrix) -> str:
    return "[" + "; ".join(" ".join(format_q(x) for x in row) for row in m) + "]"


def fmt_vec(v: Sequence) -> str:
    return "(" + ", ".join(format_q(Fraction(x)) for x in v) + ")"


@dataclass
class AnalysisReport:
    lines: list = field(default_factory=list)
    problems: list = field(default_factory=list)

    def add(self, text: str = "") -> None:
        self.lines.append(text)

    def section(self, title: str) -> None:
        self.lines.append("")
        self.lines.append(f"[{title}]")

    def render(self) -> str:
        return "\n".join(self.lines) + "\n"


def analyze(t: Tableau, seed: int = 0, sample_phi: Sequence | None = None, triples: int = 10) -> AnalysisReport:
    rep = AnalysisReport()
    rep.add(f"tableau: {t.name or '(unnamed)'}")
    rep.add(f"seed: {seed}")
    rep.add(f"n = {t.n}, r = {t.r}, s = {t.s}")

    sf = standard_form(t, seed)
    f, b = sf.frame, sf.blocks
    ell = f.ell
    rep.section("frame")
    rep.add(f"gV = {fmt_matrix(f.gV)}")
    rep.add(f"gW = {fmt_matrix(f.gW)}")
    rep.add(f"characters: {tuple(f.characters)}")
    rep.add(f"ell = {ell}, s_ell = {f.cartan_integer}")
    rep.add(f"genericity certified by sampling: {'yes' if f.certified else 'no'}")

    rep.section("symbol blocks")
    rep.add(f"endovolutive basis: {'found (' + sf.search.stage + ')' if sf.endovolutive else 'not found (' + sf.search.stage + ')'}")
    for lam in range(b.ell):
        for i in range(b.n):
            if i >= lam:
                rep.add(f"B^{lam + 1}_{i + 1} = {fmt_matrix(b[lam, i])}")

    inv = involutivity_test(b)
    rep.section("involutivity")
    rep.add(f"endovolutive: {'yes' if inv.endovolutive else 'no'}")
    for v in inv.endovolutive_violations[:10]:
        rep.add(f"  nonzero outside corner: B^{v[0]}_{v[1]}[{v[2]},{v[3]}]")
    if inv.endovolutive:
        rep.add(f"quadratic conditions: {'ok' if inv.quadratic_ok else 'violated'} ({len(inv.violations)} violations)")
        for v in inv.violations[:10]:
            rep.add(f"  {v.render()}")
    involutive = inv.involutive
    rep.add(f"involutive: {'yes' if involutive else 'no'}")

    lhs, rhs, eq = cartan_test(t, f)
    rep.section("prolongation")
    rep.add(f"dim A^(1) = {rhs}")
    rep.add(f"Cartan test: {lhs} {'=' if eq else '!='} {rhs}")
    dims = spencer_dims(t)
    rep.add("Spencer cohomology dims: " + ", ".join(f"H^{k + 1} = {d}" for k, d in enumerate(dims)))
    if involutive != eq:
        rep.problems.append("quadratic criteria and Cartan test disagree")

    r1 = rank1_ideal(t)
    rep.section(f"rank-one ideal ({len(r1.generators)} generators)")
    for g in r1.generators:
        rep.add(f"  {g.render()}")

    rep.section("characteristic ideal")
    ci = char_ideal(b)
    for i, d in enumerate(ci.dets):
        rep.add(f"d_{i + 1} = {d.render()}")

    rep.section("characteristic scheme")
    ss = scheme_summary(t, seed, sf)
    if ss.label:
        rep.add(ss.label)
    if ss.dim is not None:
        rep.add(f"dim = {ss.dim}, degree = {ss.degree}")
    if ss.phi:
        rep.add(f"sample phi = {fmt_vec(ss.phi)}, v = {fmt_vec(ss.v)}")
    for text, m, fd in ss.components:
        rep.add(f"  component {text}: multiplicity {m}, fiber dim {fd}")
    if ss.components:
        rep.add(f"factorization type stable over 5 choices of v: {'yes' if ss.stable_type else 'no'}")
    if involutive and ss.degree is not None and ss.degree != f.cartan_integer:
        rep.problems.append("scheme degree differs from the Cartan integer")

    if sf.endovolutive and ell:
        rep.section("sheets")
        phis = [tuple(Fraction(x) for x in p) for p in sample_phi] if sample_phi else generic_phis(b, 3, seed)
        for phi in phis:
            if len(phi) != ell or not any(phi):
                raise ValueError(f"sample covector {list(phi)} must be nonzero of length {ell}")
            fr = xi_fibers(b, phi, seed)
            rep.add(f"phi = {fmt_vec(phi)}: dim W1 = {fr.w1_dim}" + ("" if fr.invariant else " (not invariant)"))
            for s in fr.sheets:
                rep.add(f"  {s.render()}")
                if s.member is False:
                    rep.problems.append(f"sheet over {fmt_vec(phi)} fails tableau membership")
            if involutive and (not fr.invariant or not fr.sheets):
                rep.problems.append(f"no invariant sheet structure over {fmt_vec(phi)}")

        rep.section("checks")
        rng = random.Random(seed)
        gnf_ok = 0
        for phi in generic_phis(b, triples, seed + 1):
            v = [rng.randint(-9, 9) for _ in range(t.n)]
            v2 = [rng.randint(-9, 9) for _ in range(t.n)]
            if guillemin_check(b, phi, v, v2).ok:
                gnf_ok += 1
        rep.add(f"Guillemin normal form: {gnf_ok}/{triples} triples")
        if involutive and gnf_ok != triples:
            rep.problems.append("normal form fails on an involutive tableau")
        samples = rational_rank1_samples(t, 6, seed, sf)
        inc = incidence_check(t, samples, seed, sf)
        rep.add(f"incidence: forward {inc.forward_checked - len(inc.forward_failed)}/{inc.forward_checked}, "
                f"backward {inc.backward_checked - len(inc.backward_failed)}/{inc.backward_checked}")
        pr = rank1_prolong_check(t, samples, seed=seed)
        rep.add(f"rank-one prolongation: forward {pr.forward_checked - len(pr.forward_failed)}/{pr.forward_checked}, "
                f"converse {pr.converse_checked - len(pr.converse_failed)}/{pr.converse_checked}")
        if not inc.passed or not pr.passed:
            rep.problems.append("rank-one incidence checks failed")

    if is_determined(f.characters, t.r):
        rep.section("hyperbolicity probe")
        rng = random.Random(seed)
        phi = [rng.randint(-9, 9) for _ in range(t.n)]
        etas = [[rng.randint(-9, 9) for _ in range(t.n)] for _ in range(5)]
        hp = hyperbolic_probe(b, phi, etas)
        rep.add(f"phi = {fmt_vec(phi)}: {hp.status}")
        for eta, real, deg, diag in hp.details:
            rep.add(f"  eta = {fmt_vec(eta)}: real roots {real}/{deg}, diagonalizable {'yes' if diag else 'no'}")

    if rep.problems:
        rep.section("inconsistencies")
        for p in rep.problems:
            rep.add(p)
    return rep
