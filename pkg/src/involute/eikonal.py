"""Poisson brackets of polynomial phase-space observables and bounded closure probes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlin import InconsistentSystem, Matrix, solve
from .polyring import MPoly, VarTable, parse_poly


def phase_space(n: int) -> VarTable:
    """Variables x1..xn followed by p1..pn."""
    return VarTable([f"x{i + 1}" for i in range(n)] + [f"p{i + 1}" for i in range(n)])


def _half(vt: VarTable) -> int:
    if len(vt) % 2:
        raise ValueError("phase space needs equally many x and p variables")
    return len(vt) // 2


def poisson_bracket(F: MPoly, G: MPoly) -> MPoly:
    F._check(G)
    n = _half(F.vt)
    out = MPoly(F.vt)
    for i in range(n):
        out = out + F.derivative(n + i) * G.derivative(i) - G.derivative(n + i) * F.derivative(i)
    return out


def p_degree(F: MPoly) -> int | None:
    """Common p-degree of all terms, or None when F is not homogeneous in p (0 polynomial gives -1)."""
    n = _half(F.vt)
    degs = {sum(e[n:]) for e in F.terms}
    if not degs:
        return -1
    return degs.pop() if len(degs) == 1 else None


def _monomials(nvars: int, total: int) -> list[tuple]:
    """Exponent vectors of exactly the given total degree."""
    if nvars == 0:
        return [()] if total == 0 else []
    out = []
    for c in itertools.combinations_with_replacement(range(nvars), total):
        e = [0] * nvars
        for k in c:
            e[k] += 1
        out.append(tuple(e))
    return out


def bounded_member(H: MPoly, gens: Sequence[MPoly], bound: int) -> tuple[bool, list | None]:
    """Solve H = sum g_k gens[k] with g_k polynomial, x-degree <= bound, p-homogeneous."""
    if H.is_zero():
        return True, [MPoly(H.vt) for _ in gens]
    n = _half(H.vt)
    dh = p_degree(H)
    if dh is None:
        return False, None
    unknowns = []  # (generator index, exponent of multiplier)
    for k, g in enumerate(gens):
        dp = dh - p_degree(g)
        if dp < 0:
            continue
        xs = [e for d in range(bound + 1) for e in _monomials(n, d)]
        for ex in xs:
            for ep in _monomials(n, dp):
                unknowns.append((k, ex + ep))
    if not unknowns:
        return False, None
    cols = []
    for k, e in unknowns:
        cols.append((gens[k] * MPoly(H.vt, {e: 1})).terms)
    monos = sorted({m for c in cols for m in c} | set(H.terms))
    row_of = {m: i for i, m in enumerate(monos)}
    A = [[Fraction(0)] * len(unknowns) for _ in monos]
    for j, c in enumerate(cols):
        for m, v in c.items():
            A[row_of[m]][j] = v
    rhs = [H.terms.get(m, Fraction(0)) for m in monos]
    try:
        sol = solve(Matrix(A, cols=len(unknowns)), rhs)
    except InconsistentSystem:
        return False, None
    mult = [MPoly(H.vt) for _ in gens]
    for (k, e), c in zip(unknowns, sol):
        if c:
            mult[k] = mult[k] + MPoly(H.vt, {e: c})
    return True, mult


@dataclass
class ClosureReport:
    bound: int
    pairs: list = field(default_factory=list)  # (i, j, bracket, member)

    @property
    def closed(self) -> bool:
        return all(m for *_, m in self.pairs)

    def render(self) -> str:
        lines = [f"degree bound {self.bound}"]
        for i, j, br, m in self.pairs:
            verdict = "member" if m else "not-member-at-this-bound"
            lines.append(f"{{F{i + 1}, F{j + 1}}} = {br.render()} : {verdict}")
        lines.append("verdict: " + ("closed" if self.closed else "not closed at this bound"))
        return "\n".join(lines)


def closure_probe(generators: Sequence[MPoly], degree_bound: int = 3) -> ClosureReport:
    for g in generators:
        if p_degree(g) is None:
            raise ValueError(f"generator {g.render()} is not homogeneous in p")
    rep = ClosureReport(degree_bound)
    for i, j in itertools.combinations_with_replacement(range(len(generators)), 2):
        br = poisson_bracket(generators[i], generators[j])
        ok, _ = bounded_member(br, generators, degree_bound)
        rep.pairs.append((i, j, br, ok))
    return rep


def parse_generators(texts: Sequence[str], n: int) -> list[MPoly]:
    vt = phase_space(n)
    return [parse_poly(t, vt) for t in texts]
