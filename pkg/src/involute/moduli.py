"""Symbolic endovolutive blocks and the quadratic ideal of involutive tableaux.

Variables ``x0, x1, ...`` fill the admissible entries block by block, blocks
ordered by ``(lam, i)`` and entries column-major inside each block.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactlin import Matrix, to_q
from .involutive import quadratic_index_set
from .polyring import MPoly, VarTable
from .tableau import SymbolBlocks


@dataclass(frozen=True)
class ParametricTableau:
    r: int
    n: int
    characters: tuple
    vars: VarTable
    positions: tuple  # per variable: 0-based (lam, i, a, b)
    blocks: tuple  # blocks[lam][i] as tuple of tuples of MPoly

    @property
    def ell(self) -> int:
        return len(self.blocks)

    def block(self, lam: int, i: int):
        return self.blocks[lam][i]


def validate_characters(r: int, n: int, chars: Sequence[int]) -> tuple:
    chars = tuple(int(x) for x in chars)
    if len(chars) != n:
        raise ValueError("need exactly n characters")
    if any(x < 0 for x in chars) or (chars and chars[0] > r):
        raise ValueError("characters must lie between 0 and r")
    if any(x < y for x, y in zip(chars, chars[1:])):
        raise ValueError("characters must be non-increasing")
    return chars


def parametric_endovolutive(r: int, n: int, characters: Sequence[int]) -> ParametricTableau:
    chars = validate_characters(r, n, characters)
    ell = max((k + 1 for k, x in enumerate(chars) if x > 0), default=0)
    positions = []
    for lam in range(ell):
        for i in range(lam + 1, n):
            for b in range(chars[lam]):
                for a in range(chars[i], chars[lam]):
                    positions.append((lam, i, a, b))
    vt = VarTable([f"x{k}" for k in range(len(positions))])
    where = {p: k for k, p in enumerate(positions)}
    zero = MPoly(vt)
    one = MPoly.constant(vt, 1)
    rows = []
    for lam in range(ell):
        row = []
        for i in range(n):
            m = [[zero] * r for _ in range(r)]
            if i == lam:
                for a in range(chars[lam]):
                    m[a][a] = one
            for a in range(r):
                for b in range(r):
                    k = where.get((lam, i, a, b))
                    if k is not None:
                        m[a][b] = vt.var(k)
            row.append(tuple(tuple(x) for x in m))
        rows.append(tuple(row))
    return ParametricTableau(r, n, chars, vt, tuple(positions), tuple(rows))


def instantiate(pt: ParametricTableau, values: Mapping | Sequence) -> SymbolBlocks:
    """Numeric blocks at a full assignment (dict by index or name, or a sequence)."""
    vals = _assignment(pt.vars, values)
    out = []
    for row in pt.blocks:
        out.append(tuple(Matrix([[x.evaluate(vals) for x in r] for r in m], cols=pt.r) for m in row))
    return SymbolBlocks(pt.r, pt.n, pt.characters, tuple(out))


def _assignment(vt: VarTable, values) -> dict:
    if isinstance(values, Mapping):
        vals = {}
        for k, v in values.items():
            vals[k if isinstance(k, int) else vt.index(k)] = to_q(v)
    else:
        vals = {k: to_q(v) for k, v in enumerate(values)}
    if set(vals) != set(range(len(vt))):
        raise ValueError("a full assignment of every variable is required")
    return vals


def _matmul(x, y, zero):
    n = len(x)
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = zero
            for c in range(n):
                if not x[a][c].is_zero() and not y[c][b].is_zero():
                    acc = acc + x[a][c] * y[c][b]
            row.append(acc)
        out.append(row)
    return out


@dataclass(frozen=True)
class Generator:
    poly: MPoly
    provenance: tuple  # 1-based (lam, mu, l, k, a, b) of every entry producing it


@dataclass(frozen=True)
class ModuliIdeal:
    vars: VarTable
    generators: tuple

    def polys(self) -> list[MPoly]:
        return [g.poly for g in self.generators]


def involutivity_ideal(pt: ParametricTableau) -> ModuliIdeal:
    zero = MPoly(pt.vars)
    cache: dict = {}

    def prod(x, y):
        if (x, y) not in cache:
            cache[(x, y)] = _matmul(pt.block(*x), pt.block(*y), zero)
        return cache[(x, y)]

    found: dict = {}
    order = []
    for lam, mu, l, k, a in quadratic_index_set(pt.characters, pt.r, pt.n):
        left = prod((lam, l), (mu, k))
        right = prod((lam, k), (mu, l))
        for b in range(pt.r):
            p = left[a][b] - right[a][b]
            if p.is_zero():
                continue
            tag = (lam + 1, mu + 1, l + 1, k + 1, a + 1, b + 1)
            key = p.content_normalized()
            if key in found:
                found[key].append(tag)
            else:
                found[key] = [tag]
                order.append((key, p))
    gens = tuple(Generator(p, tuple(found[key])) for key, p in order)
    return ModuliIdeal(pt.vars, gens)


def point_check(ideal: ModuliIdeal, assignment) -> tuple[bool, list]:
    """(all generators vanish, [(generator index, value) for nonvanishing ones])."""
    vals = _assignment(ideal.vars, assignment)
    bad = []
    for k, g in enumerate(ideal.generators):
        v = g.poly.evaluate(vals)
        if v:
            bad.append((k, v))
    return not bad, bad


def generator_for(ideal: ModuliIdeal, tag: Sequence[int]) -> Generator | None:
    """Generator whose provenance includes the 1-based entry (lam, mu, l, k, a, b)."""
    tag = tuple(tag)
    return next((g for g in ideal.generators if tag in g.provenance), None)


EXPORT_FORMATS = ("singular", "macaulay2", "sage-text")


def export_ideal(ideal: ModuliIdeal, fmt: str) -> str:
    names = list(ideal.vars.names)
    gens = [g.poly.render() for g in ideal.generators]
    if fmt == "singular":
        ring = f"ring R = 0, ({', '.join(names) if names else 'x'}), dp;"
        body = ",\n  ".join(gens) if gens else "0"
        return f"{ring}\nideal G =\n  {body};\n"
    if fmt == "macaulay2":
        ring = f"R = QQ[{', '.join(names) if names else 'x'}];"
        body = ",\n  ".join(gens) if gens else "0_R"
        return f"{ring}\nG = ideal(\n  {body}\n);\n"
    if fmt == "sage-text":
        if names:
            ring = f"R = PolynomialRing(QQ, names=({', '.join(repr(x) for x in names)},))"
            unpack = f"{', '.join(names)}, = R.gens()"
        else:
            ring = "R = PolynomialRing(QQ, names=('x',))"
            unpack = "x, = R.gens()"
        body = ",\n    ".join(gens)
        lst = f"[\n    {body},\n]" if gens else "[R(0)]"
        return f"{ring}\n{unpack}\nG = R.ideal({lst})\n"
    raise ValueError(f"unknown export format {fmt!r}; choose from {', '.join(EXPORT_FORMATS)}")
