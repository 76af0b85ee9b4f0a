"""Endovolutive bases, the quadratic involutivity conditions, and Cartan's test."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .exactlin import Matrix, inverse, kernel_basis, row_space, span_rank
from .prolong import prolongation_dim
from .tableau import (
    Frame,
    NonGenericFrame,
    SymbolBlocks,
    Tableau,
    _gW_is_generic,
    blocks,
    framed_basis,
    from_blocks,
    generic_frame,
    restrict_to_U,
    symbol_coeffs,
)

__all__ = [
    "Violation",
    "InvolutivityReport",
    "EndoSearch",
    "endovolutive_violations",
    "is_endovolutive",
    "endovolutivize",
    "quadratic_index_set",
    "involutivity_test",
    "cartan_test",
    "restrict_to_U",
    "StandardForm",
    "standard_form",
]


def endovolutive_violations(b: SymbolBlocks, chars: Sequence[int] | None = None) -> list[tuple]:
    """Nonzero entries outside the leading s_lam x s_lam corner, as 1-based (lam, i, a, b)."""
    chars = tuple(chars) if chars is not None else b.characters
    out = []
    for lam in range(b.ell):
        s = chars[lam]
        for i in range(b.n):
            m = b[lam, i]
            for a in range(b.r):
                for c in range(b.r):
                    if m[a, c] and (a >= s or c >= s):
                        out.append((lam + 1, i + 1, a + 1, c + 1))
    return out


def is_endovolutive(b: SymbolBlocks, chars: Sequence[int] | None = None) -> bool:
    return not endovolutive_violations(b, chars)


@dataclass(frozen=True)
class EndoSearch:
    found: bool
    frame: Frame | None
    stage: str
    flag_dims: tuple = ()


def _subspace_images(mats: Sequence[Matrix], chars: Sequence[int], r: int, n: int) -> list[list[tuple]]:
    """For lam < ell: spanning vectors of all columns of elements vanishing on columns < lam."""
    s = len(mats)
    ell = max((k + 1 for k, x in enumerate(chars) if x > 0), default=0)
    out = []
    for lam in range(ell):
        cond = [tuple(m[a, i] for m in mats) for i in range(lam) for a in range(r)]
        if cond:
            coeff = kernel_basis(Matrix(cond, cols=s))
        else:
            coeff = [tuple(Fraction(int(k == j)) for k in range(s)) for j in range(s)]
        vecs = []
        for alpha in coeff:
            elt = [[sum((c * m[a, i] for c, m in zip(alpha, mats)), Fraction(0)) for i in range(n)] for a in range(r)]
            vecs.extend(tuple(elt[a][i] for a in range(r)) for i in range(n))
        out.append(vecs)
    return out


def endovolutivize(t: Tableau, f: Frame) -> EndoSearch:
    """Find a W-basis in which the blocks are endovolutive.

    With E_lam the span of all columns of elements vanishing on the first
    lam - 1 columns, such a basis exists exactly when dim E_lam = s_lam for all
    lam; it is then any basis adapted to the flag E_ell < ... < E_1 < W.
    """
    chars = f.characters
    r, n = t.r, t.n
    try:
        b = blocks(symbol_coeffs(t, f), f)
    except NonGenericFrame:
        b = None
    if b is not None and is_endovolutive(b, chars):
        return EndoSearch(True, f, "identity")
    mats = framed_basis(t, f)
    images = _subspace_images(mats, chars, r, n)
    dims = tuple(span_rank(v, r) for v in images)
    if any(d != chars[lam] for lam, d in enumerate(dims)):
        return EndoSearch(False, None, "flag", dims)
    basis: list[tuple] = []
    for vecs in reversed(images):
        for row in row_space(Matrix(vecs, cols=r)):
            if span_rank(basis + [row], r) > len(basis):
                basis.append(tuple(row))
    for j in range(r):
        e = tuple(Fraction(int(k == j)) for k in range(r))
        if span_rank(basis + [e], r) > len(basis):
            basis.append(e)
    change = inverse(Matrix.from_columns(basis, rows=r))
    g = Frame(f.gV, change @ f.gW, chars, f.certified)
    if not _gW_is_generic(framed_basis(t, g), chars, r, n):
        return EndoSearch(False, None, "flag-not-generic", dims)
    nb = blocks(symbol_coeffs(t, g), g)
    if not is_endovolutive(nb, chars):
        return EndoSearch(False, None, "flag-not-endovolutive", dims)
    return EndoSearch(True, g, "flag", dims)


@dataclass(frozen=True)
class Violation:
    """Nonzero entry (a, b) of B^lam_l B^mu_k - B^lam_k B^mu_l; indices 1-based."""

    lam: int
    mu: int
    l: int
    k: int
    a: int
    b: int
    value: Fraction

    def render(self) -> str:
        return (
            f"(B^{self.lam}_{self.l} B^{self.mu}_{self.k} - B^{self.lam}_{self.k} B^{self.mu}_{self.l})"
            f"[{self.a},{self.b}] = {self.value}"
        )


@dataclass
class InvolutivityReport:
    endovolutive: bool
    quadratic_ok: bool
    violations: list = field(default_factory=list)
    endovolutive_violations: list = field(default_factory=list)
    cartan_lhs: int = 0
    cartan_rhs: int | None = None

    @property
    def involutive(self) -> bool:
        return self.endovolutive and self.quadratic_ok


def quadratic_index_set(chars: Sequence[int], r: int, n: int) -> Iterator[tuple[int, int, int, int, int]]:
    """0-based (lam, mu, l, k, a) with lam < l < k, lam <= mu < k, mu < ell, a >= s_l."""
    ell = max((k + 1 for k, x in enumerate(chars) if x > 0), default=0)
    for lam in range(ell):
        for l in range(lam + 1, n):
            for k in range(l + 1, n):
                for mu in range(lam, min(k, ell)):
                    for a in range(chars[l], r):
                        yield lam, mu, l, k, a


def involutivity_test(b: SymbolBlocks, chars: Sequence[int] | None = None) -> InvolutivityReport:
    chars = tuple(chars) if chars is not None else b.characters
    lhs = sum((i + 1) * s for i, s in enumerate(chars))
    endo = endovolutive_violations(b, chars)
    rep = InvolutivityReport(not endo, False, [], endo, lhs)
    rep.cartan_rhs = prolongation_dim(from_blocks(b))
    if endo:
        return rep
    products: dict = {}

    def prod(x, y):
        key = (x, y)
        if key not in products:
            products[key] = b[x] @ b[y]
        return products[key]

    for lam, mu, l, k, a in quadratic_index_set(chars, b.r, b.n):
        left = prod((lam, l), (mu, k))
        right = prod((lam, k), (mu, l))
        for c in range(b.r):
            v = left[a, c] - right[a, c]
            if v:
                rep.violations.append(Violation(lam + 1, mu + 1, l + 1, k + 1, a + 1, c + 1, v))
    rep.quadratic_ok = not rep.violations
    return rep


def cartan_test(t: Tableau, f: Frame) -> tuple[int, int, bool]:
    lhs = sum((i + 1) * s for i, s in enumerate(f.characters))
    rhs = prolongation_dim(t)
    return lhs, rhs, lhs == rhs


@dataclass(frozen=True)
class StandardForm:
    """A generic frame, refined to an endovolutive one when possible, with its blocks."""

    tableau: Tableau
    frame: Frame
    blocks: SymbolBlocks
    search: EndoSearch

    @property
    def endovolutive(self) -> bool:
        return self.search.found

    @property
    def framed(self) -> Tableau:
        return Tableau(self.tableau.n, self.tableau.r, tuple(framed_basis(self.tableau, self.frame)), self.tableau.name)


def standard_form(t: Tableau, seed: int = 0) -> StandardForm:
    f = generic_frame(t, seed)
    search = endovolutivize(t, f)
    frame = search.frame if search.found else f
    return StandardForm(t, frame, blocks(symbol_coeffs(t, frame), frame), search)
