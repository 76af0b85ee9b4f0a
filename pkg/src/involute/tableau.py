"""Tableaux, generic frames, Cartan characters and symbol blocks.

Indices are 0-based in code.  A tableau element is an r x n matrix ``pi``
whose entry ``pi[a][i]`` pairs row a of W with column i of V*.  A frame
``(gV, gW)`` acts by ``pi -> gW @ pi @ inverse(gV)``.

For a frame with characters ``s``, the free entries of column ``i`` are the
rows ``a < s[i]`` and every other entry is a combination of free entries in
columns ``<= i``.  ``B[lam][i]`` is the r x r block with
``column_i = sum_lam B[lam][i] @ free(column_lam)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlin import (
    Matrix,
    SingularMatrix,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve,
    span_rank,
    to_q,
)


class NonGenericFrame(ValueError):
    pass


@dataclass(frozen=True)
class Tableau:
    n: int
    r: int
    basis: tuple
    name: str = ""

    def __post_init__(self):
        mats = tuple(m if isinstance(m, Matrix) else Matrix(m) for m in self.basis)
        for m in mats:
            if m.shape != (self.r, self.n):
                raise ValueError(f"basis matrix has shape {m.shape}, expected {(self.r, self.n)}")
        object.__setattr__(self, "basis", mats)
        if span_rank([flatten(m) for m in mats], self.r * self.n) != len(mats):
            raise ValueError("tableau basis is linearly dependent")

    @property
    def s(self) -> int:
        return len(self.basis)

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence], r: int, n: int, name: str = "") -> "Tableau":
        """Tableau cut out by linear relations on the row-major flattened r x n matrix."""
        rel = Matrix(relations, cols=r * n) if relations else Matrix.zeros(0, r * n)
        if rel.rows:
            vecs = kernel_basis(rel)
        else:
            vecs = [tuple(Fraction(int(k == j)) for k in range(r * n)) for j in range(r * n)]
        return cls(n, r, tuple(unflatten(v, r, n) for v in vecs), name)

    @classmethod
    def full(cls, r: int, n: int) -> "Tableau":
        return cls.from_relations([], r, n, "full")

    @classmethod
    def zero(cls, r: int, n: int) -> "Tableau":
        return cls(n, r, (), "zero")

    def element(self, coeffs: Sequence) -> Matrix:
        out = Matrix.zeros(self.r, self.n)
        for c, m in zip(coeffs, self.basis):
            if c:
                out = out + m.scale(c)
        return out

    def coordinates(self, pi: Matrix) -> tuple | None:
        """Coefficients of ``pi`` in the basis, or None when ``pi`` is not in the tableau."""
        if not self.basis:
            return () if pi.is_zero() else None
        m = Matrix.from_columns([flatten(b) for b in self.basis])
        try:
            return solve(m, flatten(pi))
        except ValueError:
            return None

    def contains(self, pi: Matrix) -> bool:
        return self.coordinates(pi) is not None

    def relations(self) -> Matrix:
        """Rows spanning the annihilator of the tableau in (W x V*)^*."""
        if not self.basis:
            return Matrix.identity(self.r * self.n)
        vecs = kernel_basis(Matrix([flatten(b) for b in self.basis]))
        return Matrix(vecs, cols=self.r * self.n) if vecs else Matrix.zeros(0, self.r * self.n)

    def transformed(self, gV: Matrix, gW: Matrix, name: str | None = None) -> "Tableau":
        gVi = inverse(gV)
        return Tableau(self.n, self.r, tuple(gW @ m @ gVi for m in self.basis), self.name if name is None else name)


def flatten(m: Matrix) -> tuple:
    return tuple(x for row in m for x in row)


def unflatten(v: Sequence, r: int, n: int) -> Matrix:
    return Matrix([[v[a * n + i] for i in range(n)] for a in range(r)], cols=n)


def entry_functionals(mats: Sequence[Matrix], a: int, i: int) -> tuple:
    """The entry (a, i) as a functional on the coefficient space of ``mats``."""
    return tuple(m[a, i] for m in mats)


def _characters(mats: Sequence[Matrix], r: int, n: int) -> tuple:
    s = len(mats)
    chars = []
    rows: list = []
    prev = 0
    for i in range(n):
        rows.extend(entry_functionals(mats, a, i) for a in range(r))
        cur = span_rank(rows, s) if s else 0
        chars.append(cur - prev)
        prev = cur
    return tuple(chars)


def characters_in_basis(t: Tableau, gV: Matrix, gW: Matrix | None = None) -> tuple:
    try:
        gVi = inverse(gV)
        if gW is not None:
            inverse(gW)
    except SingularMatrix as exc:
        raise ValueError("frame matrices must be invertible") from exc
    gW = gW if gW is not None else Matrix.identity(t.r)
    return _characters([gW @ m @ gVi for m in t.basis], t.r, t.n)


@dataclass(frozen=True)
class Frame:
    gV: Matrix
    gW: Matrix
    characters: tuple
    certified: bool = True
    gV_inv: Matrix = field(init=False, repr=False, compare=False)
    gW_inv: Matrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gV_inv", inverse(self.gV))
        object.__setattr__(self, "gW_inv", inverse(self.gW))
        chars = tuple(int(x) for x in self.characters)
        object.__setattr__(self, "characters", chars)

    @classmethod
    def identity(cls, n: int, r: int, characters: Sequence[int]) -> "Frame":
        return cls(Matrix.identity(n), Matrix.identity(r), tuple(characters))

    @property
    def n(self) -> int:
        return self.gV.rows

    @property
    def r(self) -> int:
        return self.gW.rows

    @property
    def ell(self) -> int:
        return max((i + 1 for i, x in enumerate(self.characters) if x > 0), default=0)

    @property
    def cartan_integer(self) -> int:
        return self.characters[self.ell - 1] if self.ell else 0

    def transform(self, pi: Matrix) -> Matrix:
        return self.gW @ pi @ self.gV_inv

    def untransform(self, pi: Matrix) -> Matrix:
        return self.gW_inv @ pi @ self.gV

    def covector_to_original(self, xi: Sequence) -> tuple:
        return (Matrix([list(xi)]) @ self.gV).row(0)

    def covector_to_frame(self, xi: Sequence) -> tuple:
        return (Matrix([list(xi)]) @ self.gV_inv).row(0)

    def vector_to_original(self, w: Sequence) -> tuple:
        return self.gW_inv.apply(w)

    def vector_to_frame(self, w: Sequence) -> tuple:
        return self.gW.apply(w)

    def with_gW(self, gW: Matrix) -> "Frame":
        return Frame(self.gV, gW, self.characters, self.certified)


def framed_basis(t: Tableau, f: Frame) -> list[Matrix]:
    return [f.transform(m) for m in t.basis]


def _gW_is_generic(mats: Sequence[Matrix], chars: Sequence[int], r: int, n: int) -> bool:
    """First s_i entries of column i are independent modulo all earlier columns."""
    s = len(mats)
    prev: list = []
    base = 0
    for i in range(n):
        cur = prev + [entry_functionals(mats, a, i) for a in range(chars[i])]
        if (span_rank(cur, s) if s else 0) != base + chars[i]:
            return False
        prev = prev + [entry_functionals(mats, a, i) for a in range(r)]
        base = span_rank(prev, s) if s else 0
    return True


def _random_invertible(rng: random.Random, k: int, bound: int = 20) -> Matrix:
    while True:
        m = Matrix([[rng.randint(-bound, bound) for _ in range(k)] for _ in range(k)], cols=k)
        if rank(m) == k:
            return m


def _permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix sending coordinate perm[k] to slot k."""
    k = len(perm)
    return Matrix([[1 if j == perm[i] else 0 for j in range(k)] for i in range(k)], cols=k)


def generic_frame(t: Tableau, seed: int = 0, samples: int = 20, max_samples: int = 200) -> Frame:
    """Frame realising the lexicographically largest characters seen over seeded random bases.

    The maximum must be reached by at least two random samples; otherwise more
    samples are drawn, and the frame is marked uncertified if the budget runs out.
    """
    n, r = t.n, t.r
    if t.s == 0:
        return Frame(Matrix.identity(n), Matrix.identity(r), (0,) * n)
    rng = random.Random(seed)
    draws: list[tuple[tuple, Matrix]] = []
    best = None
    hits = 0
    while len(draws) < samples or (hits < 2 and len(draws) < max_samples):
        g = _random_invertible(rng, n)
        c = characters_in_basis(t, g)
        draws.append((c, g))
        if best is None or c > best:
            best, hits = c, 1
        elif c == best:
            hits += 1
    candidates = [Matrix.identity(n)]
    if n <= 6:
        candidates += [_permutation_matrix(p) for p in itertools.permutations(range(n))][1:]
    candidates += [g for c, g in draws if c == best]
    gV = next(g for g in candidates if characters_in_basis(t, g) == best)
    gW = generic_row_basis(t, gV, best, rng)
    return Frame(gV, gW, best, certified=hits >= 2)


def generic_row_basis(t: Tableau, gV: Matrix, chars: Sequence[int], rng: random.Random | None = None) -> Matrix:
    """W-basis change making the first s_i entries of every column independent."""
    r, n = t.r, t.n
    gVi = inverse(gV)
    mats = [m @ gVi for m in t.basis]
    options = [Matrix.identity(r)]
    if r <= 6:
        options += [_permutation_matrix(p) for p in itertools.permutations(range(r))][1:]
    for gW in options:
        if _gW_is_generic([gW @ m for m in mats], chars, r, n):
            return gW
    rng = rng or random.Random(0)
    for _ in range(1000):
        gW = _random_invertible(rng, r)
        if _gW_is_generic([gW @ m for m in mats], chars, r, n):
            return gW
    raise NonGenericFrame("no generic W-basis found for these characters")


@dataclass(frozen=True)
class SymbolCoeffs:
    """Coefficients ``B^{a,lam}_{i,b}`` keyed by ``(i, a, lam, b)``.

    Keys cover exactly ``a >= s_i``, ``lam <= i``, ``lam < ell`` and ``b < s_lam``.
    """

    r: int
    n: int
    characters: tuple
    entries: dict

    def get(self, i: int, a: int, lam: int, b: int) -> Fraction:
        return self.entries.get((i, a, lam, b), Fraction(0))

    def __len__(self) -> int:
        return len(self.entries)


def _free_index(chars: Sequence[int]) -> list[tuple[int, int]]:
    return [(lam, b) for lam, s in enumerate(chars) for b in range(s)]


def symbol_coeffs(t: Tableau, f: Frame) -> SymbolCoeffs:
    chars = f.characters
    if sum(chars) != t.s:
        raise NonGenericFrame("characters do not sum to the tableau dimension")
    mats = framed_basis(t, f)
    free = _free_index(chars)
    s = t.s
    # free[k] as functional on coefficient space: row k of F
    F = Matrix([entry_functionals(mats, b, lam) for lam, b in free], cols=s) if s else Matrix.zeros(0, 0)
    if s and rank(F) != s:
        raise NonGenericFrame("free entries are not independent in this frame")
    Ft = F.T() if s else F
    entries = {}
    for i in range(t.n):
        for a in range(chars[i], t.r):
            g = entry_functionals(mats, a, i)
            c = solve(Ft, g) if s else ()
            for k, (lam, b) in enumerate(free):
                if lam > i:
                    if c[k]:
                        raise NonGenericFrame(f"entry ({a},{i}) depends on a later column")
                    continue
                entries[(i, a, lam, b)] = c[k]
    coeffs = SymbolCoeffs(t.r, t.n, tuple(chars), entries)
    for m in mats:
        for (i, a), val in _dependent_values(coeffs, m).items():
            if val != m[a, i]:
                raise NonGenericFrame("symbol relations fail on a basis element")
    return coeffs


def _dependent_values(c: SymbolCoeffs, m: Matrix) -> dict:
    out: dict = {}
    for (i, a, lam, b), v in c.entries.items():
        out[(i, a)] = out.get((i, a), Fraction(0)) + v * m[b, lam]
    for i in range(c.n):
        for a in range(c.characters[i], c.r):
            out.setdefault((i, a), Fraction(0))
    return out


@dataclass(frozen=True)
class SymbolBlocks:
    r: int
    n: int
    characters: tuple
    blocks: tuple  # blocks[lam][i], lam < ell

    @property
    def ell(self) -> int:
        return len(self.blocks)

    def __getitem__(self, idx) -> Matrix:
        lam, i = idx
        return self.blocks[lam][i]

    @classmethod
    def from_lists(cls, characters: Sequence[int], blocks: Sequence[Sequence]) -> "SymbolBlocks":
        mats = tuple(tuple(m if isinstance(m, Matrix) else Matrix(m) for m in row) for row in blocks)
        r = mats[0][0].rows if mats else 0
        n = len(characters)
        return cls(r, n, tuple(characters), mats)

    def replace(self, lam: int, i: int, m: Matrix) -> "SymbolBlocks":
        rows = [list(row) for row in self.blocks]
        rows[lam][i] = m
        return SymbolBlocks(self.r, self.n, self.characters, tuple(tuple(x) for x in rows))


def blocks(c: SymbolCoeffs, f: Frame | None = None) -> SymbolBlocks:
    chars = c.characters
    ell = max((k + 1 for k, x in enumerate(chars) if x > 0), default=0)
    r, n = c.r, c.n
    out = []
    for lam in range(ell):
        row = []
        for i in range(n):
            m = [[Fraction(0)] * r for _ in range(r)]
            if i == lam:
                for a in range(chars[i]):
                    m[a][a] = Fraction(1)
            if i >= lam:
                for a in range(chars[i], r):
                    for b in range(chars[lam]):
                        m[a][b] = c.get(i, a, lam, b)
            row.append(Matrix(m, cols=r))
        out.append(tuple(row))
    return SymbolBlocks(r, n, tuple(chars), tuple(out))


def B_eval(b: SymbolBlocks, phi: Sequence, v: Sequence) -> Matrix:
    phi = [to_q(x) for x in phi]
    v = [to_q(x) for x in v]
    if len(phi) != b.ell or len(v) != b.n:
        raise ValueError("phi must have length ell and v length n")
    out = Matrix.zeros(b.r, b.r)
    for lam in range(b.ell):
        for i in range(b.n):
            c = phi[lam] * v[i]
            if c:
                out = out + b[lam, i].scale(c)
    return out


def from_blocks(b: SymbolBlocks, name: str = "") -> Tableau:
    """Tableau whose i-th column is sum_lam B[lam][i] @ (free entries of column lam)."""
    mats = []
    for lam in range(b.ell):
        for k in range(b.characters[lam]):
            cols = [b[lam, i].column(k) for i in range(b.n)]
            mats.append(Matrix.from_columns(cols, rows=b.r))
    return Tableau(b.n, b.r, tuple(mats), name)


def restrict_to_U(t: Tableau, f: Frame) -> Tableau:
    """Tableau of the first ell columns in frame coordinates."""
    ell = f.ell
    mats = [m.submatrix(range(t.r), range(ell)) for m in framed_basis(t, f)]
    return Tableau(ell, t.r, tuple(mats), t.name)


def analyze_frame(t: Tableau, seed: int = 0) -> tuple[Frame, SymbolCoeffs, SymbolBlocks]:
    f = generic_frame(t, seed)
    c = symbol_coeffs(t, f)
    return f, c, blocks(c, f)
