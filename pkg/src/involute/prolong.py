"""Spencer skewing maps, prolongation, H^k dimensions and exactness checks.

Forms on V* are indexed by sorted index tuples.  The map on
``A (x) wedge^{k-1} V*`` sends ``pi (x) u^J`` to ``sum_i pi(:, i) u^i ^ u^J``,
so for k = 2 it reproduces ``P^a_{i,j} - P^a_{j,i}`` on the pair ``i < j``.
"""

from __future__ import annotations

import itertools
import random
from math import comb
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlin import Matrix, hstack, kernel_basis, rank, to_q
from .tableau import Frame, Tableau, framed_basis


def _forms(n: int, k: int) -> list[tuple]:
    return list(itertools.combinations(range(n), k))


def _wedge_front(i: int, J: tuple) -> tuple[int, tuple | None]:
    """u^i ^ u^J as (sign, sorted K) or (0, None)."""
    if i in J:
        return 0, None
    pos = sum(1 for j in J if j < i)
    return (-1) ** pos, tuple(sorted(J + (i,)))


def skew_map(t: Tableau, k: int) -> Matrix:
    """Matrix of A (x) wedge^{k-1} V* -> W (x) wedge^k V*; rows (a, K), columns (basis index, J)."""
    n, r = t.n, t.r
    rows_idx = {(a, K): p for p, (a, K) in enumerate((a, K) for a in range(r) for K in _forms(n, k))}
    cols = []
    for m in t.basis:
        for J in _forms(n, k - 1):
            col = [Fraction(0)] * len(rows_idx)
            for i in range(n):
                sign, K = _wedge_front(i, J)
                if not sign:
                    continue
                for a in range(r):
                    if m[a, i]:
                        col[rows_idx[(a, K)]] += sign * m[a, i]
            cols.append(col)
    nrows = len(rows_idx)
    return Matrix.from_columns(cols, rows=nrows) if cols else Matrix.zeros(nrows, 0)


@dataclass(frozen=True)
class DeltaMap:
    matrix: Matrix
    row_codes: tuple  # (a, (i, j)) with i < j
    col_codes: tuple  # (basis index, j)


def delta_matrix(t: Tableau) -> DeltaMap:
    rows = tuple((a, K) for a in range(t.r) for K in _forms(t.n, 2))
    cols = tuple((m, j) for m in range(t.s) for j in range(t.n))
    return DeltaMap(skew_map(t, 2), rows, cols)


@dataclass(frozen=True)
class Prolongation:
    tableau: Tableau
    basis: tuple  # vectors of length s*n indexed (basis index, j)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def symmetric_tensor(self, k: int) -> list[Matrix]:
        """Element k as the list over a of n x n matrices P^a_{i,j}."""
        t = self.tableau
        v = self.basis[k]
        out = []
        for a in range(t.r):
            rows = []
            for i in range(t.n):
                rows.append([sum((v[m * t.n + j] * t.basis[m][a, i] for m in range(t.s)), Fraction(0)) for j in range(t.n)])
            out.append(Matrix(rows, cols=t.n))
        return out


def prolongation(t: Tableau) -> Prolongation:
    d = delta_matrix(t)
    if t.s == 0:
        return Prolongation(t, ())
    return Prolongation(t, tuple(kernel_basis(d.matrix)))


def prolongation_dim(t: Tableau) -> int:
    if t.s == 0:
        return 0
    return t.s * t.n - rank(delta_matrix(t).matrix)


def as_tableau(p: Prolongation) -> Tableau:
    """A^(1) as a tableau of s x n matrices, with the tableau's own basis as coordinates on A."""
    t = p.tableau
    mats = tuple(Matrix([[v[m * t.n + j] for j in range(t.n)] for m in range(t.s)], cols=t.n) for v in p.basis)
    return Tableau(t.n, t.s, mats, f"{t.name}^(1)" if t.name else "")


def _image_rank(t: Tableau, k: int) -> int:
    if k == 1:
        return t.s
    if t.s == 0:
        return 0
    return rank(skew_map(t, k))


def spencer_dims(t: Tableau, kmax: int | None = None) -> list[int]:
    """dim H^k for k = 1..kmax, H^k being W (x) wedge^k V* modulo the image of A (x) wedge^{k-1} V*."""
    kmax = min(t.n, 4) if kmax is None else kmax
    if kmax > t.n:
        raise ValueError("kmax must not exceed n")
    return [t.r * comb(t.n, k) - _image_rank(t, k) for k in range(1, kmax + 1)]


# ---------------------------------------------------------------- exactness

def _wedge_phi(r: int, n: int, k: int, phi: Sequence) -> Matrix:
    """W (x) wedge^k -> W (x) wedge^{k+1}, x -> phi ^ x."""
    src = [(a, J) for a in range(r) for J in _forms(n, k)]
    dst = {(a, K): p for p, (a, K) in enumerate((a, K) for a in range(r) for K in _forms(n, k + 1))}
    cols = []
    for a, J in src:
        col = [Fraction(0)] * len(dst)
        for i in range(n):
            if phi[i]:
                sign, K = _wedge_front(i, J)
                if sign:
                    col[dst[(a, K)]] += sign * phi[i]
        cols.append(col)
    return Matrix.from_columns(cols, rows=len(dst)) if cols else Matrix.zeros(len(dst), 0)


def _cat(*ms: Matrix) -> Matrix:
    ms = [m for m in ms if m.cols]
    if not ms:
        return None
    return hstack(*ms)


def _rank_or0(m: Matrix | None) -> int:
    return 0 if m is None or m.cols == 0 or m.rows == 0 else rank(m)


def symbol_kernel_dim(t: Tableau, xi: Sequence) -> int:
    """dim {w : w (x) xi in A}; positive exactly when xi is characteristic."""
    xi = [to_q(x) for x in xi]
    rel = t.relations()
    if rel.rows == 0:
        return t.r
    cols = []
    for b in range(t.r):
        cols.append([sum((rel[q, b * t.n + i] * xi[i] for i in range(t.n)), Fraction(0)) for q in range(rel.rows)])
    sigma = Matrix.from_columns(cols, rows=rel.rows)
    return t.r - rank(sigma)


@dataclass
class ExactnessReport:
    exact: bool
    characteristic: bool = False
    positions: list = field(default_factory=list)  # (label, kernel dim, image dim)
    h_dims: list = field(default_factory=list)
    note: str = ""


def quillen_exactness_check(t: Tableau, phi: Sequence) -> ExactnessReport:
    """Exactness of 0 -> W -> H^1 -> ... -> H^n -> 0 under wedge with phi."""
    phi = [to_q(x) for x in phi]
    n, r = t.n, t.r
    if not any(phi) or symbol_kernel_dim(t, phi) > 0:
        return ExactnessReport(False, characteristic=True, note="phi is characteristic")
    images = {0: None}
    for k in range(1, n + 1):
        images[k] = skew_map(t, k) if t.s else None
    images[n + 1] = None
    hdims = []
    for k in range(1, n + 1):
        hdims.append(r * comb(n, k) - _rank_or0(images[k]))
    report = ExactnessReport(True, h_dims=hdims)
    for k in range(0, n + 1):
        amb = r * comb(n, k)
        rank_ik = _rank_or0(images[k])
        if k < n:
            phik = _wedge_phi(r, n, k, phi)
            nxt = images[k + 1]
            preimage = amb - (_rank_or0(_cat(phik, nxt)) - _rank_or0(nxt))
        else:
            preimage = amb
        kernel_dim = preimage - rank_ik
        if k == 0:
            image_dim = 0
        else:
            prev = _wedge_phi(r, n, k - 1, phi)
            image_dim = _rank_or0(_cat(prev, images[k])) - rank_ik
        label = "W" if k == 0 else f"H^{k}"
        report.positions.append((label, kernel_dim, image_dim))
        if kernel_dim != image_dim:
            report.exact = False
    return report


def guillemin_sequence_check(t: Tableau, f: Frame) -> ExactnessReport:
    """Exactness of 0 -> W (x) S^2 U' -> H^1 (x) U' -> H^2 with U' spanned by u^ell..u^n.

    H^1 is realised on the entries outside the free positions of the frame.
    """
    n, r, ell = t.n, t.r, f.ell
    chars = f.characters
    if ell == n:
        return ExactnessReport(True, note="U-perp is zero")
    ft = Tableau(n, r, tuple(framed_basis(t, f)), t.name)
    img = skew_map(ft, 2) if ft.s else None
    rows_idx = {(a, K): p for p, (a, K) in enumerate((a, K) for a in range(r) for K in _forms(n, 2))}
    perp = list(range(ell, n))
    h1 = [(a, i) for i in range(n) for a in range(chars[i], r)]
    domain = [(a, i, q) for (a, i) in h1 for q in perp]
    dom_idx = {key: p for p, key in enumerate(domain)}

    def delta_col(a, i, q):
        col = [Fraction(0)] * len(rows_idx)
        if i != q:
            lo, hi = min(i, q), max(i, q)
            col[rows_idx[(a, (lo, hi))]] = Fraction(1 if i < q else -1)
        return col

    dmat = Matrix.from_columns([delta_col(*key) for key in domain], rows=len(rows_idx))
    pairs = [(p, q) for p in perp for q in perp if p <= q]
    incl_cols = []
    for a in range(r):
        for p, q in pairs:
            col = [Fraction(0)] * len(domain)
            col[dom_idx[(a, p, q)]] += 1
            if p != q:
                col[dom_idx[(a, q, p)]] += 1
            incl_cols.append(col)
    incl = Matrix.from_columns(incl_cols, rows=len(domain))
    s2 = r * comb(n - ell + 1, 2)
    inj = rank(incl) == s2
    composite = dmat @ incl
    comp_zero = _rank_or0(_cat(composite, img)) == _rank_or0(img)
    rank_into_h2 = _rank_or0(_cat(dmat, img)) - _rank_or0(img)
    kernel_dim = len(domain) - rank_into_h2
    rep = ExactnessReport(inj and comp_zero and kernel_dim == s2)
    rep.positions = [("W(x)S2U'", 0, 0 if inj else s2 - rank(incl)), ("H1(x)U'", kernel_dim, s2)]
    rep.h_dims = [s2, len(domain)]
    if not comp_zero:
        rep.note = "composite map is nonzero"
    return rep


# ------------------------------------------------------------- rank-1 prolong

@dataclass
class Rank1ProlongReport:
    forward_checked: int = 0
    forward_failed: list = field(default_factory=list)
    converse_checked: int = 0
    converse_failed: list = field(default_factory=list)
    rejected_samples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.forward_failed and not self.converse_failed


def _outer(w: Sequence, xi: Sequence) -> Matrix:
    return Matrix([[to_q(a) * to_q(b) for b in xi] for a in w], cols=len(xi))


def _tensor_with(coords: Sequence, xi: Sequence, n: int) -> tuple:
    return tuple(c * x for c in coords for x in xi)


def is_rank_one_along(pi: Matrix, xi: Sequence) -> bool:
    """pi == w (x) xi for some nonzero w."""
    if pi.is_zero():
        return False
    n = pi.cols
    return all(pi[a, i] * xi[j] == pi[a, j] * xi[i] for a in range(pi.rows) for i in range(n) for j in range(n))


def rank1_prolong_check(t: Tableau, samples: Sequence, extra_covectors: int = 5, seed: int = 0) -> Rank1ProlongReport:
    """Forward: (w (x) xi) (x) xi lies in A^(1).  Converse: pi (x) xi in A^(1) forces pi = w (x) xi."""
    rep = Rank1ProlongReport()
    if t.s == 0:
        return rep
    d = delta_matrix(t).matrix
    covectors = []
    for w, xi in samples:
        xi = tuple(to_q(x) for x in xi)
        coords = t.coordinates(_outer(w, xi))
        if coords is None or not any(xi) or not any(to_q(x) for x in w):
            rep.rejected_samples.append((tuple(w), xi))
            continue
        rep.forward_checked += 1
        if any(d.apply(_tensor_with(coords, xi, t.n))):
            rep.forward_failed.append((tuple(w), xi))
        covectors.append(xi)
    rng = random.Random(seed)
    for _ in range(extra_covectors):
        covectors.append(tuple(Fraction(rng.randint(-9, 9)) for _ in range(t.n)))
    for xi in covectors:
        if not any(xi):
            continue
        cols = []
        for m in range(t.s):
            e = [Fraction(int(k == m)) for k in range(t.s)]
            cols.append(d.apply(_tensor_with(e, xi, t.n)))
        lift = Matrix.from_columns(cols, rows=d.rows)
        for alpha in kernel_basis(lift):
            rep.converse_checked += 1
            pi = t.element(alpha)
            if not is_rank_one_along(pi, xi):
                rep.converse_failed.append((xi, alpha))
    return rep
