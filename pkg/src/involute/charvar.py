"""Rank-one ideal, characteristic ideal, mutual eigenspaces and characteristic sheets.

Covectors ``phi`` live on the first ell coordinates (Y-perp) of a frame;
``v`` is a full-length vector of V.  Everything here works in frame
coordinates unless a function says otherwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlin import (
    InconsistentSystem,
    Matrix,
    SingularMatrix,
    det_bareiss,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve_matrix,
    to_q,
)
from .involutive import StandardForm, involutivity_test, standard_form
from .polyring import (
    MPoly,
    VarTable,
    charpoly,
    dense_matrix_eval,
    dense_squarefree_decomposition,
    dense_sturm_count,
    poly_det,
    render_dense,
    split_rational_linear,
)
from .polyring import _mul
from .tableau import B_eval, SymbolBlocks, Tableau, from_blocks


# ------------------------------------------------------------------ ideals

@dataclass(frozen=True)
class RankOneIdeal:
    vars: VarTable
    generators: tuple


def _interreduce(polys: Sequence[MPoly], vt: VarTable) -> tuple:
    if not polys:
        return ()
    monos = sorted({e for p in polys for e in p.terms}, key=lambda e: (sum(e), e), reverse=True)
    col = {e: j for j, e in enumerate(monos)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(monos)
        for e, c in p.terms.items():
            row[col[e]] = c
        rows.append(row)
    red, piv = rref(Matrix(rows, cols=len(monos)))
    return tuple(MPoly(vt, {monos[j]: red[i, j] for j in range(len(monos))}) for i in range(len(piv)))


def rank1_ideal(t: Tableau) -> RankOneIdeal:
    vt = VarTable([f"alpha{k}" for k in range(t.s)])
    alphas = vt.gens()
    zero = MPoly(vt)
    entry = [[sum((alphas[k].scale(m[a, i]) for k, m in enumerate(t.basis) if m[a, i]), zero) for i in range(t.n)] for a in range(t.r)]
    minors = []
    for a, b in itertools.combinations(range(t.r), 2):
        for i, j in itertools.combinations(range(t.n), 2):
            p = entry[a][i] * entry[b][j] - entry[a][j] * entry[b][i]
            if not p.is_zero():
                minors.append(p)
    return RankOneIdeal(vt, _interreduce(minors, vt))


@dataclass(frozen=True)
class CharIdeal:
    vars: VarTable
    dets: tuple  # d_i for i = 1..n
    ell: int

    @property
    def restricted(self) -> tuple:
        return self.dets[self.ell:]


def char_ideal(b: SymbolBlocks) -> CharIdeal:
    vt = VarTable([f"xi{k + 1}" for k in range(b.n)])
    xi = vt.gens()
    zero = MPoly(vt)
    dets = []
    for i in range(b.n):
        m = []
        for a in range(b.r):
            row = []
            for c in range(b.r):
                p = zero
                for lam in range(b.ell):
                    if b[lam, i][a, c]:
                        p = p + xi[lam].scale(b[lam, i][a, c])
                if a == c:
                    p = p - xi[i]
                row.append(p)
            m.append(row)
        dets.append(poly_det(m, vt))
    return CharIdeal(vt, tuple(dets), b.ell)


# ------------------------------------------------------- mutual eigenspaces

def _first_nonzero(phi: Sequence) -> int:
    return next(k for k, x in enumerate(phi) if x)


def mutual_eigenspace(b: SymbolBlocks, phi: Sequence) -> list[tuple]:
    """Basis of {w in W^-(phi) : (sum_lam phi_lam B^lam_mu - phi_mu I) w = 0 for mu < ell}."""
    phi = [to_q(x) for x in phi]
    if len(phi) != b.ell:
        raise ValueError("phi must have length ell")
    if not any(phi):
        raise ValueError("phi must be nonzero")
    sub = b.characters[_first_nonzero(phi)]
    rows = []
    for mu in range(b.ell):
        m = Matrix.zeros(b.r, b.r)
        for lam in range(b.ell):
            if phi[lam]:
                m = m + b[lam, mu].scale(phi[lam])
        m = m - Matrix.identity(b.r).scale(phi[mu])
        rows.extend(r[:sub] for r in m)
    ker = kernel_basis(Matrix(rows, cols=sub)) if sub else []
    return [tuple(v) + (Fraction(0),) * (b.r - sub) for v in ker]


def generic_phis(b: SymbolBlocks, count: int, seed: int = 0, batch: int | None = None) -> list[tuple]:
    """Seeded integer covectors realising the smallest mutual-eigenspace dimension of the batch."""
    rng = random.Random(seed)
    batch = batch or 2 * count
    drawn = []
    while len(drawn) < batch:
        phi = tuple(Fraction(rng.randint(-20, 20)) for _ in range(b.ell))
        if any(phi):
            drawn.append((len(mutual_eigenspace(b, phi)), phi))
    low = min(d for d, _ in drawn)
    picked = [phi for d, phi in drawn if d == low]
    while len(picked) < count:
        phi = tuple(Fraction(rng.randint(-20, 20)) for _ in range(b.ell))
        if any(phi) and len(mutual_eigenspace(b, phi)) == low:
            picked.append(phi)
    return picked[:count]


def _restrict(K: Matrix, M: Matrix) -> Matrix | None:
    """R with M K = K R, or None when span K is not M-invariant."""
    try:
        return solve_matrix(K, M @ K)
    except InconsistentSystem:
        return None


def _Y_maps(b: SymbolBlocks, phi: Sequence) -> list[Matrix]:
    return [B_eval(b, phi, [int(k == q) for k in range(b.n)]) for q in range(b.ell, b.n)]


@dataclass
class EigenSheet:
    phi: tuple
    multiplicity: int
    extension: tuple | None = None  # xi_{ell+1..n} when rational
    factor: tuple | None = None  # dense minimal factor of R(v) otherwise
    eigenvectors: list = field(default_factory=list)
    fiber_dim: int = 0
    member: bool | None = None

    @property
    def xi(self) -> tuple | None:
        return None if self.extension is None else tuple(self.phi) + tuple(self.extension)

    def render(self) -> str:
        if self.extension is not None:
            pts = " : ".join(str(x) for x in self.xi)
            vecs = ", ".join("(" + ", ".join(str(x) for x in w) + ")" for w in self.eigenvectors)
            return f"[{pts}] multiplicity {self.multiplicity}, fiber {self.fiber_dim}: {vecs}"
        return f"implicit root of {render_dense(self.factor)} multiplicity {self.multiplicity}, fiber {self.fiber_dim}"


@dataclass
class FiberReport:
    phi: tuple
    w1_dim: int
    invariant: bool
    commuting: bool
    sheets: list = field(default_factory=list)
    v: tuple = ()

    def factor_type(self) -> tuple:
        out = []
        for s in self.sheets:
            deg = 1 if s.factor is None else len(s.factor) - 1
            out.append((deg, s.multiplicity))
        return tuple(sorted(out))


def _column_matrix(vectors: Sequence[Sequence], rows: int) -> Matrix:
    return Matrix.from_columns(list(vectors), rows=rows)


def _joint_sheets(Rs: list[Matrix], v: Sequence) -> list | None:
    """Split by the characteristic polynomial of sum v_q R_q; None if v is not separating."""
    d = Rs[0].rows
    Rv = Matrix.zeros(d, d)
    for c, R in zip(v, Rs):
        Rv = Rv + R.scale(c)
    out = []
    for f, m in dense_squarefree_decomposition(charpoly(Rv)):
        roots, rest = split_rational_linear(f)
        for e in roots:
            shifted = Rv - Matrix.identity(d).scale(e)
            power = Matrix.identity(d)
            for _ in range(m):
                power = power @ shifted
            G = kernel_basis(power)
            Gm = _column_matrix(G, d)
            ext = []
            for R in Rs:
                Rg = _restrict(Gm, R)
                if Rg is None:
                    return None
                ev = sum((Rg[i, i] for i in range(len(G))), Fraction(0)) / len(G)
                nil = Rg - Matrix.identity(len(G)).scale(ev)
                pw = Matrix.identity(len(G))
                for _ in range(len(G)):
                    pw = pw @ nil
                if not pw.is_zero():
                    return None
                ext.append(ev)
            stack = [row for R in Rs for row in (R - Matrix.identity(d).scale(ext[Rs.index(R)]))]
            eig = kernel_basis(Matrix(stack, cols=d)) if stack else [tuple(Fraction(int(i == j)) for i in range(d)) for j in range(d)]
            out.append(("rational", tuple(ext), m, eig))
        if len(rest) > 1:
            fdim = (d - rank(dense_matrix_eval(rest, Rv))) // (len(rest) - 1)
            out.append(("implicit", tuple(rest), m, fdim))
    return out


def xi_fibers(b: SymbolBlocks, phi: Sequence, seed: int = 0, tries: int = 5) -> FiberReport:
    phi = tuple(to_q(x) for x in phi)
    K = mutual_eigenspace(b, phi)
    d = len(K)
    rep = FiberReport(phi, d, True, True)
    if d == 0:
        return rep
    Km = _column_matrix(K, b.r)
    member_t = from_blocks(b)
    if b.ell == b.n:
        rep.sheets.append(EigenSheet(phi, d, (), None, list(K), d, _member(member_t, K, phi)))
        return rep
    Rs = []
    for M in _Y_maps(b, phi):
        R = _restrict(Km, M)
        if R is None:
            rep.invariant = False
            return rep
        Rs.append(R)
    rep.commuting = all((x @ y - y @ x).is_zero() for x, y in itertools.combinations(Rs, 2))
    rng = random.Random(seed)
    parts = None
    for attempt in range(tries):
        v = tuple(Fraction(1) if attempt == 0 and len(Rs) == 1 else Fraction(rng.randint(-20, 20)) for _ in Rs)
        if not any(v):
            continue
        parts = _joint_sheets(Rs, v)
        if parts is not None:
            rep.v = v
            break
    if parts is None:
        rep.commuting = False
        return rep
    for kind, data, m, extra in parts:
        if kind == "rational":
            ws = [Km.apply(c) for c in extra]
            xi = phi + data
            rep.sheets.append(EigenSheet(phi, m, data, None, ws, len(ws), _member(member_t, ws, xi)))
        else:
            rep.sheets.append(EigenSheet(phi, m, None, data, [], extra, None))
    return rep


def _member(t: Tableau, ws: Sequence, xi: Sequence) -> bool:
    xi = list(phi_pad(xi, t.n))
    return all(t.contains(Matrix([[to_q(a) * x for x in xi] for a in w], cols=t.n)) for w in ws)


def phi_pad(phi: Sequence, n: int) -> tuple:
    return tuple(phi) + (Fraction(0),) * (n - len(phi))


# ------------------------------------------------------------ scheme data

@dataclass
class SchemeSummary:
    involutive: bool
    dim: int | None
    degree: int | None
    components: list = field(default_factory=list)  # (factor text, multiplicity, fiber dim)
    phi: tuple = ()
    v: tuple = ()
    stable_type: bool = True
    label: str = ""

    def multiplicity_pattern(self) -> tuple:
        return tuple(sorted((m for _, m, _ in self.components), reverse=True))


def scheme_summary(t: Tableau, seed: int = 0, sf: StandardForm | None = None) -> SchemeSummary:
    sf = sf or standard_form(t, seed)
    b = sf.blocks
    inv = sf.endovolutive and involutivity_test(b).involutive
    ell, n = sf.frame.ell, t.n
    if ell == 0:
        return SchemeSummary(inv, -1, 0, label="empty characteristic variety")
    if not sf.endovolutive:
        return SchemeSummary(False, None, None, label="non-involutive: degree and dimension theorems not applicable")
    phi = generic_phis(b, 1, seed)[0]
    summary = SchemeSummary(inv, ell - 1, None, phi=phi)
    if not inv:
        summary.label = "non-involutive: degree and dimension theorems not applicable"
    types = set()
    for k in range(5):
        rep = xi_fibers(b, phi, seed=seed + k)
        if not rep.invariant:
            summary.label = "mutual eigenspace not invariant"
            return summary
        types.add(rep.factor_type())
        if k == 0:
            first = rep
    summary.stable_type = len(types) == 1
    summary.v = first.v
    for s in first.sheets:
        if s.factor is None:
            text = "t" if not s.extension else " ; ".join(f"xi{ell + 1 + q} = {x}" for q, x in enumerate(s.extension))
            summary.components.append((text, s.multiplicity, s.fiber_dim))
        else:
            summary.components.append((render_dense(s.factor), s.multiplicity, s.fiber_dim))
    summary.degree = sum(m * (1 if s.factor is None else len(s.factor) - 1) for s, (_, m, _) in zip(first.sheets, summary.components))
    return summary


# ------------------------------------------------------ normal-form checks

@dataclass
class GNFReport:
    invariant: bool
    commuting: bool
    w1_dim: int

    @property
    def ok(self) -> bool:
        return self.invariant and self.commuting


def guillemin_check(b: SymbolBlocks, phi: Sequence, v: Sequence, v2: Sequence) -> GNFReport:
    K = mutual_eigenspace(b, phi)
    if not K:
        return GNFReport(True, True, 0)
    Km = _column_matrix(K, b.r)
    M1, M2 = B_eval(b, phi, v), B_eval(b, phi, v2)
    inv = _restrict(Km, M1) is not None and _restrict(Km, M2) is not None
    comm = ((M1 @ M2 - M2 @ M1) @ Km).is_zero()
    return GNFReport(inv, comm, len(K))


@dataclass
class IncidenceReport:
    forward_checked: int = 0
    forward_failed: list = field(default_factory=list)
    backward_checked: int = 0
    backward_failed: list = field(default_factory=list)
    rejected: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.forward_failed and not self.backward_failed


def incidence_check(t: Tableau, samples: Sequence, seed: int = 0, sf: StandardForm | None = None, phis: int = 3) -> IncidenceReport:
    """Samples are rank-one elements (w, xi) of A in original coordinates."""
    rep = IncidenceReport()
    if t.s == 0:
        return rep
    sf = sf or standard_form(t, seed)
    f, b = sf.frame, sf.blocks
    rng = random.Random(seed)
    ell = f.ell
    for w, xi in samples:
        if not t.contains(Matrix([[to_q(a) * to_q(x) for x in xi] for a in w], cols=t.n)):
            rep.rejected.append((tuple(w), tuple(xi)))
            continue
        wf = f.vector_to_frame(w)
        xf = f.covector_to_frame(xi)
        for _ in range(3):
            v = [Fraction(rng.randint(-9, 9)) for _ in range(t.n)]
            rep.forward_checked += 1
            lhs = B_eval(b, xf[:ell], v).apply(wf)
            xv = sum((a * c for a, c in zip(xf, v)), Fraction(0))
            if tuple(lhs) != tuple(xv * x for x in wf):
                rep.forward_failed.append((tuple(w), tuple(xi), tuple(v)))
    if sf.endovolutive and ell:
        for phi in generic_phis(b, phis, seed):
            for s in xi_fibers(b, phi, seed).sheets:
                if s.xi is None:
                    continue
                xi = f.covector_to_original(s.xi)
                for w in s.eigenvectors:
                    rep.backward_checked += 1
                    wo = f.vector_to_original(w)
                    if not t.contains(Matrix([[a * x for x in xi] for a in wo], cols=t.n)):
                        rep.backward_failed.append((phi, tuple(w)))
    return rep


def rational_rank1_samples(t: Tableau, count: int = 6, seed: int = 0, sf: StandardForm | None = None, grid: int = 4) -> list[tuple]:
    """Rank-one elements (w, xi) of A in original coordinates, found on rational sheets over small covectors."""
    if t.s == 0:
        return []
    sf = sf or standard_form(t, seed)
    if not sf.endovolutive:
        return []
    f, b = sf.frame, sf.blocks
    out: list = []
    seen = set()
    vals = sorted(range(-grid, grid + 1), key=lambda x: (abs(x), -x))
    for phi in itertools.product(vals, repeat=b.ell):
        if not any(phi):
            continue
        for s in xi_fibers(b, phi, seed).sheets:
            if s.xi is None:
                continue
            xi = f.covector_to_original(s.xi)
            for w in s.eigenvectors:
                wo = f.vector_to_original(w)
                key = (tuple(wo), tuple(xi))
                if key not in seen:
                    seen.add(key)
                    out.append(key)
                if len(out) >= count:
                    return out
    return out


# ---------------------------------------------------------- determined case

def is_determined(chars: Sequence[int], r: int) -> bool:
    chars = tuple(chars)
    n = len(chars)
    return n >= 2 and all(x == r for x in chars[:-1]) and chars[-1] == 0 and r > 0


def sigma_phi(b: SymbolBlocks, phi: Sequence) -> Matrix:
    if not is_determined(b.characters, b.r):
        raise ValueError("tableau is not determined")
    phi = [to_q(x) for x in phi]
    n = b.n
    out = Matrix.identity(b.r).scale(-phi[n - 1])
    for lam in range(n - 1):
        if phi[lam]:
            out = out + b[lam, n - 1].scale(phi[lam])
    return out


@dataclass
class HyperbolicReport:
    status: str  # "passed", "failed", "characteristic"
    details: list = field(default_factory=list)


def hyperbolic_probe(b: SymbolBlocks, phi: Sequence, etas: Sequence[Sequence]) -> HyperbolicReport:
    """Real diagonalizability of sigma(phi)^-1 sigma(eta) at each sampled eta.

    Diagonalizability is decided exactly: the matrix is diagonalizable over C
    iff the squarefree part of its characteristic polynomial annihilates it.
    """
    S = sigma_phi(b, phi)
    if det_bareiss(S) == 0:
        return HyperbolicReport("characteristic", ["det sigma(phi) = 0"])
    Si = inverse(S)
    status = "passed"
    details = []
    for eta in etas:
        N = Si @ sigma_phi(b, eta)
        p = charpoly(N)
        sqf = [Fraction(1)]
        for f, _ in dense_squarefree_decomposition(p):
            sqf = _mul(sqf, f)
        real = dense_sturm_count(sqf)
        deg = len(sqf) - 1
        diag = dense_matrix_eval(sqf, N).is_zero()
        ok = real == deg and diag
        details.append((tuple(eta), real, deg, diag))
        if not ok:
            status = "failed"
    return HyperbolicReport(status, details)
