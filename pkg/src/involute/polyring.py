"""Sparse multivariate polynomials over Q, plus univariate root analysis.

Terms are stored as ``{exponent tuple: Fraction}``.  Printing follows graded
lexicographic order with variables ranked by their position in the table.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from typing import Mapping, Sequence

from .exactlin import Matrix, det_bareiss, format_q, to_q


class VarTable:
    __slots__ = ("names", "_index")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarTable({', '.join(self.names)})"

    def index(self, name: str) -> int:
        return self._index[name]

    def var(self, name_or_index) -> "MPoly":
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        e = [0] * len(self.names)
        e[i] = 1
        return MPoly(self, {tuple(e): Fraction(1)})

    def gens(self) -> list["MPoly"]:
        return [self.var(i) for i in range(len(self.names))]

    def const(self, c) -> "MPoly":
        return MPoly.constant(self, c)


def _grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


class MPoly:
    __slots__ = ("vt", "terms")

    def __init__(self, vt: VarTable, terms: Mapping[tuple, object] | None = None):
        self.vt = vt
        clean = {}
        for e, c in (terms or {}).items():
            c = to_q(c)
            if c:
                if len(e) != len(vt):
                    raise ValueError("exponent length does not match variable table")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, vt: VarTable, c) -> "MPoly":
        return cls(vt, {(0,) * len(vt): c})

    def _check(self, other: "MPoly") -> None:
        if self.vt != other.vt:
            raise ValueError("variable tables differ")

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.constant(self.vt, other)

    def __add__(self, other) -> "MPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.vt, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.vt, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.vt, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        c = to_q(c)
        return MPoly(self.vt, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.constant(self.vt, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.vt == other.vt and self.terms == other.terms
        try:
            return self.terms == MPoly.constant(self.vt, other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.vt, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vt), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading(self) -> tuple[tuple, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def variables_used(self) -> list[int]:
        return [i for i in range(len(self.vt)) if any(e[i] for e in self.terms)]

    def derivative(self, var) -> "MPoly":
        i = var if isinstance(var, int) else self.vt.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MPoly(self.vt, out)

    def evaluate(self, assignment: Mapping) -> "MPoly | Fraction":
        """Substitute values for some variables; fully evaluated results come back as Fractions."""
        vals = {}
        for k, v in assignment.items():
            vals[k if isinstance(k, int) else self.vt.index(k)] = to_q(v)
        out: dict = {}
        for e, c in self.terms.items():
            f = list(e)
            for i, v in vals.items():
                if f[i]:
                    c = c * v ** f[i]
                    f[i] = 0
            if c:
                key = tuple(f)
                out[key] = out.get(key, 0) + c
        p = MPoly(self.vt, out)
        if len(vals) == len(self.vt):
            return p.constant_value() if p.terms else Fraction(0)
        return p

    def content_normalized(self) -> "MPoly":
        """Scale to a primitive integer polynomial with positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for x in nums:
            g = math.gcd(g, x)
        lead = self.leading()[1]
        f = Fraction(den, g) * (1 if lead > 0 else -1)
        return self.scale(f)

    def monic(self) -> "MPoly":
        return self.scale(1 / self.leading()[1])

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                n if d == 1 else f"{n}^{d}" for n, d in zip(self.vt.names, e) if d
            )
            a = abs(c)
            if not mono:
                body = format_q(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_q(a)}*{mono}"
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"MPoly({self.render()})"


def divexact(p: MPoly, d: MPoly) -> MPoly:
    """Exact quotient p / d; raises if d does not divide p."""
    p._check(d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ld, lc = d.leading()
    q: dict = {}
    rem = p
    while rem.terms:
        le, c = rem.leading()
        diff = tuple(a - b for a, b in zip(le, ld))
        if any(x < 0 for x in diff):
            raise ValueError("division is not exact")
        f = c / lc
        q[diff] = q.get(diff, 0) + f
        rem = rem - d * MPoly(p.vt, {diff: f})
    return MPoly(p.vt, q)


def poly_det(m: Sequence[Sequence[MPoly]], vt: VarTable | None = None) -> MPoly:
    """Determinant of a square polynomial matrix.

    Cofactor expansion up to 4x4, fraction-free elimination above that.
    """
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if vt is None:
        vt = next((x.vt for r in m for x in r if isinstance(x, MPoly)), None)
        if vt is None:
            raise ValueError("cannot infer the variable table")
    rows = [[x if isinstance(x, MPoly) else MPoly.constant(vt, x) for x in r] for r in m]
    if n == 0:
        return MPoly.constant(vt, 1)
    if n <= 4:
        return _cofactor(rows, vt)
    return _bareiss_poly(rows, vt)


def _cofactor(m: list[list[MPoly]], vt: VarTable) -> MPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = MPoly(vt)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in m[1:]]
        term = m[0][j] * _cofactor(minor, vt)
        total = total + term if j % 2 == 0 else total - term
    return total


def _bareiss_poly(m: list[list[MPoly]], vt: VarTable) -> MPoly:
    n = len(m)
    a = [list(r) for r in m]
    sign = 1
    prev = MPoly.constant(vt, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return MPoly(vt)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = divexact(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1].scale(sign)


def evaluate_matrix(m: Sequence[Sequence[MPoly]], assignment: Mapping) -> Matrix:
    return Matrix([[x.evaluate(assignment) if isinstance(x, MPoly) else to_q(x) for x in r] for r in m])


def constant_det(m: Matrix) -> Fraction:
    return det_bareiss(m)


# ---------------------------------------------------------------- parsing

def parse_poly(text: str, vt: VarTable) -> MPoly:
    """Parse ``+ - * / ^ **``, integer literals and variable names."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}") from exc

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MPoly.constant(vt, node.value)
        if isinstance(node, ast.Name):
            if node.id not in vt.names:
                raise ValueError(f"unknown variable {node.id!r}")
            return vt.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise ValueError("division only by nonzero constants")
                return left.scale(1 / right.constant_value())
            if isinstance(node.op, ast.Pow):
                if not right.is_constant() or right.constant_value().denominator != 1:
                    raise ValueError("exponents must be integer constants")
                return left ** int(right.constant_value())
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return walk(tree)


# ------------------------------------------------------------- univariate
# Dense coefficient lists, lowest degree first, trailing zeros stripped.

def _trim(c: list) -> list:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def to_dense(p: MPoly) -> list[Fraction]:
    used = p.variables_used()
    if len(used) > 1:
        raise ValueError("polynomial is not univariate")
    i = used[0] if used else 0
    deg = max((e[i] for e in p.terms), default=-1) if len(p.vt) else 0
    out = [Fraction(0)] * (deg + 1)
    for e, c in p.terms.items():
        out[e[i] if len(p.vt) else 0] += c
    return _trim(out)


def from_dense(c: Sequence, vt: VarTable, var: int = 0) -> MPoly:
    terms = {}
    for k, a in enumerate(c):
        e = [0] * len(vt)
        e[var] = k
        terms[tuple(e)] = a
    return MPoly(vt, terms)


def _sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _divmod(a: list, b: list) -> tuple[list, list]:
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = _trim(a)
    q = [Fraction(0)] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        f = r[-1] / b[-1]
        q[k] = f
        r = _sub(r, [Fraction(0)] * k + [f * x for x in b])
    return _trim(q), r


def _monic(a: list) -> list:
    a = _trim(a)
    return [x / a[-1] for x in a] if a else a


def _gcd(a: list, b: list) -> list:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a)


def _deriv(a: list) -> list:
    return _trim([k * a[k] for k in range(1, len(a))])


def dense_eval(a: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def dense_squarefree_decomposition(a: list) -> list[tuple[list, int]]:
    """Yun's algorithm on a dense polynomial of characteristic zero."""
    a = _trim(a)
    if not a:
        raise ValueError("zero polynomial has no squarefree decomposition")
    if len(a) == 1:
        return []
    out = []
    b = _deriv(a)
    c = _gcd(a, b)
    w = _divmod(a, c)[0]
    y = _divmod(b, c)[0]
    k = 1
    while len(w) > 1:
        z = _sub(y, _deriv(w))
        g = _gcd(w, z) if z else _monic(w)
        if len(g) > 1:
            out.append((_monic(g), k))
        w = _divmod(w, g)[0]
        y = _divmod(z, g)[0] if z else []
        k += 1
    return out


def squarefree_decomposition(p: MPoly) -> list[tuple[MPoly, int]]:
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    used = p.variables_used()
    var = used[0] if used else 0
    return [(from_dense(f, p.vt, var), m) for f, m in dense_squarefree_decomposition(to_dense(p))]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def dense_rational_roots(a: list) -> list[Fraction]:
    """Distinct rational roots, ascending, by the divisor search on the end coefficients."""
    a = _trim(a)
    if len(a) <= 1:
        return []
    roots = set()
    while a and not a[0]:
        roots.add(Fraction(0))
        a = a[1:]
    if len(a) > 1:
        den = 1
        for c in a:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in a]
        bound = 1 + max(abs(Fraction(c, ints[-1])) for c in ints[:-1])
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if abs(cand) <= bound and cand not in roots and not dense_eval(ints, cand):
                        roots.add(cand)
    return sorted(roots)


def rational_roots(p: MPoly) -> list[Fraction]:
    return dense_rational_roots(to_dense(p))


def split_rational_linear(a: list) -> tuple[list[Fraction], list]:
    """Split a squarefree dense polynomial into its rational roots and the remaining cofactor."""
    roots = dense_rational_roots(a)
    rest = _trim(a)
    for x in roots:
        rest = _divmod(rest, [-x, Fraction(1)])[0]
    return roots, _monic(rest)


def sturm_sequence(a: list) -> list[list]:
    seq = [_trim(a), _deriv(a)]
    while seq[-1]:
        r = _divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-x for x in r])
    return [s for s in seq if s]


def _sign_changes(values: list) -> int:
    signs = [v for v in values if v]
    return sum(1 for x, y in zip(signs, signs[1:]) if (x > 0) != (y > 0))


def cauchy_bound(a: list) -> Fraction:
    a = _trim(a)
    return 1 + max((abs(c / a[-1]) for c in a[:-1]), default=Fraction(0))


def dense_sturm_count(a: list, lo=None, hi=None) -> int:
    """Number of distinct real roots in the open interval (lo, hi); ``None`` means unbounded."""
    a = _trim(a)
    if not a:
        raise ValueError("zero polynomial has no root count")
    if len(a) == 1:
        return 0
    b = cauchy_bound(a)
    lo = -b if lo is None else to_q(lo)
    hi = b if hi is None else to_q(hi)
    if lo >= hi:
        return 0
    seq = sturm_sequence(a)
    count = _sign_changes([dense_eval(s, lo) for s in seq]) - _sign_changes([dense_eval(s, hi) for s in seq])
    if dense_eval(a, hi) == 0:
        count -= 1
    return count


def sturm_real_root_count(p: MPoly, interval: tuple | None = None) -> int:
    if p.is_zero():
        raise ValueError("zero polynomial has no root count")
    lo, hi = interval if interval is not None else (None, None)
    return dense_sturm_count(to_dense(p), lo, hi)


def charpoly(m: Matrix) -> list[Fraction]:
    """Dense characteristic polynomial det(t I - m), lowest degree first (Faddeev-LeVerrier)."""
    n = m.rows
    if n == 0:
        return [Fraction(1)]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = Matrix.identity(n)
    mk = Matrix.zeros(n, n)
    for k in range(1, n + 1):
        mk = m @ (mk + ident.scale(coeffs[n - k + 1]))
        tr = sum((mk[i, i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -tr / k
    return coeffs


def dense_matrix_eval(a: Sequence, m: Matrix) -> Matrix:
    """Evaluate a dense polynomial at a square matrix (Horner)."""
    n = m.rows
    acc = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for c in reversed(_trim(list(a))):
        acc = acc @ m + ident.scale(c)
    return acc


def render_dense(a: Sequence, var: str = "t") -> str:
    vt = VarTable([var])
    return from_dense(list(a), vt).render()
