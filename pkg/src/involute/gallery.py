"""Built-in example tableaux."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .exactlin import Matrix
from .tableau import SymbolBlocks, Tableau, from_blocks


def _sym(i: int, j: int, n: int = 3) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    m[i][j] = m[j][i] = 1
    return m


def hankel() -> Tableau:
    """3x3 Hankel matrices; coefficient k sits on the anti-diagonal i + j = k."""
    mats = [Matrix([[1 if i + j == k else 0 for j in range(3)] for i in range(3)]) for k in range(5)]
    return Tableau(3, 3, tuple(mats), "hankel")


def veronese(kappa, tau) -> tuple:
    """Hankel coefficients of the rank-one element (k^2, k t, t^2) (x) (k^2, k t, t^2)."""
    k, t = Fraction(kappa), Fraction(tau)
    return (k**4, k**3 * t, k**2 * t**2, k * t**3, t**4)


def wave() -> Tableau:
    """Second jets of f with f11 + f22 = f33, coefficients p11, p12, p13, p22, p23."""
    p11 = [[1, 0, 0], [0, 0, 0], [0, 0, 1]]
    p22 = [[0, 0, 0], [0, 1, 0], [0, 0, 1]]
    mats = [p11, _sym(0, 1), _sym(0, 2), p22, _sym(1, 2)]
    return Tableau(3, 3, tuple(Matrix(m) for m in mats), "wave")


ZERODIM_C = (Fraction(1), Fraction(2), Fraction(-1), Fraction(3))
ZERODIM_D = (Fraction(2), Fraction(-3), Fraction(1), Fraction(1, 2))


def _zerodim(c, d, jordan: bool, name: str) -> Tableau:
    B12 = [[c[a] if a == b else 0 for b in range(4)] for a in range(4)]
    B13 = [[d[a] if a == b else 0 for b in range(4)] for a in range(4)]
    if jordan:
        B12[0][1] = 1
        B13[0][1] = 1
    ident = [[int(a == b) for b in range(4)] for a in range(4)]
    sb = SymbolBlocks.from_lists((4, 0, 0), [[ident, B12, B13]])
    return from_blocks(sb, name)


def zerodim_a() -> Tableau:
    """Four distinct simple sheets."""
    return _zerodim(ZERODIM_C, ZERODIM_D, False, "zerodim-a")


def zerodim_b() -> Tableau:
    """Rows 1 and 2 share a sheet with a two-dimensional fiber."""
    c = (ZERODIM_C[0],) + ZERODIM_C[:1] + ZERODIM_C[2:]
    d = (ZERODIM_D[0],) + ZERODIM_D[:1] + ZERODIM_D[2:]
    return _zerodim(c, d, False, "zerodim-b")


def zerodim_c() -> Tableau:
    """Rows 1 and 2 form a 2x2 Jordan block."""
    c = (ZERODIM_C[0],) + ZERODIM_C[:1] + ZERODIM_C[2:]
    d = (ZERODIM_D[0],) + ZERODIM_D[:1] + ZERODIM_D[2:]
    return _zerodim(c, d, True, "zerodim-c")


def zerodim_d() -> Tableau:
    """A Jordan block on rows 1-2 plus row 3 on the same sheet."""
    c = (ZERODIM_C[0],) * 3 + ZERODIM_C[3:]
    d = (ZERODIM_D[0],) * 3 + ZERODIM_D[3:]
    return _zerodim(c, d, True, "zerodim-d")


def onedim_blocks() -> SymbolBlocks:
    ninth = Fraction(1, 9)
    return SymbolBlocks.from_lists(
        (2, 1, 0),
        [
            [[[1, 0], [0, 1]], [[0, 0], [ninth, 0]], [[5, 0], [1, 5]]],
            [[[0, 0], [0, 0]], [[1, 0], [0, 0]], [[9, 0], [0, 0]]],
        ],
    )


def onedim() -> Tableau:
    """Elements [[a0, a2, 5 a0 + 9 a2], [a1, a0/9, a0 + 5 a1]]."""
    return from_blocks(onedim_blocks(), "onedim")


MODULI_320_POINT = {
    0: 0, 1: 0, 2: 2, 3: 1, 4: -1, 5: 0, 6: 3, 7: 1,
    8: 0, 9: 2, 10: -2, 11: 1, 12: 1, 13: 2, 14: -1, 15: 3,
}


def moduli_320() -> Tableau:
    """Point of the component x0 = x1 = x5 = x8 = 0 of the (3,2,0) moduli ideal."""
    from .moduli import instantiate, parametric_endovolutive

    pb = parametric_endovolutive(3, 3, (3, 2, 0))
    return from_blocks(instantiate(pb, MODULI_320_POINT), "moduli-320")


GALLERY: dict[str, Callable[[], Tableau]] = {
    "hankel": hankel,
    "wave": wave,
    "zerodim-a": zerodim_a,
    "zerodim-b": zerodim_b,
    "zerodim-c": zerodim_c,
    "zerodim-d": zerodim_d,
    "onedim": onedim,
    "moduli-320": moduli_320,
}


def get(name: str) -> Tableau:
    try:
        return GALLERY[name]()
    except KeyError:
        raise KeyError(f"unknown gallery entry {name!r}; choose from {', '.join(GALLERY)}") from None


def _q_list(xs) -> list[str]:
    return [str(x) for x in xs]


def extras(name: str) -> dict:
    """Descriptive fields written next to the basis in a gallery file."""
    notes = {
        "hankel": {"description": "3x3 Hankel matrices, coefficients alpha0..alpha4 along anti-diagonals"},
        "wave": {"description": "second jets of f with f11 + f22 = f33; coefficients p11, p12, p13, p22, p23"},
        "onedim": {
            "description": "blocks B12 = [[0,0],[1/9,0]], B13 = [[5,0],[1,5]], B23 = [[9,0],[0,0]]",
            "sample_phi": [[3, t] for t in range(5)],
        },
        "moduli-320": {
            "description": "(3,2,0) parametric blocks at a point with x0 = x1 = x5 = x8 = 0",
            "parameters": {f"x{k}": v for k, v in MODULI_320_POINT.items()},
        },
    }
    zd = {
        "zerodim-a": ("distinct sheets", ZERODIM_C, ZERODIM_D),
        "zerodim-b": ("rows 1, 2 on one sheet", (ZERODIM_C[0],) + ZERODIM_C[:1] + ZERODIM_C[2:], (ZERODIM_D[0],) + ZERODIM_D[:1] + ZERODIM_D[2:]),
        "zerodim-c": ("2x2 Jordan block on rows 1, 2", (ZERODIM_C[0],) + ZERODIM_C[:1] + ZERODIM_C[2:], (ZERODIM_D[0],) + ZERODIM_D[:1] + ZERODIM_D[2:]),
        "zerodim-d": ("Jordan block on rows 1, 2 and row 3 on the same sheet", (ZERODIM_C[0],) * 3 + ZERODIM_C[3:], (ZERODIM_D[0],) * 3 + ZERODIM_D[3:]),
    }
    for key, (text, c, d) in zd.items():
        notes[key] = {
            "description": f"rows [alpha_a, c_a alpha_a, d_a alpha_a]; {text}",
            "parameters": {"c": _q_list(c), "d": _q_list(d)},
        }
    if name not in GALLERY:
        raise KeyError(f"unknown gallery entry {name!r}")
    return notes.get(name, {})
