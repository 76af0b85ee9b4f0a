"""Reading and writing tableau files (JSON documents with rationals as strings)."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .exactlin import Matrix, format_q
from .tableau import Tableau


class TableauFormatError(ValueError):
    pass


def _q(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise TableauFormatError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise TableauFormatError(f"{where}: bad rational {x!r}") from exc


def _int(doc: dict, key: str) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise TableauFormatError(f"field {key!r} must be a non-negative integer")
    return v


def parse_document(doc) -> tuple[Tableau | None, dict]:
    if not isinstance(doc, dict):
        raise TableauFormatError("top level must be an object")
    extras = {k: v for k, v in doc.items() if k not in ("n", "r", "basis", "relations")}
    if "basis" not in doc and "relations" not in doc:
        if "phase_generators" in doc:
            return None, {**extras, "n": doc.get("n")}
        raise TableauFormatError("need a 'basis' or 'relations' field")
    n, r = _int(doc, "n"), _int(doc, "r")
    name = str(doc.get("name", ""))
    try:
        if "basis" in doc:
            mats = []
            for k, m in enumerate(doc["basis"]):
                if not isinstance(m, list) or len(m) != r or any(not isinstance(row, list) or len(row) != n for row in m):
                    raise TableauFormatError(f"basis[{k}] must be an {r}x{n} array")
                mats.append(Matrix([[_q(x, f"basis[{k}]") for x in row] for row in m], cols=n))
            t = Tableau(n, r, tuple(mats), name)
        else:
            rel = doc["relations"]
            if not isinstance(rel, list) or any(not isinstance(row, list) or len(row) != r * n for row in rel):
                raise TableauFormatError(f"relations must be rows of length {r * n}")
            t = Tableau.from_relations([[_q(x, "relations") for x in row] for row in rel], r, n, name)
    except TableauFormatError:
        raise
    except ValueError as exc:
        raise TableauFormatError(str(exc)) from exc
    return t, extras


def load(path: str | Path) -> tuple[Tableau | None, dict]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise TableauFormatError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableauFormatError(f"{path}: not valid JSON ({exc.msg}, line {exc.lineno})") from exc
    return parse_document(doc)


def dumps(t: Tableau, extras: dict | None = None) -> str:
    doc = {"name": t.name, "n": t.n, "r": t.r}
    doc.update(extras or {})
    doc["basis"] = [[[format_q(x) for x in row] for row in m] for m in t.basis]
    lines = json.dumps(doc, indent=2, ensure_ascii=False)
    return _compact_rows(lines) + "\n"


def _compact_rows(text: str) -> str:
    """Put each innermost list of scalars on one line."""
    scalar = r"(?:\"[^\"]*\"|-?\d+)"
    pattern = re.compile(r"\[\s*(" + scalar + r"(?:,\s*" + scalar + r")*)\s*\]")
    return pattern.sub(lambda m: "[" + re.sub(r",\s*", ", ", m.group(1)) + "]", text)
