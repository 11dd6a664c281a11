"""Serialization of results: JSON, Markdown and CSV.

JSON reports have the fixed top level ``{command, inputs, <payload>, pass}``.
Exact numbers are written as decimal strings so nothing passes through a float.
"""
from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Iterable, List, Mapping, Sequence, Tuple

from .analysis import Verdict
from .exactnum import format_scalar


def jsonable(value, floats_ok: bool = False):
    """Convert ``value`` to JSON types; ``floats_ok`` lets plain numbers through."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int) and floats_ok:
        return value
    if isinstance(value, (int, Fraction)):
        return format_scalar(value)
    if isinstance(value, float):
        return value if floats_ok else repr(value)
    if isinstance(value, enum.Enum):
        return value.value if isinstance(value.value, str) else value.name.lower()
    if isinstance(value, str):
        return value
    if hasattr(value, "canonical"):
        return value.canonical()
    if isinstance(value, Mapping):
        return {_key(k): jsonable(v, floats_ok) for k, v in sorted(value.items(), key=lambda kv: _sort_key(kv[0]))}
    if isinstance(value, (set, frozenset)):
        return [jsonable(v, floats_ok) for v in sorted(value, key=_sort_key)]
    if isinstance(value, (list, tuple)):
        return [jsonable(v, floats_ok) for v in value]
    if is_dataclass(value):
        return {f.name: jsonable(getattr(value, f.name), floats_ok) for f in fields(value)}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _sort_key(k):
    if isinstance(k, tuple):
        return (0, k)
    return (1, str(k))


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    if isinstance(k, enum.Enum):
        return jsonable(k)
    return str(k)


def json_report(command: str, inputs: Mapping, payload_key: str, payload, passed: bool,
                floats_ok: bool = False) -> str:
    if payload_key not in ("verdicts", "diff", "result"):
        raise ValueError(payload_key)
    doc = {
        "command": command,
        "inputs": jsonable(dict(inputs)),
        payload_key: jsonable(payload, floats_ok),
        "pass": bool(passed),
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def verdict_csv(cells: Iterable[Tuple[int, int, Verdict]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["a", "b", "verdict"])
    for a, b, v in cells:
        writer.writerow([a, b, v.value])
    return buf.getvalue()


def markdown_table(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    def cell(x):
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return format_scalar(x)
        return str(x)
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(cell(x) for x in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _pairs(cells: Sequence[Tuple[int, int]]) -> str:
    return ", ".join(f"({a},{b})" for a, b in cells) if cells else "none"


def markdown_equality_failure(title: str, equalities, failures) -> str:
    """Two-column layout (equality | failure) in the style of the printed tables."""
    return f"**{title}**\n\n" + markdown_table(
        ["Equality at (a,b)", "Failure at (a,b)"], [[_pairs(equalities), _pairs(failures)]])


def markdown_diff(diff) -> str:
    out: List[str] = [f"## {diff.table} ({diff.family}), box {diff.box}", ""]
    rows = []
    for key in ("equal", "failure"):
        rows.append([key, len(diff.match.get(key, [])), _pairs(diff.missing_in_computed.get(key, [])),
                     _pairs(diff.extra_in_computed.get(key, []))])
    out.append(markdown_table(["verdict", "match", "missing in computed", "extra in computed"], rows))
    out.append(markdown_table(["row (as printed)", "column", "in-box cells", "result"],
                              [[r.row.raw, r.row.verdict.value, len(r.expected),
                                "match" if r.matched else "missing " + _pairs(r.mismatched)]
                               for r in diff.rows]))
    if diff.notes:
        out.append("Notes:\n")
        out.extend(f"- {n}" for n in diff.notes)
        out.append("")
    out.append(f"Result: {'PASS' if diff.passed else 'FAIL'}\n")
    return "\n".join(out)
