"""JSON and CSV interchange for solution tables.

Rationals travel as "p/q" strings (or "p" when integral) so no decimal
conversion ever happens.  Entries are ordered by (<beta, omega>, beta, d).
JSON carries the whole table; CSV carries only the entries.
"""

import csv
import io
import json
from fractions import Fraction

from qcsolve.polys import NVar
from qcsolve.solver import SolutionTable

FORMATS = ("json", "csv")


class TableFormatError(ValueError):
    pass


def _rat(q):
    return str(Fraction(q))


def _order(problem):
    if problem is None:
        return lambda v: (sum(v.beta), v.beta, v.d)
    return lambda v: (problem.value(v.beta), v.beta, v.d)


def _var(v):
    return {"beta": list(v.beta), "d": list(v.d)}


def export_table(table, fmt="json", problem=None):
    key = _order(problem)
    entries = sorted(table.values, key=key)
    if fmt == "json":
        obj = {
            "algebra": table.algebra,
            "status": table.status,
            "entries": [dict(_var(v), value=_rat(table.values[v])) for v in entries],
            "free": [_var(v) for v in sorted(table.free, key=key)],
            "pins": [_var(v) for v in sorted(table.pins, key=key)],
        }
        return json.dumps(obj, separators=(",", ":")) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, delimiter=";", lineterminator="\n")
        w.writerow(["beta", "d", "value"])
        for v in entries:
            w.writerow([",".join(map(str, v.beta)), ",".join(map(str, v.d)),
                        _rat(table.values[v])])
        return buf.getvalue()
    raise ValueError(f"format must be one of {FORMATS}")


def _parse_rat(text):
    try:
        return Fraction(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise TableFormatError(f"bad rational {text!r}") from None


def _parse_var(obj):
    try:
        return NVar(tuple(int(x) for x in obj["beta"]), tuple(int(x) for x in obj["d"]))
    except (KeyError, TypeError, ValueError):
        raise TableFormatError(f"bad variable {obj!r}") from None


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(",")) if text else ()
    except ValueError:
        raise TableFormatError(f"bad vector {text!r}") from None


def import_table(text, fmt="json", problem=None):
    """Parse a table; with ``problem`` every entry must be admissible."""
    if fmt == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TableFormatError(str(exc)) from None
        if not isinstance(obj, dict) or "entries" not in obj:
            raise TableFormatError("table object needs an 'entries' list")
        values = {}
        for e in obj["entries"]:
            if not isinstance(e, dict) or "value" not in e:
                raise TableFormatError(f"bad entry {e!r}")
            values[_parse_var(e)] = _parse_rat(e["value"])
        table = SolutionTable(values, {_parse_var(v) for v in obj.get("pins", [])},
                              [_parse_var(v) for v in obj.get("free", [])],
                              obj.get("status", "partial"), obj.get("algebra", ""))
    elif fmt == "csv":
        rows = list(csv.reader(io.StringIO(text), delimiter=";"))
        if not rows or rows[0] != ["beta", "d", "value"]:
            raise TableFormatError("csv header must be beta;d;value")
        values = {}
        for row in rows[1:]:
            if not row:
                continue
            if len(row) != 3:
                raise TableFormatError(f"bad csv row {row!r}")
            values[NVar(_ints(row[0]), _ints(row[1]))] = _parse_rat(row[2])
        table = SolutionTable(values)
    else:
        raise ValueError(f"format must be one of {FORMATS}")
    if problem is not None:
        for v in table.values:
            if len(v.beta) != problem.r or not problem.is_admissible(v.beta, v.d):
                raise TableFormatError(f"{v} is not an admissible variable")
    return table


def guess_format(path):
    return "csv" if str(path).lower().endswith(".csv") else "json"
