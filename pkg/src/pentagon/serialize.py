"""JSON files for semigroups, solutions and reports.

Output is deterministic: top-level keys keep insertion order, one per
line, and each value is written compactly so matrices stay on one line.
"""
import json

import numpy as np

from .errors import SchemaError
from .semigroup import validate_table
from .solution import PESolution, verify_solution


def _plain(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def dumps(obj):
    obj = _plain(obj)
    if not isinstance(obj, dict) or not obj:
        return json.dumps(obj) + "\n"
    lines = [f"  {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}" for k, v in obj.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def semigroup_to_json(S):
    return {"kind": "semigroup", "order": S.order, "table": S.table.tolist()}


def solution_to_json(s, extra=None):
    out = {"kind": "pe-solution", "order": s.order, "table": s.table.tolist(), "theta": s.theta.tolist()}
    if extra:
        out.update(extra)
    return out


def _matrix(doc, key, n=None, path=""):
    where = f"{path}/{key}"
    if key not in doc:
        raise SchemaError(where, "missing")
    m = doc[key]
    if not isinstance(m, list) or not m:
        raise SchemaError(where, "expected a non-empty list of rows")
    n = len(m) if n is None else n
    if len(m) != n:
        raise SchemaError(where, f"expected {n} rows, got {len(m)}")
    for i, row in enumerate(m):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"{where}/{i}", f"expected a row of length {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int):
                raise SchemaError(f"{where}/{i}/{j}", "expected an integer")
            if not 0 <= v < n:
                raise SchemaError(f"{where}/{i}/{j}", f"entry {v} outside 0..{n - 1}")
    return m


def _order(doc, path=""):
    if not isinstance(doc, dict):
        raise SchemaError(path or "/", "expected an object")
    n = doc.get("order")
    if n is not None and (isinstance(n, bool) or not isinstance(n, int) or n < 1):
        raise SchemaError(f"{path}/order", "expected a positive integer")
    return n


def semigroup_from_json(doc, path=""):
    """Parse and validate; associativity failures raise NotAssociative."""
    n = _order(doc, path)
    table = _matrix(doc, "table", n, path)
    return validate_table(len(table), table)


def solution_from_json(doc, path=""):
    n = _order(doc, path)
    table = _matrix(doc, "table", n, path)
    theta = _matrix(doc, "theta", len(table), path)
    return verify_solution(validate_table(len(table), table), theta)


def read_solution_parts(doc, path=""):
    """(CayleyTable, theta list) without verifying the axioms."""
    n = _order(doc, path)
    table = _matrix(doc, "table", n, path)
    theta = _matrix(doc, "theta", len(table), path)
    return validate_table(len(table), table), theta


def load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError("/", f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc


def save(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def to_json(v):
    if isinstance(v, PESolution):
        return solution_to_json(v)
    return semigroup_to_json(v)
