"""JSON formats for functions, networks, bases and reports.

Every loader validates its input fully before returning and reports
problems as :class:`InputError` with a JSON path such as
``$.vertices[2].func``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

from .errors import GadgetError, HolantError, InputError, ParseError
from .field import Scalar, parse_scalar
from .linalg import Matrix
from .reduction import Basis2
from .tensor import Func, Gadget


def _scalar(x: Any, path: str) -> Scalar:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"{path}: expected a scalar expression string, got {type(x).__name__}")
    try:
        return parse_scalar(str(x))
    except (ParseError, HolantError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _int(x: Any, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{path}: expected an integer")
    return x


def _list(x: Any, path: str) -> list:
    if not isinstance(x, list):
        raise InputError(f"{path}: expected a list")
    return x


def _obj(x: Any, path: str) -> dict:
    if not isinstance(x, dict):
        raise InputError(f"{path}: expected an object")
    return x


def _field(d: dict, key: str, path: str) -> Any:
    if key not in d:
        raise InputError(f"{path}: missing field {key!r}")
    return d[key]


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- functions -------------------------------------------------------------

def func_from_json(d: Any, path: str = "$") -> tuple[str, Func]:
    d = _obj(d, path)
    name = _field(d, "name", path)
    if not isinstance(name, str) or not name:
        raise InputError(f"{path}.name: expected a nonempty string")
    arity = _int(_field(d, "arity", path), f"{path}.arity")
    if arity < 0:
        raise InputError(f"{path}.arity: must be nonnegative")
    values = _list(_field(d, "values", path), f"{path}.values")
    if len(values) != 1 << arity:
        raise InputError(f"{path}.values: arity {arity} needs {1 << arity} values, got {len(values)}")
    return name, Func([_scalar(v, f"{path}.values[{k}]") for k, v in enumerate(values)], arity)


def func_to_json(name: str, f: Func) -> dict:
    return {"name": name, "arity": f.arity, "values": [str(v) for v in f.values]}


def functions_from_json(d: Any, path: str = "$") -> list[tuple[str, Func]]:
    """A list of function objects, a single one, or ``{"functions": [...]}``."""
    if isinstance(d, dict) and "functions" in d:
        d, path = d["functions"], f"{path}.functions"
    elif isinstance(d, dict):
        return [func_from_json(d, path)]
    items = _list(d, path)
    out = [func_from_json(x, f"{path}[{k}]") for k, x in enumerate(items)]
    seen = set()
    for k, (name, _) in enumerate(out):
        if name in seen:
            raise InputError(f"{path}[{k}].name: duplicate function name {name!r}")
        seen.add(name)
    return out


def functions_to_json(funcs: Sequence[tuple[str, Func]]) -> dict:
    return {"functions": [func_to_json(n, f) for n, f in funcs]}


def load_functions(path: str | Path) -> list[tuple[str, Func]]:
    return functions_from_json(read_json(path))


# -- networks --------------------------------------------------------------

def _endpoint(x: Any, path: str) -> tuple[int, int]:
    x = _list(x, path)
    if len(x) != 2:
        raise InputError(f"{path}: an endpoint is [vertex, slot]")
    return _int(x[0], f"{path}[0]"), _int(x[1], f"{path}[1]")


def network_from_json(d: Any, path: str = "$") -> Gadget:
    d = _obj(d, path)
    funcs = dict(functions_from_json(_field(d, "functions", path), f"{path}.functions"))
    verts = _list(_field(d, "vertices", path), f"{path}.vertices")
    chosen, sides, used = [], [], []
    for k, v in enumerate(verts):
        vp = f"{path}.vertices[{k}]"
        v = _obj(v, vp)
        name = _field(v, "func", vp)
        if name not in funcs:
            raise InputError(f"{vp}.func: unknown function {name!r}")
        chosen.append(funcs[name])
        used.append(name)
        if "side" in v:
            side = _int(v["side"], f"{vp}.side")
            if side not in (0, 1):
                raise InputError(f"{vp}.side: must be 0 or 1")
            sides.append(side)
    if sides and len(sides) != len(chosen):
        raise InputError(f"{path}.vertices: side tags must be given for every vertex or none")
    edges = []
    for k, e in enumerate(_list(_field(d, "edges", path), f"{path}.edges")):
        ep = f"{path}.edges[{k}]"
        e = _list(e, ep)
        if len(e) != 2:
            raise InputError(f"{ep}: an edge joins two endpoints")
        edges.append((_endpoint(e[0], f"{ep}[0]"), _endpoint(e[1], f"{ep}[1]")))
    ext = [_endpoint(x, f"{path}.external[{k}]") for k, x in enumerate(_list(d.get("external", []), f"{path}.external"))]
    try:
        return Gadget(tuple(chosen), tuple(edges), tuple(ext), tuple(sides) if sides else None, tuple(used))
    except GadgetError as exc:
        raise InputError(f"{path}.{exc}") from None


def network_to_json(g: Gadget) -> dict:
    labels = list(g.names) if g.names else []
    if len(set(zip(labels, g.funcs))) != len(set(labels)):
        labels = []
    names: dict[Func, str] = {}
    for k, f in enumerate(g.funcs):
        names.setdefault(f, labels[k] if labels else f"f{len(names)}")
    verts = []
    for k, f in enumerate(g.funcs):
        v = {"func": names[f]}
        if g.sides is not None:
            v["side"] = g.sides[k]
        verts.append(v)
    return {
        "functions": [func_to_json(n, f) for f, n in names.items()],
        "vertices": verts,
        "edges": [[list(a), list(b)] for a, b in g.edges],
        "external": [list(e) for e in g.external],
    }


def load_network(path: str | Path) -> Gadget:
    return network_from_json(read_json(path))


# -- bases -----------------------------------------------------------------

def basis_from_json(d: Any, path: str = "$") -> Basis2:
    d = _obj(d, path)
    rows = _list(_field(d, "entries", path), f"{path}.entries")
    if len(rows) != 2:
        raise InputError(f"{path}.entries: a basis is 2x2")
    m = []
    for r, row in enumerate(rows):
        row = _list(row, f"{path}.entries[{r}]")
        if len(row) != 2:
            raise InputError(f"{path}.entries[{r}]: a basis is 2x2")
        m.append(tuple(_scalar(x, f"{path}.entries[{r}][{c}]") for c, x in enumerate(row)))
    return Basis2(tuple(m))


def load_basis(path: str | Path) -> Basis2:
    return basis_from_json(read_json(path))


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m]
