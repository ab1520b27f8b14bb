"""JSON network files.

A network file is a JSON object::

    {
      "version": 1,
      "dimension": 2,
      "legos": {
        "q": {"builtin": "code_422"},
        "rep": {"builtin": "repetition", "params": {"r": 3, "kind": "Z"}},
        "bell": {"n_legs": 2, "stabilizers": ["XX", "ZZ"]}
      },
      "instances": [{"id": "a", "lego": "q"}, {"id": "b", "lego": "q"}],
      "edges": [[["a", 0], ["b", 0]]],
      "roles": {"default": "physical", "a.4": "logical"}
    }

Custom legos may also carry ``"ups"``, a map from entry name to one label
per leg. Leg indices are 0-based. Without a ``"default"`` role every
dangling leg must be listed in ``"roles"``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .legos import UnknownLego, builtin
from .network import ROLES, Lego, NetworkError, TensorNetwork, leg_name, parse_leg
from .symplectic import CheckMatrix, CommutationError, format_pauli, parse_pauli

FORMAT_VERSION = 1


class NetworkFileError(ValueError):
    """A network file that cannot be read. ``where`` locates the problem."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def _lego_from(spec: Any, d: int, where: str) -> Lego:
    if not isinstance(spec, dict):
        raise NetworkFileError("lego description must be an object", where)
    if "builtin" in spec:
        extra = set(spec) - {"builtin", "params"}
        if extra:
            raise NetworkFileError(f"unexpected keys {sorted(extra)}", where)
        params = spec.get("params", {})
        if not isinstance(params, dict):
            raise NetworkFileError("params must be an object", where)
        try:
            return builtin(spec["builtin"], d=d, **params)
        except (UnknownLego, TypeError, ValueError) as exc:
            raise NetworkFileError(str(exc), where) from None
    if "stabilizers" not in spec or "n_legs" not in spec:
        raise NetworkFileError("lego needs either 'builtin' or 'n_legs' and 'stabilizers'", where)
    extra = set(spec) - {"n_legs", "stabilizers", "ups", "name"}
    if extra:
        raise NetworkFileError(f"unexpected keys {sorted(extra)}", where)
    n = spec["n_legs"]
    if not isinstance(n, int) or n < 1:
        raise NetworkFileError("n_legs must be a positive integer", where)
    try:
        rows = [parse_pauli(s, d) for s in spec["stabilizers"]]
    except (ValueError, TypeError) as exc:
        raise NetworkFileError(f"bad stabilizer: {exc}", where) from None
    for i, p in enumerate(rows):
        if p.n != n:
            raise NetworkFileError(f"stabilizer {i} has {p.n} legs, expected {n}", where)
    try:
        state = CheckMatrix.from_paulis(rows, d, n)
    except CommutationError as exc:
        raise NetworkFileError(str(exc), where) from None
    ups = {}
    for name, labels in spec.get("ups", {}).items():
        if len(labels) != n:
            raise NetworkFileError(f"entry {name!r} has {len(labels)} labels for {n} legs", where)
        ups[name] = tuple(str(s) for s in labels)
    return Lego(spec.get("name", "custom"), state, ups)


def _leg_from(obj: Any, where: str) -> tuple[str, int]:
    if isinstance(obj, str):
        try:
            return parse_leg(obj)
        except NetworkError as exc:
            raise NetworkFileError(str(exc), where) from None
    if isinstance(obj, list) and len(obj) == 2 and isinstance(obj[0], str) and isinstance(obj[1], int):
        return obj[0], obj[1]
    raise NetworkFileError("leg must be [instance, index] or 'instance.index'", where)


def network_from_dict(data: Any) -> TensorNetwork:
    if not isinstance(data, dict):
        raise NetworkFileError("top level must be an object")
    if data.get("version") != FORMAT_VERSION:
        raise NetworkFileError(f"unsupported version {data.get('version')!r}", "version")
    d = data.get("dimension", 2)
    if not isinstance(d, int):
        raise NetworkFileError("dimension must be an integer", "dimension")
    try:
        from .fieldvec import check_modulus

        check_modulus(d)
    except ValueError as exc:
        raise NetworkFileError(str(exc), "dimension") from None
    legos = {name: _lego_from(spec, d, f"legos.{name}") for name, spec in data.get("legos", {}).items()}
    net = TensorNetwork(d)
    for i, inst in enumerate(data.get("instances", [])):
        where = f"instances[{i}]"
        if not isinstance(inst, dict) or "id" not in inst or "lego" not in inst:
            raise NetworkFileError("instance needs 'id' and 'lego'", where)
        if inst["lego"] not in legos:
            raise NetworkFileError(f"unknown lego {inst['lego']!r}", where)
        try:
            net.add(str(inst["id"]), legos[inst["lego"]])
        except NetworkError as exc:
            raise NetworkFileError(str(exc), where) from None
    for i, edge in enumerate(data.get("edges", [])):
        where = f"edges[{i}]"
        if not isinstance(edge, list) or len(edge) != 2:
            raise NetworkFileError("edge must be a pair of legs", where)
        net.connect(_leg_from(edge[0], where), _leg_from(edge[1], where))
    roles = dict(data.get("roles", {}))
    default = roles.pop("default", None)
    if default is not None:
        if default not in ROLES:
            raise NetworkFileError(f"unknown role {default!r}", "roles.default")
        net.default_role = default
    for key, role in roles.items():
        if role not in ROLES:
            raise NetworkFileError(f"unknown role {role!r}", f"roles.{key}")
        net.roles[_leg_from(key, f"roles.{key}")] = role
    try:
        net.validate()
    except NetworkError as exc:
        raise NetworkFileError(str(exc), "network") from None
    if default is None:
        missing = [leg_name(leg) for leg in net.dangling() if leg not in net.roles]
        if missing:
            raise NetworkFileError(f"no role for dangling legs {missing[:5]} and no default", "roles")
    return net


def loads(text: str) -> TensorNetwork:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFileError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return network_from_dict(data)


def load(path: str | Path) -> TensorNetwork:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise NetworkFileError(str(exc), str(path)) from None
    try:
        return loads(text)
    except NetworkFileError as exc:
        raise NetworkFileError(str(exc), str(path)) from None


def _lego_to(lego: Lego, d: int) -> dict:
    try:
        ref = builtin(lego.name, d=d)
    except (UnknownLego, TypeError, ValueError):
        ref = None
    if ref is not None and ref.state == lego.state and dict(ref.ups) == dict(lego.ups):
        return {"builtin": lego.name}
    out: dict[str, Any] = {
        "name": lego.name,
        "n_legs": lego.n_legs,
        "stabilizers": [format_pauli(row, d) for row in lego.state.matrix],
    }
    if lego.ups:
        out["ups"] = {k: list(v) for k, v in sorted(lego.ups.items())}
    return out


def network_to_dict(net: TensorNetwork) -> dict:
    """Plain data for ``net``; equal legos are written once."""
    legos: dict[str, dict] = {}
    keys: dict[tuple, str] = {}
    instances = []
    for inst, lego in net.instances.items():
        sig = (lego.name, lego.state.matrix.tobytes(), lego.state.n, tuple(sorted(lego.ups.items())))
        if sig not in keys:
            key = lego.name
            i = 1
            while key in legos:
                i += 1
                key = f"{lego.name}_{i}"
            keys[sig] = key
            legos[key] = _lego_to(lego, net.d)
        instances.append({"id": inst, "lego": keys[sig]})
    roles = {"default": net.default_role}
    for leg, role in net.roles.items():
        roles[leg_name(leg)] = role
    return {
        "version": FORMAT_VERSION,
        "dimension": net.d,
        "legos": legos,
        "instances": instances,
        "edges": [[[a[0], a[1]], [b[0], b[1]]] for a, b in net.edges],
        "roles": roles,
    }


def dumps(net: TensorNetwork) -> str:
    return json.dumps(network_to_dict(net), indent=1, sort_keys=True) + "\n"


def dump(net: TensorNetwork, path: str | Path) -> None:
    Path(path).write_text(dumps(net))


def same_network(a: TensorNetwork, b: TensorNetwork) -> bool:
    """Structural equality: instance ids, lego states, edges and roles."""
    if a.d != b.d or list(a.instances) != list(b.instances):
        return False
    for i in a.instances:
        la, lb = a.instances[i], b.instances[i]
        if la.state != lb.state or dict(la.ups) != dict(lb.ups):
            return False
    if [tuple(map(tuple, e)) for e in a.edges] != [tuple(map(tuple, e)) for e in b.edges]:
        return False
    return all(a.role(leg) == b.role(leg) for leg in a.dangling() + b.dangling())


__all__ = [
    "FORMAT_VERSION",
    "NetworkFileError",
    "dump",
    "dumps",
    "load",
    "loads",
    "network_from_dict",
    "network_to_dict",
    "same_network",
]
