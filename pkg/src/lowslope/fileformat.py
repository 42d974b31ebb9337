"""JSON monodromy files.

A curve record is either a bare string (a named curve) or
``{"image": {"map": <map>, "of": <curve>}}``.  A map record is one of
``{"twist": <curve>}``, ``{"declared": name}``, ``{"compose": [<map>...]}``,
``{"power": {"base": <map>, "exp": k}}`` or ``{"inverse": <map>}``.
Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .expr import Compose, CurveExpr, Declared, Image, Inverse, MapExpr, Named, Power, Twist
from .ledger import InvariantLedger
from .surface import SurfaceError, get_surface
from .words import Factorization, Step

FORMAT_VERSION = 1

_TOP = {"format_version", "genus", "letters", "ledger", "flags", "provenance"}
_LEDGER = {"n", "sigma"}
_FLAGS = {"is_relator", "is_fiber_sum", "base_name", "claims_simply_connected"}


class FormatError(ValueError):
    pass


def curve_to_json(e: CurveExpr) -> Any:
    if isinstance(e, Named):
        return e.name
    if isinstance(e, Image):
        return {"image": {"map": map_to_json(e.map), "of": curve_to_json(e.of)}}
    raise TypeError(f"not a curve expression: {e!r}")


def map_to_json(m: MapExpr) -> Any:
    if isinstance(m, Twist):
        return {"twist": curve_to_json(m.curve)}
    if isinstance(m, Declared):
        return {"declared": m.name}
    if isinstance(m, Compose):
        return {"compose": [map_to_json(p) for p in m.parts]}
    if isinstance(m, Power):
        return {"power": {"base": map_to_json(m.base), "exp": m.exp}}
    if isinstance(m, Inverse):
        return {"inverse": map_to_json(m.base)}
    raise TypeError(f"not a map expression: {m!r}")


def _single(rec: Any, what: str) -> tuple[str, Any]:
    if not isinstance(rec, dict) or len(rec) != 1:
        raise FormatError(f"{what} record must be an object with exactly one key, got {rec!r}")
    return next(iter(rec.items()))


def _keys(obj: Any, allowed: set[str], required: set[str], what: str) -> dict:
    if not isinstance(obj, dict):
        raise FormatError(f"{what} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise FormatError(f"unknown field(s) in {what}: {sorted(extra)}")
    missing = required - set(obj)
    if missing:
        raise FormatError(f"missing field(s) in {what}: {sorted(missing)}")
    return obj


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{what} must be an integer")
    return x


def curve_from_json(rec: Any) -> CurveExpr:
    if isinstance(rec, str):
        return Named(rec)
    key, body = _single(rec, "curve")
    if key != "image":
        raise FormatError(f"unknown curve record {key!r}")
    body = _keys(body, {"map", "of"}, {"map", "of"}, "image")
    return Image(map_from_json(body["map"]), curve_from_json(body["of"]))


def map_from_json(rec: Any) -> MapExpr:
    key, body = _single(rec, "map")
    if key == "twist":
        return Twist(curve_from_json(body))
    if key == "declared":
        if not isinstance(body, str):
            raise FormatError("declared map name must be a string")
        return Declared(body)
    if key == "compose":
        if not isinstance(body, list):
            raise FormatError("compose must hold a list")
        return Compose(tuple(map_from_json(p) for p in body))
    if key == "power":
        body = _keys(body, {"base", "exp"}, {"base", "exp"}, "power")
        return Power(map_from_json(body["base"]), _int(body["exp"], "power exponent"))
    if key == "inverse":
        return Inverse(map_from_json(body))
    raise FormatError(f"unknown map record {key!r}")


@dataclass(frozen=True)
class MonodromyFile:
    word: Factorization
    declared_n: int
    claims_simply_connected: bool = False

    @property
    def ledger_consistent(self) -> bool:
        return self.declared_n == len(self.word)


def to_dict(w: Factorization, claims_simply_connected: bool = False) -> dict:
    led = w.ledger
    return {
        "format_version": FORMAT_VERSION,
        "genus": w.genus,
        "letters": [curve_to_json(x) for x in w.letters],
        "ledger": {"n": led.n, "sigma": led.sigma},
        "flags": {
            "is_relator": led.is_relator,
            "is_fiber_sum": led.is_fiber_sum,
            "base_name": led.base_name,
            "claims_simply_connected": claims_simply_connected,
        },
        "provenance": [s.as_dict() for s in w.provenance],
    }


def dumps(w: Factorization, claims_simply_connected: bool = False) -> str:
    return json.dumps(to_dict(w, claims_simply_connected), indent=1, sort_keys=True) + "\n"


def from_dict(data: Any, strict_ledger: bool = True) -> MonodromyFile:
    data = _keys(data, _TOP, _TOP, "monodromy file")
    if data["format_version"] != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {data['format_version']!r}")
    g = _int(data["genus"], "genus")
    if g < 2:
        raise FormatError("genus must be >= 2")
    if not isinstance(data["letters"], list):
        raise FormatError("letters must be a list")
    led = _keys(data["ledger"], _LEDGER, _LEDGER, "ledger")
    n, sigma = _int(led["n"], "ledger.n"), _int(led["sigma"], "ledger.sigma")
    flags = _keys(data["flags"], _FLAGS, {"is_relator", "is_fiber_sum", "base_name"}, "flags")
    for k in ("is_relator", "is_fiber_sum", "claims_simply_connected"):
        if k in flags and not isinstance(flags[k], bool):
            raise FormatError(f"flags.{k} must be a boolean")
    if not isinstance(flags["base_name"], str):
        raise FormatError("flags.base_name must be a string")
    prov = data["provenance"]
    if not isinstance(prov, list):
        raise FormatError("provenance must be a list")
    steps = []
    for rec in prov:
        rec = _keys(rec, {"op", "args"}, {"op", "args"}, "provenance record")
        if not isinstance(rec["op"], str) or not isinstance(rec["args"], dict):
            raise FormatError("provenance record needs a string op and an args object")
        steps.append(Step(rec["op"], tuple(rec["args"].items())))

    s = get_surface(g)
    try:
        letters = [s.normalize(curve_from_json(x)) for x in data["letters"]]
        for x in letters:
            s.homology(x)
    except SurfaceError as exc:
        raise FormatError(str(exc)) from exc
    except RecursionError as exc:
        raise FormatError("curve expression nested too deeply") from exc
    if strict_ledger and n != len(letters):
        raise FormatError(f"ledger.n={n} but the file lists {len(letters)} letters")
    ledger = InvariantLedger(g, len(letters), sigma, flags["is_relator"], flags["is_fiber_sum"], flags["base_name"])
    w = Factorization(g, tuple(letters), ledger, tuple(steps))
    return MonodromyFile(w, n, flags.get("claims_simply_connected", False))


def loads(text: str, strict_ledger: bool = True) -> MonodromyFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return from_dict(data, strict_ledger)


def save(path: str | Path, w: Factorization, claims_simply_connected: bool = False) -> None:
    Path(path).write_text(dumps(w, claims_simply_connected))


def load(path: str | Path, strict_ledger: bool = True) -> MonodromyFile:
    return loads(Path(path).read_text(), strict_ledger)
