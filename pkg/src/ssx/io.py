"""On-disk formats: ``.ssj`` simplicial sets, ``.smap`` maps, category and
square descriptions, and the semisimplicial variant of ``.ssj``."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core.nerves import FiniteCategory
from .core.operators import Operator
from .core.simplicial import (
    FgSimplicialSet,
    PresentationError,
    Simplex,
    SimplicialMap,
    canonical_name,
    rename,
)
from .replacement import FgSemiSimplicialSet

__all__ = [
    "SchemaError",
    "canonical_name",
    "encode_element",
    "decode_element",
    "dump_ssj",
    "parse_ssj",
    "load_ssj",
    "save_ssj",
    "canonical_copy",
    "dump_smap",
    "load_smap",
    "save_smap",
    "load_category",
    "load_square",
    "dump_semi",
    "load_semi",
    "Loader",
]


class SchemaError(ValueError):
    """The file does not follow the expected layout."""


def encode_element(x: Any) -> Any:
    """JSON form of a level element: simplices become ``{"op", "gen"}``, tuples lists."""
    if isinstance(x, Simplex):
        return {"op": list(x.op.values), "cod": x.op.cod, "gen": encode_element(x.gen)}
    if isinstance(x, tuple):
        return [encode_element(v) for v in x]
    return x


def decode_element(x: Any) -> Any:
    if isinstance(x, dict):
        return Simplex(Operator(tuple(x["op"]), x["cod"]), decode_element(x["gen"]))
    if isinstance(x, list):
        return tuple(decode_element(v) for v in x)
    return x


def _key_dim_name(X: FgSimplicialSet):
    names = {g: canonical_name(g) for g in X.all_generators()}
    if len(set(names.values())) != len(names):
        raise SchemaError("generator names collide after stringification")
    return names


def dump_ssj(X: FgSimplicialSet, name: str | None = None, truncated_at: int | None = None) -> str:
    """Canonical text: generators sorted by dimension then name."""
    names = _key_dim_name(X)
    gens = sorted(X.all_generators(), key=lambda g: (X.gen_dim(g), names[g]))
    out = []
    for g in gens:
        k = X.gen_dim(g)
        faces = [{"gen": names[f.gen], "op": list(f.op.values)} for f in X.gen_faces(g)]
        out.append({"dim": k, "faces": faces, "name": names[g]})
    doc: dict = {"generators": out, "name": X.name if name is None else name}
    if truncated_at is not None:
        doc["truncated_at"] = truncated_at
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_ssj(doc: Any, validate: bool = True) -> FgSimplicialSet:
    if not isinstance(doc, dict) or "generators" not in doc or not isinstance(doc["generators"], list):
        raise SchemaError("expected an object with a 'generators' list")
    dims: dict = {}
    for entry in doc["generators"]:
        if not isinstance(entry, dict) or not {"dim", "name", "faces"} <= set(entry):
            raise SchemaError(f"malformed generator entry {entry!r}")
        if not isinstance(entry["name"], str) or not isinstance(entry["dim"], int) or entry["dim"] < 0:
            raise SchemaError(f"bad name or dim in {entry!r}")
        dims[entry["name"]] = entry["dim"]
    gens = []
    for entry in sorted(doc["generators"], key=lambda e: (e["dim"], e["name"])):
        k = entry["dim"]
        faces = entry["faces"]
        if not isinstance(faces, list) or len(faces) != (k + 1 if k else 0):
            raise SchemaError(f"generator {entry['name']!r} needs {k + 1 if k else 0} faces")
        fs = []
        for f in faces:
            if not isinstance(f, dict) or "gen" not in f or "op" not in f:
                raise SchemaError(f"malformed face {f!r}")
            if f["gen"] not in dims:
                raise PresentationError(f"generator {entry['name']!r} refers to unknown {f['gen']!r}")
            vals = tuple(f["op"])
            if len(vals) != k or not all(isinstance(v, int) for v in vals):
                raise SchemaError(f"face operator of {entry['name']!r} must have {k} entries")
            try:
                op = Operator(vals, dims[f["gen"]])
            except ValueError as exc:
                raise PresentationError(f"face of {entry['name']!r}: {exc}") from None
            fs.append(Simplex(op, f["gen"]))
        gens.append((entry["name"], (k, tuple(fs))))
    X = FgSimplicialSet(gens, name=doc.get("name", ""), validate=validate)
    if "truncated_at" in doc:
        X.truncated_at = doc["truncated_at"]
    return X


def load_ssj(path: str | Path, validate: bool = True) -> FgSimplicialSet:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    return parse_ssj(doc, validate)


def save_ssj(X: FgSimplicialSet, path: str | Path, **kw) -> None:
    Path(path).write_text(dump_ssj(X, **kw), encoding="utf-8")


def canonical_copy(X: FgSimplicialSet) -> tuple[FgSimplicialSet, SimplicialMap]:
    """``X`` renamed to string generator names, as it would be after a save/load."""
    names = _key_dim_name(X)
    Y, there, _ = rename(X, lambda g: names[g])
    return Y, there


def dump_smap(f: SimplicialMap, dom_path: str, cod_path: str) -> str:
    if f.images is None:
        raise SchemaError("only maps out of finitely generated objects can be saved")
    images = {}
    for g, y in f.images.items():
        if not isinstance(y, Simplex):
            raise SchemaError("map images must be simplices of a finitely generated codomain")
        images[canonical_name(g)] = {"gen": canonical_name(y.gen), "op": list(y.op.values)}
    doc = {"cod": cod_path, "dom": dom_path, "images": images}
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_smap(f: SimplicialMap, path: str | Path, dom_path: str, cod_path: str) -> None:
    Path(path).write_text(dump_smap(f, dom_path, cod_path), encoding="utf-8")


class Loader:
    """Loads files relative to each other, returning one object per path."""

    def __init__(self, validate: bool = True) -> None:
        self.validate = validate
        self._objs: dict = {}

    def ssj(self, path: str | Path) -> FgSimplicialSet:
        key = str(Path(path).resolve())
        if key not in self._objs:
            self._objs[key] = load_ssj(path, self.validate)
        return self._objs[key]

    def smap(self, path: str | Path, check: bool = True) -> SimplicialMap:
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from None
        if not isinstance(doc, dict) or not {"dom", "cod", "images"} <= set(doc):
            raise SchemaError(f"{path}: expected 'dom', 'cod' and 'images'")
        X = self.ssj(path.parent / doc["dom"])
        Y = self.ssj(path.parent / doc["cod"])
        imgs = {}
        for g in X.all_generators():
            if g not in doc["images"]:
                raise SchemaError(f"{path}: no image for generator {g!r}")
            im = doc["images"][g]
            if im["gen"] not in {h for h in Y.all_generators()}:
                raise PresentationError(f"{path}: image of {g!r} names unknown {im['gen']!r}")
            op = Operator(tuple(im["op"]), Y.gen_dim(im["gen"]))
            imgs[g] = Y.normal_form(Simplex(op, im["gen"]))
        f = SimplicialMap(X, Y, imgs, name=path.stem)
        if check:
            f.check()
        return f


def load_smap(path: str | Path, loader: Loader | None = None) -> SimplicialMap:
    return (loader or Loader()).smap(path)


def load_category(path: str | Path) -> FiniteCategory:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        morph = {m["name"]: (m["src"], m["dst"]) for m in doc["morphisms"]}
        comp = {(c["g"], c["f"]): c["h"] for c in doc["compose"]}
        return FiniteCategory(doc["objects"], morph, comp, dict(doc["identities"]))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"{path}: malformed category ({exc})") from None


def load_square(path: str | Path, loader: Loader | None = None) -> dict:
    """``{"left", "right", "top", "bottom"}`` naming ``.smap`` files."""
    loader = loader or Loader()
    path = Path(path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    try:
        return {k: loader.smap(path.parent / doc[k]) for k in ("left", "right", "top", "bottom")}
    except KeyError as exc:
        raise SchemaError(f"{path}: square misses {exc}") from None


def dump_semi(Y: FgSemiSimplicialSet, name: str | None = None) -> str:
    names = {x: canonical_name(x) for x in Y.all_simplices()}
    items = sorted(Y.all_simplices(), key=lambda x: (Y.dim_of(x), names[x]))
    out = [
        {"dim": Y.dim_of(x), "faces": [names[f] for f in Y.faces(x)], "name": names[x]}
        for x in items
    ]
    doc = {"name": Y.name if name is None else name, "simplices": out}
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_semi(path: str | Path) -> FgSemiSimplicialSet:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        items = [(e["name"], (e["dim"], tuple(e["faces"]))) for e in doc["simplices"]]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"{path}: malformed semisimplicial file ({exc})") from None
    return FgSemiSimplicialSet(items, name=doc.get("name", ""))
