from __future__ import annotations

import json
import shutil

import pytest
from hypothesis import given, strategies as st

from ssx.core import PresentationError, build_standard, hom_set, is_isomorphism
from ssx.core.nerves import boundary, horn, standard_simplex
from ssx.corpus import circle, skeletal_indiscrete
from ssx.io import (
    Loader,
    SchemaError,
    dump_semi,
    dump_ssj,
    load_semi,
    load_smap,
    load_square,
    load_ssj,
    parse_ssj,
    save_ssj,
)
from ssx.replacement import forget_degeneracies

DELTA1 = """{
  "generators": [
    {
      "dim": 0,
      "faces": [],
      "name": "(0)"
    },
    {
      "dim": 0,
      "faces": [],
      "name": "(1)"
    },
    {
      "dim": 1,
      "faces": [
        {
          "gen": "(1)",
          "op": [
            0
          ]
        },
        {
          "gen": "(0)",
          "op": [
            0
          ]
        }
      ],
      "name": "(0,1)"
    }
  ],
  "name": "Delta^1"
}
"""

CANONICAL = ["d0", "d1", "d2", "bd1", "bd2", "h21", "circle", "empty", "sd2"]


def test_documented_literal(tmp_path):
    X, _ = build_standard("simplex", 1)
    save_ssj(X, tmp_path / "d1.ssj")
    assert (tmp_path / "d1.ssj").read_text(encoding="utf-8") == DELTA1


@pytest.mark.parametrize("name", CANONICAL)
def test_save_load_byte_identical(fixtures, tmp_path, name):
    src = fixtures / f"{name}.ssj"
    save_ssj(load_ssj(src), tmp_path / "out.ssj")
    assert (tmp_path / "out.ssj").read_bytes() == src.read_bytes()


@pytest.mark.parametrize(
    "X", [standard_simplex(3), boundary(3), horn(3, 0), circle(), skeletal_indiscrete(2)], ids=lambda X: X.name
)
def test_round_trip_is_isomorphic(X):
    Y = parse_ssj(json.loads(dump_ssj(X)))
    assert Y.gen_count() == X.gen_count()
    assert dump_ssj(Y) == dump_ssj(X)
    assert any(is_isomorphism(f) for f in hom_set(Y, X))


def test_noncanonical_reserialises(fixtures):
    X = load_ssj(fixtures / "noncanonical.ssj")
    assert dump_ssj(X) == DELTA1


@given(st.permutations(range(3)), st.booleans())
def test_generator_order_irrelevant(perm, flip):
    doc = json.loads(DELTA1)
    doc["generators"] = [doc["generators"][j] for j in perm]
    if flip:
        doc = {k: doc[k] for k in reversed(list(doc))}
    assert dump_ssj(parse_ssj(doc)) == DELTA1


def test_identity_violation_is_located(fixtures):
    with pytest.raises(PresentationError, match=r"generator 't'"):
        load_ssj(fixtures / "bad_identity.ssj")


def test_schema_error(fixtures):
    with pytest.raises(SchemaError):
        load_ssj(fixtures / "bad_schema.ssj")
    with pytest.raises(SchemaError):
        parse_ssj({"generators": "nope"})


def test_empty_accepted(fixtures):
    X = load_ssj(fixtures / "empty.ssj")
    assert X.gen_count() == [] and X.level(0) == ()


def test_smap_paths_are_relative_and_shared(fixtures, tmp_path):
    for p in fixtures.iterdir():
        shutil.copy(p, tmp_path / p.name)
    L = Loader()
    v0, v1 = L.smap(tmp_path / "v0.smap"), L.smap(tmp_path / "v1.smap")
    assert v0.dom is v1.dom and v0.cod is v1.cod
    assert v0.is_valid() and v0.images != v1.images


def test_square_loads(fixtures):
    sq = load_square(fixtures / "square_yes.json")
    assert set(sq) >= {"left", "right", "top", "bottom"}
    assert sq["left"].cod is sq["bottom"].dom


def test_smap_rejects_non_map(fixtures, tmp_path):
    doc = json.loads((fixtures / "inc_bd1.smap").read_text())
    doc["images"]["(0)"] = {"gen": "(0,1)", "op": [0, 1]}
    for n in ("bd1.ssj", "d1.ssj"):
        shutil.copy(fixtures / n, tmp_path / n)
    (tmp_path / "bad.smap").write_text(json.dumps(doc))
    with pytest.raises((PresentationError, SchemaError, ValueError)):
        load_smap(tmp_path / "bad.smap")


def test_semi_round_trip(tmp_path):
    U = forget_degeneracies(standard_simplex(1), 2)
    (tmp_path / "u.json").write_text(dump_semi(U))
    V = load_semi(tmp_path / "u.json")
    assert V.sizes() == U.sizes() == [2, 3, 4]
    assert dump_semi(V) == dump_semi(U)
