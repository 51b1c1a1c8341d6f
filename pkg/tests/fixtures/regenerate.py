"""Rewrite the canonical fixture files in this directory.

Run from anywhere: ``python tests/fixtures/regenerate.py``. The hand-written
negative fixtures (``bad_*``, ``noncanonical.ssj``) are left alone.
"""

from __future__ import annotations

import json
from pathlib import Path

from ssx.core import SimplicialMap, gen_simplex, identity_map
from ssx.core.nerves import boundary, empty, horn, standard_simplex
from ssx.corpus import circle, to_point, vertex
from ssx.io import dump_smap, dump_ssj
from ssx.subdivision import subdivide

HERE = Path(__file__).parent


def ssj(name, X):
    (HERE / f"{name}.ssj").write_text(dump_ssj(X), encoding="utf-8")


def smap(name, f, dom, cod):
    (HERE / f"{name}.smap").write_text(dump_smap(f, f"{dom}.ssj", f"{cod}.ssj"), encoding="utf-8")


def square(name, **legs):
    (HERE / f"{name}.json").write_text(json.dumps(legs, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def main() -> None:
    D0, D1, D2 = standard_simplex(0), standard_simplex(1), standard_simplex(2)
    B1, B2, H21 = boundary(1), boundary(2), horn(2, 1)
    S1, E = circle(), empty()
    SD2 = subdivide(D2).obj
    for name, X in [("d0", D0), ("d1", D1), ("d2", D2), ("bd1", B1), ("bd2", B2), ("h21", H21),
                    ("circle", S1), ("empty", E), ("sd2", SD2)]:
        ssj(name, X)

    inc_b1 = SimplicialMap(B1, D1, {g: gen_simplex(g, 0) for g in B1.all_generators()})
    inc_h21 = SimplicialMap(H21, D2, {g: gen_simplex(g, 1 if len(g) == 2 else 0) for g in H21.all_generators()})
    smap("inc_bd1", inc_b1, "bd1", "d1")
    smap("inc_h21", inc_h21, "h21", "d2")
    smap("v0", vertex(B1, (0,)), "d0", "bd1")
    smap("v1", vertex(B1, (1,)), "d0", "bd1")
    smap("w0", vertex(D1, (0,)), "d0", "d1")
    smap("w1", vertex(D1, (1,)), "d0", "d1")
    smap("d1_pt", to_point(D1), "d1", "d0")
    smap("bd1_pt", to_point(B1), "bd1", "d0")
    smap("d2_pt", to_point(D2), "d2", "d0")
    smap("circle_pt", to_point(S1), "circle", "d0")
    smap("sd2_pt", to_point(SD2), "sd2", "d0")
    smap("id_bd1", identity_map(B1), "bd1", "bd1")
    smap("id_d1", identity_map(D1), "d1", "d1")
    smap("empty_sd2", SimplicialMap(E, SD2, {}), "empty", "sd2")
    smap("empty_d0", SimplicialMap(E, D0, {}), "empty", "d0")
    smap("fold", SimplicialMap(B1, D0, {g: gen_simplex((0,), 0) for g in B1.all_generators()}), "bd1", "d0")

    square("square_yes", left="inc_bd1.smap", right="d1_pt.smap", top="inc_bd1.smap", bottom="d1_pt.smap")
    square("square_no", left="inc_bd1.smap", right="bd1_pt.smap", top="id_bd1.smap", bottom="d1_pt.smap")
    square("square_big", left="empty_sd2.smap", right="sd2_pt.smap", top="empty_sd2.smap", bottom="sd2_pt.smap")


if __name__ == "__main__":
    main()
