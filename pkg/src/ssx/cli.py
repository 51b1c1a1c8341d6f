"""The ``ssx`` command.

stdout carries exactly one JSON report; progress and warnings go to stderr.
Exit codes: 0 affirmative or witness, 1 negative or no witness, 2 budget
exhausted, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from .core import (
    BudgetExceeded,
    CapExceeded,
    FgSimplicialSet,
    NoWitness,
    PresentationError,
    Simplex,
    SimplicialMap,
    as_budget,
    face,
    skeleton,
)
from .core.constructions import product
from .core.nerves import build_standard, nerve_of_category
from .core.search import DEFAULT_BUDGET, extensions
from .io import (
    Loader,
    SchemaError,
    canonical_name,
    dump_semi,
    dump_smap,
    dump_ssj,
    load_category,
    load_square,
)

log = logging.getLogger("ssx")

EXIT_YES, EXIT_NO, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3
EXIT_FOR = {"true": EXIT_YES, "witness": EXIT_YES, "false": EXIT_NO, "no-witness": EXIT_NO, "budget": EXIT_BUDGET}
DEFAULT_CAP = 3


class InputError(Exception):
    """Bad command line or unusable input files."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise InputError(message)


def jsonable(v: Any) -> Any:
    if isinstance(v, Simplex):
        return canonical_name(v)
    if isinstance(v, SimplicialMap):
        if v.images is None:
            return repr(v)
        return {canonical_name(g): canonical_name(y) for g, y in v.images.items()}
    if isinstance(v, dict):
        return {k if isinstance(k, str) else canonical_name(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return repr(v)


def _sizes(X, upto: int) -> list[int]:
    return [len(X.level(n)) for n in range(upto + 1)]


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _no_witness(nw: NoWitness, **extra) -> tuple[str, dict]:
    cert = {"exhausted": True, "reason": nw.reason, "explored": nw.explored}
    if nw.certificate is not None:
        cert["square"] = jsonable(nw.certificate)
    cert.update(extra)
    return "no-witness", cert


# subcommands ------------------------------------------------------------------------------


def cmd_build(a, L: Loader) -> tuple[str, dict]:
    out = Path(a.output)
    if a.kind == "nerve":
        if not a.category:
            raise InputError("build nerve needs --category")
        N = nerve_of_category(load_category(a.category))
        if not isinstance(N, FgSimplicialSet):
            raise InputError("category has non-identity cycles; its nerve is not finite")
        _write(out, dump_ssj(N, name=a.name or out.stem))
        return "true", {"sizes": N.gen_count()}
    if a.m is None:
        raise InputError(f"build {a.kind} needs a dimension")
    X, inc = build_standard(a.kind, a.m, a.index)
    _write(out, dump_ssj(X, name=a.name or X.name))
    cert = {"generators": X.gen_count()}
    if a.inclusion:
        ip = Path(a.inclusion)
        amb = ip.parent / f"Delta{a.m}.ssj"
        _write(amb, dump_ssj(inc.cod))
        _write(ip, dump_smap(inc, _rel(out, ip), amb.name))
        cert["inclusion"] = str(ip)
    return "true", cert


def _rel(target: Path, relative_to: Path) -> str:
    try:
        return str(target.resolve().relative_to(relative_to.resolve().parent))
    except ValueError:
        return str(target.resolve())


def cmd_check(a, L: Loader) -> tuple[str, dict]:
    from .cofibrations import is_cofibrant, is_cofibration
    from .lifting import has_rlp

    if a.what == "cofibrant":
        v = is_cofibrant(L.ssj(a.path))
        return ("true" if v else "false"), v.to_json()
    f = L.smap(a.path)
    if a.what == "cofibration":
        v = is_cofibration(f, a.condition)
        return ("true" if v else "false"), v.to_json()
    v = has_rlp(f, a.generators, a.maxdim, a.budget)
    cert = {"qualifier": v.qualifier, "per_generator": v.per_generator}
    if v.counterexample:
        cert["counterexample"] = v.counterexample
    return ("true" if v else "false"), cert


def cmd_lift(a, L: Loader) -> tuple[str, dict]:
    from .lifting import LiftingProblem, solve_lift

    sq = load_square(a.square, L)
    try:
        P = LiftingProblem(sq["left"], sq["right"], sq["top"], sq["bottom"])
    except ValueError as exc:
        raise InputError(str(exc)) from None
    h = solve_lift(P, a.budget)
    if not h:
        return _no_witness(h)
    return "witness", {"diagonal": jsonable(h)}


def cmd_factor(a, L: Loader) -> tuple[str, dict]:
    from .cofibrations import is_cofibration
    from .lifting import soa_factorize, verify_bounded_fibration

    f = L.smap(a.map)
    F = soa_factorize(f, a.system, a.stages, a.maxdim, a.budget)
    out = Path(a.output)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "cod.ssj", dump_ssj(f.cod))
    stages = []
    for k, (X, q) in enumerate(zip(F.objects, F.maps)):
        _write(out / f"stage{k}.ssj", dump_ssj(X, name=f"X_{k}"))
        _write(out / f"stage{k}.smap", dump_smap(q, f"stage{k}.ssj", "cod.ssj"))
        entry = {"object": f"stage{k}.ssj", "map": f"stage{k}.smap", "generators": X.gen_count()}
        if k:
            entry["attachments"] = [at.generator for at in F.stages[k - 1].attachments]
        stages.append(entry)
    _write(out / "first.smap", dump_smap(F.first, "stage0.ssj", f"stage{len(F.objects) - 1}.ssj"))
    manifest = {"system": a.system, "stages": stages, "maxdim": a.maxdim, "first": "first.smap"}
    _write(out / "manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    fib = verify_bounded_fibration(F, budget=a.budget)
    cof = bool(is_cofibration(F.first))
    cert = {"bounded_fibration": fib, "first_is_cofibration": cof, "output": str(out), "qualifier": f"up to dim {a.maxdim}"}
    return ("witness" if fib and cof else "false"), cert


def cmd_sd(a, L: Loader) -> tuple[str, dict]:
    from .subdivision import last_vertex_map, subdivide

    X = L.ssj(a.path)
    SX = subdivide(X)
    out = Path(a.output)
    _write(out, dump_ssj(SX.obj, name=f"Sd {X.name}"))
    cert = {"generators": SX.obj.gen_count()}
    if a.last_vertex:
        lv = last_vertex_map(X, SX)
        p = Path(a.last_vertex)
        _write(p, dump_smap(lv, _rel(out, p), _rel(Path(a.path), p)))
    return "true", cert


def cmd_ex(a, L: Loader) -> tuple[str, dict]:
    from .subdivision import ex_tower

    if a.cap >= 3:
        log.warning("Ex at level >= 3 enumerates maps out of Sd Delta^3; this can be slow")
    X = L.ssj(a.path)
    T = ex_tower(X, a.iters, a.cap)
    out = Path(a.output)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "base.ssj", dump_ssj(X))
    skels = []
    for j, S in enumerate(T.stages):
        log.info("stage %d", j)
        K = skeleton(S, a.cap)
        skels.append(K)
        _write(out / f"stage{j}.ssj", dump_ssj(K, name=f"Ex^{j}", truncated_at=a.cap))
    for j, nu in enumerate(T.units):
        src, dst = skels[j], skels[j + 1]
        u = SimplicialMap(src, dst, {g: dst.normal_form(nu(g)) for g in src.all_generators()}, name=f"nu{j}")
        _write(out / f"unit{j}.smap", dump_smap(u, f"stage{j}.ssj", f"stage{j + 1}.ssj"))
    manifest = {"base": "base.ssj", "cap": a.cap, "iters": a.iters}
    _write(out / "manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    sizes = [_sizes(S, a.cap) for S in T.stages]
    injective = all(T.unit_injective(j, n) for j in range(a.iters) for n in range(a.cap + 1))
    return "true", {"sizes": sizes, "units_injective": injective, "truncated_at": a.cap}


def cmd_exfill(a, L: Loader) -> tuple[str, dict]:
    from .core.nerves import horn
    from .subdivision import ex_infty_horn_filler, ex_tower

    d = Path(a.tower)
    man = json.loads((d / "manifest.json").read_text(encoding="utf-8"))
    try:
        m, i = (int(t) for t in a.horn.split(","))
    except ValueError:
        raise InputError("--horn expects m,i") from None
    k = a.stage
    X = L.ssj(d / man["base"])
    T = ex_tower(X, max(man["iters"], k + 1), man["cap"])
    H = horn(m, i)
    Ek = T.stages[k]
    if a.map:
        x = L.smap(a.map, check=False)
        K = skeleton(Ek, man["cap"])
        by_name = {canonical_name(g): g for g in K.all_generators()}
        imgs = {}
        for g, y in x.images.items():
            key = tuple(int(c) for c in g.strip("()").split(","))
            imgs[key] = Ek.act(by_name[y.gen], y.op) if not y.op.is_identity() else by_name[y.gen]
        horns = [SimplicialMap(H, Ek, imgs)]
        if not horns[0].is_valid():
            raise InputError("the given horn is not a simplicial map")
    else:
        horns = [SimplicialMap(H, Ek, t) for t in extensions(H, Ek, budget=a.budget)]
    nu = T.units[k]
    nxt = T.stages[k + 1]
    bad = []
    for x in horns:
        fill = ex_infty_horn_filler(T, k, x, m, i)
        for j in range(m + 1):
            if j == i:
                continue
            g = tuple(v for v in range(m + 1) if v != j)
            if nxt.act(fill, face(m, j)) != nu(x.images[g]):
                bad.append({"horn": jsonable(x), "face": j})
                break
    cert = {"horns": len(horns), "stage": k, "restriction_failures": bad}
    if len(horns) == 1 and not bad:
        cert["filler"] = jsonable(nxt.normal_form(fill, m)) if hasattr(nxt, "normal_form") else repr(fill)
    return ("witness" if not bad else "false"), cert


def cmd_homotopy(a, L: Loader) -> tuple[str, dict]:
    from .homotopy import find_homotopy

    f, g = L.smap(a.f), L.smap(a.g)
    if f.dom is not g.dom or f.cod is not g.cod:
        raise InputError("maps must share domain and codomain files")
    over = L.smap(a.over) if a.over else None
    w = find_homotopy(f, g, a.zigzag, over, a.budget)
    if not w:
        return _no_witness(
            w, zigzag_bound=a.zigzag, note=f"no zig-zag of length <= {a.zigzag}; longer ones are not excluded"
        )
    return "witness", {"length": w.length, "steps": [{"homotopy": jsonable(H), "direction": d} for H, d in w.steps]}


def cmd_she(a, L: Loader) -> tuple[str, dict]:
    from .homotopy import she_witness_search

    f = L.smap(a.map)
    w = she_witness_search(f, a.orient, a.budget)
    if not w:
        return _no_witness(w, orientation=a.orient)
    return "witness", {
        "orientation": a.orient,
        "g": jsonable(w.g),
        "u": jsonable(w.u),
        "v": jsonable(w.v),
        "retract_checked": w.retract is not None,
    }


def cmd_mps(a, L: Loader) -> tuple[str, dict]:
    from .homotopy import mapping_path_factorize

    f = L.smap(a.map)
    over = L.smap(a.over) if a.over else None
    M = mapping_path_factorize(f, a.cap, over)
    X = f.dom
    levels = range(a.cap + 1)
    factors = all(M.second(M.first(x)) == f(x) for n in levels for x in X.level(n))
    section = all(M.retraction(M.first(x)) == x for n in levels for x in X.level(n))
    cert = {"middle_sizes": _sizes(M.middle, a.cap), "factors": factors, "retraction": section, "truncated_at": a.cap}
    return ("true" if factors and section else "false"), cert


def cmd_pi(a, L: Loader) -> tuple[str, dict]:
    from .homotopy import dependent_product

    i = L.smap(a.i)
    if a.family.endswith(".smap"):
        fam = L.smap(a.family)
    else:
        P = product([L.ssj(a.family), i.dom])
        fam = P.projections[1]
        if not isinstance(P.obj, FgSimplicialSet):
            raise InputError("constant family did not produce a finite object")
    Pi = dependent_product(i, fam, a.cap)
    proj = SimplicialMap(Pi, i.cod, fn=lambda e: e[0])
    return "true", {"sizes": _sizes(Pi, a.cap), "projection_valid": proj.is_valid(), "truncated_at": a.cap}


def cmd_eqext(a, L: Loader) -> tuple[str, dict]:
    from .homotopy import PremiseError, _find_comparison, equivalence_extend

    i, e, y1 = L.smap(a.i), L.smap(a.e), L.smap(a.y1)
    bud = as_budget(a.budget)
    if a.x1:
        x1 = L.smap(a.x1)
    else:
        x1 = None
        for t in extensions(e.cod, i.dom, budget=bud):
            cand = SimplicialMap(e.cod, i.dom, t)
            try:
                _find_comparison(i, cand, y1, bud)
            except PremiseError:
                continue
            x1 = cand
            break
        if x1 is None:
            return "false", {"premise": "no structure map X_1 -> A exhibits X_1 as the restriction of Y_1"}
    ext = equivalence_extend(i, e, x1, y1, cap=a.cap, fibrancy_maxdim=a.fibrancy_maxdim, budget=bud)
    cert = {"fits": ext.fits, "Y0_sizes": _sizes(ext.Y0, a.cap), "truncated_at": a.cap}
    if ext.fibrancy is not None:
        cert["fibrancy"] = {"holds": ext.fibrancy.holds, "qualifier": ext.fibrancy.qualifier}
    return ("true" if ext.fits else "false"), cert


def cmd_lu(a, L: Loader) -> tuple[str, dict]:
    from .replacement import counit, forget_degeneracies, lu

    X = L.ssj(a.path)
    LUX = lu(X, a.cap)
    eps = counit(X, a.cap)
    if a.semi_output:
        _write(Path(a.semi_output), dump_semi(forget_degeneracies(X, a.cap)))
    return "true", {"sizes": _sizes(LUX, a.cap), "counit_valid": eps.is_valid(), "truncated_at": a.cap}


def cmd_t(a, L: Loader) -> tuple[str, dict]:
    from .replacement import simplex_category_nerve, tau

    X = L.ssj(a.path)
    T = simplex_category_nerve(X, a.srccap, a.cap)
    t = tau(X, a.srccap, a.cap, T)
    ok = t.is_valid()
    return ("true" if ok else "false"), {"sizes": _sizes(T, a.cap), "tau_valid": ok, "truncated_at": a.cap}


def cmd_report(a, L: Loader) -> tuple[str, dict]:
    from .cofibrations import is_cofibrant
    from .core.nerves import boundary, horn, standard_simplex
    from .homotopy import she_witness_search
    from .lifting import generator_inclusions
    from .replacement import lu, simplex_category_nerve
    from .subdivision import ex, subdivide

    checks: dict = {}
    for m in range(3):
        checks[f"cofibrant Delta^{m}"] = bool(is_cofibrant(standard_simplex(m)))
        checks[f"cofibrant boundary {m}"] = bool(is_cofibrant(boundary(m)))
    for name, j in generator_inclusions("horns", 2):
        m = j.cod.dim
        i = next(v for v in range(m + 1) if j.dom is horn(m, v))
        orient = 0 if i < m else 1
        checks[f"she {name}"] = bool(she_witness_search(j, orient, a.budget))
    S = subdivide(standard_simplex(1)).obj
    checks["Sd Delta^1 has 3 vertices, 2 edges"] = S.gen_count()[:2] == [3, 2]
    checks["(Ex Delta^1)_1 = 5"] = len(ex(standard_simplex(1), 1).level(1)) == 5
    checks["(LU Delta^0)_n = 2^n"] = _sizes(lu(standard_simplex(0), 4), 4) == [1, 2, 4, 8, 16]
    checks["T_2 Delta^1 has 9 vertices"] = len(simplex_category_nerve(standard_simplex(1), 2, 0).level(0)) == 9
    ok = all(checks.values())
    return ("true" if ok else "false"), {"checks": checks}


# parser -------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget (default 10^6)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    p = _Parser(prog="ssx", description="Finite simplicial sets: checks, lifts, factorisations and replacements.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(run=fn)
        return sp

    def cap(sp, default: int = DEFAULT_CAP) -> None:
        sp.add_argument("--cap", type=int, default=default, help=f"highest tabulated level (default {default})")

    sp = add("build", cmd_build, "write a standard object")
    sp.add_argument("kind", choices=["simplex", "boundary", "horn", "nerve"])
    sp.add_argument("m", type=int, nargs="?")
    sp.add_argument("index", type=int, nargs="?")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--inclusion", help="also write the inclusion into Delta^m as .smap")
    sp.add_argument("--category", help="category JSON for kind=nerve")
    sp.add_argument("--name")

    sp = add("check", cmd_check, "decide cofibrancy, cofibrations or bounded lifting")
    sp.add_argument("what", choices=["cofibrant", "cofibration", "fibration"])
    sp.add_argument("path")
    sp.add_argument("--condition", choices=["i", "ii", "iii"], default="i")
    sp.add_argument("--generators", choices=["horns", "boundaries"], default="horns")
    sp.add_argument("--maxdim", type=int, default=2)

    sp = add("lift", cmd_lift, "solve a lifting square")
    sp.add_argument("--square", required=True)

    sp = add("factor", cmd_factor, "bounded small object argument")
    sp.add_argument("map")
    sp.add_argument("--system", choices=["cof-trivfib", "trivcof-fib"], default="cof-trivfib")
    sp.add_argument("--stages", type=int, default=1)
    sp.add_argument("--maxdim", type=int, default=1)
    sp.add_argument("-o", "--output", required=True)

    sp = add("sd", cmd_sd, "barycentric subdivision")
    sp.add_argument("path")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--last-vertex", help="also write the last vertex map")

    sp = add("ex", cmd_ex, "Ex tower stages and units")
    sp.add_argument("path")
    cap(sp, 2)
    sp.add_argument("--iters", type=int, default=1)
    sp.add_argument("-o", "--output", required=True)

    sp = add("exfill", cmd_exfill, "fill horns one tower stage up")
    sp.add_argument("--tower", required=True)
    sp.add_argument("--horn", required=True, help="m,i")
    sp.add_argument("--map", help="horn Lambda^{m,i} -> stage k (default: every horn)")
    sp.add_argument("--stage", type=int, default=1)

    sp = add("homotopy", cmd_homotopy, "search a zig-zag of homotopies")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("--zigzag", type=int, default=1)
    sp.add_argument("--over")

    sp = add("she", cmd_she, "strong homotopy equivalence data")
    sp.add_argument("map")
    sp.add_argument("--orient", type=int, choices=[0, 1], default=0)

    sp = add("mps", cmd_mps, "mapping path space factorisation")
    sp.add_argument("map")
    sp.add_argument("--over")
    cap(sp)

    sp = add("pi", cmd_pi, "dependent product along a map")
    sp.add_argument("i")
    sp.add_argument("family", help=".smap structure map, or .ssj for a constant family")
    cap(sp)

    sp = add("eqext", cmd_eqext, "equivalence extension")
    sp.add_argument("--i", required=True)
    sp.add_argument("--e", required=True)
    sp.add_argument("--y1", required=True)
    sp.add_argument("--x1")
    sp.add_argument("--fibrancy-maxdim", type=int)
    cap(sp, 2)

    sp = add("lu", cmd_lu, "free-forgetful replacement")
    sp.add_argument("path")
    sp.add_argument("--semi-output", help="write U X in the semisimplicial format")
    cap(sp)

    sp = add("t", cmd_t, "simplex category replacement")
    sp.add_argument("path")
    sp.add_argument("--srccap", type=int, default=1)
    cap(sp, 1)

    add("report", cmd_report, "run a built-in battery of checks")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.perf_counter()
    report: dict = {"command": argv}
    code = EXIT_INPUT
    try:
        a = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if a.verbose else logging.WARNING,
            stream=sys.stderr,
            format="ssx: %(message)s",
        )
        verdict, cert = a.run(a, Loader())
        report["verdict"] = verdict
        report["certificate"] = jsonable(cert)
        code = EXIT_FOR[verdict]
    except BudgetExceeded as exc:
        report["verdict"] = "budget"
        report["certificate"] = {"budget": exc.limit, "nodes": exc.nodes}
        code = EXIT_BUDGET
    except (InputError, SchemaError, PresentationError, CapExceeded, OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        report["verdict"] = None
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        print(f"ssx: error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    report["timing_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
