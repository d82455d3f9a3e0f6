"""Command-line front end.

    singfol family example3 --n 5 --k 3 --r 2 --out ex3.json
    singfol analyze ex3.json --points 50 --seed 7
    singfol decompose ex3.json --seed 0
    singfol trace quad.json --start 1,0,0 --gen 0 --time 1 --step 1e-3 --out trace.csv

Documents are JSON; reports go to standard output as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from itertools import combinations

from .exactalg import ParseError, poly_parse, poly_print, sample_points
from .exactalg.gaussian import format_scalar
from .fields import VectorField
from .foliation import (
    Foliation,
    FoliationError,
    RankContradiction,
    generic_rank,
    involutivity_check,
    singular_equations,
    stratum_index,
)
from .structure import (
    CoordinateRoles,
    DecompositionError,
    FoliationProfile,
    ProfileError,
    build_decomposition,
    split_check,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PROFILE = 2
EXIT_RANK = 3
EXIT_NO_ROLES = 4
EXIT_CHECK = 5
EXIT_DRIFT = 6
EXIT_SINGULAR = 7


class DocumentError(ValueError):
    pass


# -- documents ----------------------------------------------------------------

def foliation_document(f: Foliation, roles: CoordinateRoles | None = None, **extra) -> dict:
    doc = {"n": f.nvars,
           "presentation": "generators" if f.generators is not None else "level_sets"}
    if f.generators is not None:
        doc["generators"] = [v.to_strings() for v in f.generators]
    if f.level_sets is not None:
        doc["level_sets"] = [poly_print(p) for p in f.level_sets]
    if f.declared_rank is not None:
        doc["declared_rank"] = f.declared_rank
    if roles is not None:
        doc["roles"] = roles.to_dict()
    doc.update(extra)
    return doc


def load_document(doc: dict) -> tuple[Foliation, CoordinateRoles | None]:
    """Parse a FoliationDocument; raises DocumentError, ParseError or FoliationError."""
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int) or doc["n"] < 1:
        raise DocumentError("document needs a positive integer field 'n'")
    n = doc["n"]
    kind = doc.get("presentation")
    if kind not in ("generators", "level_sets"):
        raise DocumentError("presentation must be 'generators' or 'level_sets'")
    levels = None
    if doc.get("level_sets") is not None:
        levels = tuple(poly_parse(t, n) for t in doc["level_sets"])
    gens = None
    if kind == "generators":
        raw = doc.get("generators")
        if not raw:
            raise DocumentError("generator list is empty")
        gens = []
        for comps in raw:
            if len(comps) != n:
                raise DocumentError(f"each generator needs {n} components")
            gens.append(VectorField(n, tuple(poly_parse(t, n) for t in comps)))
        gens = tuple(gens)
    elif levels is None:
        raise DocumentError("level_sets presentation without level_sets")
    f = Foliation(n, gens, levels, doc.get("declared_rank"))
    roles = None
    if doc.get("roles") is not None:
        r = doc["roles"]
        try:
            roles = CoordinateRoles(n, tuple(r["z"]), tuple(r["az"]), tuple(r["bz"]),
                                    tuple(r["d"]) if r.get("d") is not None else None)
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad roles: {exc}") from exc
    return f, roles


def _read(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _point(x) -> list[str]:
    return [format_scalar(c) for c in x]


def _profile(p: FoliationProfile | None):
    return None if p is None else list(p.as_tuple())


def _emit(obj: dict):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


# -- commands -----------------------------------------------------------------

def cmd_family(args) -> int:
    from .families import FAMILIES
    try:
        if args.name == "example3":
            if args.k is None or args.r is None:
                return _fail(EXIT_INPUT, "example3 needs --k and --r")
            inst = FAMILIES[args.name](args.n, args.k, args.r)
        else:
            inst = FAMILIES[args.name](args.n)
    except ProfileError as exc:
        return _fail(EXIT_PROFILE, str(exc))
    doc = foliation_document(
        inst.foliation, inst.roles,
        family={"name": inst.name, **inst.params},
        expected={"profile": _profile(inst.expected_profile),
                  "eta_profile": _profile(inst.expected_eta_profile),
                  "alpha_profile": _profile(inst.expected_alpha_profile)},
    )
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _load(path: str):
    try:
        return load_document(_read(path))
    except (OSError, json.JSONDecodeError, DocumentError, ParseError, FoliationError, ValueError) as exc:
        raise SystemExit(_fail(EXIT_INPUT, str(exc)))


def cmd_analyze(args) -> int:
    f, roles = _load(args.input)
    try:
        k = generic_rank(f, args.seed)
    except RankContradiction as exc:
        return _fail(EXIT_RANK, str(exc))
    except FoliationError as exc:
        return _fail(EXIT_INPUT, str(exc))

    def reports(points):
        out = []
        for i, x in enumerate(points):
            rep = stratum_index(f, x, k)
            out.append({"index": i, "point": _point(x), "fiber_dim": rep.fiber_dim,
                        "stratum_index": rep.stratum_index, "singular": rep.singular})
        return out

    result = {
        "n": f.nvars,
        "seed": args.seed,
        "generic_rank": k,
        "involutive": involutivity_check(f, args.seed),
        "points": reports(sample_points(f.nvars, args.seed, args.points)),
    }
    if roles is not None:
        result["z_points"] = reports(sample_points(f.nvars, args.seed + 1, args.points,
                                                   constraints=roles.z_zero))
    if f.level_sets is not None:
        cols = combinations(range(f.nvars), len(f.level_sets))
        result["singular_equations"] = [{"columns": list(c), "minor": poly_print(p)}
                                        for c, p in zip(cols, singular_equations(f))]
    _emit(result)
    return EXIT_OK


def cmd_decompose(args) -> int:
    f, roles = _load(args.input)
    if roles is None:
        return _fail(EXIT_NO_ROLES, "document carries no coordinate roles")
    try:
        k = generic_rank(f, args.seed)
    except RankContradiction as exc:
        return _fail(EXIT_RANK, str(exc))
    except FoliationError as exc:
        return _fail(EXIT_INPUT, str(exc))
    try:
        profile = FoliationProfile(f.nvars, k, len(roles.z), len(roles.az))
        report = build_decomposition(f, profile, roles, seed=args.seed)
    except ProfileError as exc:
        _emit({"ok": False, "failed_check": "profile", "message": str(exc)})
        return _fail(EXIT_CHECK, f"check 'profile' failed: {exc}")
    except DecompositionError as exc:
        out = {"ok": False, "failed_check": exc.check, "message": str(exc)}
        if exc.report is not None:
            out["checks"] = exc.report.checks
        _emit(out)
        return _fail(EXIT_CHECK, f"check '{exc.check}' failed")
    split = split_check(report, f, args.seed)
    bz_in_d = tuple(roles.d.index(j) for j in roles.bz)
    eta_roles = CoordinateRoles(report.eta.nvars, bz_in_d, (), bz_in_d)
    out = {
        "ok": True,
        "profile": _profile(report.profile),
        "az_indices": list(roles.az),
        "bz_indices": list(roles.bz),
        "d_indices": list(roles.d),
        "checks": report.checks,
        "eta_profile": _profile(report.eta_profile),
        "eta": foliation_document(report.eta, eta_roles),
        "split": {"split": split.split, "reason": split.reason, "sampled": split.sampled,
                  "alpha_profile": _profile(split.alpha_profile),
                  "alpha": None if split.alpha is None else foliation_document(split.alpha)},
    }
    _emit(out)
    return EXIT_OK


def _parse_start(text: str, n: int) -> list[complex]:
    parts = [p for p in text.split(",")]
    if len(parts) != n:
        raise DocumentError(f"start needs {n} comma-separated coordinates")
    out = []
    for part in parts:
        p = poly_parse(part, 1)
        if p.degree() > 0:
            raise DocumentError(f"start coordinate {part!r} is not a constant")
        out.append(complex(p.constant_term()))
    return out


def cmd_trace(args) -> int:
    from .tracer import DRIFT_TOLERANCE, SingularStartError, TraceError, trace_leaf
    f, _ = _load(args.input)
    try:
        start = _parse_start(args.start, f.nvars)
    except (DocumentError, ParseError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    tol = DRIFT_TOLERANCE if args.tol is None else args.tol
    try:
        rec = trace_leaf(f, start, args.gen, args.theta, args.time, args.step, seed=args.seed)
    except SingularStartError as exc:
        return _fail(EXIT_SINGULAR, str(exc))
    except (TraceError, FoliationError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    header = ["tau"]
    for j in range(f.nvars):
        header += [f"re(z{j + 1})", f"im(z{j + 1})"]
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for tau, z in zip(rec.times, rec.points):
            row = [repr(float(tau))]
            for c in z:
                row += [repr(float(c.real)), repr(float(c.imag))]
            w.writerow(row)
        w.writerow(["#drift", repr(rec.drift)])
    _emit({"rows": len(rec.points), "drift": rec.drift, "halved_drift": rec.halved_drift,
           "richardson_ok": rec.richardson_ok, "tolerance": tol, "out": args.out})
    return EXIT_OK if rec.drift <= tol else EXIT_DRIFT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="singfol", description="Singular holomorphic foliation toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="write a family instance document")
    p.add_argument("name", choices=["example1-lines", "example1-quadrics", "example2", "example3"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("analyze", help="generic rank, involutivity and strata at sampled points")
    p.add_argument("input")
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", help="certify the product decomposition and splitting")
    p.add_argument("input")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("trace", help="trace a leaf numerically and report first-integral drift")
    p.add_argument("input")
    p.add_argument("--start", required=True)
    p.add_argument("--gen", type=int, default=0)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--time", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--out", required=True)
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_trace)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse reports usage errors as 2, which would collide with EXIT_PROFILE
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
