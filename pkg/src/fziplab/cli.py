"""Command-line front end.

Subcommands: jw, bggpage, stdcomplex (build|verify), fzip
(validate|type|tensor|dual|iso), kostant, selftest.  All output is
deterministic JSON (sorted keys, no floats) unless --format table is asked
for; --out writes atomically.

Exit codes: 0 success, 1 validation or argument failure, 2 failed
mathematical check, 3 Casimir collision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import catalog
from .casimir import CasimirCollisionError, casimir_isotypic, isotypic_page_check
from .complexes import (
    bgg_page,
    euler_character_check,
    graded_compare,
    p_std_complex,
    std_complex,
)
from .fields import GF, QQ
from .fzip import (
    FZip,
    SearchBudgetError,
    dual_fzip,
    is_isomorphic,
    point_fzip,
    tensor_fzip,
)
from .gmodule import kostant_check, standard_module, weyl_module
from .parabolic import ParabolicData
from .rootdata import RootDatum, Vec, is_p_small, type_A, type_C, weight_to_json

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CHECK_FAILED = 2
EXIT_COLLISION = 3


class _CheckFailed(Exception):
    """Raised after a report was emitted whose checks did not pass."""


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _ArgumentError(message)


def _parse_weight(text: str, rank: int) -> Vec:
    """Comma-separated integers, zero-extended on the right up to the rank."""
    try:
        coords = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse weight {text!r}; expected comma-separated integers")
    if len(coords) > rank:
        raise ValueError(f"weight {text!r} has {len(coords)} coordinates; the datum has rank {rank}")
    return Vec(coords + [0] * (rank - len(coords)))


def _load_datum_file(path: str) -> RootDatum:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if "type" in data:
        kind = data["type"]
        n = int(data["n"])
        reductive = bool(data.get("reductive", False))
        label = data.get("label", "")
        if kind == "A":
            return type_A(n, reductive=reductive, label=label)
        if kind == "C":
            return type_C(n, reductive=reductive, label=label)
        raise ValueError(f"unsupported shorthand type {kind!r} (expected A or C)")
    return RootDatum(
        data["simple_roots"],
        data["simple_coroots"],
        int(data["rank"]),
        label=data.get("label", ""),
    )


def _resolve_parabolic(args) -> ParabolicData:
    if args.builtin is not None and args.datum is not None:
        raise ValueError("pass either --builtin or --datum, not both")
    if args.builtin is not None:
        datum, mu = catalog.builtin(args.builtin)
        if args.mu is not None:
            mu = _parse_weight(args.mu, datum.rank)
    elif args.datum is not None:
        datum = _load_datum_file(args.datum)
        if args.mu is None:
            raise ValueError("--datum requires --mu")
        mu = _parse_weight(args.mu, datum.rank)
    else:
        raise ValueError("one of --builtin or --datum is required")
    return ParabolicData(datum, mu)


def _emit(payload, args, table_rows=None):
    if getattr(args, "format", "json") == "table" and table_rows is not None:
        headers, rows = table_rows
        widths = [
            max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
            for i, h in enumerate(headers)
        ]
        lines = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths)).rstrip()]
        for row in rows:
            lines.append("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        d = os.path.dirname(os.path.abspath(out))
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".fziplab-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, out)
        except BaseException:
            os.unlink(tmp)
            raise
    else:
        sys.stdout.write(text)


def _note(args, message):
    if getattr(args, "verbose", False):
        print(message, file=sys.stderr)


def cmd_jw(args) -> int:
    pdata = _resolve_parabolic(args)
    reps = [
        {
            "word": list(w.word),
            "length": w.length,
            "matrix": [list(row) for row in w.matrix],
        }
        for w in pdata.coset_reps
    ]
    _emit(
        reps,
        args,
        table_rows=(
            ("length", "word"),
            [(r["length"], ",".join(map(str, r["word"])) or "e") for r in reps],
        ),
    )
    return EXIT_OK


def cmd_bggpage(args) -> int:
    pdata = _resolve_parabolic(args)
    lam = _parse_weight(args.lam, pdata.datum.rank)
    page = bgg_page(pdata, lam, degree=args.i)
    payload = page.to_json()
    if args.prime is not None:
        payload["p_small"] = is_p_small(pdata.datum, lam, args.prime)
        payload["prime"] = args.prime
    rows = [
        (row.grading, ",".join(map(str, e.w.word)) or "e", e.length, weight_to_json(e.dot_weight), e.levi_dim)
        for row in page.rows
        for e in row.entries
    ]
    _emit(payload, args, table_rows=(("grading", "word", "length", "dot_weight", "levi_dim"), rows))
    if not page.is_partition():
        raise _CheckFailed("page entries do not partition the coset representatives")
    return EXIT_OK


def _build_complexes(args):
    pdata = _resolve_parabolic(args)
    lam = _parse_weight(args.lam, pdata.datum.rank)
    module = weyl_module(pdata.datum, lam)
    _note(args, f"module dimension {module.dim}")
    std = std_complex(pdata, module, args.dmax)
    return pdata, lam, module, std


def cmd_stdcomplex(args) -> int:
    pdata, lam, module, std = _build_complexes(args)
    if args.action == "build":
        payload = {"schema": "stdcomplex/1", "weight": weight_to_json(lam)}
        payload.update(std.summary())
        rows = [(j, std.term_dim(j)) for j in range(std.length + 1)]
        _emit(payload, args, table_rows=(("degree", "dim"), rows))
        return EXIT_OK

    pstd = p_std_complex(pdata, module, args.dmax)
    checks = []

    def record(name, ok, detail=None):
        entry = {"name": name, "ok": bool(ok)}
        if detail:
            entry["detail"] = detail
        checks.append(entry)
        _note(args, f"{name}: {'ok' if ok else 'FAILED'}")

    fields = [QQ] + ([GF(args.prime)] if args.prime is not None else [])
    for field in fields:
        tag = "Q" if field.char == 0 else f"F{field.char}"
        ok, problems = std.check_square_zero(field)
        record(f"d_squared_zero[{tag}]", ok, problems[:5] or None)
        ok, problems = pstd.check_square_zero(field)
        record(f"psi_squared_zero[{tag}]", ok, problems[:5] or None)
        ok, problems = std.check_filtration(field)
        record(f"hodge_filtration[{tag}]", ok, problems[:5] or None)
        ok, problems = pstd.check_filtration(field)
        record(f"conjugate_filtration[{tag}]", ok, problems[:5] or None)
    if args.prime is not None:
        rep = graded_compare(std, pstd, GF(args.prime))
        record("graded_compare", rep["ok"], rep["mismatches"][:5] or None)

    payload = {
        "schema": "stdverify/1",
        "weight": weight_to_json(lam),
        "dmax": args.dmax,
        "checks": checks,
    }

    if args.casimir:
        page = bgg_page(pdata, lam)
        iso = casimir_isotypic(std, lam)
        rep = isotypic_page_check(iso, page, std)
        record("casimir_page[exact]", rep["ok"], rep["mismatches"][:5] or None)
        euler = euler_character_check(std, page)
        record("euler_characters", euler["ok"], euler["mismatches"][:5] or None)
        if args.prime is not None:
            iso_p = casimir_isotypic(std, lam, p=args.prime)
            rep_p = isotypic_page_check(iso_p, page, std)
            record(f"casimir_page[F{args.prime}]", rep_p["ok"], rep_p["mismatches"][:5] or None)
        payload["casimir"] = iso.to_json()

    payload["ok"] = all(c["ok"] for c in checks)
    _emit(payload, args, table_rows=(("check", "ok"), [(c["name"], c["ok"]) for c in checks]))
    if not payload["ok"]:
        raise _CheckFailed("one or more verification checks failed")
    return EXIT_OK


def _read_zip(path: str) -> FZip:
    with open(path, encoding="utf-8") as fh:
        return FZip.from_json(json.load(fh))


def cmd_fzip(args) -> int:
    if args.action == "validate":
        z = _read_zip(args.files[0])
        problems = z.validate()
        _emit(
            {"schema": "fzipcheck/1", "ok": not problems, "problems": problems},
            args,
            table_rows=(("problem",), [(p,) for p in problems]),
        )
        return EXIT_INVALID if problems else EXIT_OK
    if args.action == "type":
        z = _read_zip(args.files[0])
        tau = z.zip_type()
        _emit(
            {"schema": "fziptype/1", "type": {str(i): m for i, m in sorted(tau.items())}},
            args,
            table_rows=(("index", "mult"), sorted(tau.items())),
        )
        return EXIT_OK
    if args.action == "tensor":
        z = tensor_fzip(_read_zip(args.files[0]), _read_zip(args.files[1]))
        _emit(z.to_json(), args)
        return EXIT_OK
    if args.action == "dual":
        z = dual_fzip(_read_zip(args.files[0]))
        _emit(z.to_json(), args)
        return EXIT_OK
    if args.action == "iso":
        z1 = _read_zip(args.files[0])
        z2 = _read_zip(args.files[1])
        same = is_isomorphic(z1, z2, budget=args.budget)
        _emit({"schema": "fzipiso/1", "isomorphic": same}, args)
        return EXIT_OK
    raise ValueError(f"unknown fzip action {args.action!r}")


def cmd_kostant(args) -> int:
    pdata = _resolve_parabolic(args)
    ok, per_degree = kostant_check(pdata)
    payload = {
        "schema": "kostant/1",
        "ok": ok,
        "per_degree": {str(a): info for a, info in sorted(per_degree.items())},
    }
    _emit(payload, args, table_rows=(("degree", "match"),
                                     [(a, info["match"]) for a, info in sorted(per_degree.items())]))
    if not ok:
        raise _CheckFailed("wedge-power character identity failed")
    return EXIT_OK


def cmd_selftest(args) -> int:
    checks = []

    def record(name, ok):
        checks.append({"name": name, "ok": bool(ok)})
        _note(args, f"{name}: {'ok' if ok else 'FAILED'}")

    expected_cosets = {
        "A1-modular": 2,
        "A1xA1-hilbert": 4,
        "A2-picard-like": 3,
        "C2-siegel": 4,
        "C3-siegel": 8,
    }
    entries = catalog.builtin_catalog()
    record("catalog_loads", {n for n, _, _ in entries} == set(expected_cosets))
    for name, datum, mu in entries:
        pdata = ParabolicData(datum, mu)
        record(f"coset_count[{name}]", len(pdata.coset_reps) == expected_cosets[name])
        ok, _ = kostant_check(pdata)
        record(f"kostant[{name}]", ok)

    gl2, mu = catalog.builtin("A1-modular")
    pdata = ParabolicData(gl2, mu)
    module = weyl_module(gl2, Vec((1, 0)))
    std = std_complex(pdata, module, 3)
    pstd = p_std_complex(pdata, module, 3)
    record("d_squared_zero", std.check_square_zero(QQ)[0])
    record("psi_squared_zero", pstd.check_square_zero(QQ)[0])
    record("hodge_filtration", std.check_filtration(QQ)[0])
    record("conjugate_filtration", pstd.check_filtration(QQ)[0])
    record("graded_compare", graded_compare(std, pstd, GF(5))["ok"])

    lam2 = Vec((2, 0))
    mod2 = weyl_module(gl2, lam2)
    std2 = std_complex(pdata, mod2, 3)
    page2 = bgg_page(pdata, lam2)
    record("euler_characters", euler_character_check(std2, page2)["ok"])
    iso = casimir_isotypic(std2, lam2)
    record("casimir_page", isotypic_page_check(iso, page2, std2)["ok"])

    F5 = GF(5)
    z = point_fzip(standard_module(gl2), mu, F5)
    record("fzip_validates", not z.validate())
    record("fzip_roundtrip", FZip.from_json(z.to_json()) == z)
    zz = tensor_fzip(z, z)
    record("fzip_tensor_type", zz.zip_type() == {0: 1, 1: 2, 2: 1})
    record("fzip_double_dual", dual_fzip(dual_fzip(z)) == z)

    gsp4, _ = catalog.builtin("C2-siegel")
    record("p_small_boundary", is_p_small(gsp4, Vec((0, 0, 0)), 3))
    record("p_small_exceeded", not is_p_small(gsp4, Vec((1, 0, 0)), 3))

    payload = {
        "schema": "selftest/1",
        "ok": all(c["ok"] for c in checks),
        "checks": checks,
    }
    _emit(payload, args, table_rows=(("check", "ok"), [(c["name"], c["ok"]) for c in checks]))
    if not payload["ok"]:
        raise _CheckFailed("selftest found a failing invariant")
    return EXIT_OK


def _add_common(sub, need_lambda=False, need_dmax=False):
    sub.add_argument("--builtin", help="name of a built-in datum")
    sub.add_argument("--datum", help="path to a root-datum JSON file")
    sub.add_argument("--mu", help="cocharacter as comma-separated integers")
    if need_lambda:
        sub.add_argument("--lambda", dest="lam", required=True,
                         help="highest weight as comma-separated integers")
    if need_dmax:
        sub.add_argument("--dmax", type=int, required=True,
                         help="polynomial degree cap for the truncation")
    sub.add_argument("--prime", type=int, help="prime for mod-p checks")
    sub.add_argument("--out", help="write output to this file atomically")
    sub.add_argument("--format", choices=("json", "table"), default="json")
    sub.add_argument("--golden", action="store_true",
                     help="canonical byte-stable reports (forces --format json)")
    sub.add_argument("--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fziplab", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("jw", help="minimal-length coset representatives")
    _add_common(p)
    p.set_defaults(func=cmd_jw)

    p = subs.add_parser("bggpage", help="dual-resolution page for a dominant weight")
    _add_common(p, need_lambda=True)
    p.add_argument("--i", type=int, default=None,
                   help="total degree used to report cohomological degrees")
    p.set_defaults(func=cmd_bggpage)

    p = subs.add_parser("stdcomplex", help="build or verify a truncated standard complex")
    p.add_argument("action", choices=("build", "verify"))
    _add_common(p, need_lambda=True, need_dmax=True)
    p.add_argument("--casimir", action="store_true",
                   help="also run the Casimir extraction against the page (verify only)")
    p.set_defaults(func=cmd_stdcomplex)

    p = subs.add_parser("fzip", help="filtered Frobenius-zip operations")
    p.add_argument("action", choices=("validate", "type", "tensor", "dual", "iso"))
    p.add_argument("files", nargs="+", help="zip JSON file(s)")
    p.add_argument("--budget", type=int, default=2_000_000,
                   help="search budget for isomorphism testing")
    p.add_argument("--out", help="write output to this file atomically")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--golden", action="store_true")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_fzip)

    p = subs.add_parser("kostant", help="wedge-power character identity for a parabolic")
    _add_common(p)
    p.set_defaults(func=cmd_kostant)

    p = subs.add_parser("selftest", help="run the fast invariant matrix")
    p.add_argument("--out", help="write output to this file atomically")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--golden", action="store_true")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "golden", False):
            args.format = "json"
        nfiles = {"validate": 1, "type": 1, "tensor": 2, "dual": 1, "iso": 2}
        if getattr(args, "command", None) == "fzip" and len(args.files) != nfiles[args.action]:
            raise ValueError(
                f"fzip {args.action} takes {nfiles[args.action]} file argument(s)"
            )
        return args.func(args)
    except _ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SearchBudgetError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except _CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except CasimirCollisionError as exc:
        print(f"casimir collision: {exc}", file=sys.stderr)
        return EXIT_COLLISION


if __name__ == "__main__":
    sys.exit(main())
