"""Batch front-end: basis listings, matrix dumps, verification suites, tables.

Exit status is 0 when everything selected verified, 1 on a violation and 2
on a usage or formula error.  Output is deterministic and ends in a newline.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import charcount, fockmodule, gzbasis, isoscalar, matrixrep, reduced
from ._sqrtprod import SingularValue
from .exactnum import ZERO, FactorizationLimit, NegativeRadicand
from .fockmodule import Bracket, Gen, GeneratorLabel
from .gzbasis import GZPattern, Signature

log = logging.getLogger("parastat")

DEFAULTS = {"m": 1, "n": 1, "p": 1, "level": 3, "variant": "osp", "format": "json", "output": None}
INT_KEYS = ("m", "n", "p", "level")


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ config


def read_config(path) -> dict:
    """``key = value`` lines; ``#`` comments, quotes and ``[section]`` headers tolerated."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or (line.startswith("[") and line.endswith("]")):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "level_cap":
            key = "level"
        if len(value) >= 2 and value[0] == value[-1] and value[0] in "'\"":
            value = value[1:-1]
        if key in INT_KEYS:
            try:
                value = int(value)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: {key} must be an integer") from None
        out[key] = value
    return out


def resolve(args) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(read_config(args.config))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if cfg["variant"] not in ("osp", "pso"):
        raise UsageError(f"variant must be osp or pso, not {cfg['variant']!r}")
    if cfg["format"] not in ("json", "csv", "text"):
        raise UsageError(f"format must be json, csv or text, not {cfg['format']!r}")
    for key in INT_KEYS:
        if not isinstance(cfg[key], int):
            raise UsageError(f"{key} must be an integer")
    if cfg["m"] < 1 or cfg["n"] < 1 or cfg["p"] < 1:
        raise UsageError("need m >= 1, n >= 1, p >= 1")
    if cfg["level"] < 0:
        raise UsageError("level must be nonnegative")
    return cfg


def signature(cfg) -> Signature:
    return Signature(cfg["m"], cfg["n"], cfg["p"], cfg["level"])


# ------------------------------------------------------------------ output


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)  # RFC 4180: CRLF records, quotes doubled
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def emit(text: str, cfg) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.get("output"):
        Path(cfg["output"]).write_bytes(text.encode("utf-8"))
        return
    out = getattr(sys.stdout, "buffer", None)
    if out is not None:
        sys.stdout.flush()
        out.write(text.encode("utf-8"))
        out.flush()
    else:
        sys.stdout.write(text)


def _compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# ------------------------------------------------------------------- words


def parse_word(text: str, variant: str):
    """``f1+`` or nested brackets such as ``[[f1+,b1-],f1-]`` (``{}`` also accepted)."""
    s = text.replace(" ", "")
    pos = 0

    def expr():
        nonlocal pos
        if pos < len(s) and s[pos] in "[{":
            close = "]" if s[pos] == "[" else "}"
            pos += 1
            left = expr()
            if pos >= len(s) or s[pos] != ",":
                raise UsageError(f"expected ',' at position {pos} in {text!r}")
            pos += 1
            right = expr()
            if pos >= len(s) or s[pos] != close:
                raise UsageError(f"expected {close!r} at position {pos} in {text!r}")
            pos += 1
            return Bracket(left, right)
        start = pos
        while pos < len(s) and s[pos] not in ",]}":
            pos += 1
        try:
            return Gen(GeneratorLabel.parse(s[start:pos], variant))
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    word = expr()
    if pos != len(s):
        raise UsageError(f"trailing text in {text!r}")
    return word


def parse_pattern(text: str, m: int, n: int) -> GZPattern:
    """``"1,0,0 / 1,0 / 0"`` (top row first) or pattern JSON."""
    text = text.strip()
    try:
        if text.startswith("{"):
            return GZPattern.from_json_obj(json.loads(text))
        rows = tuple(tuple(int(x) for x in part.split(",")) for part in text.split("/"))
        return GZPattern(m, n, rows)
    except (ValueError, KeyError, gzbasis.ShapeError) as exc:
        raise UsageError(f"bad pattern {text!r}: {exc}") from None


# ---------------------------------------------------------------- commands


def cmd_basis(cfg) -> tuple[str, int]:
    sig = signature(cfg)
    pats = gzbasis.basis(sig)
    weights = [[str(x) for x in gzbasis.weight(b, sig)] for b in pats]
    if cfg["format"] == "json":
        return render_json({
            "m": sig.m, "n": sig.n, "p": sig.p, "level_cap": sig.level_cap, "count": len(pats),
            "patterns": [{"index": i, "level": b.level, "rows": b.to_json_obj()["rows"], "weight": w}
                         for i, (b, w) in enumerate(zip(pats, weights))],
        }), 0
    if cfg["format"] == "csv":
        return render_csv(["index", "level", "rows", "weight"],
                          [[i, b.level, _compact(b.to_json_obj()["rows"]), " ".join(w)]
                           for i, (b, w) in enumerate(zip(pats, weights))]), 0
    lines = [f"{i:>4}  level {b.level}  {b}  weight ({', '.join(w)})"
             for i, (b, w) in enumerate(zip(pats, weights))]
    return "\n".join(lines), 0


def cmd_matrix(cfg, spec: str, defining: bool, route: str) -> tuple[str, int]:
    if defining:
        word = parse_word(spec, "pso")
        try:
            M = matrixrep.evaluate_word(word, cfg["m"], cfg["n"])
        except IndexError as exc:
            raise UsageError(str(exc)) from None
        if cfg["format"] == "json":
            obj = M.to_json_obj()
            obj["name"] = spec
            return render_json(obj), 0
        if cfg["format"] == "csv":
            return render_csv([f"c{j + 1}" for j in range(M.dim)],
                              [[str(v) for v in row] for row in M.rows()]), 0
        return M.to_text(), 0

    sig = signature(cfg)
    word = parse_word(spec, cfg["variant"])
    depth = fockmodule.depth(word)
    top = sig.level_cap - depth + 1 if isinstance(word, Gen) else sig.level_cap - depth
    if top < 0:
        raise UsageError(f"a word of depth {depth} needs --level >= {depth}")
    try:
        if isinstance(word, Gen):
            M = fockmodule.matrix(word.label, sig, route)
        else:
            M = fockmodule.evaluate(word, sig, top, route)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    M.name = spec
    pats = fockmodule._basis_list(sig)
    pos = {b: i for i, b in enumerate(pats)}
    if cfg["format"] == "json":
        obj = M.to_json_obj()
        obj["variant"] = cfg["variant"]
        obj["max_source_level"] = M.max_level
        return render_json(obj), 0
    if cfg["format"] == "csv":
        return render_csv(["row", "col", "row_pattern", "col_pattern", "value"],
                          [[pos[r], pos[c], str(r), str(c), v.to_json()] for r, c, v in M.entries()]), 0
    lines = [f"# {spec} ({cfg['variant']}), degree {tuple(M.degree)}, source levels <= {M.max_level}"]
    lines += [f"({r}) <- ({c}) : {v}" for r, c, v in M.entries()]
    return "\n".join(lines), 0


SUITES = ("relations", "gl", "closed_form", "defining", "character",
          "vacuum", "adjoint", "cartan", "nilpotency", "phase")
ALL_SUITES = ("relations", "gl", "closed_form", "defining", "character",
              "vacuum", "adjoint", "cartan", "nilpotency")


def _summary(report: dict) -> dict:
    out = {k: v for k, v in report.items() if k != "results"}
    bad = [r for r in report.get("results", []) if r.get("status", "ok") != "ok" or r.get("match") is False]
    out["violations"] = bad
    return out


def cmd_verify(cfg, selected: list[str], full: bool) -> tuple[str, int]:
    sig = signature(cfg)
    variants = ("osp", "pso")
    reports = []
    for suite in selected:
        if suite == "relations":
            if sig.level_cap < 3:
                raise UsageError("relation checks need --level >= 3")
            reports += [fockmodule.verify_relations(sig, v) for v in variants]
        elif suite == "gl":
            if sig.level_cap < 2:
                raise UsageError("gl(m|n) checks need --level >= 2")
            reports += [fockmodule.verify_gl_embedding(sig, v) for v in variants]
        elif suite == "closed_form":
            if (sig.m, sig.n) != (1, 1):
                if len(selected) > 1:
                    continue
                raise UsageError("the closed-form comparison needs --m 1 --n 1")
            reports.append(fockmodule.verify_closed_form(sig.p, sig.level_cap))
        elif suite == "defining":
            reports.append(matrixrep.verify_defining_relations(sig.m, sig.n))
        elif suite == "character":
            reports.append(charcount.verify_level_dimensions(sig))
            reports.append(charcount.verify_top_rows(sig.m, sig.n, sig.level_cap))
        elif suite == "vacuum":
            reports += [fockmodule.verify_vacuum(sig, v) for v in variants]
        elif suite == "adjoint":
            reports += [fockmodule.verify_adjointness(sig, v) for v in variants]
        elif suite == "cartan":
            if sig.level_cap < 1:
                raise UsageError("the recurrence check needs --level >= 1")
            reports += [fockmodule.verify_cartan(sig, v) for v in variants]
        elif suite == "nilpotency":
            if sig.level_cap >= 4:
                reports.append(fockmodule.verify_nilpotency(sig))
        elif suite == "phase":
            reports.append(fockmodule.verify_phase_link(sig))
    ok = all(r["ok"] for r in reports)
    body = {"m": sig.m, "n": sig.n, "p": sig.p, "level_cap": sig.level_cap, "ok": ok,
            "suites": reports if full else [_summary(r) for r in reports]}
    code = 0 if ok else 1
    if cfg["format"] == "json":
        return render_json(body), code
    if cfg["format"] == "csv":
        rows = []
        for r in reports:
            for item in r.get("results", [{}]):
                status = item.get("status", "ok" if item.get("match", r["ok"]) else "violated")
                rows.append([r["suite"], item.get("relation", item.get("level", "")),
                             _compact(item.get("indices", [])), _compact(item.get("signs", [])),
                             status])
        return render_csv(["suite", "relation", "indices", "signs", "status"], rows), code
    lines = [f"{'PASS' if r['ok'] else 'FAIL'}  {r['suite']}  ({r.get('checked', 0)} checks)"
             for r in reports]
    lines.append("verified" if ok else "violations found")
    return "\n".join(lines), code


def cmd_character(cfg) -> tuple[str, int]:
    sig = signature(cfg)
    rep = charcount.verify_level_dimensions(sig)
    rows = []
    for level_row in rep["results"]:
        level = level_row["level"]
        for lam, dim in level_row["partitions"]:
            top = charcount.top_row_for(lam, sig.m, sig.n)
            count = len(gzbasis.enumerate_with_top(top, sig))
            rows.append([level, "(" + ",".join(map(str, lam)) + ")", dim, count, dim == count])
        rows.append([level, "total", level_row["dimension"], level_row["patterns"], level_row["match"]])
    ok = rep["ok"] and all(r[4] for r in rows)
    header = ["level", "partition", "dimension", "patterns", "match"]
    if cfg["format"] == "json":
        return render_json({"m": sig.m, "n": sig.n, "p": sig.p, "level_cap": sig.level_cap, "ok": ok,
                            "rows": [dict(zip(header, r)) for r in rows]}), 0 if ok else 1
    if cfg["format"] == "csv":
        return render_csv(header, [[*r[:4], str(r[4]).lower()] for r in rows]), 0 if ok else 1
    lines = [f"{r[0]:>5}  {r[1]:<14} {r[2]:>8} {r[3]:>8}  {'ok' if r[4] else 'MISMATCH'}" for r in rows]
    return "\n".join(["level  partition     dimension patterns"] + lines), 0 if ok else 1


def cmd_gtable(cfg, tilde: bool) -> tuple[str, int]:
    sig = signature(cfg)
    fn = reduced.G_tilde if tilde else reduced.G
    rows = []
    for level in range(sig.level_cap + 1):
        for top in gzbasis.top_rows(sig.m, sig.n, level, sig.p):
            for k in range(1, sig.r + 1):
                rows.append((top, k, fn(k, top, sig.m, sig.p)))
    if cfg["format"] == "csv":
        return render_csv(["top", "k", "value"],
                          [[",".join(map(str, t)), k, v.to_json()] for t, k, v in rows]), 0
    if cfg["format"] == "json":
        return render_json({"m": sig.m, "n": sig.n, "p": sig.p, "level_cap": sig.level_cap,
                            "tilde": tilde,
                            "rows": [{"top": list(t), "k": k, "value": v.to_json_obj()}
                                     for t, k, v in rows]}), 0
    return "\n".join(f"G{'~' if tilde else ''}_{k}({','.join(map(str, t))}) = {v}"
                     for t, k, v in rows), 0


def cmd_cgc(cfg, source: str, target: str) -> tuple[str, int]:
    m, n = cfg["m"], cfg["n"]
    src = parse_pattern(source, m, n)
    tgt = parse_pattern(target, m, n)
    tr = isoscalar.transition_between(src, tgt)
    if tr is None:
        factors, value = [], None
    else:
        factors = isoscalar.cgc_factors(tr)
        value = isoscalar.cgc(tr)
    if cfg["format"] == "json":
        return render_json({
            "source": src.to_json_obj(), "target": tgt.to_json_obj(),
            "j": tr.j if tr else None,
            "factors": [{"formula": f, "row": t, "value": v.to_json_obj()} for f, t, v in factors],
            "value": value.to_json_obj() if value is not None else {"terms": []},
        }), 0
    if cfg["format"] == "csv":
        rows = [[f, t, v.to_json()] for f, t, v in factors]
        rows.append(["product", "", (value if value is not None else ZERO).to_json()])
        return render_csv(["formula", "row", "value"], rows), 0
    if tr is None:
        return f"({tgt}) is not reached from ({src}) by a single-box path: 0", 0
    lines = [f"({src}) -> ({tgt}), j = {tr.j}"]
    lines += [f"  {f:<10} row {t}: {v}" for f, t, v in factors]
    lines.append(f"  CGC = {value}")
    return "\n".join(lines), 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, help="number of parafermions")
    common.add_argument("--n", type=int, help="number of parabosons")
    common.add_argument("--p", type=int, help="order of the statistics")
    common.add_argument("--level", type=int, help="level cap of the truncated basis")
    common.add_argument("--variant", choices=("osp", "pso"))
    common.add_argument("--format", choices=("json", "csv", "text"))
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("-v", "--verbose", action="store_true", help="log 0/0 cancellations")

    parser = argparse.ArgumentParser(prog="parastat", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("basis", parents=[common], help="list the truncated Fock basis")

    mp = sub.add_parser("matrix", parents=[common], help="dump a generator or bracket matrix")
    mp.add_argument("word", help="generator (f1+, b2-) or bracket word ([f1+,b1-])")
    mp.add_argument("--defining", action="store_true", help="use the (2m+2n+1)-dim matrices")
    mp.add_argument("--route", choices=("twist", "gtilde"), default="twist",
                    help="pso action through the level twist or through the signed G~")

    vp = sub.add_parser("verify", parents=[common], help="run verification suites")
    vp.add_argument("--all", action="store_true", help="all standard suites")
    for name in SUITES:
        flags = [f"--{name.replace('_', '-')}"]
        if name == "closed_form":
            flags.append("--section4")
        vp.add_argument(*flags, dest=name, action="store_true")
    vp.add_argument("--full", action="store_true", help="include every individual check")

    sub.add_parser("character", parents=[common], help="level dimensions against tableaux")

    gp = sub.add_parser("gtable", parents=[common], help="reduced matrix element table")
    gp.add_argument("--tilde", action="store_true", help="signed G~ instead of G")

    cp = sub.add_parser("cgc", parents=[common], help="show the factors of one CGC")
    cp.add_argument("source", help='pattern such as "1,0,0/1,0/0" (top row first)')
    cp.add_argument("target")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve(args)
        if args.command == "basis":
            text, code = cmd_basis(cfg)
        elif args.command == "matrix":
            text, code = cmd_matrix(cfg, args.word, args.defining, args.route)
        elif args.command == "verify":
            chosen = [s for s in SUITES if getattr(args, s)]
            if args.all:
                chosen = list(ALL_SUITES) + [s for s in chosen if s not in ALL_SUITES]
            if not chosen:
                raise UsageError("select suites with --all or e.g. --relations")
            text, code = cmd_verify(cfg, chosen, args.full)
        elif args.command == "character":
            text, code = cmd_character(cfg)
        elif args.command == "gtable":
            text, code = cmd_gtable(cfg, args.tilde)
        else:
            text, code = cmd_cgc(cfg, args.source, args.target)
    except (UsageError, ValueError) as exc:
        print(f"parastat: error: {exc}", file=sys.stderr)
        return 2
    except (SingularValue, NegativeRadicand, FactorizationLimit) as exc:
        print(f"parastat: formula error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"parastat: error: {exc}", file=sys.stderr)
        return 2
    emit(text, cfg)
    return code


if __name__ == "__main__":
    sys.exit(main())
