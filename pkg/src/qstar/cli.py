"""Command-line interface: ``qstar <command> CONFIG ...``.

Exit codes: 0 success, 2 malformed input or domain error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys

from .config import (
    FORMATS,
    ConfigError,
    RunConfig,
    format_decimal,
    format_rational,
    load_config,
    parse_rational,
)
from .digits import DigitSeq, parse_digits, parse_seq, render_digits
from .dimension import level_set_dimension, moran_dimension
from .errors import BudgetError, DomainError
from .functions import SAdicParam, apply_digits, eval_at_point, evaluate, jump
from .numeration import canonicalize, decode, encode, is_binary
from .sets import (
    LevelKind,
    ValueSetKind,
    level_enumerate,
    level_profile,
    value_set,
    value_set_intervals,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3


class Output:
    """A record of key/value fields plus an optional table, rendered on demand."""

    def __init__(self, record: dict, rows: list[dict] | None = None):
        self.record = record
        self.rows = rows

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = dict(self.record)
            if self.rows is not None:
                doc["rows"] = self.rows
            return json.dumps(doc, indent=2) + "\n"
        if fmt == "csv":
            rows = self.rows if self.rows is not None else [self.record]
            return _csv(rows, list(self.record) if self.rows is None else None)
        lines = [f"{k}: {v}" for k, v in self.record.items()]
        if self.rows:
            lines.append(_csv(self.rows).rstrip("\n"))
        return "\n".join(lines) + "\n"


def _csv(rows: list[dict], header: list[str] | None = None) -> str:
    buf = io.StringIO()
    if header is None:
        header = list(rows[0]) if rows else []
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


class Context:
    def __init__(self, cfg: RunConfig, args):
        self.cfg = cfg
        self.sys = cfg.system
        self.s = cfg.system.s
        self.precision = args.precision if args.precision is not None else cfg.precision
        self.rank = args.rank if args.rank is not None else cfg.rank
        self.tol = parse_rational(args.tol) if args.tol is not None else cfg.tol
        if self.precision < 1 or self.rank < 1 or not self.tol > 0:
            raise ConfigError("precision and rank must be >= 1, tolerance > 0")
        self.cap = args.cap

    def q(self, x) -> str:
        return format_rational(x)

    def dec(self, x) -> str:
        return format_decimal(x, self.precision)

    def seq(self, text: str) -> DigitSeq:
        return parse_seq(text, self.s)

    def param(self, text: str) -> SAdicParam:
        return SAdicParam(parse_seq(text, self.s))


def cmd_validate(ctx: Context, args) -> Output:
    lo, hi = ctx.sys.entry_bounds()
    return Output({
        "status": "ok",
        "s": ctx.s,
        "prefix_columns": len(ctx.sys.prefix),
        "period_columns": len(ctx.sys.period),
        "self_similar": ctx.sys.is_self_similar,
        "min_entry": ctx.q(lo),
        "max_entry": ctx.q(hi),
    })


def _point(ctx: Context, text: str):
    """Digit sequence if the text has a period in parentheses, else a rational."""
    if "(" in text:
        return ctx.seq(text)
    return parse_rational(text)


def cmd_eval(ctx: Context, args) -> Output:
    a = ctx.param(args.a)
    x = _point(ctx, args.x)
    if isinstance(x, DigitSeq):
        xc = canonicalize(x)
        image = apply_digits(a, xc)
        value, bound = decode(ctx.sys, image), 0
        xval, xdigits, exact = decode(ctx.sys, xc), str(xc), True
    else:
        value, bound = eval_at_point(ctx.sys, a, x, ctx.rank)
        enc = encode(ctx.sys, x, ctx.rank)
        xval, exact = x, enc.exact
        xdigits = str(enc.seq) if enc.exact else render_digits(enc.digits, ctx.s) + "..."
        image = apply_digits(a, enc.seq)
    img = str(image) if exact else render_digits(image.prefix(len(enc.digits)), ctx.s) + "..."
    return Output({
        "a": str(a),
        "x": ctx.q(xval),
        "x_digits": xdigits,
        "value": ctx.q(value),
        "value_decimal": ctx.dec(value),
        "error_bound": ctx.q(bound),
        "image_digits": img,
    })


def cmd_graph(ctx: Context, args) -> Output:
    a = ctx.param(args.a)
    m = ctx.rank
    cap = ctx.cap if ctx.cap is not None else 100_000
    if ctx.s**m > cap:
        raise BudgetError(f"{ctx.s}^{m} sample points exceed cap {cap}")
    rows = []
    for word in itertools.product(range(ctx.s), repeat=m):
        x = DigitSeq.terminating(ctx.s, word)
        xv, fx = decode(ctx.sys, x), evaluate(ctx.sys, a, x)
        rows.append({
            "digits": str(x),
            "x": ctx.q(xv),
            "x_decimal": ctx.dec(xv),
            "fx": ctx.q(fx),
            "fx_decimal": ctx.dec(fx),
            "image_digits": str(apply_digits(a, x)),
        })
    return Output({"a": str(a), "rank": m, "points": len(rows)}, rows)


def cmd_levelset(ctx: Context, args) -> Output:
    a = ctx.param(args.a)
    y0 = canonicalize(ctx.seq(args.y0))
    profile = level_profile(a, y0)
    record = {
        "a": str(a),
        "y0": str(y0),
        "y0_value": ctx.q(decode(ctx.sys, y0)),
        "classification": profile.classification.value,
        "count": "" if profile.count is None else profile.count,
        "solution_sets": _render_sets(profile.solsets, ctx.s),
    }
    if not args.enumerate:
        return Output(record)
    if profile.classification is not LevelKind.FINITE:
        raise DomainError(f"cannot enumerate a level set that is {profile.classification.value}")
    cap = ctx.cap if ctx.cap is not None else 4096
    pts = level_enumerate(ctx.sys, a, y0, cap)
    rows = []
    for x in pts:
        enc = encode(ctx.sys, x, 10 * ctx.rank)
        rows.append({"x": ctx.q(x), "x_decimal": ctx.dec(x), "digits": str(enc.seq)})
    record["points"] = len(rows)
    return Output(record, rows)


def _render_sets(ps, s: int) -> str:
    def one(v):
        return "{" + ",".join(str(d) for d in sorted(v)) + "}"
    pre = "".join(one(v) for v in ps.preperiod)
    per = "".join(one(v) for v in ps.period)
    return f"{pre}({per})"


def cmd_valueset(ctx: Context, args) -> Output:
    a = ctx.param(args.a)
    spec = value_set(a, ctx.s, ctx.sys)
    record = {
        "a": str(a),
        "classification": spec.classification.value,
        "digit_sets": _render_sets(spec.vsets, ctx.s),
        "measure": ctx.q(spec.measure),
        "sup_point": ctx.q(spec.sup_point),
        "sup_point_decimal": ctx.dec(spec.sup_point),
    }
    if spec.classification is ValueSetKind.CANTOR:
        return Output(record)
    rows = [
        {"left": ctx.q(c.left), "right": ctx.q(c.right),
         "left_decimal": ctx.dec(c.left), "right_decimal": ctx.dec(c.right)}
        for c in value_set_intervals(ctx.sys, a, spec)
    ]
    record["intervals"] = len(rows)
    return Output(record, rows)


def cmd_dimension(ctx: Context, args) -> Output:
    if not ctx.sys.is_self_similar:
        raise DomainError("dimension is only available for self-similar systems (one repeated column)")
    col = ctx.sys.period[0]
    if args.level:
        a, y0 = ctx.param(args.level[0]), ctx.seq(args.level[1])
        dim = level_set_dimension(col, a, y0, ctx.tol)
        what = {"a": str(a), "y0": str(y0)}
    else:
        if args.digits is None:
            raise DomainError("give a digit set or --level A Y0")
        digits = parse_digits(args.digits.strip("{} "), ctx.s)
        if len(set(digits)) != len(digits):
            raise DomainError("digit set has repeated entries")
        dim = moran_dimension(col, digits, ctx.tol)
        what = {"digits": "{" + ",".join(str(d) for d in sorted(digits)) + "}"}
    return Output({**what, "dimension": f"{dim:.{ctx.precision}f}", "tolerance": ctx.q(ctx.tol)})


def cmd_jump(ctx: Context, args) -> Output:
    a = ctx.param(args.a)
    base = parse_digits(args.base, ctx.s)
    rep = jump(ctx.sys, a, base)
    return Output({
        "a": str(a),
        "base": render_digits(base, ctx.s),
        "point": ctx.q(rep.point),
        "value_canonical": ctx.q(rep.value_canonical),
        "limit_other": ctx.q(rep.limit_other),
        "gap": ctx.q(rep.gap),
        "gap_decimal": ctx.dec(rep.gap),
    })


def cmd_encode(ctx: Context, args) -> Output:
    x = parse_rational(args.x)
    enc = encode(ctx.sys, x, ctx.rank)
    rec = {"x": ctx.q(x), "exact": enc.exact}
    if enc.exact:
        rec["digits"] = str(enc.seq)
        rec["binary"] = is_binary(enc.seq)
    else:
        rec["digits"] = render_digits(enc.digits, ctx.s) + "..."
        rec["left"] = ctx.q(enc.enclosure.left)
        rec["right"] = ctx.q(enc.enclosure.right)
    return Output(rec)


def cmd_decode(ctx: Context, args) -> Output:
    seq = ctx.seq(args.x)
    v = decode(ctx.sys, seq)
    return Output({"digits": str(seq), "value": ctx.q(v), "value_decimal": ctx.dec(v), "binary": is_binary(seq)})


COMMANDS = {
    "validate": (cmd_validate, "check a system config", ()),
    "eval": (cmd_eval, "evaluate f_a at a digit sequence or rational", ("a", "x")),
    "graph": (cmd_graph, "tabulate f_a at all rank-m cylinder left endpoints", ("a",)),
    "levelset": (cmd_levelset, "classify (and optionally enumerate) a level set", ("a", "y0")),
    "valueset": (cmd_valueset, "classify the value set of f_a", ("a",)),
    "dimension": (cmd_dimension, "similarity dimension of a self-similar digit-restricted set", ()),
    "jump": (cmd_jump, "jump of f_a at the binary point BASE(0)", ("a", "base")),
    "encode": (cmd_encode, "expand a rational in the system", ("x",)),
    "decode": (cmd_decode, "value of a digit sequence", ("x",)),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qstar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_, positionals) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("config_path", nargs="?", metavar="CONFIG", help="system JSON (or use --config)")
        for pos in positionals:
            sp.add_argument(pos)
        sp.add_argument("--config", dest="config_opt", metavar="PATH")
        sp.add_argument("--rank", type=int)
        sp.add_argument("--tol")
        sp.add_argument("--cap", type=int)
        sp.add_argument("--format", choices=FORMATS)
        sp.add_argument("--precision", type=int)
        if name == "levelset":
            sp.add_argument("--enumerate", action="store_true", help="list all points of a finite level set")
        if name == "dimension":
            sp.add_argument("digits", nargs="?", help="allowed digits, e.g. 0,1")
            sp.add_argument("--level", nargs=2, metavar=("A", "Y0"))
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    fn = COMMANDS[args.command][0]
    try:
        path = args.config_opt or args.config_path
        if args.config_opt and args.config_path and args.command == "dimension" and args.digits is None:
            args.digits = args.config_path
        if path is None:
            raise ConfigError("no config given")
        cfg = load_config(path)
        ctx = Context(cfg, args)
        out = fn(ctx, args)
        fmt = args.format or cfg.format or ("csv" if args.command == "graph" else "plain")
        stdout.write(out.render(fmt))
    except BudgetError as exc:
        print(f"qstar: budget exceeded: {exc}", file=stderr)
        return EXIT_BUDGET
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        print(f"qstar: error: {exc}", file=stderr)
        return EXIT_INPUT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
