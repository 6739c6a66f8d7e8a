"""Command-line front end.

Exit status: 0 all checks pass, 1 a mathematical check failed, 2 usage or
parse error, 3 the requested preimage is not unique.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .exact import ParseError
from .nullcone import DomainError, GLPoint, GlSetting, OrthSympSetting, RankError, sample_null
from .resolutions import (
    VARIANTS,
    NotUniqueError,
    mu,
    normalize_variant,
    sample_resolution_point,
    unique_preimage,
)
from .serialize import dumps, loads, null_point_from_json, point_to_json
from .suites import (
    KIND_NAMES,
    SUITES,
    SuiteError,
    dims_table,
    format_dims_table,
    run_grid,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NOT_UNIQUE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _add_cell_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=["orth", "symp", "gl"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--variant", choices=list(VARIANTS) + ["os", "gl", "gl1", "gl2"])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nullcones", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dims", help="dimension formulas next to their oracles")
    _add_cell_flags(d)
    d.add_argument("--grid", type=Path, help="JSON list of parameter objects")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--json", type=Path, help="also write the table as JSON here")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    _add_cell_flags(v)
    v.add_argument("--grid", type=Path)
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", type=Path, help="write the full report here")

    s = sub.add_parser("sample", help="sample a null point or a resolution point")
    _add_cell_flags(s)
    s.add_argument("--rank", help="rank of T, or 'rank_a,rank_b' for gl; default maximal")
    s.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("resolve", help="unique preimage of a null point")
    r.add_argument("point", help="JSON text, a file path, or '-' for stdin")
    r.add_argument("--kind", choices=["orth", "symp"], default="orth",
                   help="form on V for an os point")
    r.add_argument("--variant", choices=list(VARIANTS) + ["os", "gl", "gl1", "gl2"])
    r.add_argument("--seed", type=int, default=0, help="seed for fiber witnesses")
    return parser


def _cell_from_flags(args) -> dict | None:
    cell = {k: getattr(args, k) for k in ("kind", "n", "m", "s", "variant")
            if getattr(args, k, None) is not None}
    return cell or None


def _load_grid(path: Path) -> list[dict]:
    try:
        data = loads(path.read_text(), str(path))
    except OSError as e:
        raise UsageError(f"cannot read grid file: {e}") from None
    if not isinstance(data, list) or not all(isinstance(c, dict) for c in data):
        raise ParseError(f"{path}: expected a JSON list of parameter objects")
    return data


def _grid(args) -> list[dict] | None:
    if args.grid is not None:
        return _load_grid(args.grid)
    cell = _cell_from_flags(args)
    return None if cell is None else [cell]


def cmd_dims(args) -> int:
    grid = _grid(args)
    rows = dims_table(grid, args.seed)
    print(format_dims_table(rows))
    if args.json:
        args.json.write_text(json.dumps(rows, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def _fill_defaults(suite: str, cell: dict) -> dict:
    """Complete a single flag-given cell from the first default cell of the same kind."""
    cell = dict(cell)
    if "variant" in cell:
        cell["variant"] = normalize_variant(cell["variant"])
        if "kind" not in cell and cell["variant"] != "nc0":
            cell["kind"] = "gl"
    defaults = SUITES[suite].default_grid
    same = [c for c in defaults
            if c.get("kind") == cell.get("kind", c.get("kind"))
            and c.get("variant") == cell.get("variant", c.get("variant"))]
    base = dict(same[0] if same else defaults[0])
    base.update(cell)
    if base.get("kind") != "gl":
        base.pop("s", None)
    return base


def cmd_verify(args) -> int:
    grid = _grid(args)
    if grid is not None and args.grid is None:
        grid = [_fill_defaults(args.suite, grid[0])]
    reports = run_grid(args.suite, grid, args.trials, args.seed, args.jobs)
    for rep in reports:
        status = "PASS" if rep.ok else "FAIL"
        print(f"{status} {rep.suite_name} {dumps(rep.parameters)} "
              f"{rep.passes}/{rep.trials} ({rep.elapsed_ms:.0f} ms)")
        for note in rep.notes:
            print(f"  note: {note}")
        for f in rep.failures:
            print(f"  trial {f['trial']} seed {f['seed']}: {f['description']}")
    if args.json:
        payload = {"suite": args.suite, "seed": args.seed,
                   "reports": [r.to_json() for r in reports]}
        args.json.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _setting_from_flags(args):
    kind = args.kind or "orth"
    if args.n is None or args.m is None:
        raise UsageError("sample needs --n and --m")
    if kind == "gl":
        if args.s is None:
            raise UsageError("gl needs --s")
        return GlSetting(args.n, args.s, args.m)
    return OrthSympSetting.standard(KIND_NAMES[kind], args.n, args.m)


def _parse_rank(text, setting):
    if text is None:
        return None
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --rank {text!r}") from None
    if isinstance(setting, GlSetting):
        if len(parts) != 2:
            raise UsageError("gl --rank takes 'rank_a,rank_b'")
        return tuple(parts)
    if len(parts) != 1:
        raise UsageError("--rank takes a single integer here")
    return parts[0]


def cmd_sample(args) -> int:
    try:
        setting = _setting_from_flags(args)
    except ValueError as e:
        raise UsageError(str(e)) from None
    ranks = _parse_rank(args.rank, setting)
    rng = random.Random(f"{args.seed}/sample")
    if args.variant is not None:
        variant = normalize_variant(args.variant)
        if (variant == "nc0") != isinstance(setting, OrthSympSetting):
            raise UsageError(f"variant {variant} does not match kind {args.kind or 'orth'}")
        point = sample_resolution_point(variant, setting, rng, ranks=ranks)
    else:
        if ranks is None:
            ranks = setting.r if isinstance(setting, OrthSympSetting) else (setting.s, setting.m)
        point = sample_null(setting, ranks, rng)
    print(dumps(point_to_json(point)))
    return EXIT_OK


def _read_point_text(arg: str) -> tuple[str, str]:
    if arg == "-":
        return sys.stdin.read(), "<stdin>"
    stripped = arg.lstrip()
    if stripped.startswith("{"):
        return arg, "<argument>"
    try:
        return Path(arg).read_text(), arg
    except OSError as e:
        raise UsageError(f"cannot read {arg}: {e}") from None


def cmd_resolve(args) -> int:
    text, where = _read_point_text(args.point)
    point = null_point_from_json(loads(text, where), where)
    if isinstance(point, GLPoint):
        s, n = point.a.shape
        n2, m = point.b.shape
        if n != n2:
            raise ParseError(f"{where}: a is {s}x{n} but b is {n2}x{m}")
        try:
            setting = GlSetting(n, s, m)
        except ValueError as e:
            raise UsageError(str(e)) from None
        variant = normalize_variant(args.variant or "nc")
        if variant == "nc0":
            raise UsageError("variant nc0 needs an os point")
    else:
        n, m = point.t.shape
        try:
            setting = OrthSympSetting.standard(KIND_NAMES[args.kind], n, m)
        except ValueError as e:
            raise UsageError(str(e)) from None
        variant = normalize_variant(args.variant or "nc0")
        if variant != "nc0":
            raise UsageError(f"variant {variant} needs a gl point")
    rng = random.Random(f"{args.seed}/resolve")
    try:
        pre = unique_preimage(variant, setting, point, rng)
    except NotUniqueError as e:
        out = {"status": "not-unique", "variant": variant, "message": str(e),
               "point": point_to_json(point),
               "witnesses": [point_to_json(w) for w in e.witnesses]}
        print(dumps(out))
        return EXIT_NOT_UNIQUE
    out = {"status": "unique", "variant": variant, "point": point_to_json(mu(pre)),
           "preimage": point_to_json(pre)}
    print(dumps(out))
    return EXIT_OK


COMMANDS = {"dims": cmd_dims, "verify": cmd_verify, "sample": cmd_sample, "resolve": cmd_resolve}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SuiteError, RankError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


__all__ = ["main", "entry", "build_parser"]
