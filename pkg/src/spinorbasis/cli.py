"""Command-line front end: ``tables``, ``verify`` and ``eval``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Output files are written atomically, so a failed run leaves nothing
behind.  Without ``--output`` results go to standard output, unless
``SPINORBASIS_OUTPUT_DIR`` is set, in which case a file named after the
command is written there.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from importlib import resources

import numpy as np

from .angular import LabelError, SpinLabels, fmt_half, half
from .radial import RadialFamily, RadialParameterError
from .spinor import assemble_chi, assemble_psi, emit_table, eval_spinor
from .tables import emit_coupling_table, load_allowlist

ENV_OUTPUT_DIR = "SPINORBASIS_OUTPUT_DIR"
_EXT = {"text": "txt", "csv": "csv", "json": "json"}


class UsageError(Exception):
    """Invalid configuration or input; maps to exit status 2."""


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".spinorbasis-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, output: str | None, default_name: str) -> None:
    if output is None:
        env = os.environ.get(ENV_OUTPUT_DIR)
        if env:
            output = os.path.join(env, default_name)
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        write_atomic(output, text)


def _spin(text: str):
    try:
        s = half(text)
    except LabelError as err:
        raise UsageError(str(err)) from None
    if s < 0:
        raise UsageError("spin must be non-negative")
    return s


def cmd_tables(args) -> int:
    s = _spin(args.s)
    tag = fmt_half(s).replace("/", "_")
    if args.kind == "coupling":
        if s == 0 or s.denominator != 2:
            raise UsageError("coupling tables need a half-odd spin such as 1/2 or 3/2")
        text = emit_coupling_table(s, args.l_max, args.format)
        name = f"coupling_s{tag}.{_EXT[args.format]}"
    else:
        if args.n_max < 1:
            raise UsageError("--n-max must be >= 1")
        text = emit_table(s, args.n_max, args.format, args.radial)
        name = f"spinor_{args.radial}_s{tag}_n{args.n_max}.{_EXT[args.format]}"
    _emit(text, args.output, name)
    return 0


def _allowlist(arg):
    if arg is None:
        return None
    if arg == "builtin":
        ref = resources.files("spinorbasis").joinpath("data", "known_typos.txt")
        with resources.as_file(ref) as p:
            return load_allowlist(p)
    try:
        return load_allowlist(arg)
    except OSError as err:
        raise UsageError(f"cannot read allowlist: {err}") from None


def cmd_verify(args) -> int:
    from .verify import run_suite

    s = None if args.s is None else fmt_half(_spin(args.s))
    reports = run_suite(args.suite, s=s, alpha=args.alpha, allowlist=_allowlist(args.allowlist),
                        points=args.points)
    text = "".join(r.text() for r in reports)
    ok = all(r.ok for r in reports)
    text += f"# overall {'PASS' if ok else 'FAIL'}\n"
    _emit(text, args.output, f"verify_{args.suite}.txt")
    return 0 if ok else 1


def read_points(text: str) -> np.ndarray:
    """Parse ``r theta phi`` lines; blank lines and ``#`` comments are skipped."""
    pts = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise UsageError(f"line {no}: expected 3 numbers, got {len(parts)}")
        try:
            vals = [float(p) for p in parts]
        except ValueError:
            raise UsageError(f"line {no}: not a decimal number in {line!r}") from None
        if not all(np.isfinite(vals)):
            raise UsageError(f"line {no}: non-finite value")
        if vals[0] < 0:
            raise UsageError(f"line {no}: negative radius")
        pts.append(vals)
    return np.array(pts, dtype=float).reshape(-1, 3)


def format_values(values: np.ndarray) -> str:
    """One line per point: components as ``re,im`` pairs separated by spaces."""
    lines = []
    for col in values.T:
        lines.append(" ".join(f"{z.real!r},{z.imag!r}" for z in map(complex, col)))
    return "".join(line + "\n" for line in lines)


def cmd_eval(args) -> int:
    s = _spin(args.s)
    try:
        lab = SpinLabels(s, args.l, half(args.j), half(args.m))
        if args.radial == "sto":
            fam = RadialFamily("sto", zeta=args.zeta)
            sp = assemble_chi(lab, args.n)
        else:
            fam = RadialFamily("psi_alpha", args.alpha, args.zeta)
            sp = assemble_psi(lab, args.n, dual=args.radial == "psi-dual")
    except (LabelError, RadialParameterError) as err:
        raise UsageError(str(err)) from None
    if args.points == "-":
        src = sys.stdin.read()
    else:
        try:
            with open(args.points, encoding="utf-8") as fh:
                src = fh.read()
        except OSError as err:
            raise UsageError(f"cannot read points: {err}") from None
    pts = read_points(src)
    if len(pts):
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = eval_spinor(sp, fam, pts[:, 0], pts[:, 1], pts[:, 2])
    else:
        vals = np.zeros((len(sp.rows), 0), dtype=complex)
    _emit(format_values(vals), args.output, "eval.txt")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="spinorbasis",
        description="Spinor orbital basis sets: tables, verification and evaluation.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="generate coefficient tables")
    t.add_argument("--kind", choices=("spinor", "coupling"), default="spinor")
    t.add_argument("--s", default="1/2", help="spin as p/2 (default 1/2)")
    t.add_argument("--n-max", type=int, default=4, help="largest principal number")
    t.add_argument("--l-max", type=int, default=3, help="largest l for coupling tables")
    t.add_argument("--radial", choices=("psi", "sto"), default="psi",
                   help="radial family of the spinor table")
    t.add_argument("--format", choices=tuple(_EXT), default="text")
    t.add_argument("--output", help="output file ('-' for stdout)")
    t.set_defaults(func=cmd_tables)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=("tables", "orthonormality", "gradients", "exact", "all"),
                   default="all")
    v.add_argument("--s", default=None, help="restrict spin-dependent checks to this spin")
    v.add_argument("--alpha", type=int, default=None, help="restrict biorthonormality to alpha")
    v.add_argument("--allowlist", default=None,
                   help="file of documented table discrepancies, or 'builtin'")
    v.add_argument("--points", type=int, default=50, help="random points for gradient checks")
    v.add_argument("--output", help="report file ('-' for stdout)")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate one spinor on points")
    e.add_argument("points", help="file of 'r theta phi' lines ('-' for stdin)")
    e.add_argument("--s", default="1/2")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--l", type=int, required=True)
    e.add_argument("--j", required=True, help="p/2")
    e.add_argument("--m", required=True, help="p/2")
    e.add_argument("--radial", choices=("psi", "psi-dual", "sto"), default="psi")
    e.add_argument("--alpha", type=int, default=1)
    e.add_argument("--zeta", type=float, default=1.0)
    e.add_argument("--output", help="output file ('-' for stdout)")
    e.set_defaults(func=cmd_eval)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"spinorbasis: error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"spinorbasis: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
