"""Reference tables: LaTeX cell parsing and cell-by-cell comparison.

The shipped reference files ``data/table{1,2,3,4}.csv`` hold the printed
cells verbatim (LaTeX subset) with the source line of each row and a
transcription note.  Tables 1 and 2 are spinor coefficient tables; tables
3 and 4 list the coupling coefficients A, B, C, D for ``k = +1, -1``.

Cell grammar: numbers, ``i``, ``+ - /``, parentheses, ``\\sqrt{..}``,
``\\frac{..}{..}`` and an optional trailing orbital ``\\psi_{nlm}^\\alpha``.
Juxtaposition is multiplication.  In the spinor tables a slash followed by
an integer and a square root of an integer, as in ``1/2\\sqrt{35}``, puts
the whole product in the denominator; with a fractional radicand, as in
``1/2\\sqrt{5/3}``, only the integer is divided.  Row norms confirm this
reading of the printed layout.
"""

from __future__ import annotations

import cmath
import csv
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import exact as ex
from .angular import SpinLabels, fmt_half, half
from .deriv import coupling_coeffs
from .exact import ExactComplex
from .spinor import assemble_psi

__all__ = [
    "CellParseError",
    "parse_cell",
    "load_reference",
    "CellResult",
    "compare_table",
    "compare_all",
    "coupling_labels",
    "coupling_row",
    "emit_coupling_table",
    "load_allowlist",
    "COUPLING_COLUMNS",
]

COUPLING_COLUMNS = ("A+1", "A-1", "B+1", "B-1", "C+1", "C-1", "D+1", "D-1")
TABLE_SPIN = {1: Fraction(1, 2), 2: Fraction(3, 2), 3: Fraction(1, 2), 4: Fraction(3, 2)}


class CellParseError(ValueError):
    """The printed cell is outside the supported grammar."""


_TOKEN = re.compile(r"\s*(\\sqrt|\\frac|\d+|[-+/(){}i])")
_ORBITAL = re.compile(r"(?:\\psi|ψ)_\{?(\d)(\d)(-?\d)\}?\^\{?(?:\\alpha|α)\}?\s*$")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise CellParseError(f"unexpected text {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent parser; ``numeric`` evaluates in complex floats."""

    def __init__(self, tokens, slash_rule, numeric=False):
        self.t = tokens
        self.i = 0
        self.slash_rule = slash_rule
        self.numeric = numeric

    def const(self, v):
        return complex(v) if self.numeric else ex.exact(v)

    def root(self, arg):
        if self.numeric:
            return cmath.sqrt(arg)
        if not arg.im.is_zero() or not arg.re.is_rational():
            raise CellParseError("nested radical")
        return ex.sqrt(arg.re.terms.get(1, Fraction(0)))

    def peek(self, off=0):
        j = self.i + off
        return self.t[j] if j < len(self.t) else None

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise CellParseError(f"expected {want!r}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        val = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def _starts_factor(self, tok):
        return tok is not None and (tok.isdigit() or tok in ("i", "(", "{", "\\sqrt", "\\frac"))

    def term(self):
        val = self.factor()
        while True:
            tok = self.peek()
            if tok == "/":
                self.take()
                val = val / self.denominator()
            elif self._starts_factor(tok):
                val = val * self.factor()
            else:
                return val

    def denominator(self):
        den = self.factor()
        if (
            self.slash_rule
            and self.t[self.i - 1].isdigit()
            and self.peek() == "\\sqrt"
            and self.peek(2) is not None
            and self.peek(2).isdigit()
            and self.peek(3) == "}"
        ):
            den = den * self.factor()
        return den

    def group(self):
        self.take("{")
        v = self.expr()
        self.take("}")
        return v

    def factor(self):
        tok = self.peek()
        if tok is None:
            raise CellParseError("unexpected end of cell")
        if tok.isdigit():
            self.take()
            return self.const(int(tok))
        if tok == "i":
            self.take()
            return 1j if self.numeric else ex.I
        if tok == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if tok == "{":
            return self.group()
        if tok == "\\sqrt":
            self.take()
            return self.root(self.group())
        if tok == "\\frac":
            self.take()
            num = self.group()
            den = self.group()
            return num / den
        if tok == "-":
            self.take()
            return -self.factor()
        raise CellParseError(f"unexpected token {tok!r}")


def parse_cell(text: str, slash_rule: bool = False):
    """Parse a printed cell into ``(ExactComplex, orbital-or-None)``.

    ``orbital`` is ``(n, l, m)`` when the cell ends in a psi symbol.
    """
    text = text.strip().strip("$").strip()
    orbital = None
    m = _ORBITAL.search(text)
    if m:
        orbital = (int(m.group(1)), int(m.group(2)), int(m.group(3)))
        text = text[: m.start()].strip()
        if text in ("", "+"):
            return ex.ONE, orbital
        if text == "-":
            return -ex.ONE, orbital
    if not text:
        raise CellParseError("empty cell")
    p = _Parser(_tokenize(text), slash_rule)
    try:
        val = p.expr()
    except (ArithmeticError, ZeroDivisionError) as err:
        raise CellParseError(str(err)) from None
    if p.i != len(p.t):
        raise CellParseError(f"trailing tokens {p.t[p.i:]}")
    return val, orbital


def parse_cell_numeric(text: str, slash_rule: bool = False) -> complex:
    """Float value of a cell, including nested radicals."""
    text = text.strip().strip("$").strip()
    m = _ORBITAL.search(text)
    if m:
        text = text[: m.start()].strip()
        if text in ("", "+"):
            return 1.0 + 0j
        if text == "-":
            return -1.0 + 0j
    p = _Parser(_tokenize(text), slash_rule, numeric=True)
    val = p.expr()
    if p.i != len(p.t):
        raise CellParseError(f"trailing tokens {p.t[p.i:]}")
    return complex(val)


def _data_path(number: int):
    return resources.files("spinorbasis").joinpath("data", f"table{number}.csv")


def load_reference(number: int):
    """Rows of a shipped reference table as dicts (cells as printed strings)."""
    with _data_path(number).open(encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def coupling_labels(s, lmax: int = 3):
    """Row order of the coupling tables: lambda, l, j ascending, m descending."""
    s = half(s)
    out = []
    for lam in range(0, int(2 * s), 2):
        if s == Fraction(3, 2) and lam not in (0, 2):
            continue
        for l in range(lmax + 1):
            js = sorted(j for j in (l + s - k for k in range(int(2 * s) + 1)) if j >= s)
            for j in js:
                m = j
                while m >= -j:
                    out.append((lam, SpinLabels(s, l, j, m)))
                    m -= 1
    return out


def coupling_row(labels: SpinLabels, lam: int, formal: bool = True):
    """The eight values in :data:`COUPLING_COLUMNS` order."""
    p = coupling_coeffs(1, labels, lam, formal)
    q = coupling_coeffs(-1, labels, lam, formal)
    return [p[0], q[0], p[1], q[1], p[2], q[2], p[3], q[3]]


def emit_coupling_table(s, lmax: int = 3, fmt: str = "text") -> str:
    """Render A/B/C/D for ``k = +1, -1`` as ``text``, ``csv`` or ``json``."""
    import io
    import json

    rows = []
    for lam, lab in coupling_labels(s, lmax):
        rows.append(({"lam": lam, "l": lab.l, "j": fmt_half(lab.j), "m": fmt_half(lab.m),
                      "t": lab.t, "ltilde": lab.ltilde}, coupling_row(lab, lam)))
    if fmt == "json":
        doc = {"kind": "coupling", "s": fmt_half(half(s)), "columns": list(COUPLING_COLUMNS),
               "rows": [{**lab, "values": {c: {"exact": v.format(),
                                                "float": [complex(v).real, complex(v).imag]}
                                            for c, v in zip(COUPLING_COLUMNS, vals)}}
                        for lab, vals in rows]}
        return json.dumps(doc, indent=1) + "\n"
    header = ["lam", "l", "j", "m", "t", "ltilde", *COUPLING_COLUMNS]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for lab, vals in rows:
            w.writerow([*lab.values(), *(v.format() for v in vals)])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    from .spinor import _align

    body = [[str(v) for v in lab.values()] + [v.pretty() for v in vals] for lab, vals in rows]
    return _align(header, body)


@dataclass
class CellResult:
    table: int
    row: int
    source_line: int
    labels: str
    column: str
    computed: str
    printed: str
    delta: float
    status: str
    note: str = ""

    def line(self) -> str:
        return (
            f"T{self.table} row {self.row:3d} (line {self.source_line}) {self.labels} "
            f"{self.column}: computed={self.computed} printed={self.printed!r} "
            f"delta={self.delta:.3e} status={self.status}"
            + (f" [{self.note}]" if self.note else "")
        )

    @property
    def key(self) -> str:
        return f"T{self.table}:{self.source_line}:{self.column}"


def _cmp(table, idx, ref, labtxt, col, comp_val, comp_orb, printed, slash_rule):
    try:
        val, orb = parse_cell(printed, slash_rule)
    except CellParseError as err:
        try:
            delta = abs(parse_cell_numeric(printed, slash_rule) - complex(comp_val))
        except CellParseError:
            delta = float("nan")
        return CellResult(table, idx, int(ref["source_line"]), labtxt, col,
                          comp_val.format(), printed, delta, "unparseable", str(err))
    delta = abs(complex(val) - complex(comp_val))
    ok = val == comp_val
    if ok and not comp_val.is_zero() and orb != comp_orb:
        ok = False
    note = ""
    if orb != comp_orb and not comp_val.is_zero() and comp_orb is not None:
        note = f"orbital printed {orb} computed {comp_orb}"
    return CellResult(table, idx, int(ref["source_line"]), labtxt, col, comp_val.format(),
                      printed, delta, "match" if ok else "mismatch", note)


def compare_table(number: int):
    """Cell-by-cell comparison of one reference table against computed values."""
    ref_rows = load_reference(number)
    s = TABLE_SPIN[number]
    out = []
    if number in (1, 2):
        for idx, ref in enumerate(ref_rows):
            lab = SpinLabels(s, int(ref["l"]), half(ref["j"]), half(ref["m"]))
            n = int(ref["n"])
            sp = assemble_psi(lab, n)
            labtxt = f"n={n} l={lab.l} j={ref['j']} m={ref['m']}"
            for i in range(len(sp.rows)):
                col = f"c{i + 1}"
                out.append(_cmp(number, idx, ref, labtxt, col, sp.coefficient(i), sp.orbital(i),
                                ref[col], slash_rule=True))
        return out
    for idx, ref in enumerate(ref_rows):
        lab = SpinLabels(s, int(ref["l"]), half(ref["j"]), half(ref["m"]))
        lam = int(ref["lam"])
        vals = coupling_row(lab, lam)
        labtxt = f"lam={lam} l={lab.l} j={ref['j']} m={ref['m']}"
        for col, v in zip(COUPLING_COLUMNS, vals):
            out.append(_cmp(number, idx, ref, labtxt, col, v, None, ref[col], slash_rule=False))
    return out


def compare_all(tables=(1, 2, 3, 4)):
    res = []
    for t in tables:
        res.extend(compare_table(t))
    return res


def load_allowlist(path) -> dict:
    """Map ``T<table>:<source_line>:<column>`` to a reason string.

    Lines are ``key  reason``; ``#`` starts a comment.
    """
    out = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, reason = line.partition(" ")
            out[key] = reason.strip()
    return out
