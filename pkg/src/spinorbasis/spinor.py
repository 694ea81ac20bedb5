"""Assembly of 2(2s+1)-component spinor orbitals and their coefficient tables.

A spinor with labels ``(n, s, l, j, m)`` is::

    Psi = N_{n ltilde} [ R_nl(r) Omega^s_ljm ; R_{n ltilde}(r) Lambda^s_{ltilde jm} ]

Its symbolic form expands every scalar component over nonrelativistic
orbitals ``psi_{n l m_l} = R_nl Y_{l m_l}``, which is what the coefficient
tables list.  ``N`` is ``1/sqrt(2)`` when ``ltilde <= n-1`` and 1 otherwise;
in the latter case the lower block vanishes because ``R_{n ltilde} == 0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact as ex
from .angular import (
    LabelError,
    SpinLabels,
    fmt_half,
    harmonic_table,
    half,
    tensor_harmonic_lambda,
    tensor_harmonic_omega,
)
from .exact import ExactComplex
from .radial import RadialFamily, normalization_N

__all__ = [
    "SymbolicSpinor",
    "assemble_psi",
    "assemble_chi",
    "reduce_scalar",
    "eval_spinor",
    "spinor_labels",
    "spinor_table",
    "emit_table",
    "format_cell",
    "parse_cell",
]


@dataclass(frozen=True)
class SymbolicSpinor:
    """Coefficient rows of one spinor orbital.

    ``rows[i]`` is a tuple of ``((n, l, m_l), coeff)`` pairs for scalar
    component ``i``; an empty tuple is an exact zero.  ``radial`` is one of
    ``"psi"``, ``"psi_dual"`` or ``"sto"``.
    """

    labels: SpinLabels
    n: int
    radial: str
    rows: tuple

    def __len__(self):
        return len(self.rows)

    @property
    def upper(self):
        return self.rows[: len(self.rows) // 2]

    @property
    def lower(self):
        return self.rows[len(self.rows) // 2 :]

    def coefficient(self, i: int) -> ExactComplex:
        """Total coefficient of component ``i`` (each has at most one orbital)."""
        out = ex.ZERO
        for _, c in self.rows[i]:
            out = out + c
        return out

    def orbital(self, i: int):
        return self.rows[i][0][0] if self.rows[i] else None

    def norm2(self) -> ExactComplex:
        """Exact ``sum |coeff|^2`` over all components."""
        tot = ex.ZERO
        for row in self.rows:
            for _, c in row:
                tot = tot + ex.exact(c.abs2())
        return tot


def _check_n(labels: SpinLabels, n: int):
    if int(n) != n or n < 1:
        raise LabelError(f"n must be a positive integer, got {n}")
    if labels.l >= n:
        raise LabelError(f"l={labels.l} requires n > l, got n={n}")


def _assemble(labels: SpinLabels, n: int, radial: str) -> SymbolicSpinor:
    _check_n(labels, n)
    if labels.s == 0:
        return reduce_scalar(labels, n, radial)
    omega = tensor_harmonic_omega(labels)
    lam = tensor_harmonic_lambda(labels)
    norm = normalization_N(n, labels.ltilde)
    rows = []
    for c in omega.components:
        rows.append(() if c.is_zero() else (((n, c.l, c.m), norm * c.coeff),))
    lower_alive = labels.ltilde <= n - 1
    for c in lam.components:
        if c.is_zero() or not lower_alive:
            rows.append(())
        else:
            rows.append((((n, c.l, c.m), norm * c.coeff),))
    return SymbolicSpinor(labels, int(n), radial, tuple(rows))


def assemble_psi(labels: SpinLabels, n: int, dual: bool = False) -> SymbolicSpinor:
    """Symbolic psi^alpha spinor (or its dual partner when ``dual``)."""
    return _assemble(labels, n, "psi_dual" if dual else "psi")


def assemble_chi(labels: SpinLabels, n: int) -> SymbolicSpinor:
    """Symbolic Slater spinor; same angular coefficients as :func:`assemble_psi`."""
    return _assemble(labels, n, "sto")


def reduce_scalar(labels: SpinLabels, n: int, radial: str = "psi") -> SymbolicSpinor:
    """Two-component ``(1/sqrt 2)(1, -i) beta_m psi_{n l m}`` for ``s == 0``.

    The scalar orbital is ``beta_m psi_{nlm}``, so the rows carry the
    ``beta_m`` sign explicitly.
    """
    if labels.s != 0:
        raise LabelError("scalar reduction needs s = 0")
    _check_n(labels, n)
    omega = tensor_harmonic_omega(labels).components[0]
    lam = tensor_harmonic_lambda(labels).components[0]
    h = ex.sqrt(Fraction(1, 2))
    key = (int(n), labels.l, int(labels.m))
    rows = ((((key), h * omega.coeff),), (((key), h * lam.coeff),))
    return SymbolicSpinor(labels, int(n), radial, rows)


def eval_spinor(sp: SymbolicSpinor, family: RadialFamily, r, theta, phi) -> np.ndarray:
    """Numeric components, shape ``(2(2s+1),) + broadcast shape``.

    ``family`` must be ``psi_alpha`` for psi spinors and ``sto`` for Slater
    spinors.
    """
    want = "sto" if sp.radial == "sto" else "psi_alpha"
    if family.kind != want:
        raise ValueError(f"{sp.radial} spinor needs a {want} radial family")
    r, theta, phi = np.broadcast_arrays(
        np.asarray(r, float), np.asarray(theta, float), np.asarray(phi, float)
    )
    dual = sp.radial == "psi_dual"
    keys = {k for row in sp.rows for k, _ in row}
    lmax = max([k[1] for k in keys] + [0])
    table = harmonic_table(lmax, theta, phi)
    radial_cache = {}
    out = np.zeros((len(sp.rows),) + r.shape, dtype=complex)
    for i, row in enumerate(sp.rows):
        for (n, l, ml), c in row:
            if (n, l) not in radial_cache:
                radial_cache[(n, l)] = family.value(n, l, r, dual=dual)
            out[i] += complex(c) * radial_cache[(n, l)] * table[(l, ml)]
    return out


def spinor_labels(s, n_max: int):
    """Canonical row order: n, l, j ascending, m descending, ``j >= s``."""
    s = half(s)
    out = []
    for n in range(1, n_max + 1):
        for l in range(n):
            if s == 0:
                js = [Fraction(l)]
            else:
                js = [j for j in (l + s - k for k in range(int(2 * s) + 1))
                      if j >= s and j >= 0]
                js.sort()
            for j in js:
                m = j
                while m >= -j:
                    out.append((n, SpinLabels(s, l, j, m)))
                    m -= 1
    return out


def spinor_table(s, n_max: int, kind: str = "psi"):
    """List of :class:`SymbolicSpinor` in canonical order."""
    build = assemble_chi if kind == "sto" else assemble_psi
    return [build(lab, n) for n, lab in spinor_labels(s, n_max)]


def format_cell(row) -> str:
    """Exact cell text ``<coeff> psi[n,l,m]``; ``0`` for an empty component."""
    if not row:
        return "0"
    return " ; ".join(f"{c.format()} psi[{n},{l},{m}]" for (n, l, m), c in row)


def parse_cell(text: str):
    """Inverse of :func:`format_cell`."""
    text = text.strip()
    if text == "0":
        return ()
    out = []
    for part in text.split(" ; "):
        coeff, _, orb = part.rpartition(" psi[")
        if not orb.endswith("]"):
            raise ValueError(f"malformed cell {text!r}")
        n, l, m = (int(v) for v in orb[:-1].split(","))
        out.append(((n, l, m), ex.parse(coeff)))
    return tuple(out)


def _pretty_cell(row) -> str:
    if not row:
        return "0"
    parts = []
    for (n, l, m), c in row:
        p = c.pretty()
        coef = "" if p == "1" else ("-" if p == "-1" else p + " ")
        if " + " in p or " - " in p[1:]:
            coef = f"({p}) "
        parts.append(f"{coef}ψ{n}{l}{m}")
    return " + ".join(parts)


def _row_labels(sp: SymbolicSpinor) -> dict:
    lab = sp.labels
    return {
        "n": sp.n,
        "l": lab.l,
        "j": fmt_half(lab.j),
        "m": fmt_half(lab.m),
        "t": lab.t if lab.s != 0 else 0,
        "ltilde": lab.ltilde if lab.s != 0 else lab.l,
    }


def emit_table(s, n_max: int, fmt: str = "text", kind: str = "psi") -> str:
    """Render the spinor coefficient table as ``text``, ``csv`` or ``json``."""
    rows = spinor_table(s, n_max, kind)
    s = half(s)
    ncomp = 2 * (int(2 * s) + 1)
    if fmt == "json":
        doc = {
            "kind": "spinor",
            "radial": kind,
            "s": fmt_half(s),
            "n_max": n_max,
            "rows": [],
        }
        for sp in rows:
            comps = []
            for row in sp.rows:
                if not row:
                    comps.append(None)
                    continue
                (n, l, m), c = row[0]
                z = complex(c)
                comps.append({"coeff": c.format(), "orbital": [n, l, m],
                              "float": [z.real, z.imag]})
            doc["rows"].append({**_row_labels(sp), "components": comps})
        return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"
    header = ["n", "l", "j", "m", "t", "ltilde"] + [f"c{i + 1}" for i in range(ncomp)]
    if fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for sp in rows:
            w.writerow(list(_row_labels(sp).values()) + [format_cell(r) for r in sp.rows])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    body = [[str(v) for v in _row_labels(sp).values()] + [_pretty_cell(r) for r in sp.rows]
            for sp in rows]
    return _align(header, body)


def _align(header, body) -> str:
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for r in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"
