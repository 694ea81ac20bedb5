"""Verification suites shared by the command line and the test-suite.

Each suite returns a :class:`SuiteReport` made of :class:`Check` records.
A check carries the worst error it saw, its tolerance and a verdict.
Checks flagged ``informational`` document a known discrepancy of the
tabulated relations and never decide the exit status.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exact as ex
from .angular import (
    LabelError,
    SpinLabels,
    clebsch_gordan,
    eval_tensor_harmonic,
    harmonic_table,
    half,
    phase_beta,
    tensor_harmonic_lambda,
    tensor_harmonic_omega,
)
from .deriv import (
    KS,
    apply_cartesian_derivative,
    eval_derivative_expansion,
    shifted_harmonics,
    sigma_p_apply,
    sigma_p_printed,
)
from .quad import GridSpec, angular_nodes, radial_inner, radial_nodes
from .radial import RadialFamily, sto_overlap, sto_radial
from .spinor import assemble_chi, assemble_psi, eval_spinor, reduce_scalar, spinor_labels
from .tables import compare_all

__all__ = [
    "Check",
    "SuiteReport",
    "SUITES",
    "tables_suite",
    "angular_orthonormality",
    "biorthonormality",
    "sto_overlap_check",
    "sto_spinor_overlap",
    "gradient_fd_check",
    "sigma_p_fd_check",
    "spin_half_collapse",
    "scalar_reduction_check",
    "row_norm_check",
    "run_suite",
]


@dataclass
class Check:
    name: str
    error: float
    tol: float
    passed: bool
    detail: str = ""
    informational: bool = False

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        if self.informational:
            tag += " (informational)"
        return f"{tag}  {self.name}: max error {self.error:.3e} (tol {self.tol:.0e})" + (
            f"  {self.detail}" if self.detail else ""
        )


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    cells: list = field(default_factory=list)
    cell_lines: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def lines(self):
        out = [f"# suite {self.suite}"] + self.cell_lines
        return out + [c.line() for c in self.checks]

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _check(name, err, tol, detail="", informational=False) -> Check:
    err = float(err)
    return Check(name, err, tol, bool(np.isfinite(err) and err <= tol), detail, informational)


# ---------------------------------------------------------------- tables


def tables_suite(allowlist: dict | None = None, tables=(1, 2, 3, 4)) -> SuiteReport:
    """Cell-by-cell comparison with the shipped reference tables.

    Mismatching or unparseable cells listed in ``allowlist`` are reported
    as ``mismatch (documented)`` and do not fail the suite.
    """
    allowlist = allowlist or {}
    rep = SuiteReport("tables")
    cells = compare_all(tables)
    for c in cells:
        if c.status != "match" and c.key in allowlist:
            c.status = f"{c.status} (documented)"
            c.note = (c.note + "; " if c.note else "") + allowlist[c.key]
    rep.cells = cells
    rep.cell_lines = [c.line() for c in cells]
    for t in tables:
        sub = [c for c in cells if c.table == t]
        parse = [c for c in sub if not c.status.startswith("unparseable")]
        good = sum(c.status == "match" for c in parse)
        bad = [c for c in sub if c.status in ("mismatch", "unparseable")]
        rep.checks.append(
            _check(
                f"table {t}: undocumented discrepancies",
                len(bad),
                0,
                f"{good}/{len(parse)} parseable cells match, "
                f"{len(sub) - len(parse)} unparseable",
            )
        )
    return rep


def match_fraction(cells) -> float:
    """Share of parseable cells whose printed value equals the computed one."""
    parse = [c for c in cells if not c.status.startswith("unparseable")]
    return sum(c.status == "match" for c in parse) / max(len(parse), 1)


# ---------------------------------------------------------------- angular


def angular_labels(s, lmax: int = 4):
    """All ``(l, j, m)`` label sets with ``l <= lmax`` and ``ltilde <= lmax``."""
    s = half(s)
    out = []
    for l in range(lmax + 1):
        for i in range(int(2 * s) + 1):
            j = l + s - i
            if j < s or j < 0:
                continue
            m = j
            while m >= -j:
                try:
                    lab = SpinLabels(s, l, j, m)
                except LabelError:
                    break
                if lab.ltilde <= lmax:
                    out.append(lab)
                m -= 1
    return out


def _gram_error(stack, w):
    # stack: (nlab, ncomp, npts)
    G = np.einsum("acp,bcp,p->ab", np.conj(stack), stack, w)
    return float(np.max(np.abs(G - np.eye(len(stack)))))


def angular_orthonormality(s, lmax: int = 4, grid: GridSpec = GridSpec()) -> list:
    """Gram matrices of all Omega and all Lambda harmonics against the identity."""
    labs = angular_labels(s, lmax)
    th, ph, w = angular_nodes(grid)
    table = harmonic_table(lmax, th, ph)
    res = []
    for kind, build in (("Omega", tensor_harmonic_omega), ("Lambda", tensor_harmonic_lambda)):
        stack = np.array([eval_tensor_harmonic(build(lab), th, ph, table) for lab in labs])
        res.append(
            _check(f"{kind} orthonormality s={half(s)} l,ltilde<={lmax}",
                   _gram_error(stack, w), 1e-10, f"{len(labs)} labels")
        )
    return res


# ---------------------------------------------------------------- radial / 3D


def _spinor_gram(left, right, family_l, family_r, grid, chunk=8):
    th, ph, wa = angular_nodes(grid)
    r, wr = radial_nodes(grid)
    G = np.zeros((len(left), len(right)), dtype=complex)
    for i0 in range(0, r.size, chunk):
        rr = r[i0 : i0 + chunk]
        R = np.repeat(rr, th.size)
        T = np.tile(th, rr.size)
        P = np.tile(ph, rr.size)
        W = np.repeat(wr[i0 : i0 + chunk] * rr**2, th.size) * np.tile(wa, rr.size)
        A = np.array([eval_spinor(sp, family_l, R, T, P) for sp in left])
        B = np.array([eval_spinor(sp, family_r, R, T, P) for sp in right])
        G += np.einsum("acp,bcp,p->ab", np.conj(A), B, W)
    return G


def biorthonormality(s="1/2", alpha: int = 1, n_max: int = 3, zeta: float = 1.0,
                     grid: GridSpec | None = None) -> Check:
    """Full 3D quadrature of ``<Psi_bar | Psi>`` against the identity."""
    grid = grid or GridSpec(n_theta=16, n_phi=16, n_r=48, r_scale=2.0 * zeta)
    labs = spinor_labels(s, n_max)
    fam = RadialFamily("psi_alpha", alpha, zeta)
    left = [assemble_psi(lab, n, dual=True) for n, lab in labs]
    right = [assemble_psi(lab, n) for n, lab in labs]
    G = _spinor_gram(left, right, fam, fam, grid)
    err = float(np.max(np.abs(G - np.eye(len(labs)))))
    return _check(f"biorthonormality s={half(s)} alpha={alpha} n<={n_max}", err, 1e-9,
                  f"{len(labs)} spinors")


def sto_overlap_check(n_max: int = 6, zeta: float = 1.0, grid: GridSpec = GridSpec()) -> Check:
    """Radial Slater overlaps against ``(n+n')!/sqrt((2n)!(2n')!)``."""
    err = 0.0
    for n1 in range(1, n_max + 1):
        for n2 in range(1, n_max + 1):
            q = radial_inner(lambda r: sto_radial(n1, zeta, r), lambda r: sto_radial(n2, zeta, r),
                             0, 2.0 * zeta, grid)
            err = max(err, abs(q - sto_overlap(n1, n2)))
    return _check(f"Slater overlap n,n'<={n_max}", err, 1e-10)


def sto_spinor_overlap(s="1/2", n_max: int = 4, zeta: float = 1.0,
                       grid: GridSpec | None = None) -> Check:
    """Spinor-level Slater overlaps for equal angular labels.

    Only pairs where both spinors use the same block normalization are
    compared; for them the overlap reduces to the radial closed form.
    """
    grid = grid or GridSpec(n_theta=16, n_phi=16, n_r=48, r_scale=2.0 * zeta)
    fam = RadialFamily("sto", zeta=zeta)
    labs = spinor_labels(s, n_max)
    err, count = 0.0, 0
    by_label = {}
    for n, lab in labs:
        by_label.setdefault(lab, []).append(n)
    for lab, ns in by_label.items():
        sps = [assemble_chi(lab, n) for n in ns]
        G = _spinor_gram(sps, sps, fam, fam, grid)
        for a, n1 in enumerate(ns):
            for b, n2 in enumerate(ns):
                same = (lab.ltilde <= n1 - 1) == (lab.ltilde <= n2 - 1)
                if not same:
                    continue
                count += 1
                err = max(err, abs(G[a, b] - sto_overlap(n1, n2)))
    return _check(f"Slater spinor overlap s={half(s)} n<={n_max}", err, 1e-10,
                  f"{count} same-normalization pairs")


# ---------------------------------------------------------------- gradients


def _random_points(npts, seed):
    rng = np.random.default_rng(seed)
    r = rng.uniform(0.4, 3.0, npts)
    th = rng.uniform(0.15, np.pi - 0.15, npts)
    ph = rng.uniform(0.0, 2 * np.pi, npts)
    return r, th, ph


def _to_sph(x, y, z):
    r = np.sqrt(x * x + y * y + z * z)
    return r, np.arccos(np.clip(z / r, -1.0, 1.0)), np.arctan2(y, x)


def _fd_grad(func, r, th, ph, h):
    """Central differences ``(d/dx, d/dy, d/dz)`` of ``func(r, theta, phi)``."""
    x = r * np.sin(th) * np.cos(ph)
    y = r * np.sin(th) * np.sin(ph)
    z = r * np.cos(th)
    out = []
    for e in np.eye(3):
        fp = func(*_to_sph(x + h * e[0], y + h * e[1], z + h * e[2]))
        fm = func(*_to_sph(x - h * e[0], y - h * e[1], z - h * e[2]))
        out.append((fp - fm) / (2 * h))
    return out


def _test_radial(r):
    return np.exp(-0.8 * r) * (1.0 + 0.3 * r), np.exp(-0.8 * r) * (0.3 - 0.8 * (1.0 + 0.3 * r))


def gradient_fd_check(lmax: int = 3, points: int = 50, h: float = 1e-5, seed: int = 7) -> Check:
    """b/c/d expansions of ``d/dz`` and ``d/dx -+ i d/dy`` of ``f beta_m Y_lm``."""
    r, th, ph = _random_points(points, seed)
    f, df = _test_radial(r)
    err = 0.0
    for l in range(lmax + 1):
        table = harmonic_table(l, th, ph)
        for m in range(-l, l + 1):
            bm = phase_beta(m)

            def func(rr, tt, pp, l=l, m=m, bm=bm):
                return _test_radial(rr)[0] * complex(bm) * harmonic_table(l, tt, pp)[(l, m)]

            gx, gy, gz = _fd_grad(func, r, th, ph, h)
            fd = {"z": gz, "minus": gx - 1j * gy, "plus": gx + 1j * gy}
            for axis, ref in fd.items():
                an = eval_derivative_expansion(apply_cartesian_derivative(axis, l, m, bm),
                                               f, df, r, th, ph)
                scale = max(np.max(np.abs(ref)), np.max(np.abs(f * table[(l, m)])))
                err = max(err, float(np.max(np.abs(an - ref)) / scale))
    return _check(f"gradient expansions l<={lmax} ({points} points)", err, 1e-6)


def _block_func(h, family, n, radial_l):
    def func(r, th, ph):
        return family.value(n, radial_l, r) * eval_tensor_harmonic(h, th, ph)
    return func


def _numeric_sigma_p(func, r, th, ph, hstep):
    """``-i sigma.grad`` on consecutive component pairs, by finite differences."""
    gx, gy, gz = _fd_grad(func, r, th, ph, hstep)
    out = np.zeros_like(gx)
    for i in range(0, gx.shape[0] - 1, 2):
        out[i] = gz[i] + (gx[i + 1] - 1j * gy[i + 1])
        out[i + 1] = (gx[i] + 1j * gy[i]) - gz[i + 1]
    return -1j * out


def sigma_p_fd_check(s, printed: bool = False, lmax: int = 3, alpha: int = 1,
                     points: int = 20, h: float = 1e-5, seed: int = 11) -> Check:
    """Compare a sigma.p expansion with the numeric Pauli operator.

    ``printed=False`` checks the generic expansion; ``printed=True`` checks
    the form built from the tabulated A, B, C, D coefficients.
    """
    s = half(s)
    fam = RadialFamily("psi_alpha", alpha, 1.0)
    r, th, ph = _random_points(points, seed)
    err = 0.0
    count = 0
    for lab in angular_labels(s, lmax):
        for block in ("upper", "lower"):
            if block == "upper":
                h_, L = tensor_harmonic_omega(lab), lab.l
            else:
                h_, L = tensor_harmonic_lambda(lab), lab.ltilde
            n = L + 2
            try:
                fam.value(n, L, r)
            except ValueError:
                continue
            exp = sigma_p_printed(block, lab) if printed else sigma_p_apply(block, lab)
            an = exp.evaluate(fam, n, r, th, ph)
            ref = _numeric_sigma_p(_block_func(h_, fam, n, L), r, th, ph, h)
            scale = max(np.max(np.abs(ref)), 1e-12)
            err = max(err, float(np.max(np.abs(an - ref)) / scale))
            count += 1
    name = "tabulated sigma.p form" if printed else "sigma.p expansion"
    return _check(f"{name} vs numeric Pauli operator s={s} l<={lmax}", err, 1e-6,
                  f"{count} blocks", informational=printed)


def _sigma_z(terms):
    return tuple(t if i % 2 == 0 else type(t)(-t.coeff, t.l, t.m) for i, t in enumerate(terms))


def spin_half_collapse(lmax: int = 3) -> list:
    """For ``s = 1/2`` only ``k = t`` survives, with radial bracket ``R' + (1-kappa)R/r``.

    Also checks that the surviving angular factor equals ``-i sigma_z`` of
    the shifted harmonic ``tOmega``, and (informational) whether it is a
    multiple of ``Lambda^{1/2}`` as the compact tabulated relation states.
    """
    s = Fraction(1, 2)
    bad_k, bad_shape, bad_lambda, total = 0, 0, 0, 0
    for lab in angular_labels(s, lmax):
        total += 1
        t = lab.t
        exp = sigma_p_apply("upper", lab)
        if any(not hsum.is_zero() for hsum in exp.parts[-t]):
            bad_k += 1
        # (delta_{k,-1} - k l) at k = t equals 1 - kappa
        if (1 if t == -1 else 0) - t * lab.l != 1 - lab.kappa:
            bad_k += 1
        kom, _ = shifted_harmonics(t, lab, 0)
        want = [(-ex.I * x.coeff, x.l, x.m) for x in _sigma_z(kom)]
        got = []
        for hsum in exp.parts[t]:
            got.append(next(iter((c, l, m) for (l, m), c in hsum.terms.items()), None))
        for g, w in zip(got, want):
            if w[0].is_zero() or w[1] < 0 or abs(w[2]) > w[1]:
                if g is not None:
                    bad_shape += 1
            elif g is None or g != (w[0], w[1], w[2]):
                bad_shape += 1
        lam = tensor_harmonic_lambda(lab).components
        ratio = None
        for g, c in zip(got, lam):
            if (g is None) != c.is_zero():
                ratio = False
                break
            if g is None:
                continue
            if (g[1], g[2]) != (c.l, c.m):
                ratio = False
                break
            q = g[0] * c.coeff.inverse()
            if ratio is None:
                ratio = q
            elif ratio is not False and q != ratio:
                ratio = False
        if ratio is False:
            bad_lambda += 1
    return [
        _check("s=1/2 sigma.p: single k = t term with 1-kappa bracket", bad_k, 0,
               f"{total} labels"),
        _check("s=1/2 sigma.p: angular factor is -i sigma_z tOmega", bad_shape, 0,
               f"{total} labels"),
        _check("s=1/2 sigma.p: angular factor proportional to Lambda", bad_lambda, 0,
               f"{bad_lambda}/{total} labels differ", informational=True),
    ]


# ---------------------------------------------------------------- exact tables


def scalar_reduction_check(n_max: int = 4) -> Check:
    """``s = 0`` spinors equal ``(1/sqrt 2)(1, -i) beta_m psi_nlm`` exactly."""
    bad, total = 0, 0
    h = ex.sqrt(Fraction(1, 2))
    for n, lab in spinor_labels(0, n_max):
        total += 1
        key = (n, lab.l, int(lab.m))
        b = phase_beta(lab.m)
        want = (((key, h * b),), ((key, -ex.I * h * b),))
        sp = assemble_psi(lab, n)
        ok = sp.rows == want and reduce_scalar(lab, n).rows == want
        ok = ok and clebsch_gordan(lab.l, 0, lab.m, 0, lab.l, lab.m) == ex.ONE
        bad += not ok
    return _check(f"scalar reduction n<={n_max}", bad, 0, f"{total} orbitals")


def row_norm_check(spins=("1/2", "3/2", "5/2"), n_max: int = 4) -> Check:
    """Exact ``sum |coeff|^2 == 1`` for every generated row (Slater and psi^alpha)."""
    bad, total = 0, 0
    for s in spins:
        for n, lab in spinor_labels(s, n_max):
            for sp in (assemble_psi(lab, n), assemble_chi(lab, n)):
                total += 1
                bad += sp.norm2() != ex.ONE
    return _check(f"row norms s in {{{', '.join(spins)}}} n<={n_max}", bad, 0, f"{total} rows")


# ---------------------------------------------------------------- runner


def _orthonormality(s, alpha):
    checks = angular_orthonormality(s)
    if half(s) == Fraction(1, 2):
        alphas = [alpha] if alpha is not None else [1, 0, -1]
        checks += [biorthonormality(s, a) for a in alphas]
    checks.append(sto_overlap_check())
    checks.append(sto_spinor_overlap(s))
    return checks


def _gradients(s, points):
    spins = [s] if s is not None else ["1/2", "3/2"]
    checks = [gradient_fd_check(points=points)]
    for sp in spins:
        checks.append(sigma_p_fd_check(sp))
        checks.append(sigma_p_fd_check(sp, printed=True))
    checks += spin_half_collapse()
    return checks


SUITES = ("tables", "orthonormality", "gradients", "exact", "all")


def run_suite(name: str, s=None, alpha=None, allowlist=None, points: int = 50) -> list:
    """Run a named suite; returns a list of :class:`SuiteReport`."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    out = []
    if name in ("tables", "all"):
        out.append(tables_suite(allowlist))
    if name in ("orthonormality", "all"):
        spins = [s] if s is not None else ["1/2", "3/2"]
        rep = SuiteReport("orthonormality")
        for sp in spins:
            rep.checks += _orthonormality(sp, alpha)
        out.append(rep)
    if name in ("gradients", "all"):
        out.append(SuiteReport("gradients", _gradients(s, points)))
    if name in ("exact", "all"):
        out.append(SuiteReport("exact", [scalar_reduction_check(), row_norm_check()]))
    return out
