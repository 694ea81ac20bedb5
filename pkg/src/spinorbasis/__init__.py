"""Relativistic spinor orbital basis sets of arbitrary half-integral spin.

Exact coefficient tables, numeric evaluation and self-verification of
2(2s+1)-component exponential-type and Slater-type spinor orbitals.
"""

from .angular import (
    LabelError,
    SpinLabels,
    clebsch_gordan,
    half,
    modified_cg,
    phase_beta,
    scalar_harmonic,
    spin_labels,
    tensor_harmonic_lambda,
    tensor_harmonic_omega,
    eval_tensor_harmonic,
)
from .exact import ExactComplex, SqrtLinear, parse as parse_exact, sqrt as exact_sqrt
from .kernels import BACKEND as KERNEL_BACKEND
from .radial import (
    RadialFamily,
    normalization_N,
    psi_alpha_dual_radial,
    psi_alpha_radial,
    sto_radial,
)
from .spinor import (
    SymbolicSpinor,
    assemble_chi,
    assemble_psi,
    emit_table,
    eval_spinor,
    reduce_scalar,
)

__version__ = "0.1.0"
