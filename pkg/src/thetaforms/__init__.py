"""Theta constants on the Siegel upper half-space and the (1,1)-forms they induce.

The package evaluates theta series with real characteristics and second-order
theta series (values, z-gradients, z-Hessians, tau-derivatives) with certified
truncation, builds the nullwert vectors and the exact Riemann-addition matrix,
and compares the Fubini-Study pullback form against the Siegel metric form,
down to the quantitative genus-1 separation of the two.

Hot lattice sums run through numba kernels with a pure-numpy fallback; set
THETAFORMS_BACKEND=numpy to force the fallback (see `thetaforms.kernels`).
"""

from .linalg import SingularMatrixError, hermitian_eigenvalues, lu_det_inverse, min_eigenvalue
from .siegel import (
    RealCharacteristic,
    SiegelPoint,
    SplitMix64,
    SymplecticMatrix,
    cocycle_det,
    mobius_action,
    random_siegel_point,
    standard_generators,
    transform_characteristic,
)
from .theta import (
    ThetaJet,
    TruncationOverflowError,
    TruncationPolicy,
    finite_difference_jet,
    second_order_jet,
    theta_char_eval,
    truncation_radius,
)
from .nullwert import (
    DegenerateNullwertError,
    EvenCharacteristicError,
    addition_formula_residual,
    addition_matrix,
    enumerate_even_characteristics,
    enumerate_half_characteristics,
    theta_nullwert,
    theta_squared_map,
    transform_even_characteristic,
    unordered_pairs,
    veronese2,
)
from .forms import (
    Genus1Record,
    HermitianFormOnSiegel,
    block_embed,
    block_pullback_residuals,
    genus1_constants,
    genus1_record,
    hodge_coefficients,
    pair_basis,
    siegel_metric_form,
    structure_difference,
    theta_coefficients,
    theta_fs_form,
    theta_fs_form_fd,
)

__version__ = "0.1.0"

__all__ = [
    "SingularMatrixError",
    "lu_det_inverse",
    "min_eigenvalue",
    "hermitian_eigenvalues",
    "SiegelPoint",
    "SymplecticMatrix",
    "RealCharacteristic",
    "SplitMix64",
    "standard_generators",
    "mobius_action",
    "cocycle_det",
    "transform_characteristic",
    "random_siegel_point",
    "TruncationPolicy",
    "ThetaJet",
    "TruncationOverflowError",
    "theta_char_eval",
    "second_order_jet",
    "truncation_radius",
    "finite_difference_jet",
    "enumerate_half_characteristics",
    "enumerate_even_characteristics",
    "unordered_pairs",
    "addition_matrix",
    "veronese2",
    "theta_nullwert",
    "theta_squared_map",
    "transform_even_characteristic",
    "addition_formula_residual",
    "DegenerateNullwertError",
    "EvenCharacteristicError",
    "pair_basis",
    "HermitianFormOnSiegel",
    "siegel_metric_form",
    "theta_fs_form",
    "theta_fs_form_fd",
    "theta_coefficients",
    "hodge_coefficients",
    "structure_difference",
    "genus1_constants",
    "genus1_record",
    "Genus1Record",
    "block_embed",
    "block_pullback_residuals",
    "__version__",
]
