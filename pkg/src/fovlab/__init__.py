"""Classical, Givens and two-sided fields of values of complex matrices.

The two-sided field ``G(A) = {y* A x : y = (V V*)^{-1} x, y* x = 1}`` of a
diagonalizable ``A = V diag(lam) V^{-1}`` is the convex hull of its
spectrum. This package computes it alongside the classical field ``F(A)``
and the Givens field ``F_H(A)``, and checks the identities that relate them.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .errors import (
    ComplexSpectrum,
    DefectiveMatrix,
    DegeneratePair,
    DimensionMismatch,
    EmptyInput,
    FovlabError,
    InvalidM,
    NonConvergence,
    NonSquare,
    NotPositiveDefinite,
    NumericalError,
    ParseError,
    RankDeficientBasis,
    SandwichViolation,
    SingularBasis,
    ZeroVector,
)
from .fov import Polygon, contains, fov_boundary, givens_fov_boundary, hausdorff, hull
from .gfov import (
    DefinitenessReport,
    GfovResult,
    PropertyReport,
    definiteness,
    gfov,
    gfov_samples,
    verify_gfov_properties,
)
from .matcore import Metric, h_inner, h_norm, hermitian_part, is_normal, metric_from_basis
from .matio import read_matrix, write_matrix
from .rayleigh import (
    RqReport,
    min_inner_product_check,
    min_residual_check,
    residuals,
    rq,
    rq_gen,
    rq_naive,
    stationarity_gradient,
)
from .spectra import (
    EigenPair,
    EigenSystem,
    eig,
    gen_normal,
    gen_prescribed,
    is_real_spectrum,
    left_eigenvectors,
)
from .variational import (
    MinMaxReport,
    courant_fischer_verify,
    rayleigh_ritz_extrema,
    subspace_extremum,
)
