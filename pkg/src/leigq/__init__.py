"""Left eigenvalues of quaternion matrices.

A quaternion lambda is a left eigenvalue of A when A v = lambda v for some
nonzero v.  The solver runs a gauged Newton iteration over a real embedding,
wrapped in a multi-start driver with residual certificates, two-stage
refinement, and detection of spherical spectral components.
"""

from .quat import I, J, K, ONE, ZERO, QMatrix, Quaternion, QVector, qinv, qmul
from .embed import (
    complex_adjoint,
    complex_adjoint_vec,
    constraint_matrix,
    coupling_matrix,
    mul_matrix,
    real_embed,
    rvec,
    rvec_inv,
)
from .certificates import (
    Certificate,
    RankDetectionError,
    certify,
    det_logmag,
    kernel_basis,
    matrix_scale,
    nullity,
    res_min,
    res_pair,
)
from .config import RefineConfig, SolveConfig, SphereConfig
from .newton import (
    GaugeError,
    NewtonResult,
    gauged_jacobian_rank,
    init_lambda,
    newton_solve,
    newton_system,
    pencil_newton_step,
    regauge,
    select_pivot,
)
from .multistart import Eigenpair, TrialStats, dedup, singular_prefill, solve_left, triangular_diagonal
from .refine import polish_pair, refine_certificate, refine_eigenvalue
from .spheres import SphereModel, detect_components, fit_sphere
from .families import FAMILIES, FamilySpec, gen_matrix
from .bench import BenchReport, FailureCapture, rerun_capture, run_bench
from .io import MatrixFormatError, matrix_from_text, matrix_to_text, parse_matrix_file, save_matrix_file

__version__ = "0.1.0"
