"""Dense real-matrix primitives with an explicit tolerance policy.

Rank decisions, kernel projectors, inverses, and matrix exponentials for
the rest of the package.  All rank-like decisions go through one relative
singular-value cutoff so that index computation, projector construction,
and invertibility checks cannot disagree with each other.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SingularMatrixError

__all__ = [
    "TolerancePolicy",
    "DEFAULT_TOLERANCES",
    "as_matrix",
    "as_vector",
    "readonly",
    "numerical_rank",
    "is_nonsingular",
    "orthogonal_null_projector",
    "matrix_exponential",
    "solve_inverse",
]


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical thresholds shared across the pipeline.

    Attributes
    ----------
    rank_rel_tol : float
        Relative singular-value cutoff for rank decisions.
    zero_abs_tol : float
        Absolute threshold below which a matrix identity is considered
        to hold.
    feasibility_tol : float
        Allowed constraint slack in linear feasibility problems.
    consistency_tol : float
        Allowed max-norm residual when checking that an initial star
        lies in the consistent space.
    """

    rank_rel_tol: float = 1e-9
    zero_abs_tol: float = 1e-8
    feasibility_tol: float = 1e-9
    consistency_tol: float = 1e-8

    def __post_init__(self):
        for name in (
            "rank_rel_tol",
            "zero_abs_tol",
            "feasibility_tol",
            "consistency_tol",
        ):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(
                    f"{name} must lie strictly between 0 and 1, got {value!r}"
                )


DEFAULT_TOLERANCES = TolerancePolicy()


def as_matrix(a, name="matrix", allow_empty_cols=False):
    """Coerce ``a`` to a dense, finite float64 2-D array.

    Rejects empty matrices (0 rows, or 0 columns unless
    ``allow_empty_cols``) and non-finite entries.
    """
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or (arr.shape[1] < 1 and not allow_empty_cols):
        raise ValueError(f"{name} must have positive dimensions, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_vector(a, name="vector"):
    """Coerce ``a`` to a finite float64 1-D array (column vectors are flattened)."""
    arr = np.asarray(a, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def readonly(arr):
    """A read-only version of ``arr``: copied if the input is writeable,
    shared as-is if it is already frozen."""
    if arr.flags.writeable:
        arr = arr.copy()
        arr.flags.writeable = False
    return arr


def _require_square(arr, name):
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")


def numerical_rank(Z, tol=DEFAULT_TOLERANCES):
    """Number of singular values above ``rank_rel_tol`` times the largest.

    The zero matrix has rank 0.
    """
    Z = as_matrix(Z, "Z")
    s = np.linalg.svd(Z, compute_uv=False)
    if s.size == 0 or s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel_tol * s[0]))


def is_nonsingular(Z, tol=DEFAULT_TOLERANCES):
    Z = as_matrix(Z, "Z")
    return Z.shape[0] == Z.shape[1] and numerical_rank(Z, tol) == Z.shape[0]


def orthogonal_null_projector(Z, tol=DEFAULT_TOLERANCES):
    """Orthogonal projector onto the kernel of a square matrix.

    Let ``Z = U diag(s) W^T`` be the SVD and ``K`` the right singular
    vectors belonging to singular values at or below the rank cutoff.
    The returned ``Q = K K^T`` satisfies ``Z @ Q == 0``, ``Q == Q.T`` and
    ``Q @ Q == Q`` up to rounding.  For a nonsingular ``Z`` this is the
    zero matrix; for the zero matrix it is the identity.

    The entries are stored exactly as computed (no re-orthogonalization
    or rounding), so downstream identity checks see the same floats.
    """
    Z = as_matrix(Z, "Z")
    _require_square(Z, "Z")
    _, s, wt = np.linalg.svd(Z)
    if s.size and s[0] > 0.0:
        rank = int(np.count_nonzero(s > tol.rank_rel_tol * s[0]))
    else:
        rank = 0
    kernel_basis = wt[rank:, :].T
    return kernel_basis @ kernel_basis.T


def matrix_exponential(M, t=1.0):
    """Evaluate ``exp(M * t)`` by scaling-and-squaring with Pade approximation.

    ``t == 0`` returns the identity exactly.
    """
    M = as_matrix(M, "M")
    _require_square(M, "M")
    if not np.isfinite(t):
        raise ValueError(f"t must be finite, got {t!r}")
    if t == 0.0:
        return np.eye(M.shape[0])
    return scipy.linalg.expm(M * t)


def solve_inverse(M, tol=DEFAULT_TOLERANCES):
    """Inverse of ``M``, or :class:`SingularMatrixError` at the rank tolerance."""
    M = as_matrix(M, "M")
    _require_square(M, "M")
    n = M.shape[0]
    if numerical_rank(M, tol) < n:
        raise SingularMatrixError(
            f"matrix of size {n} is singular at relative tolerance "
            f"{tol.rank_rel_tol:g}"
        )
    return np.linalg.solve(M, np.eye(n))
