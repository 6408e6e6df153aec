"""Consistent-space construction and initial-set consistency checking.

Solutions of a DAE cannot start anywhere: the algebraic subsystems, and
their differentiated hidden constraints, pin part of the state.  Stacking
those conditions gives a single matrix whose kernel is exactly the set of
admissible initial states, so a star-set initial condition is consistent
for *all* coefficient choices iff the matrix annihilates its basis.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .linalg import DEFAULT_TOLERANCES, as_matrix

__all__ = ["ConsistencyCertificate", "build_consistent_matrix", "check_initial_star"]


@dataclass(frozen=True)
class ConsistencyCertificate:
    """Result of checking a star basis against the consistent space.

    ``max_residual`` is the entrywise max of ``gamma @ V``; the basis is
    consistent iff it does not exceed ``tolerance``.  ``worst_column`` and
    ``worst_row_block`` locate the largest violation (block ``i`` is the
    condition pinning constraint subsystem ``i + 2``), so an inconsistent
    set comes with a pointer to the offending basis vector and constraint
    level instead of a bare failure.
    """

    gamma: np.ndarray
    max_residual: float
    consistent: bool
    tolerance: float
    worst_column: int | None = None
    worst_row_block: int | None = None


def build_consistent_matrix(dec):
    """Stack the initial-condition constraints of every AC subsystem.

    For each algebraic subsystem ``i`` the solution satisfies
    ``x_i = maps[i] @ x_1`` with the derivative terms eliminated, so an
    admissible initial state must obey
    ``projector_i x - maps[i] (projector_1 x) = 0``.  One block per
    constraint subsystem, stacked top to bottom: ``mu`` blocks of ``n``
    rows each.
    """
    maps = dec.reconstruction_maps()
    ode_projector = dec.projectors[1]
    blocks = [
        dec.projectors[i] - maps[i] @ ode_projector
        for i in dec.subsystem_ids
        if i != 1
    ]
    return np.vstack(blocks)


def check_initial_star(gamma, theta0, tol=DEFAULT_TOLERANCES):
    """Certificate for ``gamma @ V(0) == 0`` over the star's basis.

    Never raises on inconsistency; the caller decides whether an
    inconsistent set is fatal.
    """
    gamma = as_matrix(gamma, "gamma")
    if gamma.shape[1] != theta0.dim:
        raise DimensionMismatchError(
            f"gamma has {gamma.shape[1]} columns but the star lives in "
            f"dimension {theta0.dim}"
        )
    residual = np.abs(gamma @ theta0.V)
    max_residual = float(residual.max())
    consistent = max_residual <= tol.consistency_tol
    worst_column = worst_block = None
    if not consistent:
        row, col = np.unravel_index(np.argmax(residual), residual.shape)
        worst_column = int(col)
        worst_block = int(row // theta0.dim)
    return ConsistencyCertificate(
        gamma=gamma,
        max_residual=max_residual,
        consistent=consistent,
        tolerance=tol.consistency_tol,
        worst_column=worst_column,
        worst_row_block=worst_block,
    )
