"""Per-step safety checking against a linear unsafe set, with falsification.

At each time step the unsafe condition ``G x <= f`` is pulled back through
the star basis and stacked with the coefficient predicate; the step is
unsafe iff the combined inequality system is feasible.  A feasible
coefficient vector is a genuine witness: replaying it through every star
basis yields a concrete simulation trace ending in the unsafe set.
"""

from dataclasses import dataclass

import numpy as np

from . import lp
from .errors import DimensionMismatchError, NumericalFailureError
from .linalg import DEFAULT_TOLERANCES, as_matrix, as_vector, readonly

__all__ = [
    "UnsafeSpec",
    "VerificationOutcome",
    "feasibility_check",
    "scipy_feasibility_kernel",
    "verify",
]

SAFE = "safe"
UNSAFE = "unsafe"


class UnsafeSpec:
    """The unsafe polyhedron ``G x <= f``.

    With ``on_original_state`` (the default) ``G`` constrains only the
    original model coordinates and is zero-extended over any trailing
    input coordinates of the stacked autonomous state.
    """

    __slots__ = ("G", "f", "on_original_state")

    def __init__(self, G, f, on_original_state=True):
        G = as_matrix(G, "G")
        f = as_vector(f, "f")
        if G.shape[0] != f.shape[0]:
            raise DimensionMismatchError(
                f"G has {G.shape[0]} rows but f has {f.shape[0]} entries"
            )
        self.G = readonly(G)
        self.f = readonly(f)
        self.on_original_state = bool(on_original_state)

    def extended(self, dim):
        """``G`` padded with zero columns up to state dimension ``dim``."""
        q, cols = self.G.shape
        if cols == dim:
            return self.G
        if self.on_original_state and cols < dim:
            return np.hstack([self.G, np.zeros((q, dim - cols))])
        raise DimensionMismatchError(
            f"unsafe matrix has {cols} columns but the state dimension is {dim}"
        )

    def __repr__(self):
        return f"UnsafeSpec(rows={self.G.shape[0]}, cols={self.G.shape[1]})"


@dataclass(frozen=True)
class VerificationOutcome:
    """Verdict of a bounded-time safety check.

    ``unsafe`` outcomes carry the first feasible step, the witnessing
    coefficient vector, and the full trace ``x_j = V_j alpha`` over every
    step (one row per time instant).  ``safe`` outcomes carry none.
    """

    status: str
    first_unsafe_step: int | None = None
    alpha_feasible: np.ndarray | None = None
    unsafe_trace: np.ndarray | None = None
    unsafe_steps: tuple = ()

    @property
    def is_safe(self):
        return self.status == SAFE


def feasibility_check(Gbar, fbar, tol=DEFAULT_TOLERANCES):
    """Some ``alpha`` with ``Gbar @ alpha <= fbar`` (within the slack), or
    ``None`` if the polyhedron is empty.

    Uses the built-in two-phase simplex; deterministic for fixed inputs.
    Non-convergence raises :class:`NumericalFailureError`, which is
    distinct from infeasibility.
    """
    Gbar = as_matrix(Gbar, "Gbar")
    fbar = as_vector(fbar, "fbar")
    if Gbar.shape[0] != fbar.shape[0]:
        raise DimensionMismatchError(
            f"Gbar has {Gbar.shape[0]} rows but fbar has {fbar.shape[0]} entries"
        )
    return lp.find_feasible(Gbar, fbar, tol=tol.feasibility_tol)


def scipy_feasibility_kernel(Gbar, fbar, tol=DEFAULT_TOLERANCES):
    """Alternative feasibility backend on scipy's LP solver, mainly for
    cross-checking the built-in kernel."""
    from scipy.optimize import linprog

    result = linprog(
        np.zeros(Gbar.shape[1]),
        A_ub=Gbar,
        b_ub=fbar,
        bounds=[(None, None)] * Gbar.shape[1],
        method="highs",
    )
    if result.status == 0:
        return result.x
    if result.status == 2:
        return None
    raise NumericalFailureError(f"scipy linprog failed: {result.message}")


def _recheck(alpha, Gbar, fbar, ftol, step):
    scale = np.maximum(1.0, np.abs(Gbar).max(axis=1) * max(1.0, np.abs(alpha).max()))
    violation = Gbar @ alpha - fbar
    if np.any(violation > 100.0 * ftol * scale):
        raise NumericalFailureError(
            f"solver returned an infeasible witness at step {step}: "
            f"max violation {violation.max():.3e}"
        )


def verify(reach, unsafe, tol=DEFAULT_TOLERANCES, kernel=None, find_all=False):
    """Check every reachable star against the unsafe set.

    Walks the steps in time order and, at the first feasible step, fixes
    the witnessing coefficients, re-validates them outside the solver,
    and reconstructs the trace through all steps.  ``find_all`` keeps
    scanning after the first hit and records every unsafe step index.
    ``kernel`` substitutes a different feasibility backend with the same
    call shape as :func:`feasibility_check`.
    """
    kernel = feasibility_check if kernel is None else kernel
    stars = reach.stars
    dim = stars[0].dim
    G = unsafe.extended(dim)
    f = unsafe.f

    first_hit = None
    alpha = None
    hits = []
    for j, star in enumerate(stars):
        Gbar = np.vstack([G @ star.V, star.C])
        fbar = np.concatenate([f, star.d])
        try:
            candidate = kernel(Gbar, fbar, tol)
        except NumericalFailureError as exc:
            raise NumericalFailureError(f"feasibility check failed at step {j}: {exc}")
        if candidate is None:
            continue
        _recheck(candidate, Gbar, fbar, tol.feasibility_tol, j)
        hits.append(j)
        if first_hit is None:
            first_hit = j
            alpha = candidate
            if not find_all:
                break

    if first_hit is None:
        return VerificationOutcome(status=SAFE)
    trace = np.array([star.V @ alpha for star in stars])
    return VerificationOutcome(
        status=UNSAFE,
        first_unsafe_step=first_hit,
        alpha_feasible=alpha,
        unsafe_trace=trace,
        unsafe_steps=tuple(hits),
    )
