"""Matrix-chain index computation, admissible projectors, and decoupling.

Starting from an autonomous pair ``(E, A)`` the chain

    E_0 = E,  A_0 = A,
    E_{j+1} = E_j - A_j Q_j,  A_{j+1} = A_j P_j,

with ``Q_j`` a projector onto ``Ker(E_j)`` and ``P_j = I - Q_j``,
terminates at the first nonsingular ``E_mu``; ``mu`` is the tractability
index.  Plain orthogonal kernel projectors generally violate the
admissibility property ``Q_j Q_i = 0`` for ``j > i`` that the decoupled
forms rely on, so they are corrected index-by-index (index 1 needs no
correction) and the chain is rebuilt with the corrected projectors.

Decoupling then splits the system into one ODE subsystem and ``mu``
algebraic-constraint subsystems with closed-form coefficient matrices.
Only indices 1 through 3 are supported; higher indices raise.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    IndexTooHighError,
    IrregularPencilError,
    NonsingularEError,
    SingularMatrixError,
)
from .linalg import (
    DEFAULT_TOLERANCES,
    is_nonsingular,
    orthogonal_null_projector,
    solve_inverse,
)
from .model import REGULARITY_SEED, check_regularity

__all__ = [
    "MatrixChain",
    "DecoupledSystem",
    "compute_index_and_chain",
    "make_admissible",
    "decouple",
]

MAX_SUPPORTED_INDEX = 3


@dataclass(frozen=True)
class MatrixChain:
    """The chain matrices and projectors up to the terminal index.

    ``E_seq`` and ``A_seq`` have length ``mu + 1`` (positions 0..mu), and
    ``Q_seq``/``P_seq`` have length ``mu``.  ``admissible`` records whether
    the projectors satisfy ``Q_j Q_i = 0`` for ``j > i``; the chain built
    from raw orthogonal projectors is kept on ``raw`` after correction so
    both stages stay inspectable.
    """

    E_seq: list
    A_seq: list
    Q_seq: list
    P_seq: list
    mu: int
    admissible: bool = False
    raw: "MatrixChain | None" = field(default=None, repr=False)

    @property
    def n(self):
        return self.E_seq[0].shape[0]

    @property
    def terminal(self):
        """The nonsingular matrix ending the chain."""
        return self.E_seq[self.mu]


@dataclass(frozen=True)
class DecoupledSystem:
    """Coefficient matrices of the decoupled subsystems.

    Subsystem 1 is the ODE part ``x_1' = N[1] x_1 + M[1] u``; subsystems
    2..mu+1 are algebraic constraints.  ``L3``, ``L4`` and ``Z4`` multiply
    derivative terms of lower constraint subsystems and are present only
    where the index calls for them.  ``projectors[i]`` extracts subsystem
    ``i``'s component from the full state; the projectors sum to the
    identity.
    """

    mu: int
    N: dict
    M: dict
    L3: np.ndarray | None
    L4: np.ndarray | None
    Z4: np.ndarray | None
    projectors: dict
    chain: MatrixChain = field(repr=False)

    @property
    def n(self):
        return self.N[1].shape[0]

    @property
    def subsystem_ids(self):
        return tuple(sorted(self.N))

    def reconstruction_maps(self):
        """Maps sending the ODE component to every solution component.

        Derivative terms of the constraint subsystems are eliminated
        analytically using the ODE dynamics, so each component ``x_i(t)``
        of a solution equals ``maps[i] @ x_1(t)``; their sum is the
        reachable-set projector.
        """
        n1 = self.N[1]
        maps = {1: np.eye(self.n)}
        maps[2] = self.N[2]
        if self.mu >= 2:
            maps[3] = self.N[3] + self.L3 @ self.N[2] @ n1
        if self.mu == 3:
            maps[4] = (
                self.N[4]
                + self.L4 @ (self.N[3] @ n1 + self.L3 @ self.N[2] @ n1 @ n1)
                + self.Z4 @ self.N[2] @ n1
            )
        return maps


def _extend(E_seq, A_seq, Q_seq, P_seq, Q):
    n = Q.shape[0]
    P = np.eye(n) - Q
    Q_seq.append(Q)
    P_seq.append(P)
    E_seq.append(E_seq[-1] - A_seq[-1] @ Q)
    A_seq.append(A_seq[-1] @ P)


def compute_index_and_chain(
    sys, tol=DEFAULT_TOLERANCES, regularity_trials=5, regularity_seed=None
):
    """Build the matrix chain with orthogonal projectors and find the index.

    Raises :class:`IrregularPencilError` if the regularity probe fails,
    :class:`NonsingularEError` if ``E`` is already nonsingular (the system
    is an ODE), and :class:`IndexTooHighError` if the chain is still
    singular after three steps.
    """
    if regularity_seed is None:
        regularity_seed = REGULARITY_SEED
    if not check_regularity(sys, regularity_trials, tol, seed=regularity_seed):
        raise IrregularPencilError(
            "det(sE - A) vanished at every sample point; the pencil has no "
            "unique solution for any initial condition"
        )
    if is_nonsingular(sys.E, tol):
        raise NonsingularEError(
            "E is nonsingular: the system is an ODE and needs no decoupling"
        )
    E_seq, A_seq, Q_seq, P_seq = [sys.E], [sys.A], [], []
    for j in range(MAX_SUPPORTED_INDEX):
        _extend(E_seq, A_seq, Q_seq, P_seq, orthogonal_null_projector(E_seq[-1], tol))
        if is_nonsingular(E_seq[-1], tol):
            return MatrixChain(E_seq, A_seq, Q_seq, P_seq, mu=j + 1)
    raise IndexTooHighError(
        f"E_{MAX_SUPPORTED_INDEX} is still singular; the tractability index "
        f"exceeds {MAX_SUPPORTED_INDEX}, which is unsupported"
    )


def _rebuild(E0, A0, projectors, tol):
    E_seq, A_seq, Q_seq, P_seq = [E0], [A0], [], []
    for Q in projectors:
        _extend(E_seq, A_seq, Q_seq, P_seq, Q)
    if not is_nonsingular(E_seq[-1], tol):
        raise SingularMatrixError(
            "chain rebuilt with corrected projectors has a singular terminal "
            "matrix; the index classification is unreliable at this tolerance"
        )
    return E_seq, A_seq, Q_seq, P_seq


def make_admissible(chain, tol=DEFAULT_TOLERANCES):
    """Correct the chain projectors so that ``Q_j Q_i = 0`` for ``j > i``.

    Index 1 is returned unchanged (a single projector is trivially
    admissible).  For index 2 the corrected ``Q_1`` is ``-Q_1 E_2^{-1}
    A_1``; for index 3 the kernel projector of an intermediate rebuilt
    chain supplies the corrected ``Q_2``.  Each corrected projector still
    projects onto the kernel of its (rebuilt) chain matrix; the returned
    chain is rebuilt from scratch with the corrected projectors and keeps
    the original on ``.raw``.
    """
    if chain.admissible:
        return chain
    if chain.mu == 1:
        return replace(chain, admissible=True, raw=chain)

    E0, A0 = chain.E_seq[0], chain.A_seq[0]
    Q0 = chain.Q_seq[0]
    if chain.mu == 2:
        E2_inv = solve_inverse(chain.E_seq[2], tol)
        Q1 = -chain.Q_seq[1] @ E2_inv @ chain.A_seq[1]
        corrected = [Q0, Q1]
    else:
        E3_inv = solve_inverse(chain.E_seq[3], tol)
        A1, A2 = chain.A_seq[1], chain.A_seq[2]
        n = chain.n
        Q2_tilde = -chain.Q_seq[2] @ E3_inv @ A2
        Q1 = -chain.Q_seq[1] @ (np.eye(n) - Q2_tilde) @ E3_inv @ A1
        E2_new = chain.E_seq[1] - A1 @ Q1
        A2_new = A1 @ (np.eye(n) - Q1)
        Q2_orth = orthogonal_null_projector(E2_new, tol)
        E3_new = E2_new - A2_new @ Q2_orth
        Q2 = -Q2_orth @ solve_inverse(E3_new, tol) @ A2_new
        corrected = [Q0, Q1, Q2]

    E_seq, A_seq, Q_seq, P_seq = _rebuild(E0, A0, corrected, tol)
    return MatrixChain(E_seq, A_seq, Q_seq, P_seq, chain.mu, admissible=True, raw=chain)


def decouple(chain, b=None, tol=DEFAULT_TOLERANCES):
    """Split an admissibly-projected chain into its subsystem coefficients.

    ``b`` is the input matrix of the underlying system; ``None`` means the
    autonomous case and produces empty (zero-column) input coefficients,
    which every downstream formula accepts unchanged.
    """
    if not chain.admissible:
        raise ValueError("decouple requires an admissible chain; call make_admissible")
    if not 1 <= chain.mu <= MAX_SUPPORTED_INDEX:
        raise IndexTooHighError(f"unsupported index {chain.mu}")
    n = chain.n
    b = np.zeros((n, 0)) if b is None else np.asarray(b, dtype=float)
    terminal_inv = solve_inverse(chain.terminal, tol)
    # index 1 feeds the original A through E_1^{-1}; higher indices feed the
    # terminal chain matrix A_mu (the two differ off the ODE subspace)
    source = chain.A_seq[0] if chain.mu == 1 else chain.A_seq[chain.mu]
    into_state = terminal_inv @ source
    into_input = terminal_inv @ b
    P = chain.P_seq
    Q = chain.Q_seq

    if chain.mu == 1:
        fronts = {1: P[0], 2: Q[0]}
        projectors = {1: P[0], 2: Q[0]}
        L3 = L4 = Z4 = None
    elif chain.mu == 2:
        fronts = {1: P[0] @ P[1], 2: P[0] @ Q[1], 3: Q[0] @ P[1]}
        projectors = {1: P[0] @ P[1], 2: P[0] @ Q[1], 3: Q[0]}
        L3 = Q[0] @ Q[1]
        L4 = Z4 = None
    else:
        fronts = {
            1: P[0] @ P[1] @ P[2],
            2: P[0] @ P[1] @ Q[2],
            3: P[0] @ Q[1] @ P[2],
            4: Q[0] @ P[1] @ P[2],
        }
        projectors = {
            1: P[0] @ P[1] @ P[2],
            2: P[0] @ P[1] @ Q[2],
            3: P[0] @ Q[1],
            4: Q[0],
        }
        L3 = P[0] @ Q[1] @ Q[2]
        L4 = Q[0] @ Q[1]
        Z4 = Q[0] @ P[1] @ Q[2]

    N = {i: front @ into_state for i, front in fronts.items()}
    M = {i: front @ into_input for i, front in fronts.items()}
    return DecoupledSystem(
        mu=chain.mu, N=N, M=M, L3=L3, L4=L4, Z4=Z4, projectors=projectors, chain=chain
    )
