"""Built-in benchmark systems.

Two fully specified generators ship with the package: a four-state
interconnected rotating-masses model (tractability index 2 after the
input lift) and a family of semidiscretized Stokes flows on staggered
grids (index 2 at every grid size).  Everything else is expected to
arrive through the model-file loader.
"""

import numpy as np

from .model import DaeSystem, InputModel
from .starset import StarSet

__all__ = [
    "build_rotating_masses",
    "rotating_masses_initial_star",
    "build_stokes",
    "stokes_center_velocity_rows",
]


def build_rotating_masses():
    """Two rotating masses coupled by torques, driven by harmonic inputs.

    States are the angular velocities of both masses followed by the two
    coupling torques; the two inputs are externally applied torques whose
    own dynamics ``u' = [[0, 1], [-1, 0]] u`` make them sine/cosine
    signals.  Inertias are 1 and 2.  The two zero rows of ``E`` encode the
    torque balance constraints, which is what pushes the index to 2.

    Returns the system together with its input model.
    """
    E = np.diag([1.0, 2.0, 0.0, 0.0])
    A = np.array(
        [
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, -1.0],
            [-1.0, 1.0, 0.0, 0.0],
        ]
    )
    B = np.array(
        [
            [1.0, 0.0],
            [0.0, 1.0],
            [0.0, 0.0],
            [0.0, 0.0],
        ]
    )
    A_u = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return DaeSystem(E, A, B), InputModel(A_u)


def rotating_masses_initial_star():
    """The consistent initial star conventionally used with this benchmark.

    The two basis columns are the unit vectors along ``(0,0,5,-5,-6,3)``
    and ``(0,0,0,0,1,2)`` over the stacked (state, input) coordinates:
    both satisfy every algebraic and hidden constraint of the lifted
    system exactly, so the star is consistent for all coefficients.  The
    predicate is the box ``alpha_1 in [0.1, 0.2]``, ``alpha_2 in [1.0,
    1.2]``.
    """
    v1 = np.array([0.0, 0.0, 5.0, -5.0, -6.0, 3.0]) / np.sqrt(95.0)
    v2 = np.array([0.0, 0.0, 0.0, 0.0, 1.0, 2.0]) / np.sqrt(5.0)
    V = np.column_stack([v1, v2])
    C = np.array(
        [
            [1.0, 0.0],
            [-1.0, 0.0],
            [0.0, 1.0],
            [0.0, -1.0],
        ]
    )
    d = np.array([0.2, -0.1, 1.2, -1.0])
    return StarSet(V, C, d)


def _stokes_layout(grid_n):
    """Index maps for the staggered (MAC) layout on a grid_n x grid_n grid.

    Horizontal velocities live on interior vertical cell faces, vertical
    velocities on interior horizontal faces, pressures at cell centers.
    Boundary faces carry the zero Dirichlet velocity and are not unknowns;
    the pressure of cell (0, 0) is pinned to zero so the pressure field,
    otherwise defined only up to a constant, has a unique representative
    and the pencil stays regular.
    """
    u_index = {}
    for i in range(1, grid_n):
        for j in range(grid_n):
            u_index[(i, j)] = len(u_index)
    v_index = {}
    for i in range(grid_n):
        for j in range(1, grid_n):
            v_index[(i, j)] = len(u_index) + len(v_index)
    p_index = {}
    for i in range(grid_n):
        for j in range(grid_n):
            if (i, j) != (0, 0):
                p_index[(i, j)] = len(p_index)
    return u_index, v_index, p_index


def build_stokes(grid_n):
    """Semidiscretized incompressible Stokes flow on the unit square.

    Finite differences on a uniform ``grid_n x grid_n`` staggered grid
    with zero Dirichlet velocity on the boundary.  The state stacks
    ``n_v = 2 k (k - 1)`` interior face velocities and ``n_p = k^2 - 1``
    cell pressures (one reference cell pinned), giving dimension
    ``3 k^2 - 2 k - 1`` for ``k = grid_n``.  The system has the block form

        E = [[I, 0], [0, 0]],   A = [[A11, A12], [A12^T, 0]]

    with ``A11`` the 5-point discrete Laplacian on the velocity unknowns
    and ``A12`` the discrete pressure gradient; the lower-left block is
    exactly the transpose of ``A12``.  The resulting DAE has tractability
    index 2.  ``B`` applies a unit force at one near-center velocity
    unknown (a single input).
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    k = grid_n
    h = 1.0 / k
    u_index, v_index, p_index = _stokes_layout(k)
    n_v = len(u_index) + len(v_index)
    n_p = len(p_index)
    n = n_v + n_p

    lap = np.zeros((n_v, n_v))
    inv_h2 = 1.0 / (h * h)

    def stencil(index_map, row, neighbors):
        diag = 0.0
        for cell, tangential in neighbors:
            if cell in index_map:
                lap[row, index_map[cell]] += inv_h2
                diag -= inv_h2
            elif tangential:
                # ghost value mirrors across the wall so the velocity
                # vanishes at the wall midpoint
                diag -= 2.0 * inv_h2
            else:
                # the neighbor is a boundary face carrying the zero value
                diag -= inv_h2
        lap[row, row] += diag

    for (i, j), row in u_index.items():
        stencil(
            u_index,
            row,
            [((i - 1, j), False), ((i + 1, j), False), ((i, j - 1), True), ((i, j + 1), True)],
        )
    for (i, j), row in v_index.items():
        stencil(
            v_index,
            row,
            [((i, j - 1), False), ((i, j + 1), False), ((i - 1, j), True), ((i + 1, j), True)],
        )

    grad = np.zeros((n_v, n_p))
    inv_h = 1.0 / h
    for (i, j), row in u_index.items():
        # face between cells (i - 1, j) and (i, j)
        if (i, j) in p_index:
            grad[row, p_index[(i, j)]] -= inv_h
        if (i - 1, j) in p_index:
            grad[row, p_index[(i - 1, j)]] += inv_h
    for (i, j), row in v_index.items():
        # face between cells (i, j - 1) and (i, j)
        if (i, j) in p_index:
            grad[row, p_index[(i, j)]] -= inv_h
        if (i, j - 1) in p_index:
            grad[row, p_index[(i, j - 1)]] += inv_h

    E = np.zeros((n, n))
    E[:n_v, :n_v] = np.eye(n_v)
    A = np.zeros((n, n))
    A[:n_v, :n_v] = lap
    A[:n_v, n_v:] = grad
    A[n_v:, :n_v] = grad.T

    B = np.zeros((n, 1))
    B[u_index[(max(1, k // 2), (k - 1) // 2)], 0] = 1.0
    return DaeSystem(E, A, B)


def stokes_center_velocity_rows(grid_n):
    """State-row indices of the two velocity components nearest the center
    cell, for use in observation directions and unsafe sets."""
    k = grid_n
    u_index, v_index, _ = _stokes_layout(k)
    center = ((k - 1) // 2, (k - 1) // 2)
    u_row = u_index[(max(1, center[0] + 1), center[1])]
    v_row = v_index[(center[0], max(1, center[1] + 1))]
    return u_row, v_row
