"""Independent oracles for the test suite.

Everything here deliberately avoids the package's own code paths: the
matrix exponential is a scaled Taylor series instead of a Pade
approximant, exact solutions come from a canonical-form construction
instead of the projector chain, feasibility is decided by vertex
enumeration instead of simplex pivots, and determinants over integer
matrices are computed exactly with fraction-free elimination.
"""

from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.integrate import solve_ivp


def expm_taylor(M, t, terms=40):
    """exp(M t) by scaled-and-squared Taylor summation."""
    M = np.asarray(M, dtype=float) * t
    norm = np.linalg.norm(M, np.inf)
    squarings = max(0, int(np.ceil(np.log2(max(norm, 1e-300) / 0.25))))
    scaled = M / (2.0**squarings)
    acc = np.eye(M.shape[0])
    term = np.eye(M.shape[0])
    for k in range(1, terms + 1):
        term = term @ scaled / k
        acc = acc + term
    for _ in range(squarings):
        acc = acc @ acc
    return acc


def exact_int_det(M):
    """Exact determinant of an integer-valued matrix (Bareiss elimination)."""
    A = [[Fraction(int(round(v)), 1) for v in row] for row in np.asarray(M)]
    n = len(A)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
            A[i][k] = Fraction(0)
        prev = A[k][k]
    det = sign * A[n - 1][n - 1]
    assert det.denominator == 1
    return int(det)


def polytope_vertices(C, d, tol=1e-9):
    """All vertices of {x : C x <= d} by brute-force subset enumeration."""
    C = np.asarray(C, dtype=float)
    d = np.asarray(d, dtype=float)
    p, k = C.shape
    slack = tol * np.maximum(1.0, np.abs(d))
    found = []
    for rows in combinations(range(p), k):
        sub = C[list(rows)]
        if abs(np.linalg.det(sub)) < 1e-12 * max(1.0, np.abs(sub).max()) ** k:
            continue
        x = np.linalg.solve(sub, d[list(rows)])
        if np.all(C @ x <= d + slack):
            found.append(x)
    if not found:
        return np.empty((0, k))
    verts = np.array(found)
    _, keep = np.unique(np.round(verts, 9), axis=0, return_index=True)
    return verts[np.sort(keep)]


def bruteforce_feasible(C, d, box=10.0, tol=1e-9):
    """Feasibility of {C x <= d} for instances known to be bounded by
    ``|x_i| <= box``; decided by vertex enumeration on the boxed system."""
    C = np.asarray(C, dtype=float)
    k = C.shape[1]
    boxed_C = np.vstack([C, np.eye(k), -np.eye(k)])
    boxed_d = np.concatenate([np.asarray(d, float), np.full(2 * k, box)])
    return polytope_vertices(boxed_C, boxed_d, tol).shape[0] > 0


class CanonicalDae:
    """A DAE built from a canonical split into dynamic and nilpotent parts.

    ``E = S diag(I_d, N) T`` and ``A = S diag(J, I_a) T`` with ``N``
    nilpotent; the tractability index equals the largest nilpotent block,
    solutions are ``x(t) = T^{-1} [exp(J t) z1(0); 0]``, and an initial
    state is consistent iff the trailing ``a`` entries of ``T x0`` vanish.
    This gives exact references for index, consistency, and trajectories
    that never touch the package's projector machinery.
    """

    def __init__(self, rng, dynamic_dim, blocks, conditioning=2.0):
        a = sum(blocks)
        n = dynamic_dim + a
        J = rng.normal(size=(dynamic_dim, dynamic_dim))
        # shift to keep trajectories bounded over unit-scale horizons
        J -= (np.abs(np.linalg.eigvals(J).real).max() + 0.3) * np.eye(dynamic_dim)
        N = np.zeros((a, a))
        offset = 0
        for size in blocks:
            for i in range(size - 1):
                N[offset + i, offset + i + 1] = 1.0
            offset += size
        S = np.linalg.qr(rng.normal(size=(n, n)))[0]
        S = S * rng.uniform(1.0 / conditioning, conditioning, size=n)
        T = np.linalg.qr(rng.normal(size=(n, n)))[0]
        T = T * rng.uniform(1.0 / conditioning, conditioning, size=n)[:, None]
        self.J = J
        self.dynamic_dim = dynamic_dim
        self.nilpotent_dim = a
        self.index = max(blocks)
        self.T = T
        self.T_inv = np.linalg.inv(T)
        self.E = S @ np.block(
            [[np.eye(dynamic_dim), np.zeros((dynamic_dim, a))], [np.zeros((a, dynamic_dim)), N]]
        ) @ T
        self.A = S @ np.block(
            [[J, np.zeros((dynamic_dim, a))], [np.zeros((a, dynamic_dim)), np.eye(a)]]
        ) @ T

    def consistent_point(self, rng, scale=1.0):
        z1 = scale * rng.normal(size=self.dynamic_dim)
        return self.T_inv @ np.concatenate([z1, np.zeros(self.nilpotent_dim)])

    def consistent_basis(self, rng, width, scale=1.0):
        return np.column_stack(
            [self.consistent_point(rng, scale) for _ in range(width)]
        )

    def exact_states(self, x0, times):
        """Exact solution rows at the requested times (independent
        integrator: error-controlled RK on the dynamic block)."""
        z0 = self.T @ x0
        assert np.abs(z0[self.dynamic_dim :]).max() < 1e-8, "inconsistent start"
        sol = solve_ivp(
            lambda _, z: self.J @ z,
            (0.0, float(times[-1])),
            z0[: self.dynamic_dim],
            method="DOP853",
            t_eval=times,
            rtol=1e-12,
            atol=1e-14,
        )
        assert sol.success
        z1 = sol.y  # (d, len(times))
        full = np.vstack([z1, np.zeros((self.nilpotent_dim, len(times)))])
        return (self.T_inv @ full).T


def box_star(rng, gamma, dim, width, rcond=1e-9):
    """A consistent star for the system with consistency matrix ``gamma``:
    random basis columns orthogonally projected into Ker(gamma), with a
    random box predicate around zero."""
    from scipy.linalg import null_space

    from daereach import StarSet

    kernel = null_space(gamma, rcond=rcond)
    assert kernel.shape[1] > 0, "consistent space is trivial"
    basis = kernel @ (kernel.T @ rng.normal(size=(dim, width)))
    norms = np.linalg.norm(basis, axis=0)
    assert norms.min() > 1e-10, "projected basis collapsed"
    basis /= norms
    lows = rng.uniform(-1.0, 0.0, size=width)
    highs = lows + rng.uniform(0.2, 1.0, size=width)
    C = np.vstack([np.eye(width), -np.eye(width)])
    d = np.concatenate([highs, -lows])
    return StarSet(basis, C, d)
