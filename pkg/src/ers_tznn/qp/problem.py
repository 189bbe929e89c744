"""Time-variant equality-constrained QP and its KKT system.

    minimize   x^T G(t) x / 2 + c(t)^T x
    subject to A(t) x = b(t)

The optimality conditions read M(t) z(t) = u(t) with z = [x; lambda],
M = [[G, A^T], [A, 0]] and u = [-c; b].
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Optional, Tuple

import numpy as np
from scipy.linalg import cho_factor, cho_solve, lu_factor, lu_solve

from ers_tznn.config import settings
from ers_tznn.exceptions import IllConditionedError, StructuralError

logger = logging.getLogger(__name__)

TimeFunction = Callable[[float], np.ndarray]
DerivativeMode = Literal["analytic", "finite_difference"]


@dataclass(frozen=True)
class TimeVariantQP:
    """Problem data as pure functions of time.

    The callables must not hold mutable state; runs share them freely.
    """

    n: int
    m: int
    G: TimeFunction
    A: TimeFunction
    c: TimeFunction
    b: TimeFunction
    G_dot: Optional[TimeFunction] = None
    A_dot: Optional[TimeFunction] = None
    c_dot: Optional[TimeFunction] = None
    b_dot: Optional[TimeFunction] = None
    name: str = "qp"

    @property
    def k(self) -> int:
        return self.n + self.m

    @property
    def has_derivatives(self) -> bool:
        return all(fn is not None for fn in (self.G_dot, self.A_dot, self.c_dot, self.b_dot))

    def blocks(self, t: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """G, A, c, b at ``t`` with their shapes checked.

        Raises:
            StructuralError: If a block does not match (n, m)
        """
        G = np.atleast_2d(np.asarray(self.G(t), dtype=float))
        A = np.atleast_2d(np.asarray(self.A(t), dtype=float))
        c = np.asarray(self.c(t), dtype=float).reshape(-1)
        b = np.asarray(self.b(t), dtype=float).reshape(-1)
        expected = {"G": (self.n, self.n), "A": (self.m, self.n), "c": (self.n,), "b": (self.m,)}
        for label, block in zip(expected, (G, A, c, b)):
            if block.shape != expected[label]:
                raise StructuralError(
                    f"{self.name}: {label}(t={t:.6g}) has shape {block.shape}, "
                    f"expected {expected[label]}"
                )
        return G, A, c, b

    def check(self, t_grid: Iterable[float]) -> None:
        """Check symmetry, positive definiteness and full row rank on sampled times.

        Raises:
            StructuralError: On the first violated invariant
        """
        if self.n < 1 or self.m < 0:
            raise StructuralError(f"{self.name}: invalid dimensions n={self.n}, m={self.m}")
        for t in t_grid:
            G, A, _, _ = self.blocks(float(t))
            if not np.allclose(G, G.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(G).max())):
                raise StructuralError(f"{self.name}: G(t={t:.6g}) is not symmetric")
            if np.linalg.eigvalsh(G).min() <= 0:
                raise StructuralError(f"{self.name}: G(t={t:.6g}) is not positive definite")
            if self.m and np.linalg.matrix_rank(A) < self.m:
                raise StructuralError(f"{self.name}: A(t={t:.6g}) is not of full row rank")


def build_kkt(qp: TimeVariantQP, t: float) -> Tuple[np.ndarray, np.ndarray]:
    """KKT matrix M(t) and right-hand side u(t).

    Raises:
        StructuralError: If the problem blocks have inconsistent dimensions
    """
    G, A, c, b = qp.blocks(t)
    return _assemble(qp.n, G, A), np.concatenate([-c, b])


def _assemble(n: int, G: np.ndarray, A: np.ndarray) -> np.ndarray:
    k = n + A.shape[0]
    M = np.zeros((k, k))
    M[:n, :n] = G
    M[:n, n:] = A.T
    M[n:, :n] = A
    return M


def solve_kkt(M: np.ndarray, rhs: np.ndarray, t: float | None = None) -> np.ndarray:
    """Solve M x = rhs by LU with partial pivoting.

    Raises:
        IllConditionedError: If the condition estimate exceeds ``settings.condition_limit``
    """
    condition = np.linalg.cond(M)
    if not condition < settings.condition_limit:
        raise IllConditionedError(float(condition), t)
    return lu_solve(lu_factor(M, check_finite=False), rhs, check_finite=False)


@dataclass(frozen=True)
class KktSystem:
    """M(t), u(t) and their time derivatives for one problem."""

    qp: TimeVariantQP
    derivative_mode: DerivativeMode = "analytic"

    @property
    def k(self) -> int:
        return self.qp.k

    def snapshot(self, t: float) -> Tuple[np.ndarray, np.ndarray]:
        return build_kkt(self.qp, t)

    def derivatives(self, t: float) -> Tuple[np.ndarray, np.ndarray]:
        """M'(t) and u'(t), analytic or by central differences."""
        if self.derivative_mode == "analytic":
            qp = self.qp
            G_dot = np.atleast_2d(np.asarray(qp.G_dot(t), dtype=float))
            A_dot = np.atleast_2d(np.asarray(qp.A_dot(t), dtype=float))
            c_dot = np.asarray(qp.c_dot(t), dtype=float).reshape(-1)
            b_dot = np.asarray(qp.b_dot(t), dtype=float).reshape(-1)
            return _assemble(qp.n, G_dot, A_dot), np.concatenate([-c_dot, b_dot])

        h = settings.fd_relative_step * max(1.0, abs(t))
        M_plus, u_plus = self.snapshot(t + h)
        M_minus, u_minus = self.snapshot(t - h)
        return (M_plus - M_minus) / (2.0 * h), (u_plus - u_minus) / (2.0 * h)


def kkt_system(qp: TimeVariantQP, derivative_mode: DerivativeMode | None = None) -> KktSystem:
    """KKT system of ``qp``; analytic derivatives are used whenever all four are given.

    Raises:
        StructuralError: If analytic mode is requested without derivative callables
    """
    if derivative_mode is None:
        derivative_mode = "analytic" if qp.has_derivatives else "finite_difference"
    if derivative_mode == "analytic" and not qp.has_derivatives:
        raise StructuralError(f"{qp.name}: analytic derivatives requested but not provided")
    if derivative_mode == "finite_difference":
        logger.info("%s: using central-difference derivatives of M and u", qp.name)
    return KktSystem(qp=qp, derivative_mode=derivative_mode)


def reference_solution(qp: TimeVariantQP, t: float) -> np.ndarray:
    """z*(t) = M(t)^-1 u(t).

    Raises:
        IllConditionedError: If M(t) is too close to singular
    """
    M, u = build_kkt(qp, t)
    return solve_kkt(M, u, t)


def reference_solution_blocks(qp: TimeVariantQP, t: float) -> Tuple[np.ndarray, np.ndarray]:
    """x* and lambda* from the block elimination through G.

    x* = -G^-1 (c + A^T lambda*), lambda* = -(A G^-1 A^T)^-1 (A G^-1 c + b)
    """
    G, A, c, b = qp.blocks(t)
    factor = cho_factor(G)
    if qp.m == 0:
        return -cho_solve(factor, c), np.zeros(0)
    G_inv_At = cho_solve(factor, A.T)
    G_inv_c = cho_solve(factor, c)
    schur = A @ G_inv_At
    lam = -np.linalg.solve(schur, A @ G_inv_c + b)
    x = -cho_solve(factor, c + A.T @ lam)
    return x, lam


def make_benchmark_qp() -> TimeVariantQP:
    """Two variables, one constraint, smooth periodic data.

    G(t) = diag(2 + sin t, 2 + cos t), A(t) = [1, sin t],
    c(t) = [cos t, -sin t], b(t) = [cos t]. G has eigenvalues in [1, 3] and A
    never vanishes, so the KKT matrix is invertible for every t.
    """
    return TimeVariantQP(
        n=2,
        m=1,
        G=lambda t: np.array([[2.0 + math.sin(t), 0.0], [0.0, 2.0 + math.cos(t)]]),
        A=lambda t: np.array([[1.0, math.sin(t)]]),
        c=lambda t: np.array([math.cos(t), -math.sin(t)]),
        b=lambda t: np.array([math.cos(t)]),
        G_dot=lambda t: np.array([[math.cos(t), 0.0], [0.0, -math.sin(t)]]),
        A_dot=lambda t: np.array([[0.0, math.cos(t)]]),
        c_dot=lambda t: np.array([-math.sin(t), -math.cos(t)]),
        b_dot=lambda t: np.array([-math.sin(t)]),
        name="benchmark",
    )
