"""Closed-form level-1 QAOA correlations for Ising graphs.

For the state ``exp(i beta B) exp(i gamma H) |+^n>`` with ``B = sum_j X_j`` and
``H = sum J_uv Z_u Z_v``, every two-point function is

    <Z_u Z_v> = s^2 A_uv(gamma) + c s B_uv(gamma),   c = cos 2beta, s = sin 2beta

with ``A_uv = (prod_p cos 2g(J_up - J_vp) - prod_p cos 2g(J_up + J_vp)) / 2`` and
``B_uv = sin(2g J_uv) (prod_p cos 2g J_up + prod_p cos 2g J_vp)``, the products
running over ``p != u, v``. Only neighbours of ``u`` or ``v`` contribute factors
other than one, so each pair costs ``O(deg u + deg v)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .model import IsingInstance

__all__ = [
    "QaoaParams",
    "Level1Result",
    "level1_zz",
    "level1_correlations",
    "level1_energy",
    "optimize_level1",
    "pattern_search",
]


@dataclass(frozen=True)
class QaoaParams:
    """Angles of a level-``p`` QAOA circuit."""

    p: int
    beta: tuple
    gamma: tuple

    def __post_init__(self):
        beta = tuple(float(b) for b in np.atleast_1d(self.beta))
        gamma = tuple(float(g) for g in np.atleast_1d(self.gamma))
        if self.p < 0 or len(beta) != self.p or len(gamma) != self.p:
            raise ValueError(f"level {self.p} needs {self.p} betas and gammas")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def level1(cls, beta, gamma):
        return cls(1, (beta,), (gamma,))


@dataclass(frozen=True)
class Level1Result:
    params: QaoaParams
    energy: float
    correlations: dict


class PairTerms:
    """Flattened neighbour couplings for a list of vertex pairs."""

    def __init__(self, inst: IsingInstance, pairs=None):
        inst.require_graph("level-1 correlations")
        nbr = [dict() for _ in range(inst.n)]
        for (u, v), w in inst.edges:
            nbr[u][v] = w
            nbr[v][u] = w
        if pairs is None:
            pairs = [e for e, _ in inst.edges]
        self.pairs = [tuple(sorted(pq)) for pq in pairs]
        a, b, ptr, juv = [], [], [0], []
        for u, v in self.pairs:
            if u == v:
                raise ValueError("pair must have distinct vertices")
            for p in sorted((nbr[u].keys() | nbr[v].keys()) - {u, v}):
                a.append(nbr[u].get(p, 0.0))
                b.append(nbr[v].get(p, 0.0))
            # zero coupling keeps every segment non-empty
            a.append(0.0)
            b.append(0.0)
            ptr.append(len(a))
            juv.append(nbr[u].get(v, 0.0))
        self.a = np.array(a, dtype=np.float64)
        self.b = np.array(b, dtype=np.float64)
        self.ptr = np.array(ptr, dtype=np.int64)
        self.juv = np.array(juv, dtype=np.float64)

    def terms(self, gammas):
        return kernels.level1_terms(np.atleast_1d(np.asarray(gammas, dtype=np.float64)),
                                    self.a, self.b, self.ptr, self.juv)

    def zz(self, beta, gamma) -> np.ndarray:
        A, B = self.terms(gamma)
        c, s = math.cos(2 * beta), math.sin(2 * beta)
        return s * s * A[0] + c * s * B[0]


def level1_zz(inst: IsingInstance, u: int, v: int, beta: float, gamma: float) -> float:
    """``<Z_u Z_v>`` on the level-1 QAOA state of a graph instance."""
    return float(PairTerms(inst, [(u, v)]).zz(beta, gamma)[0])


def level1_correlations(inst: IsingInstance, beta: float, gamma: float, pairs=None) -> dict:
    """Map each pair (default: every edge) to its level-1 ``<Z_u Z_v>``."""
    terms = PairTerms(inst, pairs)
    if not terms.pairs:
        return {}
    return dict(zip(terms.pairs, terms.zz(beta, gamma).tolist()))


def level1_energy(inst: IsingInstance, beta: float, gamma: float) -> float:
    """Expected cost ``constant + sum_e J_e <Z(e)>`` at level 1."""
    if inst.m == 0:
        return inst.constant
    zz = PairTerms(inst).zz(beta, gamma)
    return inst.constant + float(inst.weight_array() @ zz)


def pattern_search(f, x0, step, tol=1e-10, max_iter=200):
    """Compass search maximizing ``f`` from ``x0``.

    Polls ``+-step`` along every coordinate, moves to the best strict
    improvement, and halves the step when none exists. Stops when the step
    drops below ``tol`` or after ``max_iter`` polls.
    """
    x = np.array(x0, dtype=np.float64)
    fx = f(x)
    for _ in range(max_iter):
        if step < tol:
            break
        best_val, best_x = fx, None
        for i in range(x.size):
            for sign in (1.0, -1.0):
                y = x.copy()
                y[i] += sign * step
                fy = f(y)
                if fy > best_val:
                    best_val, best_x = fy, y
        if best_x is None:
            step /= 2
        else:
            x, fx = best_x, best_val
    return x, fx


def _integer_weights(inst):
    return all(float(w).is_integer() for _, w in inst.edges)


def optimize_level1(inst: IsingInstance, grid: int = 64, refine_iters: int = 200,
                    tol: float = 1e-10) -> Level1Result:
    """Maximize the level-1 energy over ``(beta, gamma)``.

    A ``grid x grid`` scan of ``beta in [0, pi)`` and ``gamma in [0, pi)``
    (``[0, 2 pi)`` unless all weights are integers) is followed by pattern
    search from the best grid point, with initial step equal to the grid
    spacing. Grid ties go to the smallest ``(beta index, gamma index)``.
    """
    terms = PairTerms(inst)
    if not terms.pairs:
        return Level1Result(QaoaParams.level1(0.0, 0.0), inst.constant, {})
    J = inst.weight_array()
    gamma_span = math.pi if _integer_weights(inst) else 2 * math.pi
    betas = np.arange(grid) * (math.pi / grid)
    gammas = np.arange(grid) * (gamma_span / grid)

    A, B = terms.terms(gammas)
    sa, sb = A @ J, B @ J
    c, s = np.cos(2 * betas), np.sin(2 * betas)
    table = inst.constant + np.outer(s * s, sa) + np.outer(c * s, sb)
    ib, ig = np.unravel_index(int(np.argmax(table)), table.shape)

    cache = {}

    def energy(x):
        beta, gamma = float(x[0]), float(x[1])
        if gamma not in cache:
            Ag, Bg = terms.terms(gamma)
            cache[gamma] = (float(Ag[0] @ J), float(Bg[0] @ J))
        ga, gb = cache[gamma]
        cb, sb_ = math.cos(2 * beta), math.sin(2 * beta)
        return inst.constant + sb_ * sb_ * ga + cb * sb_ * gb

    x, fx = pattern_search(energy, (betas[ib], gammas[ig]), math.pi / grid,
                           tol=tol, max_iter=refine_iters)
    beta, gamma = float(x[0]), float(x[1])
    corr = dict(zip(terms.pairs, terms.zz(beta, gamma).tolist()))
    return Level1Result(QaoaParams.level1(beta, gamma), float(fx), corr)
