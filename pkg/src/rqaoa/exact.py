"""Classical baselines: exhaustive maximization, local search, and the
1-local rule for frustration-free rings."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .exceptions import CapacityError, UnsupportedInstanceError
from .model import IsingInstance, as_spins, evaluate, spins_from_bits, spins_from_index

__all__ = [
    "DEFAULT_CAP",
    "ExactResult",
    "brute_force_max",
    "local_search_max",
    "ring_couplings",
    "one_local_ring_algorithm",
]

log = logging.getLogger(__name__)

DEFAULT_CAP = 26


@dataclass(frozen=True)
class ExactResult:
    max_energy: float
    argmax: np.ndarray
    states_visited: int


def brute_force_max(inst: IsingInstance, cap: int = DEFAULT_CAP) -> ExactResult:
    """Exact maximum over all ``2**n`` assignments in reflected Gray-code order.

    The returned ``argmax`` is the first maximizer in that order, and
    ``max_energy`` is re-evaluated on it so the two agree exactly.
    """
    if inst.n > cap:
        raise CapacityError(f"n={inst.n} exceeds the brute-force cap of {cap}")
    if inst.n > DEFAULT_CAP:
        log.warning("exhaustive search over 2**%d states will be slow", inst.n)
    indptr, indices = inst.incidence()
    _, state, visited = kernels.gray_code_max(
        inst.n, inst.masks(), inst.weight_array(), inst.constant, indptr, indices)
    x = spins_from_index(int(state), inst.n)
    return ExactResult(evaluate(inst, x), x, int(visited))


def local_search_max(inst: IsingInstance, restarts: int = 100, seed=0) -> float:
    """Best energy over steepest-ascent single-flip searches from random starts.

    Only strictly improving flips are taken.
    """
    if inst.n == 0 or inst.m == 0:
        return inst.constant
    rng = np.random.default_rng(seed)
    weights = inst.weight_array()
    incidence = np.zeros((inst.n, inst.m))
    for k, (e, _) in enumerate(inst.edges):
        incidence[list(e), k] = 1.0
    members = [np.array(e) for e, _ in inst.edges]
    best = -np.inf
    for _ in range(restarts):
        x = rng.choice(np.array([-1, 1], dtype=np.int8), size=inst.n)
        terms = weights * np.array([np.prod(x[e]) for e in members])
        while True:
            gain = -2.0 * (incidence @ terms)
            v = int(np.argmax(gain))
            if gain[v] <= 1e-12:
                break
            x[v] = -x[v]
            hit = incidence[v] > 0
            terms[hit] = -terms[hit]
        best = max(best, evaluate(inst, x))
    return float(best)


def ring_couplings(inst: IsingInstance) -> np.ndarray:
    """Couplings ``J_k`` of edge ``{k, k+1 mod n}`` for a +-1 ring instance."""
    n = inst.n
    if n < 3 or inst.m != n:
        raise UnsupportedInstanceError("not a ring")
    J = np.empty(n)
    for k in range(n):
        e = tuple(sorted((k, (k + 1) % n)))
        if e not in inst:
            raise UnsupportedInstanceError(f"ring edge {e} missing")
        J[k] = inst.weight(e)
    if not np.all(np.abs(J) == 1.0):
        raise UnsupportedInstanceError("ring couplings must be +1 or -1")
    return J


def one_local_ring_algorithm(inst: IsingInstance) -> np.ndarray:
    """Bit ``x_v = 1`` exactly when both couplings at ``v`` are -1; returned as spins."""
    J = ring_couplings(inst)
    bits = ((np.roll(J, 1) == -1) & (J == -1)).astype(np.int8)
    return as_spins(spins_from_bits(bits), inst.n)
