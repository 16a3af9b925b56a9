"""Correlation rounding, variable elimination and the recursive QAOA loop.

Imposing ``x(f) = sigma`` for a hyperedge ``f`` containing ``v`` lets every
term ``J_e x(e)`` with ``v in e`` be rewritten as ``sigma J_e x(e ^ f)`` (``^`` is
symmetric difference), which no longer mentions ``x_v``. The reduced problem
has the same maximum as the constrained original, and a reduced solution is
lifted back with ``x_v = sigma * x(f - {v})``.

Vertices above ``v`` are relabelled down by one after each elimination, so a
record's ``f`` and ``v`` are expressed in the labels of the instance it was
applied to.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from . import analytic, statevector
from .exact import DEFAULT_CAP, brute_force_max
from .exceptions import DimensionError, RoundingError
from .model import IsingInstance, as_spins, evaluate

__all__ = [
    "EliminationRecord",
    "ReconstructionMap",
    "OptimizerConfig",
    "RqaoaResult",
    "eliminate_variable",
    "choose_rounding",
    "correlations",
    "reconstruct",
    "rqaoa",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EliminationRecord:
    f: tuple
    v: int
    sigma: int
    m_value: float = 0.0
    n_before: int = 0

    def __post_init__(self):
        if self.v not in self.f:
            raise ValueError(f"eliminated vertex {self.v} not in {self.f}")
        if self.sigma not in (1, -1):
            raise ValueError("sigma must be +1 or -1")


@dataclass
class ReconstructionMap:
    """Stack of eliminations, oldest first."""

    records: list = field(default_factory=list)

    def push(self, record: EliminationRecord):
        self.records.append(record)

    def __len__(self):
        return len(self.records)


def _relabel(vertices, v):
    return tuple(w - 1 if w > v else w for w in vertices)


def eliminate_variable(inst: IsingInstance, f, v: int, sigma: int) -> IsingInstance:
    """Impose ``x(f) = sigma`` and remove vertex ``v`` from the instance.

    The result has ``n - 1`` vertices numbered contiguously (labels above
    ``v`` shift down by one).
    """
    f = tuple(sorted(int(w) for w in f))
    if v not in f:
        raise ValueError(f"vertex {v} is not in {f}")
    if f not in inst:
        raise ValueError(f"{f} is not a hyperedge of the instance")
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    fset = set(f)
    terms = []
    shift = 0.0
    for e, w in inst.edges:
        if v in e:
            e2 = tuple(sorted(fset.symmetric_difference(e)))
            if e2:
                terms.append((_relabel(e2, v), sigma * w))
            else:
                shift += sigma * w
        else:
            terms.append((_relabel(e, v), w))
    return IsingInstance(inst.n - 1, terms, inst.constant + shift)


def choose_rounding(corr: dict):
    """Pick ``(f, v, sigma)`` from a correlation table.

    ``f`` maximizes ``|M_f|`` with ties going to the smallest sorted vertex
    tuple, ``v`` is the smallest vertex of ``f`` and ``sigma = sign(M_f)``
    (``+1`` when ``M_f == 0``).
    """
    if not corr:
        raise RoundingError("empty correlation table")
    f = min(corr, key=lambda e: (-abs(corr[e]), tuple(sorted(e))))
    m = corr[f]
    if m == 0:
        log.warning("degenerate rounding: M_%s = 0, using sigma = +1", f)
    return tuple(sorted(f)), min(f), -1 if m < 0 else 1


def reconstruct(rmap: ReconstructionMap, x_reduced) -> np.ndarray:
    """Lift a reduced assignment through every recorded elimination."""
    x = list(as_spins(x_reduced))
    expected = rmap.records[-1].n_before - 1 if rmap.records else 0
    if expected > 0 and len(x) != expected:
        raise DimensionError(f"expected {expected} reduced spins, got {len(x)}")
    for rec in reversed(rmap.records):
        x.insert(rec.v, 1)
        prod = 1
        for w in rec.f:
            if w != rec.v:
                prod *= x[w]
        x[rec.v] = rec.sigma * prod
    return np.array(x, dtype=np.int8)


@dataclass(frozen=True)
class OptimizerConfig:
    """Angle-search settings. ``grid`` drives the closed-form level-1 path,
    ``sv_grid`` the statevector path."""

    grid: int = 64
    refine_iters: int = 200
    tol: float = 1e-10
    sv_grid: int = 16


@dataclass
class RqaoaResult:
    assignment: np.ndarray
    energy: float
    trace: list
    rmap: ReconstructionMap
    reduced: IsingInstance

    def trace_jsonl(self) -> str:
        return "".join(json.dumps(row) + "\n" for row in self.trace)


def correlations(inst: IsingInstance, p: int = 1, config: OptimizerConfig = OptimizerConfig()):
    """Optimal QAOA angles, energy and ``{e: <Z(e)>}`` over the edges of ``inst``.

    Level 1 on graphs uses the closed form; anything else is simulated.
    """
    if p == 1 and inst.is_graph:
        res = analytic.optimize_level1(inst, config.grid, config.refine_iters, config.tol)
        return res.params, res.energy, res.correlations
    params, energy, state = statevector.optimize_statevector(
        inst, p, grid=config.sv_grid, refine_iters=config.refine_iters, tol=config.tol)
    corr = {e: statevector.expectation_zz(state, e) for e, _ in inst.edges}
    return params, energy, corr


def _solve_core(inst: IsingInstance, cap: int):
    """Brute force over the vertices that still appear in some hyperedge."""
    active = sorted({v for e, _ in inst.edges for v in e})
    index = {v: i for i, v in enumerate(active)}
    core = IsingInstance(len(active), [(tuple(index[v] for v in e), w) for e, w in inst.edges],
                         inst.constant)
    best = brute_force_max(core, cap=cap)
    x = np.ones(inst.n, dtype=np.int8)
    x[active] = best.argmax
    return x


def rqaoa(inst: IsingInstance, n_c: int, p: int = 1, config: OptimizerConfig = OptimizerConfig(),
          exact_cap: int = DEFAULT_CAP) -> RqaoaResult:
    """Recursive QAOA down to ``n_c`` variables, then exact search.

    Each round re-optimizes the QAOA angles from scratch, rounds the strongest
    correlation and eliminates one variable. If no hyperedge is left the loop
    stops early. The returned energy is evaluated on the original instance.
    """
    if not 1 <= n_c <= inst.n:
        raise ValueError(f"n_c={n_c} must lie in [1, {inst.n}]")
    rmap = ReconstructionMap()
    trace = []
    current = inst
    for round_ in range(inst.n - n_c):
        if current.m == 0:
            break
        params, energy, corr = correlations(current, p, config)
        f, v, sigma = choose_rounding(corr)
        rmap.push(EliminationRecord(f, v, sigma, corr[f], current.n))
        trace.append({
            "round": round_,
            "f": list(f),
            "v": v,
            "sigma": sigma,
            "m_value": corr[f],
            "beta": list(params.beta),
            "gamma": list(params.gamma),
            "energy_estimate": energy,
        })
        current = eliminate_variable(current, f, v, sigma)
    x = reconstruct(rmap, _solve_core(current, exact_cap))
    return RqaoaResult(x, evaluate(inst, x), trace, rmap, current)
