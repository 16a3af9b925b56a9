"""Dense statevector simulation of QAOA and GHZ-block circuits.

Basis index convention: bit ``j`` of an amplitude index is the computational
basis value of qubit ``j``; value 1 corresponds to spin -1.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .analytic import QaoaParams, pattern_search
from .exceptions import CapacityError
from .model import IsingInstance, max_cut_form

__all__ = [
    "MAX_QUBITS",
    "MAX_RANGE_QUBITS",
    "Statevector",
    "Circuit",
    "plus_state",
    "zero_state",
    "diagonal",
    "qaoa_circuit",
    "qaoa_state",
    "expectation_zz",
    "expectation_energy",
    "ghz_block_circuit",
    "ghz_block_state",
    "check_z2_symmetry",
    "check_range",
    "ring_of_disagrees",
    "ring_bound_sweep",
    "optimize_statevector",
    "sweep_level1",
]

MAX_QUBITS = 24
MAX_RANGE_QUBITS = 12


def _check_capacity(n, cap=MAX_QUBITS):
    if n > cap:
        raise CapacityError(f"{n} qubits exceeds the cap of {cap}")


@dataclass
class Statevector:
    n: int
    amps: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> "Statevector":
        return Statevector(self.n, self.amps.copy())

    def overlap(self, other: "Statevector") -> complex:
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: "Statevector") -> float:
        """``|<self|other>|``, insensitive to global phase."""
        return abs(self.overlap(other))


def plus_state(n: int) -> Statevector:
    _check_capacity(n)
    N = 1 << n
    return Statevector(n, np.full(N, 1 / math.sqrt(N), dtype=np.complex128))


def zero_state(n: int) -> Statevector:
    _check_capacity(n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return Statevector(n, amps)


def random_state(n: int, rng) -> Statevector:
    _check_capacity(n)
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return Statevector(n, v / np.linalg.norm(v))


def diagonal(inst: IsingInstance) -> np.ndarray:
    """Cost value of every basis state."""
    _check_capacity(inst.n)
    return kernels.diagonal(inst.n, inst.masks(), inst.weight_array(), inst.constant)


def _probs(amps):
    return amps.real ** 2 + amps.imag ** 2


@functools.lru_cache(maxsize=256)
def _zz_signs(n, mask):
    idx = np.arange(1 << n, dtype=np.uint64)
    out = 1.0 - 2.0 * (np.bitwise_count(idx & np.uint64(mask)) & np.uint64(1))
    out.flags.writeable = False
    return out


class Circuit:
    """A gate list acting on ``n`` qubits, applicable forwards and inverted.

    Gates are tuples:
    ``("rx", q, t)`` is ``exp(-i t X_q)``; ``("rzz", a, b, t)`` is
    ``exp(-i t Z_a Z_b)``; ``("cz", a, b)``; ``("x", q)``; ``("h", q)``;
    ``("mixer", beta)`` is ``exp(i beta sum_j X_j)``; ``("phase", diag, g)`` is
    ``exp(i g diag)``; ``("global", t)`` is the scalar ``exp(i t)``.
    """

    def __init__(self, n: int, gates=None):
        self.n = n
        self.gates = list(gates or [])

    def add(self, *gate):
        self.gates.append(gate)
        return self

    def __len__(self):
        return len(self.gates)

    def apply(self, state: Statevector, inverse: bool = False) -> Statevector:
        out = state.copy()
        gates = reversed(self.gates) if inverse else self.gates
        for gate in gates:
            _apply_gate(out, gate, -1.0 if inverse else 1.0)
        return out


def _pair_view(amps, q):
    return amps.reshape(-1, 2, 1 << q)


def _apply_gate(state, gate, sign):
    amps, n = state.amps, state.n
    kind = gate[0]
    if kind == "rx":
        _, q, t = gate
        v = _pair_view(amps, q)
        c, s = math.cos(sign * t), -1j * math.sin(sign * t)
        lo = v[:, 0, :].copy()
        v[:, 0, :] = c * lo + s * v[:, 1, :]
        v[:, 1, :] = s * lo + c * v[:, 1, :]
    elif kind == "mixer":
        kernels.apply_mixer(amps, n, sign * gate[1])
    elif kind == "x":
        v = _pair_view(amps, gate[1])
        v[:, [0, 1], :] = v[:, [1, 0], :]
    elif kind == "h":
        v = _pair_view(amps, gate[1])
        lo = v[:, 0, :].copy()
        v[:, 0, :] = (lo + v[:, 1, :]) / math.sqrt(2)
        v[:, 1, :] = (lo - v[:, 1, :]) / math.sqrt(2)
    elif kind == "cz":
        _, a, b = gate
        idx = np.arange(1 << n)
        amps[((idx >> a) & 1) & ((idx >> b) & 1) == 1] *= -1
    elif kind == "rzz":
        _, a, b, t = gate
        signs = _zz_signs(n, (1 << a) | (1 << b))
        amps *= np.exp(-1j * sign * t * signs)
    elif kind == "phase":
        _, diag, g = gate
        kernels.apply_phase(amps, diag, sign * g)
    elif kind == "global":
        amps *= np.exp(1j * sign * gate[1])
    else:
        raise ValueError(f"unknown gate {kind!r}")


def qaoa_circuit(inst: IsingInstance, params: QaoaParams) -> Circuit:
    """Gate list of ``prod_m exp(i beta_m B) exp(i gamma_m C)``."""
    diag = diagonal(inst)
    circ = Circuit(inst.n)
    for b, g in zip(params.beta, params.gamma):
        circ.add("phase", diag, g)
        circ.add("mixer", b)
    return circ


def _evolve(diag, n, params: QaoaParams) -> Statevector:
    state = plus_state(n)
    for b, g in zip(params.beta, params.gamma):
        kernels.apply_phase(state.amps, diag, g)
        kernels.apply_mixer(state.amps, n, b)
    return state


def qaoa_state(inst: IsingInstance, params: QaoaParams) -> Statevector:
    """Level-``p`` QAOA state starting from ``|+^n>``; hyperedges of any size."""
    _check_capacity(inst.n)
    return _evolve(diagonal(inst), inst.n, params)


def expectation_zz(state: Statevector, e) -> float:
    """``<Z(e)>`` for a vertex set ``e``."""
    mask = 0
    for v in e:
        if not 0 <= v < state.n:
            raise ValueError(f"qubit {v} out of range")
        mask ^= 1 << v
    probs = _probs(state.amps)
    if mask == 0:
        return float(probs.sum())
    return float(probs @ _zz_signs(state.n, mask))


def expectation_energy(state: Statevector, inst: IsingInstance) -> float:
    """``constant + sum_e J_e <Z(e)>``."""
    probs = _probs(state.amps)
    total = inst.constant
    for mask, w in zip(inst.masks(), inst.weight_array()):
        total += w * float(probs @ _zz_signs(state.n, int(mask)))
    return float(total)


def expectation_diag(state: Statevector, diag) -> float:
    return float((_probs(state.amps)) @ diag)


def ghz_block_circuit(n: int, R: int, flip: bool = True) -> Circuit:
    """Range-``R`` circuit preparing GHZ states on consecutive blocks of ``2R+1`` qubits.

    Each block with centre ``c`` gets ``RZ_{c,t} = e^{-i pi/4} exp(-i pi/4 Z_c Z_t)``
    for every other block qubit ``t``, then ``exp(-i pi/4 X_t)`` on those
    qubits. With ``flip`` set, ``X`` is appended on every even qubit.
    """
    width = 2 * R + 1
    if R < 0 or n % width:
        raise ValueError(f"n={n} is not a multiple of the block size {width}")
    if flip and n % 2:
        raise ValueError(f"n={n} must be even for the alternating flip layer")
    circ = Circuit(n)
    for start in range(0, n, width):
        c = start + R
        others = [t for t in range(start, start + width) if t != c]
        for t in others:
            circ.add("global", -math.pi / 4)
            circ.add("rzz", c, t, math.pi / 4)
        for t in others:
            circ.add("rx", t, math.pi / 4)
    if flip:
        for q in range(0, n, 2):
            circ.add("x", q)
    return circ


def ghz_block_state(n: int, R: int, flip: bool = True) -> Statevector:
    _check_capacity(n)
    return ghz_block_circuit(n, R, flip).apply(plus_state(n))


def check_z2_symmetry(state: Statevector) -> float:
    """``|<psi| X^{(x)n} |psi>|``; equals 1 for eigenstates of the global flip."""
    # complementing every bit reverses the index order
    return abs(complex(np.vdot(state.amps, state.amps[::-1])))


def _ring_distance(j, k, n):
    d = abs(j - k) % n
    return min(d, n - d)


def check_range(n: int, R: int, circuit: Circuit, n_states: int = 2, seed: int = 0,
                atol: float = 1e-9) -> bool:
    """Whether ``U^dag Z_j U`` commutes with ``X_k`` and ``Z_k`` whenever the
    ring distance between ``j`` and ``k`` exceeds ``R``.

    Commutators are probed on ``n_states`` random states.
    """
    _check_capacity(n, MAX_RANGE_QUBITS)
    rng = np.random.default_rng(seed)
    states = [random_state(n, rng) for _ in range(n_states)]

    def conj_z(j, psi):
        phi = circuit.apply(psi)
        phi.amps *= _zz_signs(n, 1 << j)
        return circuit.apply(phi, inverse=True)

    def pauli(kind, k, psi):
        out = psi.copy()
        if kind == "x":
            _apply_gate(out, ("x", k), 1.0)
        else:
            out.amps *= _zz_signs(n, 1 << k)
        return out

    for j in range(n):
        far = [k for k in range(n) if _ring_distance(j, k, n) > R]
        for k in far:
            for kind in ("x", "z"):
                for psi in states:
                    lhs = conj_z(j, pauli(kind, k, psi)).amps
                    rhs = pauli(kind, k, conj_z(j, psi)).amps
                    if np.linalg.norm(lhs - rhs) > atol:
                        return False
    return True


def ring_of_disagrees(n: int) -> IsingInstance:
    """MaxCut form ``(1/2) sum_j (1 - Z_j Z_{j+1})`` on the cycle."""
    ring = IsingInstance(n, [((j, (j + 1) % n), 1.0) for j in range(n)])
    return max_cut_form(ring)


def sweep_level1(diag, n, grid, gamma_span):
    """Level-1 energies on a ``grid x grid`` box ``beta in [0, pi)``, ``gamma in [0, gamma_span)``.

    Returns ``(betas, gammas, values)`` with ``values[beta index, gamma index]``.
    """
    betas = np.arange(grid) * (math.pi / grid)
    gammas = np.arange(grid) * (gamma_span / grid)
    values = np.empty((grid, grid))
    base = plus_state(n).amps
    for ig, g in enumerate(gammas):
        phased = base.copy()
        kernels.apply_phase(phased, diag, g)
        for ib, b in enumerate(betas):
            amps = phased.copy()
            kernels.apply_mixer(amps, n, b)
            values[ib, ig] = _probs(amps) @ diag
    return betas, gammas, values


def optimize_statevector(inst: IsingInstance, p: int = 1, grid: int = 16,
                         refine_iters: int = 200, tol: float = 1e-10):
    """Maximize the level-``p`` QAOA energy by simulation.

    Level 1 scans a ``grid x grid`` box then refines by pattern search. Higher
    levels grow the schedule one layer at a time: the optimal level-``q``
    angles are linearly interpolated to ``q+1`` layers and refined.
    Returns ``(params, energy, state)``.
    """
    _check_capacity(inst.n)
    diag = diagonal(inst)
    integer = all(float(w).is_integer() for _, w in inst.edges)
    span = math.pi if integer else 2 * math.pi
    betas, gammas, values = sweep_level1(diag, inst.n, grid, span)
    ib, ig = np.unravel_index(int(np.argmax(values)), values.shape)
    x0 = np.array([betas[ib], gammas[ig]])

    def energy_of(x):
        q = x.size // 2
        st = _evolve(diag, inst.n, QaoaParams(q, x[:q], x[q:]))
        return expectation_diag(st, diag)

    x, fx = pattern_search(energy_of, x0, math.pi / grid, tol=tol, max_iter=refine_iters)
    for q in range(2, p + 1):
        prev_b, prev_g = x[: q - 1], x[q - 1:]
        t_old = np.linspace(0, 1, q - 1) if q > 2 else np.array([0.5])
        t_new = np.linspace(0, 1, q)
        b0 = np.interp(t_new, t_old, prev_b)
        g0 = np.interp(t_new, t_old, prev_g)
        x, fx = pattern_search(energy_of, np.concatenate([b0, g0]), math.pi / grid,
                               tol=tol, max_iter=refine_iters)
    params = QaoaParams(p, x[:p], x[p:])
    return params, float(fx), _evolve(diag, inst.n, params)


def ring_bound_sweep(n: int, p: int = 1, grid: int = 64, refine_iters: int = 200) -> float:
    """Best energy per site of level-``p`` QAOA on the ring of disagrees.

    ``p = 0`` is the bare ``|+^n>`` state. ``p = 1`` is an exhaustive
    ``grid x grid`` scan of ``beta in [0, pi)``, ``gamma in [0, 2 pi)`` (the
    MaxCut couplings are half-integers). ``p >= 2`` uses the layer-growing
    optimizer seeded from the level-1 scan, so it is a lower estimate of the
    true level-``p`` optimum.
    """
    if n % 2 or n > 16:
        raise ValueError("ring sweep needs an even n <= 16")
    inst = ring_of_disagrees(n)
    diag = diagonal(inst)
    if p == 0:
        return expectation_diag(plus_state(n), diag) / n
    if p == 1:
        _, _, values = sweep_level1(diag, n, grid, 2 * math.pi)
        return float(values.max()) / n
    _, energy, _ = optimize_statevector(inst, p, grid=min(grid, 32), refine_iters=refine_iters)
    return energy / n
