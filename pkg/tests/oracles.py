"""Slow, independent reference implementations used as test oracles.

Nothing here imports the package's kernels or simulators: energies are summed
term by term over ``itertools.product`` and quantum states are built from dense
Kronecker products, so an error in the fast paths cannot hide behind a shared
helper.
"""

import itertools
import math

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def energy(edges, constant, x):
    total = constant
    for e, w in edges:
        total += w * math.prod(x[v] for v in e)
    return total


def all_spins(n):
    return itertools.product((1, -1), repeat=n)


def brute_max(n, edges, constant=0.0, constraint=None):
    """Maximum energy over all spin vectors satisfying ``constraint`` (if given)."""
    best = -math.inf
    for x in all_spins(n):
        if constraint is not None and not constraint(x):
            continue
        best = max(best, energy(edges, constant, x))
    return best


def _index_spins(n):
    # bit j of the basis index is qubit j; bit 1 <-> spin -1
    return [tuple(1 - 2 * ((k >> j) & 1) for j in range(n)) for k in range(1 << n)]


def kron_site(op, site, n):
    """``op`` acting on qubit ``site`` (qubit 0 is the least significant bit)."""
    out = np.array([[1.0 + 0j]])
    for q in reversed(range(n)):
        out = np.kron(out, op if q == site else I2)
    return out


def dense_qaoa_state(n, edges, constant, betas, gammas):
    spins = _index_spins(n)
    diag = np.array([energy(edges, constant, x) for x in spins])
    psi = np.full(1 << n, 2 ** (-n / 2), dtype=complex)
    for b, g in zip(betas, gammas):
        psi = np.exp(1j * g * diag) * psi
        u1 = math.cos(b) * I2 + 1j * math.sin(b) * X
        u = np.array([[1.0 + 0j]])
        for _ in range(n):
            u = np.kron(u, u1)
        psi = u @ psi
    return psi


def dense_zz(psi, n, e):
    op = np.eye(1 << n, dtype=complex)
    for v in e:
        op = op @ kron_site(Z, v, n)
    return float(np.real(np.vdot(psi, op @ psi)))


def ring_energy_per_site(psi, n):
    """Ring-of-disagrees MaxCut value ``sum_i (1 - Z_i Z_{i+1}) / 2`` divided by ``n``."""
    total = 0.0
    for i in range(n):
        total += 0.5 * (1 - dense_zz(psi, n, (i, (i + 1) % n)))
    return total / n


def cheeger(n, edges):
    best = math.inf
    for size in range(1, n // 2 + 1):
        for S in itertools.combinations(range(n), size):
            s = set(S)
            boundary = sum(1 for e in edges if len(s.intersection(e)) == 1)
            best = min(best, boundary / size)
    return best
