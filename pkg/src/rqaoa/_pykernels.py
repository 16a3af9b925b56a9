"""NumPy implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable or when
``RQAOA_PURE_PYTHON`` is set. Signatures match the Cython module exactly.
"""

import numpy as np

_CHUNK = 1 << 18


def _energies(states, masks, weights, constant):
    out = np.full(states.shape[0], constant, dtype=np.float64)
    for mask, w in zip(masks, weights):
        parity = np.bitwise_count(states & mask) & np.uint64(1)
        out += w * (1.0 - 2.0 * parity)
    return out


def gray_code_max(n, masks, weights, constant, indptr, indices):
    """Maximum of the cost over all ``2**n`` spin states, visited in Gray-code order.

    Returns ``(best_energy, best_state, visited)`` where ``best_state`` is the
    bit pattern of the first maximizer in enumeration order.
    """
    masks = np.asarray(masks, dtype=np.uint64)
    weights = np.asarray(weights, dtype=np.float64)
    total = 1 << n
    best, best_state = -np.inf, 0
    for start in range(0, total, _CHUNK):
        k = np.arange(start, min(start + _CHUNK, total), dtype=np.uint64)
        states = k ^ (k >> np.uint64(1))
        energies = _energies(states, masks, weights, constant)
        i = int(np.argmax(energies))
        if energies[i] > best:
            best, best_state = float(energies[i]), int(states[i])
    return best, best_state, total


def diagonal(n, masks, weights, constant):
    """Cost value of every basis state in natural index order."""
    masks = np.asarray(masks, dtype=np.uint64)
    weights = np.asarray(weights, dtype=np.float64)
    total = 1 << n
    out = np.empty(total, dtype=np.float64)
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        states = np.arange(start, stop, dtype=np.uint64)
        out[start:stop] = _energies(states, masks, weights, constant)
    return out


def apply_phase(amps, diag, gamma):
    amps *= np.exp(1j * gamma * diag)


def apply_mixer(amps, n, beta):
    """Apply ``exp(i beta X)`` to every qubit in place."""
    c, s = np.cos(beta), 1j * np.sin(beta)
    for q in range(n):
        view = amps.reshape(-1, 2, 1 << q)
        lo = view[:, 0, :].copy()
        hi = view[:, 1, :]
        view[:, 0, :] = c * lo + s * hi
        view[:, 1, :] = s * lo + c * hi


def level1_terms(gammas, a, b, ptr, juv):
    """Per-pair level-1 correlation coefficients on a batch of angles.

    For pair ``k`` with neighbour couplings ``a[i], b[i]`` (``ptr[k] <= i < ptr[k+1]``)
    returns ``A[g, k] = (prod cos 2g(a-b) - prod cos 2g(a+b)) / 2`` and
    ``B[g, k] = sin(2 g juv[k]) (prod cos 2g a + prod cos 2g b)``.
    Every segment must be non-empty (callers pad with a zero coupling).
    """
    g = 2.0 * np.asarray(gammas, dtype=np.float64)[:, None]
    starts = np.asarray(ptr[:-1])
    pm = np.multiply.reduceat(np.cos(g * (a - b)), starts, axis=1)
    pp = np.multiply.reduceat(np.cos(g * (a + b)), starts, axis=1)
    pu = np.multiply.reduceat(np.cos(g * a), starts, axis=1)
    pv = np.multiply.reduceat(np.cos(g * b), starts, axis=1)
    A = 0.5 * (pm - pp)
    B = np.sin(g * juv) * (pu + pv)
    return A, B
