"""Ising-type cost functions on hypergraphs.

An :class:`IsingInstance` stores ``C(x) = constant + sum_e J_e prod_{v in e} x_v``
over spins ``x_v in {+1, -1}``. Hyperedges are kept as sorted vertex tuples in
canonical (lexicographic) order; duplicates are merged by summing weights and
zero weights are dropped. The empty hyperedge is folded into ``constant``.

Bitstrings map to spins via ``bit b -> (-1)**b``.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .exceptions import ArityError, DimensionError, ParityError

__all__ = [
    "IsingInstance",
    "as_spins",
    "spins_from_bits",
    "bits_from_spins",
    "evaluate",
    "max_cut_form",
    "apply_gauge",
    "coupling_parity",
    "depth_bound",
    "corollary1_bound",
]


def _canonical_edges(n, terms):
    merged = defaultdict(float)
    constant = 0.0
    for verts, weight in terms:
        # x_v**2 == 1, so repeated vertices cancel in pairs
        counts = defaultdict(int)
        for v in verts:
            v = int(v)
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
            counts[v] += 1
        key = tuple(sorted(v for v, c in counts.items() if c % 2))
        if key:
            merged[key] += float(weight)
        else:
            constant += float(weight)
    edges = tuple((e, w) for e, w in sorted(merged.items()) if w != 0.0)
    return edges, constant


@dataclass(frozen=True)
class IsingInstance:
    """Weighted hypergraph cost function on ``n`` spins.

    ``edges`` may be given as any iterable of ``(vertices, weight)`` pairs;
    it is canonicalized on construction.
    """

    n: int
    edges: tuple = ()
    constant: float = 0.0
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        edges, shift = _canonical_edges(self.n, self.edges)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "constant", float(self.constant) + shift)
        object.__setattr__(self, "_index", {e: w for e, w in edges})

    @classmethod
    def from_couplings(cls, n, couplings, constant=0.0):
        """Build a graph instance from a ``{(u, v): J}`` mapping."""
        return cls(n, [(tuple(k), w) for k, w in dict(couplings).items()], constant)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> dict:
        return dict(self._index)

    def weight(self, e) -> float:
        return self._index.get(tuple(sorted(e)), 0.0)

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self._index

    @property
    def max_arity(self) -> int:
        return max((len(e) for e, _ in self.edges), default=0)

    @property
    def is_graph(self) -> bool:
        return all(len(e) == 2 for e, _ in self.edges)

    def require_graph(self, what="operation"):
        bad = [e for e, _ in self.edges if len(e) != 2]
        if bad:
            raise ArityError(f"{what} supports only size-2 hyperedges, got {bad[0]}")

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for e, _ in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def coupling_matrix(self) -> np.ndarray:
        """Dense symmetric ``n x n`` matrix of pair couplings (graphs only)."""
        self.require_graph("coupling_matrix")
        J = np.zeros((self.n, self.n))
        for (u, v), w in self.edges:
            J[u, v] = J[v, u] = w
        return J

    def masks(self) -> np.ndarray:
        """Bit mask of every hyperedge, in edge order (bit j = vertex j)."""
        return np.array([sum(1 << v for v in e) for e, _ in self.edges], dtype=np.uint64)

    def weight_array(self) -> np.ndarray:
        return np.array([w for _, w in self.edges], dtype=np.float64)

    def incidence(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR vertex-to-edge incidence as ``(indptr, indices)``."""
        rows = [[] for _ in range(self.n)]
        for k, (e, _) in enumerate(self.edges):
            for v in e:
                rows[v].append(k)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(r) for r in rows])
        indices = np.array([k for r in rows for k in r], dtype=np.int64)
        return indptr, indices

    def with_edges(self, terms, constant=None) -> "IsingInstance":
        return IsingInstance(self.n, terms, self.constant if constant is None else constant)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": [[list(e), w] for e, w in self.edges],
            "constant": self.constant,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data) -> "IsingInstance":
        return cls(int(data["n"]), [(tuple(e), float(w)) for e, w in data["edges"]],
                   float(data.get("constant", 0.0)))

    @classmethod
    def from_json(cls, text) -> "IsingInstance":
        return cls.from_dict(json.loads(text))


def as_spins(x, n=None) -> np.ndarray:
    """Validate ``x`` as a +-1 vector, optionally of length ``n``."""
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise DimensionError("spin assignment must be one-dimensional")
    if n is not None and arr.shape[0] != n:
        raise DimensionError(f"expected {n} spins, got {arr.shape[0]}")
    if not np.all((arr == 1) | (arr == -1)):
        raise ValueError("spins must be +1 or -1")
    return arr.astype(np.int8)


def spins_from_bits(bits) -> np.ndarray:
    b = np.asarray(bits, dtype=np.int64)
    return (1 - 2 * b).astype(np.int8)


def bits_from_spins(x) -> np.ndarray:
    return ((1 - np.asarray(x, dtype=np.int64)) // 2).astype(np.int8)


def spins_from_index(index: int, n: int) -> np.ndarray:
    """Spins of a basis-state index (bit j of ``index`` is vertex j)."""
    return spins_from_bits([(index >> j) & 1 for j in range(n)])


def evaluate(inst: IsingInstance, x) -> float:
    """Cost ``C(x)`` including the constant shift."""
    x = as_spins(x, inst.n)
    total = inst.constant
    for e, w in inst.edges:
        total += w * int(np.prod(x[list(e)]))
    return total


def max_cut_form(inst: IsingInstance) -> IsingInstance:
    """Return ``(m I - H) / 2`` for a graph instance ``H``.

    With unit couplings the result counts cut edges.
    """
    inst.require_graph("max_cut_form")
    return IsingInstance(inst.n, [(e, -w / 2) for e, w in inst.edges],
                         inst.constant + inst.m / 2)


def apply_gauge(inst: IsingInstance, flipped: Iterable[int]) -> IsingInstance:
    """Negate the spins in ``flipped``; each weight picks up ``(-1)**|e & L|``."""
    L = set(int(v) for v in flipped)
    if any(not 0 <= v < inst.n for v in L):
        raise ValueError("gauge mask contains an invalid vertex")
    terms = [(e, -w if len(L.intersection(e)) % 2 else w) for e, w in inst.edges]
    return IsingInstance(inst.n, terms, inst.constant)


def coupling_parity(inst: IsingInstance) -> int:
    """Product of all weights, which must each be exactly +1 or -1."""
    parity = 1
    for e, w in inst.edges:
        if w not in (1.0, -1.0):
            raise ParityError(f"weight {w} on {e} is not +-1")
        parity *= int(w)
    return parity


def depth_bound(D: int, p: int, bipartite_regular: bool = False) -> int:
    """Two-qubit-gate depth bound of a level-``p`` QAOA circuit on a degree-``D`` graph."""
    if D < 1 or p < 1:
        raise ValueError("D and p must be positive")
    return p * D if bipartite_regular else p * (D + 1)


def corollary1_bound(D: int) -> float:
    """Upper bound ``5/6 + sqrt(D-1)/(3D)`` on the level-p MaxCut ratio for D-regular expanders."""
    if D < 3:
        raise ValueError("bound is stated for D >= 3")
    return 5 / 6 + math.sqrt(D - 1) / (3 * D)
