"""Instance generators and small-graph expansion diagnostics.

Randomness comes from ``numpy.random.Generator(PCG64(seed))``. For random
regular graphs the configuration model is sampled by shuffling the stub list
with ``Generator.permutation`` and pairing consecutive stubs; matchings with
self-loops or parallel edges are rejected and resampled. Couplings are drawn
afterwards from the same generator, one ``Generator.choice([-1, 1])`` per edge in
canonical edge order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import CapacityError, GenerationError, UnsupportedInstanceError
from .model import IsingInstance, as_spins, evaluate, max_cut_form

__all__ = [
    "GraphSpec",
    "parse_graph_spec",
    "generate",
    "ring",
    "appendix_d_ring",
    "appendix_d_gauge",
    "random_regular_edges",
    "cheeger_constant",
    "boundary_energy_identity_check",
]

MAX_RETRIES = 10_000
CHEEGER_CAP = 24

_COUPLINGS = ("all_plus_one", "uniform_pm_one", "from_spec")


@dataclass(frozen=True)
class GraphSpec:
    kind: str
    n: int
    seed: int = 0
    degree: int = 3
    coupling: str = ""
    s: tuple = ()

    def __post_init__(self):
        if not self.coupling:
            default = {"ring": "all_plus_one", "random_regular": "uniform_pm_one",
                       "appendix_d_ring": "from_spec"}.get(self.kind)
            object.__setattr__(self, "coupling", default)
        if self.coupling not in _COUPLINGS:
            raise ValueError(f"unknown coupling {self.coupling!r}")
        object.__setattr__(self, "s", tuple(int(b) for b in self.s))
        if self.kind == "ring":
            if self.n < 3:
                raise ValueError("ring needs n >= 3")
        elif self.kind == "random_regular":
            if (self.n * self.degree) % 2 or not 0 < self.degree < self.n:
                raise ValueError(f"no {self.degree}-regular simple graph on {self.n} vertices")
        elif self.kind == "appendix_d_ring":
            if self.n % 6 or len(self.s) != self.n // 3:
                raise ValueError("appendix_d_ring needs n divisible by 6 and |s| = n/3")
            if any(b not in (0, 1) for b in self.s):
                raise ValueError("s must be a bitstring")
        else:
            raise ValueError(f"unknown graph kind {self.kind!r}")

    def to_string(self) -> str:
        if self.kind == "ring":
            base = f"ring:n={self.n}"
            if self.coupling == "uniform_pm_one":
                base += f",J=pm1,seed={self.seed}"
            return base
        if self.kind == "random_regular":
            base = f"rr{self.degree}:n={self.n},seed={self.seed}"
            if self.coupling == "all_plus_one":
                base += ",J=+1"
            return base
        return f"appd:n={self.n},s={''.join(map(str, self.s))}"


def parse_graph_spec(text: str) -> GraphSpec:
    """Parse ``ring:n=24``, ``rr3:n=32,seed=7`` or ``appd:n=12,s=1001``.

    ``J=+1`` or ``J=pm1`` overrides the default couplings of ring and rr kinds.
    """
    head, _, tail = text.partition(":")
    opts = {}
    for item in filter(None, tail.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise ValueError(f"malformed option {item!r} in {text!r}")
        opts[key.strip()] = value.strip()
    coupling = {"+1": "all_plus_one", "1": "all_plus_one", "pm1": "uniform_pm_one",
                "": ""}[opts.pop("J", "")]
    n = int(opts.pop("n"))
    seed = int(opts.pop("seed", 0))
    if head == "ring":
        spec = GraphSpec("ring", n, seed, coupling=coupling)
    elif head.startswith("rr"):
        spec = GraphSpec("random_regular", n, seed, degree=int(head[2:] or 3), coupling=coupling)
    elif head == "appd":
        spec = GraphSpec("appendix_d_ring", n, seed, s=tuple(int(c) for c in opts.pop("s")))
    else:
        raise ValueError(f"unknown graph kind {head!r}")
    if opts:
        raise ValueError(f"unused options {sorted(opts)} in {text!r}")
    return spec


def ring(n: int, couplings=None) -> IsingInstance:
    """Cycle with coupling ``couplings[k]`` on edge ``{k, k+1 mod n}`` (default all +1)."""
    if couplings is None:
        couplings = np.ones(n)
    if len(couplings) != n:
        raise ValueError("need one coupling per ring edge")
    return IsingInstance(n, [((k, (k + 1) % n), float(couplings[k])) for k in range(n)])


def appendix_d_ring(s) -> IsingInstance:
    """Ring with ``J_{3a} = J_{3a+1} = (-1)**s_a`` and ``J_{3a+2} = 1``."""
    n = 3 * len(s)
    J = np.ones(n)
    for a, bit in enumerate(s):
        J[3 * a] = J[3 * a + 1] = (-1) ** int(bit)
    return ring(n, J)


def appendix_d_gauge(s) -> list:
    """Vertices whose flip maps :func:`appendix_d_ring` back to the all-+1 ring."""
    return [3 * a + 1 for a, bit in enumerate(s) if bit]


def random_regular_edges(n: int, d: int, rng) -> list:
    stubs = np.repeat(np.arange(n), d)
    for _ in range(MAX_RETRIES):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        pairs.sort(axis=1)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        if len({(int(u), int(v)) for u, v in pairs}) != len(pairs):
            continue
        return sorted((int(u), int(v)) for u, v in pairs)
    raise GenerationError(f"no simple {d}-regular matching on {n} vertices", MAX_RETRIES)


def generate(spec: GraphSpec) -> IsingInstance:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if spec.kind == "appendix_d_ring":
        inst = appendix_d_ring(spec.s)
        if spec.coupling == "from_spec":
            return inst
        edges = [e for e, _ in inst.edges]
    elif spec.kind == "ring":
        edges = sorted(tuple(sorted((k, (k + 1) % spec.n))) for k in range(spec.n))
    else:
        edges = random_regular_edges(spec.n, spec.degree, rng)
    if spec.coupling == "uniform_pm_one":
        J = rng.choice(np.array([-1.0, 1.0]), size=len(edges))
    else:
        J = np.ones(len(edges))
    return IsingInstance(spec.n, list(zip(edges, J.tolist())))


def _subset_chunks(n, chunk=1 << 18):
    total = 1 << n
    for start in range(1, total, chunk):
        yield np.arange(start, min(start + chunk, total), dtype=np.uint64)


def cheeger_constant(inst: IsingInstance) -> float:
    """``min |boundary(S)| / |S|`` over non-empty ``S`` with ``|S| <= n/2``, by enumeration."""
    inst.require_graph("cheeger_constant")
    if inst.n > CHEEGER_CAP:
        raise CapacityError(f"n={inst.n} exceeds the Cheeger enumeration cap of {CHEEGER_CAP}")
    if inst.n < 2:
        raise ValueError("need at least two vertices")
    masks = inst.masks()
    best = np.inf
    for subsets in _subset_chunks(inst.n):
        size = np.bitwise_count(subsets)
        keep = size <= inst.n // 2
        subsets, size = subsets[keep], size[keep]
        boundary = np.zeros(subsets.shape[0], dtype=np.int64)
        for mask in masks:
            boundary += (np.bitwise_count(subsets & mask) == 1)
        if subsets.size:
            best = min(best, float(np.min(boundary / size)))
    return best


def boundary_energy_identity_check(inst: IsingInstance, x) -> tuple[float, float]:
    """MaxCut energy of ``x`` and the edge-boundary size of its support.

    ``inst`` is either an all-+1 graph or its MaxCut form. The support of
    ``x`` is the set of vertices with spin -1 (bit 1).
    """
    inst.require_graph("boundary_energy_identity_check")
    weights = {w for _, w in inst.edges}
    if weights <= {1.0} and inst.constant == 0.0:
        cut = max_cut_form(inst)
    elif weights <= {-0.5} and inst.constant == inst.m / 2:
        cut = inst
    else:
        raise UnsupportedInstanceError("identity holds only for unit-coupling MaxCut")
    x = as_spins(x, inst.n)
    support = set(np.flatnonzero(x == -1).tolist())
    boundary = sum(1 for e, _ in inst.edges if len(support.intersection(e)) == 1)
    return evaluate(cut, x), float(boundary)

