"""Determinantal measures on constrained spanning subgraphs.

Five variants are supported, all projection determinantal processes on the
edge set in the omega basis:

  ust        spanning trees, kernel = projection onto the exact forms
  connected  connected spanning subgraphs with first Betti number k; the
             projection subspace is (exact forms) + span(theta_1..theta_k)
             and the combinatorial weight of a subgraph K is
             x^K |det(theta_i(gamma_j))|^2 over an integral cycle basis of K
  forest     spanning forests with k+1 components; subspace is the part of
             the exact forms orthogonal to j_x(phi_1..phi_k), weight
             x^F |det((phi_i, kappa_j))|^2 over cuts separating components
  crsf       cycle-rooted spanning forests for a unit complex connection h;
             subspace is the range of the twisted differential, weight
             x^S prod_cycles |1 - holonomy|^2
  mixed      both constraints at once: k chains and l forms, samples have
             Euler characteristic k - l + 1 (no closed-form weight evaluator)
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import rng as _rng
from .dpp import ProjectionKernel, sample
from .errors import DegenerateForms
from .graph import (SubgraphMask, WeightedGraph, fundamental_cycle,
                    min_index_spanning_tree)
from .linalg import j_x_columns, orthonormalize, to_omega

VARIANTS = ("ust", "connected", "forest", "crsf", "mixed")


@dataclass(frozen=True, eq=False)
class MeasureSpec:
    """Declarative description of which determinantal measure to build."""

    variant: str
    k: int = 0
    l: int = 0
    theta: np.ndarray | None = None       # forms, num_edges x (k or l)
    phi: np.ndarray | None = None         # chains, num_edges x k
    connection: np.ndarray | None = None  # unit complex numbers per edge

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.k < 0 or self.l < 0:
            raise ValueError("k and l must be nonnegative")

    @staticmethod
    def ust() -> "MeasureSpec":
        return MeasureSpec("ust")

    @staticmethod
    def connected_k(theta: np.ndarray) -> "MeasureSpec":
        theta = np.asarray(theta, dtype=complex)
        if theta.ndim == 1:
            theta = theta[:, None]
        return MeasureSpec("connected", k=theta.shape[1], theta=theta)

    @staticmethod
    def forest_k(phi: np.ndarray) -> "MeasureSpec":
        phi = np.asarray(phi, dtype=complex)
        if phi.ndim == 1:
            phi = phi[:, None]
        return MeasureSpec("forest", k=phi.shape[1], phi=phi)

    @staticmethod
    def crsf(connection: np.ndarray) -> "MeasureSpec":
        return MeasureSpec("crsf", connection=np.asarray(connection, dtype=complex))

    @staticmethod
    def mixed(phi: np.ndarray, theta: np.ndarray) -> "MeasureSpec":
        phi = np.asarray(phi, dtype=complex)
        theta = np.asarray(theta, dtype=complex)
        return MeasureSpec("mixed", k=phi.shape[1], l=theta.shape[1],
                           phi=phi, theta=theta)

    def expected_rank(self, g: WeightedGraph) -> int:
        n = g.num_vertices
        if self.variant == "ust":
            return n - 1
        if self.variant == "connected":
            return n - 1 + self.k
        if self.variant == "forest":
            return n - 1 - self.k
        if self.variant == "crsf":
            return n
        return n - 1 - self.k + self.l


@dataclass(frozen=True)
class SubgraphWeight:
    """Weight of one subgraph: monomial part times topological factor."""

    value: float
    monomial: float
    topological: float


def _frame_exact_forms(g: WeightedGraph, x: np.ndarray) -> np.ndarray:
    return orthonormalize(to_omega(x, g.coboundary.astype(complex)))


def twisted_differential(g: WeightedGraph, connection: np.ndarray) -> np.ndarray:
    """Matrix of the covariant derivative for a connection, in e* coordinates.

    Column v over edges e: [head(e)=v] - h_e [tail(e)=v]; the trivial
    connection recovers the plain differential.
    """
    h = np.asarray(connection, dtype=complex)
    if h.shape != (g.num_edges,):
        raise ValueError("one connection value per edge required")
    if np.any(np.abs(np.abs(h) - 1.0) > 1e-12):
        raise ValueError("connection values must have unit modulus")
    m = np.zeros((g.num_edges, g.num_vertices), dtype=complex)
    for e, (t, hd) in enumerate(g.edges):
        m[e, hd] += 1.0
        m[e, t] -= h[e]
    return m


def _forest_core_frame(g: WeightedGraph, x: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Orthonormal frame of (exact forms) intersect (j_x phi)^perp, omega coords."""
    q = _frame_exact_forms(g, x)
    jphi_omega = to_omega(x, j_x_columns(x, phi))
    inside = q @ (q.conj().T @ jphi_omega)
    norms = np.linalg.norm(jphi_omega, axis=0)
    w = orthonormalize(inside, scale=float(norms.max()) if norms.size else None)
    if w.shape[1] != phi.shape[1]:
        raise DegenerateForms("chains must be independent from the cycle space")
    # residual columns of a unit frame: rank decision on the absolute scale
    core = orthonormalize(q - w @ (w.conj().T @ q), scale=1.0)
    return core


def build_kernel(g: WeightedGraph, spec: MeasureSpec) -> ProjectionKernel:
    """Projection kernel of the requested measure, in the omega basis."""
    x = g.weights
    expected = spec.expected_rank(g)
    if spec.variant == "ust":
        frame = _frame_exact_forms(g, x)
    elif spec.variant == "connected":
        if spec.theta is None or spec.theta.shape != (g.num_edges, spec.k):
            raise DegenerateForms("connected measure needs num_edges x k forms")
        frame = orthonormalize(np.hstack([
            _frame_exact_forms(g, x), to_omega(x, spec.theta)]))
    elif spec.variant == "forest":
        if spec.phi is None or spec.phi.shape != (g.num_edges, spec.k):
            raise DegenerateForms("forest measure needs num_edges x k chains")
        frame = _forest_core_frame(g, x, spec.phi)
    elif spec.variant == "crsf":
        if spec.connection is None:
            raise DegenerateForms("crsf measure needs a connection")
        frame = orthonormalize(to_omega(x, twisted_differential(g, spec.connection)))
    else:  # mixed
        if spec.phi is None or spec.theta is None:
            raise DegenerateForms("mixed measure needs chains and forms")
        core = _forest_core_frame(g, x, spec.phi)
        frame = orthonormalize(np.hstack([core, to_omega(x, spec.theta)]))
    if frame.shape[1] != expected:
        raise DegenerateForms(
            f"{spec.variant} kernel has rank {frame.shape[1]}, expected {expected}")
    return ProjectionKernel(frame @ frame.conj().T, expected)


def sample_subgraph(g: WeightedGraph, kernel: ProjectionKernel, seed: int) -> SubgraphMask:
    return g.mask(sample(kernel, seed))


def integral_cycle_basis_of(g: WeightedGraph, mask: SubgraphMask) -> np.ndarray:
    """Integral cycle basis of a connected spanning subgraph.

    Columns are fundamental cycles of a deterministic (min-index) spanning
    tree of the subgraph, one per remaining edge in ascending order, so the
    signs are reproducible.
    """
    if not mask.is_connected():
        raise ValueError("cycle basis needs a connected spanning subgraph")
    tree = min_index_spanning_tree(g, within=mask)
    extra = [e for e in mask.indices if e not in tree.edge_set]
    cols = [fundamental_cycle(g, tree, e) for e in extra]
    return np.array(cols, dtype=int).T.reshape(g.num_edges, -1)


def cycle_weight(g: WeightedGraph, mask: SubgraphMask, theta: np.ndarray) -> SubgraphWeight:
    """Weight x^K |det(theta_i(gamma_j))|^2 of a connected spanning subgraph.

    The cycle basis choice does not matter: any two integral bases differ by
    a unimodular change of basis.
    """
    theta = np.asarray(theta, dtype=complex).reshape(g.num_edges, -1)
    if not mask.is_connected():
        raise ValueError("subgraph is not connected spanning")
    if mask.b1 != theta.shape[1]:
        raise ValueError(f"subgraph has b1={mask.b1}, expected {theta.shape[1]}")
    cycles = integral_cycle_basis_of(g, mask)
    pairing = theta.T @ cycles  # (theta_i, gamma_j), plain duality pairing
    topo = float(np.abs(np.linalg.det(pairing)) ** 2) if pairing.shape[0] else 1.0
    mono = mask.weight_monomial()
    return SubgraphWeight(topo * mono, mono, topo)


def component_cuts(g: WeightedGraph, mask: SubgraphMask) -> np.ndarray:
    """Cut cochains separating each component of the mask except the last."""
    labels = np.array(mask.component_labels())
    cuts = []
    for comp in range(mask.b0 - 1):
        inside = labels == comp
        col = np.array([int(inside[h]) - int(inside[t]) for t, h in g.edges])
        cuts.append(col)
    return np.array(cuts, dtype=int).T.reshape(g.num_edges, -1)


def forest_weight(g: WeightedGraph, mask: SubgraphMask, phi: np.ndarray) -> SubgraphWeight:
    """Weight x^F |det((phi_i, kappa_j))|^2 of a spanning forest.

    The omitted component and the component order do not change the value.
    """
    phi = np.asarray(phi, dtype=complex)
    if mask.b1 != 0:
        raise ValueError("subgraph has a cycle")
    if mask.b0 != phi.shape[1] + 1:
        raise ValueError(f"forest has {mask.b0} components, expected {phi.shape[1] + 1}")
    cuts = component_cuts(g, mask)
    pairing = phi.T @ cuts
    topo = float(np.abs(np.linalg.det(pairing)) ** 2) if pairing.shape[0] else 1.0
    mono = mask.weight_monomial()
    return SubgraphWeight(topo * mono, mono, topo)


def _two_core_edges(g: WeightedGraph, edge_indices) -> set[int]:
    """Edges of the 2-core of the subgraph, by iterative leaf pruning."""
    alive = set(edge_indices)
    degree = np.zeros(g.num_vertices, dtype=int)
    incident: list[set[int]] = [set() for _ in range(g.num_vertices)]
    for i in alive:
        t, h = g.edges[i]
        if t == h:
            continue
        degree[t] += 1
        degree[h] += 1
        incident[t].add(i)
        incident[h].add(i)
    leaves = [v for v in range(g.num_vertices) if degree[v] == 1]
    while leaves:
        v = leaves.pop()
        if degree[v] != 1:
            continue
        i = next(iter(incident[v]))
        t, h = g.edges[i]
        alive.discard(i)
        for u in (t, h):
            degree[u] -= 1
            incident[u].discard(i)
            if degree[u] == 1:
                leaves.append(u)
    return alive


def crsf_weight(g: WeightedGraph, mask: SubgraphMask, connection: np.ndarray) -> SubgraphWeight:
    """Weight x^S prod |1 - holonomy(cycle)|^2 of a cycle-rooted forest.

    Zero when some component is a tree; components with two or more
    independent cycles are rejected outright.
    """
    h = np.asarray(connection, dtype=complex)
    labels = np.array(mask.component_labels())
    comp_b1 = _per_component_b1(g, mask, labels)
    if any(b > 1 for b in comp_b1):
        raise ValueError("component with two or more independent cycles")
    mono = mask.weight_monomial()
    if any(b == 0 for b in comp_b1):
        return SubgraphWeight(0.0, mono, 0.0)
    topo = 1.0
    core = _two_core_edges(g, mask.edge_set)
    for comp in range(mask.b0):
        cycle_edges = [i for i in core if labels[g.edges[i][0]] == comp]
        hol = _cycle_holonomy(g, cycle_edges, h)
        topo *= float(np.abs(1.0 - hol) ** 2)
    return SubgraphWeight(topo * mono, mono, topo)


def _per_component_b1(g: WeightedGraph, mask: SubgraphMask, labels: np.ndarray) -> list[int]:
    edge_count = [0] * mask.b0
    vertex_count = [0] * mask.b0
    for i in mask.edge_set:
        edge_count[labels[g.edges[i][0]]] += 1
    for v in range(g.num_vertices):
        vertex_count[labels[v]] += 1
    return [e - v + 1 for e, v in zip(edge_count, vertex_count)]


def _cycle_holonomy(g: WeightedGraph, cycle_edges: list[int], h: np.ndarray) -> complex:
    """Holonomy around a single simple cycle given by its edge set."""
    if not cycle_edges:
        return 1.0
    loops = [i for i in cycle_edges if g.edges[i][0] == g.edges[i][1]]
    if loops:
        return complex(h[loops[0]])
    nxt: dict[int, list[int]] = {}
    for i in cycle_edges:
        t, hd = g.edges[i]
        nxt.setdefault(t, []).append(i)
        nxt.setdefault(hd, []).append(i)
    start = g.edges[cycle_edges[0]][0]
    hol = 1.0 + 0.0j
    v, used = start, set()
    while True:
        i = next(e for e in nxt[v] if e not in used)
        used.add(i)
        t, hd = g.edges[i]
        if t == v:
            hol *= h[i]
            v = hd
        else:
            hol *= np.conj(h[i])
            v = t
        if v == start:
            break
    return complex(hol)


def dual_transport(g: WeightedGraph, faces, spec: MeasureSpec):
    """Move a measure across planar duality.

    A forest measure on the primal becomes a connected measure on the dual
    with inverted weights and coefficientwise-transported forms (and back);
    the two measures correspond under complementation of edge sets.  Returns
    (dual graph with inverted weights, transported spec, PlanarDual).
    """
    from .planar import planar_dual
    pd = planar_dual(g, faces)
    dual_inv = pd.dual.inverted_weights()
    if spec.variant == "ust":
        out = MeasureSpec.ust()
    elif spec.variant == "forest":
        out = MeasureSpec.connected_k(np.asarray(spec.phi, dtype=complex))
    elif spec.variant == "connected":
        out = MeasureSpec.forest_k(np.asarray(spec.theta, dtype=complex))
    else:
        raise ValueError(f"no duality transport for variant {spec.variant!r}")
    return dual_inv, out, pd


def random_theta(g: WeightedGraph, k: int, seed: int) -> np.ndarray:
    """k real forms drawn uniformly from the unit sphere (theta stream)."""
    gen = _rng.stream(seed, _rng.TAG_THETA)
    v = gen.standard_normal((g.num_edges, k))
    return (v / np.linalg.norm(v, axis=0)).astype(complex)


def random_phi(g: WeightedGraph, k: int, seed: int) -> np.ndarray:
    """k real chains drawn uniformly from the unit sphere (phi stream)."""
    gen = _rng.stream(seed, _rng.TAG_PHI)
    v = gen.standard_normal((g.num_edges, k))
    return (v / np.linalg.norm(v, axis=0)).astype(complex)


def random_connection(g: WeightedGraph, seed: int) -> np.ndarray:
    """Uniform unit complex number per edge (connection stream)."""
    gen = _rng.stream(seed, _rng.TAG_CONNECTION)
    return np.exp(2j * np.pi * gen.random(g.num_edges))


def random_spec(g: WeightedGraph, variant: str, k: int, l: int, seed: int) -> MeasureSpec:
    """Spec with forms drawn from the seed, mirroring the sampler's streams."""
    if variant == "ust":
        return MeasureSpec.ust()
    if variant == "connected":
        return MeasureSpec.connected_k(random_theta(g, k, seed))
    if variant == "forest":
        return MeasureSpec.forest_k(random_phi(g, k, seed))
    if variant == "crsf":
        return MeasureSpec.crsf(random_connection(g, seed))
    if variant == "mixed":
        return MeasureSpec.mixed(random_phi(g, k, seed), random_theta(g, l, seed))
    raise ValueError(f"unknown variant {variant!r}")


def sample_in_support(spec: MeasureSpec, mask: SubgraphMask) -> bool:
    """Whether a sample satisfies the topological support law of its measure."""
    if spec.variant == "ust":
        return mask.is_spanning_tree()
    if spec.variant == "connected":
        return mask.is_connected() and mask.b1 == spec.k
    if spec.variant == "forest":
        return mask.b1 == 0 and mask.b0 == spec.k + 1
    if spec.variant == "crsf":
        labels = np.array(mask.component_labels())
        return all(b == 1 for b in _per_component_b1(mask.graph, mask, labels))
    chi = mask.b0 - mask.b1
    return chi == spec.k - spec.l + 1 and max(0, spec.l - spec.k) <= mask.b1 <= spec.l


def forms_to_json(theta=None, phi=None, connection=None) -> str:
    def enc(m):
        arr = np.asarray(m, dtype=complex)
        return [[[float(z.real), float(z.imag)] for z in arr[:, j]]
                for j in range(arr.shape[1])]
    payload = {}
    if theta is not None:
        payload["theta"] = enc(theta)
    if phi is not None:
        payload["phi"] = enc(phi)
    if connection is not None:
        h = np.asarray(connection, dtype=complex)
        payload["connection"] = [[float(z.real), float(z.imag)] for z in h]
    return json.dumps(payload)


def forms_from_json(text: str) -> dict[str, np.ndarray]:
    payload = json.loads(text)
    out: dict[str, np.ndarray] = {}
    for key in ("theta", "phi"):
        if key in payload:
            cols = [np.array([re + 1j * im for re, im in col]) for col in payload[key]]
            out[key] = np.column_stack(cols)
    if "connection" in payload:
        out["connection"] = np.array([re + 1j * im for re, im in payload["connection"]])
    return out
