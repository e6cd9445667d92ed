"""Brute-force ground truth by exhaustive subset enumeration.

Every determinant formula in the library has a defining sum over subgraphs
or matroid bases; this module evaluates those sums directly (integer
component counts from union-find, no floating point in family membership)
and reports discrepancies against the fast routes.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from . import dpp, matroid as matroid_mod, measures, polynomials
from .errors import EnumerationCapExceeded
from .graph import SubgraphMask, WeightedGraph, components_of, enumeration_cap

DENSITY_TOL = 1e-9
POLY_RTOL = 1e-9


@dataclass
class OracleReport:
    instance: str
    max_density_error: float = 0.0
    max_poly_rel_error: float = 0.0
    support_mismatches: list = field(default_factory=list)
    runtime: float = 0.0
    density_tol: float = DENSITY_TOL
    poly_rtol: float = POLY_RTOL

    @property
    def passed(self) -> bool:
        return (not self.support_mismatches
                and self.max_density_error <= self.density_tol
                and self.max_poly_rel_error <= self.poly_rtol)

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "max_density_error": self.max_density_error,
            "max_poly_rel_error": self.max_poly_rel_error,
            "support_mismatches": [sorted(s) for s in self.support_mismatches],
            "runtime_seconds": self.runtime,
            "passed": self.passed,
        }


def _check_cap(g: WeightedGraph, cap: int | None) -> None:
    cap = enumeration_cap(cap)
    if g.num_edges > cap:
        raise EnumerationCapExceeded(
            f"{g.num_edges} edges exceeds enumeration cap {cap}")


def _betti(g: WeightedGraph, subset: tuple[int, ...]) -> tuple[int, int]:
    labels = components_of(g.num_vertices, (g.edges[i] for i in subset))
    b0 = max(labels) + 1
    return b0, len(subset) - g.num_vertices + b0


def enumerate_family(g: WeightedGraph, family: str, k: int = 0, l: int = 0,
                     cap: int | None = None) -> list[SubgraphMask]:
    """Exact subgraph family by exhaustive (b0, b1)-filtering.

    family is one of "connected" (b1 = k, connected spanning), "forest"
    (acyclic, k+1 components), "crsf" (every component unicyclic), or
    "mixed" (Euler characteristic k-l+1 with the b1 window).
    """
    _check_cap(g, cap)
    n = g.num_vertices
    if family == "connected":
        size, cond = n - 1 + k, lambda b0, b1: b0 == 1 and b1 == k
    elif family == "forest":
        size, cond = n - 1 - k, lambda b0, b1: b0 == k + 1 and b1 == 0
    elif family == "crsf":
        size = n
        cond = None
    elif family == "mixed":
        size = n - 1 - k + l
        cond = (lambda b0, b1: b0 - b1 == k - l + 1
                and max(0, l - k) <= b1 <= l)
    else:
        raise ValueError(f"unknown family {family!r}")
    if size < 0 or size > g.num_edges:
        return []
    out = []
    for subset in itertools.combinations(range(g.num_edges), size):
        if family == "crsf":
            if _all_components_unicyclic(g, subset):
                out.append(g.mask(subset))
        else:
            b0, b1 = _betti(g, subset)
            if cond(b0, b1):
                out.append(g.mask(subset))
    return out


def _all_components_unicyclic(g: WeightedGraph, subset: tuple[int, ...]) -> bool:
    labels = components_of(g.num_vertices, (g.edges[i] for i in subset))
    ncomp = max(labels) + 1
    edges = [0] * ncomp
    verts = [0] * ncomp
    for i in subset:
        edges[labels[g.edges[i][0]]] += 1
    for v in range(g.num_vertices):
        verts[labels[v]] += 1
    return all(e == v for e, v in zip(edges, verts))


def family_for_spec(g: WeightedGraph, spec: measures.MeasureSpec,
                    cap: int | None = None) -> list[SubgraphMask]:
    if spec.variant == "ust":
        return enumerate_family(g, "connected", k=0, cap=cap)
    if spec.variant in ("connected", "forest", "mixed"):
        return enumerate_family(g, spec.variant, k=spec.k, l=spec.l, cap=cap)
    return enumerate_family(g, "crsf", cap=cap)


def combinatorial_weight(g: WeightedGraph, spec: measures.MeasureSpec,
                         mask: SubgraphMask) -> float:
    if spec.variant == "ust":
        return mask.weight_monomial()
    if spec.variant == "connected":
        return measures.cycle_weight(g, mask, spec.theta).value
    if spec.variant == "forest":
        return measures.forest_weight(g, mask, spec.phi).value
    if spec.variant == "crsf":
        return measures.crsf_weight(g, mask, spec.connection).value
    raise ValueError("mixed weights have no closed-form evaluator")


def compare_measure(g: WeightedGraph, spec: measures.MeasureSpec,
                    tolerance: float = DENSITY_TOL,
                    cap: int | None = None) -> OracleReport:
    """Normalized combinatorial weights against kernel densities, per element.

    Also scans every subset of the sample cardinality for support mismatches:
    positive density outside the family, or positive weight with zero density.
    """
    start = time.monotonic()
    _check_cap(g, cap)
    kernel = measures.build_kernel(g, spec)
    fam = family_for_spec(g, spec, cap=cap)
    weights = {m.indices: combinatorial_weight(g, spec, m) for m in fam}
    total = sum(weights.values())
    report = OracleReport(instance=f"{spec.variant} on {g.num_edges} edges",
                          density_tol=tolerance)
    fam_keys = set(weights)
    for subset in itertools.combinations(range(g.num_edges), kernel.rank):
        dens = dpp.density(kernel, subset)
        w = weights.get(subset, 0.0) / total
        report.max_density_error = max(report.max_density_error, abs(dens - w))
        if subset not in fam_keys and dens > tolerance:
            report.support_mismatches.append(subset)
        if subset in fam_keys and weights[subset] > tolerance and dens <= 0.0:
            report.support_mismatches.append(subset)
    report.runtime = time.monotonic() - start
    return report


def tree_sum(g: WeightedGraph, x: np.ndarray | None = None,
             cap: int | None = None) -> float:
    """Defining sum of the tree polynomial."""
    from .graph import enumerate_spanning_trees
    x = g.weights if x is None else np.asarray(x)
    total = 0.0
    for t in enumerate_spanning_trees(g, cap=cap):
        idx = list(t.edge_set)
        total += float(np.prod(x[idx])) if idx else 1.0
    return total


def psi1_sum(g: WeightedGraph, x: np.ndarray | None = None,
             cap: int | None = None) -> float:
    from .graph import enumerate_spanning_trees
    x = g.weights if x is None else np.asarray(x)
    total = 0.0
    for t in enumerate_spanning_trees(g, cap=cap):
        others = [i for i in range(g.num_edges) if i not in t.edge_set]
        total += float(np.prod(x[others])) if others else 1.0
    return total


def psi2_sum(g: WeightedGraph, x: np.ndarray, q: np.ndarray,
             cap: int | None = None) -> float:
    """Defining sum of the second Symanzik polynomial over 2-forests."""
    x = np.asarray(x)
    q = np.asarray(q, dtype=complex)
    total = 0.0
    for f in enumerate_family(g, "forest", k=1, cap=cap):
        labels = np.array(f.component_labels())
        charge = complex(q[labels == 0].sum())
        others = [i for i in range(g.num_edges) if i not in f.edge_set]
        mono = float(np.prod(x[others])) if others else 1.0
        total += float(abs(charge) ** 2) * mono
    return total


def connected_poly_sum(g: WeightedGraph, x: np.ndarray | None,
                       theta: np.ndarray, cap: int | None = None) -> float:
    x = g.weights if x is None else np.asarray(x)
    theta = np.asarray(theta, dtype=complex).reshape(g.num_edges, -1)
    gx = WeightedGraph(g.num_vertices, g.edges, np.asarray(x, dtype=float))
    total = 0.0
    for mask in enumerate_family(gx, "connected", k=theta.shape[1], cap=cap):
        total += measures.cycle_weight(gx, mask, theta).value
    return total


def forest_poly_sum(g: WeightedGraph, x: np.ndarray | None,
                    phi: np.ndarray, cap: int | None = None) -> float:
    x = g.weights if x is None else np.asarray(x)
    phi = np.asarray(phi, dtype=complex).reshape(g.num_edges, -1)
    gx = WeightedGraph(g.num_vertices, g.edges, np.asarray(x, dtype=float))
    total = 0.0
    for mask in enumerate_family(gx, "forest", k=phi.shape[1], cap=cap):
        total += measures.forest_weight(gx, mask, phi).value
    return total


def crsf_poly_sum(g: WeightedGraph, connection: np.ndarray,
                  cap: int | None = None) -> float:
    total = 0.0
    for mask in enumerate_family(g, "crsf", cap=cap):
        total += measures.crsf_weight(g, mask, connection).value
    return total


def matroid_basis_sums(m: matroid_mod.LinearMatroid,
                       z_columns: np.ndarray | None = None) -> dict[str, float]:
    """Defining sums of the matroid partition functions B and K."""
    z = m.kernel_basis if z_columns is None else np.asarray(z_columns, dtype=complex)
    b_total = 0.0
    k_total = 0.0
    for t in m.bases:
        b_total += matroid_mod.basis_weight(m, t)
        det = matroid_mod.minor_on_complement(z, t, m.ground_size)
        mono = float(np.prod(m.weights[list(t)])) if t else 1.0
        k_total += float(abs(det) ** 2) * mono
    return {"B": b_total, "K": k_total}


def matroid_L_sum(m: matroid_mod.LinearMatroid, theta: np.ndarray,
                  z_columns: np.ndarray | None = None) -> float:
    """Defining sum of the k-extension polynomial over admissible supersets."""
    theta = np.asarray(theta, dtype=complex).reshape(m.ground_size, -1)
    k = theta.shape[1]
    z = m.kernel_basis if z_columns is None else np.asarray(z_columns, dtype=complex)
    total = 0.0
    for k_set in m.bases_of_rank_k_extension(k):
        zk = matroid_mod.restricted_kernel_basis(m, k_set)
        pairing = theta.T @ zk
        topo = float(abs(np.linalg.det(pairing)) ** 2) if k else 1.0
        some_basis = next(t for t in m.bases if set(t) <= set(k_set))
        det_full = matroid_mod.minor_on_complement(z, some_basis, m.ground_size)
        rows = [i for i in k_set if i not in set(some_basis)]
        det_res = np.linalg.det(zk[rows, :]) if rows else 1.0 + 0j
        ratio = float(abs(det_full) ** 2 / abs(det_res) ** 2)
        mono = float(np.prod(m.weights[list(k_set)]))
        total += mono * ratio * topo
    return total


def compare_polynomial(g: WeightedGraph, which: str, x: np.ndarray | None = None,
                       theta: np.ndarray | None = None,
                       phi: np.ndarray | None = None,
                       q: np.ndarray | None = None,
                       cap: int | None = None) -> OracleReport:
    """Determinant route against the defining sum, in relative error."""
    start = time.monotonic()
    x = g.weights if x is None else np.asarray(x)
    if which == "T":
        fast, slow = polynomials.kirchhoff_T(g, x).real, tree_sum(g, x, cap=cap)
    elif which == "psi1":
        fast, slow = polynomials.symanzik_psi1(g, x).real, psi1_sum(g, x, cap=cap)
    elif which == "psi2":
        fast = polynomials.symanzik_psi2(g, x, q).real
        slow = psi2_sum(g, x, q, cap=cap)
    elif which == "C":
        fast = polynomials.generalized_C(g, x, theta).real
        slow = connected_poly_sum(g, x, theta, cap=cap)
    elif which == "A":
        fast = polynomials.generalized_A(g, x, phi).real
        slow = forest_poly_sum(g, x, phi, cap=cap)
    else:
        raise ValueError(f"unknown polynomial {which!r}")
    scale = max(abs(fast), abs(slow), 1e-300)
    report = OracleReport(instance=f"{which} on {g.num_edges} edges")
    report.max_poly_rel_error = abs(fast - slow) / scale
    report.runtime = time.monotonic() - start
    return report
