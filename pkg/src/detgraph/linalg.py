"""Dense linear algebra in the weighted inner product over the edge set.

Forms (covectors over edges) carry the inner product
    <a, b> = sum_e x_e * conj(a_e) * b_e,
chains carry none.  The antilinear correspondence j_x sends the chain basis
vector e to x_e^{-1} e*.  Projection kernels are always expressed in the
orthonormal basis omega_e = e*/sqrt(x_e), in which the weighted inner
product becomes the standard one, so determinantal marginals are literal
matrix entries.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import RankDeficient

RANK_RTOL = 1e-10


def weighted_inner(x: np.ndarray, a: np.ndarray, b: np.ndarray) -> complex:
    """Sesquilinear inner product of two forms (conjugate on the first slot)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.shape != np.shape(x):
        raise ValueError("dimension mismatch")
    return complex(np.sum(np.asarray(x) * np.conj(a) * b))


def j_x(x: np.ndarray, chain: np.ndarray) -> np.ndarray:
    """Antilinear isomorphism from chains to forms: e -> x_e^{-1} e*."""
    return np.conj(np.asarray(chain, dtype=complex)) / np.asarray(x)


def j_x_inv(x: np.ndarray, form: np.ndarray) -> np.ndarray:
    """Inverse of j_x: form coefficients back to chain coefficients."""
    return np.conj(np.asarray(form, dtype=complex)) * np.asarray(x)


def j_x_columns(x: np.ndarray, chains: np.ndarray) -> np.ndarray:
    """Apply j_x to every column of a chain matrix."""
    return np.conj(np.asarray(chains, dtype=complex)) / np.asarray(x)[:, None]


def to_omega(x: np.ndarray, forms: np.ndarray) -> np.ndarray:
    """Rescale form coordinates (e* basis) to omega coordinates."""
    return np.asarray(forms, dtype=complex) * np.sqrt(np.asarray(x))[:, None]


def orthonormalize(columns: np.ndarray, rtol: float = RANK_RTOL,
                   scale: float | None = None) -> np.ndarray:
    """Orthonormal basis of the column span (standard inner product).

    Modified Gram-Schmidt with one reorthogonalization pass.  Columns whose
    remainder falls below rtol times `scale` are dropped; the default scale
    is the largest input column norm.  Pass an explicit scale when the
    columns are residuals of vectors with a known larger magnitude.
    """
    a = np.array(columns, dtype=complex)
    if a.ndim != 2 or a.shape[1] == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    if scale is None:
        norms = np.linalg.norm(a, axis=0)
        scale = norms.max() if norms.size else 0.0
    if scale == 0.0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    kept: list[np.ndarray] = []
    for j in range(a.shape[1]):
        v = a[:, j].copy()
        for _ in range(2):  # MGS + one reorthogonalization pass
            for q in kept:
                v -= q * (q.conj() @ v)
        nrm = np.linalg.norm(v)
        if nrm > rtol * scale:
            kept.append(v / nrm)
    if not kept:
        return np.zeros((a.shape[0], 0), dtype=complex)
    return np.column_stack(kept)


def projector_onto_span(x: np.ndarray, columns: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto the span of forms, in the omega basis.

    Rank deficiency of the spanning family is tolerated (it is a span).
    """
    q = orthonormalize(to_omega(x, columns))
    return q @ q.conj().T


def orthogonal_projection(x: np.ndarray, columns: np.ndarray) -> np.ndarray:
    """Projection onto the span of independent forms, in the omega basis.

    Raises RankDeficient if the columns are not (numerically) independent.
    """
    columns = np.asarray(columns, dtype=complex)
    q = orthonormalize(to_omega(x, columns))
    if q.shape[1] != columns.shape[1]:
        raise RankDeficient(
            f"family of {columns.shape[1]} forms has rank {q.shape[1]}")
    return q @ q.conj().T


class Subspace:
    """Span of a family of forms, with cached orthonormalization.

    The matrix columns are arbitrary spanning forms in e* coordinates; the
    orthonormal frame is with respect to the weighted inner product given by
    `weights` and is stored in omega coordinates.
    """

    def __init__(self, columns: np.ndarray, weights: np.ndarray):
        self.columns = np.asarray(columns, dtype=complex)
        self.weights = np.asarray(weights, dtype=float)
        if self.columns.ndim != 2 or self.columns.shape[0] != len(self.weights):
            raise ValueError("columns must be (num_edges x m)")

    @cached_property
    def frame(self) -> np.ndarray:
        """Orthonormal basis in omega coordinates."""
        return orthonormalize(to_omega(self.weights, self.columns))

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    @cached_property
    def projector(self) -> np.ndarray:
        return self.frame @ self.frame.conj().T


def gram_matrix(x: np.ndarray, vectors: list[np.ndarray] | np.ndarray) -> np.ndarray:
    """Weighted Gram matrix of a family of forms."""
    v = np.column_stack([np.asarray(c, dtype=complex) for c in vectors]) \
        if not isinstance(vectors, np.ndarray) else np.asarray(vectors, dtype=complex)
    w = to_omega(x, v)
    return w.conj().T @ w


def gram_det(x: np.ndarray, vectors: list[np.ndarray] | np.ndarray) -> float:
    """Determinant of the weighted Gram matrix; 0 iff the family is dependent."""
    m = gram_matrix(x, vectors)
    if m.shape[0] == 0:
        return 1.0
    return float(np.linalg.det(m).real)


def bilinear_gram_det(x: np.ndarray, vectors: np.ndarray) -> complex:
    """det of the matrix sum_e x_e conj(v_i[e]) v_j[e] for possibly complex x.

    At positive real x this is gram_det; as a function of x it is the
    polynomial continuation used by the stability checks.
    """
    v = np.asarray(vectors, dtype=complex)
    if v.shape[1] == 0:
        return 1.0 + 0j
    m = np.einsum("e,ei,ej->ij", np.asarray(x, dtype=complex), v.conj(), v)
    return complex(np.linalg.det(m))


def schur_split_det(u: np.ndarray, h_columns: np.ndarray) -> tuple[float, float]:
    """Split det(u* u) along a subspace H of the domain.

    Returns (det over the complement of H, det of the compression of u* P u
    on H, with P the projection away from the image of the complement part).
    The product of the two factors equals det(u* u).
    """
    u = np.asarray(u, dtype=complex)
    n = u.shape[1]
    h = np.asarray(h_columns, dtype=complex).reshape(u.shape[1], -1)
    qh = orthonormalize(h)
    full = np.eye(n, dtype=complex)
    qperp = orthonormalize(full - qh @ qh.conj().T @ full)
    if qh.shape[1] + qperp.shape[1] != n:
        raise RankDeficient("subspace split does not fill the domain")
    a = u @ qperp
    det_perp = float(np.linalg.det(a.conj().T @ a).real) if a.shape[1] else 1.0
    qa = orthonormalize(a)
    proj_off = np.eye(u.shape[0], dtype=complex) - qa @ qa.conj().T
    b = u @ qh
    m = b.conj().T @ proj_off @ b
    det_h = float(np.linalg.det(m).real) if m.shape[0] else 1.0
    return det_perp, det_h
