"""P1 stiffness and mass matrix assembly on a surface mesh.

Element integrals are evaluated in closed form (the integrands are polynomial,
so no quadrature is involved).  Assembly scatter-adds the 3x3 element matrices
through the mesh's DOF map; the closed surface has no boundary conditions, so
the stiffness matrix has the constants in its kernel.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sparse

from .errors import DegenerateElementError
from .mesh import SurfaceMesh

_DROP_TOL = 1e-14


def element_matrices(vertices) -> tuple[np.ndarray, np.ndarray]:
    """Exact P1 element matrices of one triangle.

    Parameters
    ----------
    vertices : array-like of shape (3, 2)
        Planar corner coordinates.

    Returns
    -------
    (stiffness, mass) : two (3, 3) arrays.  The stiffness matrix is the
    cotangent-weighted Laplacian element matrix (symmetric PSD, zero row
    sums); the mass matrix is (area/12) * (2 on the diagonal, 1 off).
    """
    v = np.asarray(vertices, dtype=np.float64)
    if v.shape != (3, 2):
        raise ValueError(f"expected three planar points, got shape {v.shape}")
    # edge opposite vertex i, directed so the three edges sum to zero
    e = np.array([v[2] - v[1], v[0] - v[2], v[1] - v[0]])
    area = 0.5 * (e[2, 0] * (-e[1, 1]) - e[2, 1] * (-e[1, 0]))
    if abs(area) < 1e-14:
        raise DegenerateElementError(f"triangle area {area} below 1e-14")
    if area < 0:
        raise DegenerateElementError("triangle has negative orientation")
    stiffness = (e @ e.T) / (4.0 * area)
    mass = (area / 12.0) * (np.ones((3, 3)) + np.eye(3))
    return stiffness, mass


def assemble(mesh: SurfaceMesh) -> tuple[sparse.csr_matrix, sparse.csr_matrix]:
    """Assemble global stiffness K and mass M over the mesh DOFs.

    Both matrices have dimension mesh.dof_count.  K is symmetric positive
    semidefinite with K @ 1 = 0; M is symmetric positive definite with
    1^T M 1 equal to the surface area.  Stored entries below 1e-14 in
    magnitude are dropped after assembly.
    """
    pts = mesh.planar_vertices[mesh.elements]           # (E, 3, 2)
    e = np.stack([pts[:, 2] - pts[:, 1],
                  pts[:, 0] - pts[:, 2],
                  pts[:, 1] - pts[:, 0]], axis=1)        # (E, 3, 2)
    area = 0.5 * (e[:, 2, 0] * (-e[:, 1, 1]) - e[:, 2, 1] * (-e[:, 1, 0]))
    if np.any(area <= 1e-14):
        raise DegenerateElementError("mesh contains a (near-)degenerate element")
    dofs = mesh.dof_of[mesh.elements]                    # (E, 3)
    n = mesh.dof_count

    rows, cols, kv, mv = [], [], [], []
    for i in range(3):
        for j in range(3):
            rows.append(dofs[:, i])
            cols.append(dofs[:, j])
            kv.append(np.einsum("ek,ek->e", e[:, i], e[:, j]) / (4.0 * area))
            mv.append(area / 12.0 * (2.0 if i == j else 1.0))
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    K = sparse.coo_matrix((np.concatenate(kv), (rows, cols)),
                          shape=(n, n)).tocsr()
    M = sparse.coo_matrix((np.concatenate(mv), (rows, cols)),
                          shape=(n, n)).tocsr()
    out = []
    for A in (K, M):
        A = (A + A.T) * 0.5          # exact symmetry regardless of sum order
        A.data[np.abs(A.data) < _DROP_TOL] = 0.0
        A.eliminate_zeros()
        out.append(A.tocsr())
    return out[0], out[1]
