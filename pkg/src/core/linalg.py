"""
Núcleo de álgebra linear densa complexa: raízes PSD, bases de imagem,
normas, sistemas lineares e resolventes de canto.
"""

from typing import Optional

import numpy as np
import scipy.linalg

from src.config import ToleranceConfig, resolve_config
from src.exceptions import NotHermitian, NotPSD, ProblemFormatError, Singular, ShapeMismatch


def as_matrix(a, name: str = "matriz") -> np.ndarray:
    """Converte para matriz complexa 2-D finita"""
    matrix = np.asarray(a, dtype=complex)
    if matrix.ndim == 0:
        matrix = matrix.reshape(1, 1)
    if matrix.ndim != 2:
        raise ShapeMismatch(f"{name} deve ser bidimensional", (2,), (matrix.ndim,))
    if not np.all(np.isfinite(matrix)):
        raise ProblemFormatError(name, "entradas não finitas")
    return matrix


def operator_norm(a) -> float:
    """Maior valor singular (0 para matrizes vazias)"""
    matrix = np.asarray(a, dtype=complex)
    if matrix.size == 0:
        return 0.0
    return float(scipy.linalg.svd(matrix, compute_uv=False)[0])


def _hermitian_eigh(h, config: ToleranceConfig):
    matrix = as_matrix(h)
    if matrix.shape[0] != matrix.shape[1]:
        raise ShapeMismatch("matriz hermitiana deve ser quadrada", (matrix.shape[0],) * 2, matrix.shape)
    if matrix.size == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)
    scale = operator_norm(matrix)
    asymmetry = operator_norm(matrix - matrix.conj().T)
    if asymmetry > config.herm_tol * max(scale, 1e-300):
        raise NotHermitian(f"assimetria {asymmetry:.3e} excede {config.herm_tol:.1e}·‖H‖")
    eigenvalues, eigenvectors = scipy.linalg.eigh((matrix + matrix.conj().T) / 2)
    if eigenvalues.size and eigenvalues[0] < -config.psd_tol * scale:
        raise NotPSD(f"autovalor {eigenvalues[0]:.3e} abaixo de −{config.psd_tol:.1e}·‖H‖")
    return np.clip(eigenvalues, 0.0, None), eigenvectors


def psd_sqrt(h, config: Optional[ToleranceConfig] = None) -> np.ndarray:
    """Raiz quadrada hermitiana PSD por autodecomposição"""
    config = resolve_config(config)
    eigenvalues, eigenvectors = _hermitian_eigh(h, config)
    root = (eigenvectors * np.sqrt(eigenvalues)) @ eigenvectors.conj().T
    return (root + root.conj().T) / 2


def range_basis(h, rel_tol: Optional[float] = None, config: Optional[ToleranceConfig] = None) -> np.ndarray:
    """
    Base ortonormal dos autoespaços de H com autovalor > rel_tol·λ_max.
    Retorna matriz com 0 colunas quando H = 0.
    """
    config = resolve_config(config)
    rel_tol = config.rank_tol if rel_tol is None else rel_tol
    eigenvalues, eigenvectors = _hermitian_eigh(h, config)
    dim = eigenvectors.shape[0]
    if eigenvalues.size == 0 or eigenvalues[-1] <= 0.0:
        return np.zeros((dim, 0), dtype=complex)
    keep = eigenvalues > rel_tol * eigenvalues[-1]
    # ordem decrescente de autovalor
    return normalize_phases(eigenvectors[:, keep][:, ::-1])


def column_space(a, rel_tol: float) -> np.ndarray:
    """Base ortonormal da imagem de A por SVD (valores singulares > rel_tol·σ_max)"""
    matrix = np.asarray(a, dtype=complex)
    rows = matrix.shape[0]
    if matrix.size == 0:
        return np.zeros((rows, 0), dtype=complex)
    u, s, _ = scipy.linalg.svd(matrix, full_matrices=False)
    if s[0] <= 0.0:
        return np.zeros((rows, 0), dtype=complex)
    return u[:, s > rel_tol * s[0]]


def normalize_phases(basis: np.ndarray) -> np.ndarray:
    """Torna real positiva a entrada de maior módulo de cada coluna"""
    if basis.size == 0:
        return basis.copy()
    pivots = np.argmax(np.abs(basis), axis=0)
    phases = basis[pivots, np.arange(basis.shape[1])]
    return basis * (np.abs(phases) / phases)[np.newaxis, :]


def canonical_basis(projector, rank: int) -> np.ndarray:
    """
    Base ortonormal de ran P que depende apenas de P: Gram–Schmidt das
    colunas P e_1, P e_2, … em ordem, aceitando resíduos acima de 1/(2√n).
    A coordenada pivô de cada coluna aceita é real positiva.
    """
    projector = np.asarray(projector, dtype=complex)
    dim = projector.shape[0]
    basis = np.zeros((dim, rank), dtype=complex)
    if rank == 0:
        return basis
    threshold = 0.5 / np.sqrt(dim)
    count = 0
    for j in range(dim):
        accepted = basis[:, :count]
        column = projector[:, j].copy()
        for _ in range(2):
            column -= accepted @ (accepted.conj().T @ column)
        norm = float(np.linalg.norm(column))
        if norm <= threshold:
            continue
        phase = column[j] / abs(column[j])
        basis[:, count] = column / (norm * phase)
        count += 1
        if count == rank:
            return basis
    raise Singular(f"projetor com posto {count} < {rank}")


def solve(a, b, config: Optional[ToleranceConfig] = None) -> np.ndarray:
    """Resolve A X = B recusando A numericamente singular"""
    config = resolve_config(config)
    matrix = as_matrix(a)
    rhs = np.asarray(b, dtype=complex)
    if matrix.shape[0] != matrix.shape[1] or rhs.shape[0] != matrix.shape[0]:
        raise ShapeMismatch("sistema linear incompatível", (matrix.shape[0],), (rhs.shape[0],))
    if matrix.size == 0:
        return np.zeros(rhs.shape, dtype=complex)
    singular_values = scipy.linalg.svd(matrix, compute_uv=False)
    if singular_values[-1] <= config.singular_tol * singular_values[0]:
        raise Singular(
            f"menor valor singular {singular_values[-1]:.3e} abaixo de "
            f"{config.singular_tol:.1e}·‖A‖"
        )
    return scipy.linalg.solve(matrix, rhs)


def corner_resolvent(t, k: int, z: complex, config: Optional[ToleranceConfig] = None) -> np.ndarray:
    """
    P_k (I − zT)⁻¹ |_k para o canto noroeste de dimensão k, pela fórmula de
    Schur–Frobenius: com T = [[S, Q], [R, U]],
        P_k (I − zT)⁻¹ |_k = (I − z(S + z Q (I − zU)⁻¹ R))⁻¹.
    """
    t = as_matrix(t)
    s, q = t[:k, :k], t[:k, k:]
    r, u = t[k:, :k], t[k:, k:]
    rest = u.shape[0]
    inner = solve(np.eye(rest) - z * u, r, config)
    complement = s + z * q @ inner
    return solve(np.eye(k) - z * complement, np.eye(k, dtype=complex), config)


def transfer_function(system, out_dim: int, in_dim: int, z: complex,
                      config: Optional[ToleranceConfig] = None) -> np.ndarray:
    """
    Função de transferência de um sistema [[D, C], [B, A]]:
        Θ(z) = D + z C (I − zA)⁻¹ B
    """
    system = as_matrix(system)
    d, c = system[:out_dim, :in_dim], system[:out_dim, in_dim:]
    b, a = system[out_dim:, :in_dim], system[out_dim:, in_dim:]
    state = a.shape[0]
    return d + z * c @ solve(np.eye(state) - z * a, b, config)


def block2x2(top_left, top_right, bottom_left, bottom_right) -> np.ndarray:
    """Monta [[A, B], [C, D]] aceitando blocos de largura zero"""
    rows_top, cols_left = top_left.shape
    rows_bottom, cols_right = bottom_right.shape
    matrix = np.zeros((rows_top + rows_bottom, cols_left + cols_right), dtype=complex)
    matrix[:rows_top, :cols_left] = top_left
    matrix[:rows_top, cols_left:] = top_right
    matrix[rows_top:, :cols_left] = bottom_left
    matrix[rows_top:, cols_left:] = bottom_right
    return matrix
