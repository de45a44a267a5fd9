"""
Matriz de Toeplitz dos dados, operadores encurtados de Kreĭn,
classificação do problema e conversão coeficientes de Taylor ↔ parâmetros de Schur.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg

from src.config import ToleranceConfig, resolve_config
from src.core import analyze_contraction, operator_norm, psd_sqrt, range_basis, solve, as_matrix
from src.exceptions import (
    InconsistentData, IndexOutOfRange, NotASchurSequence, ShapeMismatch
)
from src.models import ChoiceSequence, ContractionClass, DefectData, ProblemClassification, SchurProblemData
from src.strategies import SchurEvaluator, taylor_extract
from src.utils import LogFormatter

logger = logging.getLogger(__name__)

SIDE_M = "m"
SIDE_N = "n"


def build_toeplitz(data: SchurProblemData, adjoint: bool = False) -> np.ndarray:
    """T_N bloco triangular inferior com C_{i−j} no bloco (i, j); adjoint usa C*_k"""
    blocks = [c.conj().T for c in data.coeffs] if adjoint else list(data.coeffs)
    rows, cols = blocks[0].shape
    size = len(blocks)
    toeplitz = np.zeros((size * rows, size * cols), dtype=complex)
    for i in range(size):
        for j in range(i + 1):
            toeplitz[i * rows:(i + 1) * rows, j * cols:(j + 1) * cols] = blocks[i - j]
    return toeplitz


def defect_square(t: np.ndarray) -> np.ndarray:
    """I − T*T com autovalores negativos de arredondamento anulados"""
    square = np.eye(t.shape[1]) - t.conj().T @ t
    eigenvalues, eigenvectors = scipy.linalg.eigh((square + square.conj().T) / 2)
    return (eigenvectors * np.clip(eigenvalues, 0.0, None)) @ eigenvectors.conj().T


def krein_short(s, k_basis, config: Optional[ToleranceConfig] = None) -> np.ndarray:
    """
    Operador encurtado S_𝒦 = S^{1/2} P_Ω S^{1/2} com
    Ω = cran S ⊖ closure(S^{1/2} 𝒦^⊥) = {ω ∈ cran S : P_{𝒦⊥} S^{1/2} ω = 0}.
    """
    config = resolve_config(config)
    s = as_matrix(s, "S")
    k_basis = as_matrix(k_basis, "base de 𝒦")
    dim = s.shape[0]
    if k_basis.shape[0] != dim:
        raise ShapeMismatch("base de 𝒦 fora do espaço de S", (dim,), (k_basis.shape[0],))
    root = psd_sqrt(s, config)
    ran_s = range_basis(s, config.rank_tol, config)
    if k_basis.shape[1] == 0 or ran_s.shape[1] == 0:
        return np.zeros((dim, dim), dtype=complex)

    k_perp = scipy.linalg.null_space(k_basis.conj().T)
    coupling = k_perp.conj().T @ root @ ran_s
    if coupling.shape[0] == 0:
        omega = ran_s
    else:
        _, singular_values, vh = scipy.linalg.svd(coupling, full_matrices=True)
        threshold = np.sqrt(config.rank_tol) * max(operator_norm(root), 1e-300)
        rank = int(np.sum(singular_values > threshold))
        omega = ran_s @ vh[rank:].conj().T
    shorted = root @ omega @ omega.conj().T @ root
    return (shorted + shorted.conj().T) / 2


def shorted_via_params(cs: ChoiceSequence, n: int, side: str = SIDE_M) -> np.ndarray:
    """
    (D²_{T_n})_𝔐 = D_{Γ₀}⋯D_{Γ_{n−1}} D²_{Γ_n} D_{Γ_{n−1}}⋯D_{Γ₀} P_𝔐, expandido
    pelas pernas comprimidas: Y*Y com Y = d_leg(n)⋯d_leg(0). O lado 𝔑 usa
    as pernas de D_{Γ*}.
    """
    if n < 0 or (n > cs.last_index and cs.terminated is None):
        raise IndexOutOfRange(f"sequência não possui o índice {n}")
    if side == SIDE_M:
        chain = np.eye(cs.dim_m, dtype=complex)
        for k in range(n + 1):
            chain = cs.param(k).d_leg @ chain
        return chain.conj().T @ chain
    if side == SIDE_N:
        chain = np.eye(cs.dim_n, dtype=complex)
        for k in range(n + 1):
            chain = chain @ cs.param(k).dstar_leg
        return chain @ chain.conj().T
    raise ValueError(f"lado desconhecido: {side}")


def _series_mul(left: np.ndarray, right: np.ndarray, order: int) -> np.ndarray:
    product = np.zeros((order + 1, left.shape[1], right.shape[2]), dtype=complex)
    for k in range(order + 1):
        for i in range(k + 1):
            product[k] += left[i] @ right[k - i]
    return product


def _series_inverse_shifted(g: np.ndarray, order: int) -> np.ndarray:
    """Série de (I + zG(z))⁻¹"""
    size = g.shape[1]
    inverse = np.zeros((order + 1, size, size), dtype=complex)
    inverse[0] = np.eye(size)
    for j in range(1, order + 1):
        for i in range(1, j + 1):
            inverse[j] -= g[i - 1] @ inverse[j - i]
    return inverse


def _shorted_degeneracy(gamma: np.ndarray, chain_m: np.ndarray, chain_n: np.ndarray,
                        threshold: float) -> Optional[ContractionClass]:
    """
    Classe forçada no nível p quando (D²_{T_p})_𝔐 = Y*(I − Γ*Γ)Y ou o
    análogo em 𝔑 tem norma <= threshold; Y é o produto das pernas anteriores.
    """
    eye_in = np.eye(gamma.shape[1], dtype=complex)
    eye_out = np.eye(gamma.shape[0], dtype=complex)
    small_m = operator_norm(chain_m.conj().T @ (eye_in - gamma.conj().T @ gamma) @ chain_m) <= threshold
    small_n = operator_norm(chain_n @ (eye_out - gamma @ gamma.conj().T) @ chain_n.conj().T) <= threshold
    if small_m and small_n:
        return ContractionClass.UNITARY
    if small_m:
        return ContractionClass.ISOMETRIC
    if small_n:
        return ContractionClass.CO_ISOMETRIC
    return None


class SchurAlgorithm:
    """Conversões entre coeficientes de Taylor e sequências de escolha"""

    def __init__(self, config: Optional[ToleranceConfig] = None):
        self.config = resolve_config(config)

    def taylor_to_params(self, data: SchurProblemData) -> ChoiceSequence:
        """
        Algoritmo de Schur nível a nível: Γ = C₀ do nível; B_k resolvido em
        D_{Γ*} B_k D_Γ = C_k sobre as bases de defeito; coeficientes do
        nível seguinte por
            C⁽¹⁾_i = B_{i+1} + Σ_{j<i} C⁽¹⁾_j Γ* B_{i−j}.
        Termina no primeiro Γ degenerado, exigindo dados nulos além dele.
        A degenerescência segue o limiar dos operadores encurtados usado
        por ProblemClassifier, de modo que terminação e unicidade coincidem.
        """
        norm = operator_norm(build_toeplitz(data))
        if norm > 1.0 + self.config.contraction_slack:
            raise NotASchurSequence(f"‖T_N‖ = {norm:.17g} excede 1 + {self.config.contraction_slack:.1e}")

        threshold = self.config.degeneracy_tol * max(data.dim_m, data.dim_n)
        chain_m = np.eye(data.dim_m, dtype=complex)
        chain_n = np.eye(data.dim_n, dtype=complex)
        current: List[np.ndarray] = list(data.coeffs)
        entries: List[DefectData] = []
        while True:
            force = _shorted_degeneracy(current[0], chain_m, chain_n, threshold)
            dd = analyze_contraction(current[0], config=self.config, force=force)
            entries.append(dd)
            LogFormatter.log_level_extracted(len(entries) - 1, dd)
            rest = current[1:]
            if not rest:
                break
            lifted = [self._restricted_solve(dd, c, len(entries) - 1, k + 1) for k, c in enumerate(rest)]
            if dd.kind.is_degenerate:
                LogFormatter.log_termination(len(entries) - 1, dd.kind)
                break
            chain_m = dd.d_leg @ chain_m
            chain_n = chain_n @ dd.dstar_leg
            gstar = dd.gstar_leg
            following: List[np.ndarray] = []
            for i in range(len(lifted)):
                value = lifted[i].copy()
                for j in range(i):
                    value += following[j] @ gstar @ lifted[i - 1 - j]
                following.append(value)
            current = following
        return ChoiceSequence(tuple(entries), data.dim_m, data.dim_n)

    def _restricted_solve(self, dd: DefectData, coeff: np.ndarray, level: int, k: int) -> np.ndarray:
        """B com D_{Γ*} B D_Γ = C restrito às bases; resíduo fora delas é erro"""
        coords = dd.basis_d_star.conj().T @ coeff @ dd.basis_d
        d_star_c = dd.basis_d_star.conj().T @ dd.d_gamma_star @ dd.basis_d_star
        d_c = dd.basis_d.conj().T @ dd.d_gamma @ dd.basis_d
        lifted = solve(d_star_c, coords, self.config)
        lifted = solve(d_c.conj().T, lifted.conj().T, self.config).conj().T
        residual = operator_norm(coeff - dd.dstar_leg @ lifted @ dd.d_leg)
        scale = max(1.0, operator_norm(coeff))
        # defeitos descartados deixam até 2·truncation fora das bases
        if residual > self.config.consistency_tol * scale + 2.0 * dd.truncation:
            raise InconsistentData(
                f"nível {level}, coeficiente {k}: resíduo {residual:.3e} fora dos subespaços de defeito"
            )
        return lifted

    def params_to_taylor(self, cs: ChoiceSequence, order: int, method: str = "realization",
                         cross_check: bool = True) -> List[np.ndarray]:
        """
        C₀..C_order da função determinada por cs (cauda nula ou terminação).
        "realization": somas de contorno sobre o avaliador; "recursion":
        aritmética de séries da representação de Möbius.
        """
        if method == "recursion":
            return self._series_recursion(cs, order)
        if method != "realization":
            raise ValueError(f"método desconhecido: {method}")
        evaluator = SchurEvaluator.from_sequence(cs, self.config)
        coefficients = taylor_extract(evaluator, order, config=self.config)
        if cross_check:
            reference = self._series_recursion(cs, order)
            gap = max(operator_norm(a - b) for a, b in zip(coefficients, reference))
            if gap > self.config.consistency_tol:
                LogFormatter.log_cross_check(gap, self.config.consistency_tol)
        return coefficients

    def _series_recursion(self, cs: ChoiceSequence, order: int) -> List[np.ndarray]:
        theta = np.zeros((order + 1,) + cs.next_shape, dtype=complex)
        for entry in reversed(cs.entries):
            g = np.einsum('ij,kjl->kil', entry.gstar_leg, theta)
            moebius = _series_mul(theta, _series_inverse_shifted(g, order), order)
            rows, cols = entry.shape
            updated = np.zeros((order + 1, rows, cols), dtype=complex)
            updated[0] = entry.gamma
            for k in range(1, order + 1):
                updated[k] = entry.dstar_leg @ moebius[k - 1] @ entry.d_leg
            theta = updated
        return [theta[k].copy() for k in range(order + 1)]

    def build_sequence(self, parameters: Sequence, dim_m: int, dim_n: int) -> ChoiceSequence:
        """Sequência de escolha a partir de parâmetros já comprimidos"""
        entries: List[DefectData] = []
        for index, gamma in enumerate(parameters):
            gamma = as_matrix(gamma, f"parâmetro {index}")
            if entries and entries[-1].kind.is_degenerate:
                if gamma.size:
                    raise ShapeMismatch(f"parâmetro {index} após terminação em {index - 1}")
                continue
            entries.append(analyze_contraction(gamma, config=self.config))
        return ChoiceSequence(tuple(entries), dim_m, dim_n)


class ProblemClassifier:
    """Solubilidade e unicidade pelos operadores encurtados"""

    def __init__(self, config: Optional[ToleranceConfig] = None):
        self.config = resolve_config(config)

    def classify(self, data: SchurProblemData) -> ProblemClassification:
        toeplitz_norm = operator_norm(build_toeplitz(data))
        threshold = self.config.degeneracy_tol * max(data.dim_m, data.dim_n)
        if toeplitz_norm > 1.0 + self.config.contraction_slack:
            result = ProblemClassification(
                solvable=False, unique=False, first_degenerate_index=None,
                shorted_m=None, shorted_n=None, toeplitz_norm=toeplitz_norm,
                degeneracy_threshold=threshold
            )
            LogFormatter.log_classification(result)
            return result

        first_degenerate = None
        norms = []
        shorted_m = shorted_n = None
        for p in range(data.order + 1):
            shorted_m, shorted_n = self.shorted_pair(data.prefix(p))
            norm_m, norm_n = operator_norm(shorted_m), operator_norm(shorted_n)
            norms.append((norm_m, norm_n))
            if first_degenerate is None and min(norm_m, norm_n) <= threshold:
                first_degenerate = p

        result = ProblemClassification(
            solvable=True,
            unique=min(norms[-1]) <= threshold,
            first_degenerate_index=first_degenerate,
            shorted_m=shorted_m,
            shorted_n=shorted_n,
            toeplitz_norm=toeplitz_norm,
            degeneracy_threshold=threshold,
            shorted_norms=norms
        )
        LogFormatter.log_classification(result)
        return result

    def shorted_pair(self, data: SchurProblemData):
        """((D²_{T_N})_𝔐, (D²_{T̃_N})_𝔑) pela definição direta"""
        t = build_toeplitz(data)
        t_adj = build_toeplitz(data, adjoint=True)
        corner_m = np.eye(t.shape[1], data.dim_m, dtype=complex)
        corner_n = np.eye(t_adj.shape[1], data.dim_n, dtype=complex)
        full_m = krein_short(defect_square(t), corner_m, self.config)
        full_n = krein_short(defect_square(t_adj), corner_n, self.config)
        return full_m[:data.dim_m, :data.dim_m], full_n[:data.dim_n, :data.dim_n]
