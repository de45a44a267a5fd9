"""
Função coeficiente Q(z) = [[Θ⁽⁰⁾, C], [B, A]] do sistema conservativo
construído sobre 𝒮ₙ,₀ e a atualização de resolvente da tampa.
"""

from typing import Optional

import numpy as np

from src.config import ToleranceConfig, resolve_config
from src.exceptions import OutsideDisk, ShapeMismatch
from src.models import ChoiceSequence, CmvAssembly, CoefficientBlocks
from .cmv import assemble, hat_lift, CAP_ZERO
from .linalg import solve, block2x2


def check_disk(z: complex, config: ToleranceConfig) -> complex:
    z = complex(z)
    if abs(z) > 1.0 - config.radius_guard:
        raise OutsideDisk(f"|z| = {abs(z):.17g} excede 1 − {config.radius_guard:.1e}")
    return z


class CoefficientFunction:
    """
    Função coeficiente de nível N para a sequência Γ₀..Γ_N.

    N = 2n+1 usa 𝒮ₙ,₀ diretamente. N = 2n usa a sequência elevada
    (0, Γ₀, …, Γ_N); então Θ⁽⁰⁾ e C são lidos sem o fator z, o que
    corresponde a dividir Θ̂ = zΘ por z.
    """

    def __init__(self, sequence: ChoiceSequence, config: Optional[ToleranceConfig] = None):
        self.config = resolve_config(config)
        self.sequence = sequence
        self.level = sequence.last_index
        if self.level < 0:
            raise ShapeMismatch("sequência vazia não define função coeficiente")
        self.hat = self.level % 2 == 0
        base = hat_lift(sequence) if self.hat else sequence
        self.base = base
        n = (base.last_index - 1) // 2
        self.assembly: CmvAssembly = assemble(base, n, cap=CAP_ZERO)
        self._build_boundary()

    @property
    def parity(self) -> str:
        return "even" if self.hat else "odd"

    @property
    def parameter_shape(self):
        """Forma exigida de E: 𝔇_{Γ_N} → 𝔇_{Γ*_N}"""
        return self.assembly.cap_shape

    def _build_boundary(self) -> None:
        asm = self.assembly
        index, index_tilde = asm.index, asm.index_tilde
        first, second = self.base.param(0), self.base.param(1)
        self.gamma0 = first.gamma
        dim_n, dim_m = first.shape

        # M (linha superior): D_{Γ*₀}[Γ₁, D_{Γ*₁}] P_{𝓗₁}
        self.top = np.zeros((dim_n, index.total), dtype=complex)
        self.top[:, index.span([0, 1])] = first.dstar_leg @ np.hstack([second.gamma, second.dstar_leg])
        # L (coluna de entrada): 𝔐 → 𝔇_{Γ₀} via D_{Γ₀}
        self.entry = asm.boundary["d_gamma0"] @ first.d_leg

        # Versões til
        self.top_tilde = np.zeros((dim_n, index_tilde.total), dtype=complex)
        self.top_tilde[:, index_tilde.slot(0)] = first.dstar_leg
        self.entry_tilde = np.zeros((index_tilde.total, dim_m), dtype=complex)
        self.entry_tilde[index_tilde.span([0, 1]), :] = np.vstack([
            second.gamma @ first.d_leg,
            second.d_leg @ first.d_leg
        ])

    def evaluate(self, z: complex, tilde: bool = False) -> CoefficientBlocks:
        """(Θ⁽⁰⁾, A, B, C) por uma única resolução com (I − z𝒮ₙ,₀)"""
        z = check_disk(z, self.config)
        asm = self.assembly
        if tilde:
            state, top, entry = asm.s_tilde_n0, self.top_tilde, self.entry_tilde
            row, column = asm.cap_row_tilde, asm.cap_column_tilde
        else:
            state, top, entry = asm.s_n0, self.top, self.entry
            row, column = asm.cap_row, asm.cap_column
        dim_m = entry.shape[1]
        size = state.shape[0]
        rhs = np.hstack([entry, column])
        resolved = solve(np.eye(size) - z * state, rhs, self.config)
        upper = top @ resolved
        lower = row @ resolved
        if self.hat:
            theta0, c = upper[:, :dim_m], upper[:, dim_m:]
        else:
            theta0, c = self.gamma0 + z * upper[:, :dim_m], z * upper[:, dim_m:]
        return CoefficientBlocks(
            theta0=theta0,
            a=z * lower[:, dim_m:],
            b=z * lower[:, :dim_m],
            c=c,
            z=z
        )

    def compose(self, blocks: CoefficientBlocks, e_value) -> np.ndarray:
        """Θ = Θ⁽⁰⁾ + C E (I − A E)⁻¹ B"""
        e_value = self._check_parameter(e_value)
        inner = np.eye(blocks.a.shape[0]) - blocks.a @ e_value
        return blocks.theta0 + blocks.c @ e_value @ solve(inner, blocks.b, self.config)

    def compose_left(self, blocks: CoefficientBlocks, e_value) -> np.ndarray:
        """Θ = Θ⁽⁰⁾ + C (I − E A)⁻¹ E B"""
        e_value = self._check_parameter(e_value)
        inner = np.eye(e_value.shape[0]) - e_value @ blocks.a
        return blocks.theta0 + blocks.c @ solve(inner, e_value @ blocks.b, self.config)

    def _check_parameter(self, e_value) -> np.ndarray:
        e_value = np.asarray(e_value, dtype=complex)
        if e_value.shape != self.parameter_shape:
            raise ShapeMismatch("parâmetro E com dimensões de defeito incorretas",
                                self.parameter_shape, e_value.shape)
        return e_value

    def system_matrix(self, tilde: bool = False) -> np.ndarray:
        """
        Operador de sistema [[N, M], [L, 𝒮ₙ,₀]] (unitário) com
        N = diag(Γ₀, 0): 𝔐 ⊕ 𝔇_{Γ*_N} → 𝔑 ⊕ 𝔇_{Γ_N}.
        Para N par refere-se à sequência elevada.
        """
        asm = self.assembly
        if tilde:
            state, top, entry = asm.s_tilde_n0, self.top_tilde, self.entry_tilde
            row, column = asm.cap_row_tilde, asm.cap_column_tilde
        else:
            state, top, entry = asm.s_n0, self.top, self.entry
            row, column = asm.cap_row, asm.cap_column
        rows_out, cols_in = self.gamma0.shape
        rank_star, rank = column.shape[1], row.shape[0]
        feedthrough = block2x2(
            self.gamma0, np.zeros((rows_out, rank_star)),
            np.zeros((rank, cols_in)), np.zeros((rank, rank_star))
        )
        return block2x2(feedthrough, np.vstack([top, row]), np.hstack([entry, column]), state)


def resolvent_update(assembly: CmvAssembly, gamma_cap, z: complex,
                     config: Optional[ToleranceConfig] = None) -> np.ndarray:
    """
    (I − z𝒮ₙ,Γ)⁻¹ a partir de R₀ = (I − z𝒮ₙ,₀)⁻¹:
        R_Γ = R₀ + z R₀ j (I − z Γ K R₀ j)⁻¹ Γ K R₀
    com j a injeção de 𝔇_{Γ*_{2n+1}} e K = [D_{Γ_{2n+1}}, −Γ*_{2n+1}] P_{𝓗_{n+1}}.
    """
    config = resolve_config(config)
    z = check_disk(z, config)
    gamma_cap = np.asarray(gamma_cap, dtype=complex)
    if gamma_cap.shape != assembly.cap_shape:
        raise ShapeMismatch("tampa com forma incorreta", assembly.cap_shape, gamma_cap.shape)
    size = assembly.s_n0.shape[0]
    base = solve(np.eye(size) - z * assembly.s_n0, np.eye(size, dtype=complex), config)
    left = base @ assembly.cap_column
    right = gamma_cap @ assembly.cap_row @ base
    inner = np.eye(gamma_cap.shape[0]) - z * right @ assembly.cap_column
    return base + z * left @ solve(inner, right, config)
