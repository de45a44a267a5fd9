"""
Suíte de invariantes sobre instâncias aleatórias semeadas e sobre o
problema fornecido.
"""

from typing import Callable, List, Optional, Tuple

import numpy as np
import scipy.linalg

from src.config import ToleranceConfig, resolve_config
from src.core import (
    CoefficientFunction, analyze_contraction, assemble, elementary_rotation, operator_norm,
    psd_sqrt, resolvent_update, solve, CAP_ACTUAL, CAP_ZERO
)
from src.models import ChoiceSequence, InvariantResult, SchurProblemData
from src.services.processor import PreparedProblem, compression_check
from src.services.schur_sequence import (
    ProblemClassifier, SchurAlgorithm, shorted_via_params, SIDE_M, SIDE_N
)
from src.strategies import (
    CentralEvaluator, ConstantEvaluator, RecursiveEvaluator, SchurEvaluator, SolutionEvaluator,
    certify_schur_norm, taylor_extract
)
from src.utils import LogFormatter


class RandomInstanceFactory:
    """Contrações, sequências de escolha e dados de Taylor aleatórios"""

    def __init__(self, rng: np.random.Generator, config: Optional[ToleranceConfig] = None):
        self.rng = rng
        self.config = resolve_config(config)

    def gaussian(self, rows: int, cols: int) -> np.ndarray:
        return self.rng.standard_normal((rows, cols)) + 1j * self.rng.standard_normal((rows, cols))

    def contraction(self, rows: int, cols: int, scale: float = 0.95) -> np.ndarray:
        """Contração estrita com norma uniforme em (0.05, scale)"""
        matrix = self.gaussian(rows, cols)
        return matrix / operator_norm(matrix) * self.rng.uniform(0.05, scale)

    def unitary(self, dim: int) -> np.ndarray:
        q, r = scipy.linalg.qr(self.gaussian(dim, dim))
        diagonal = np.diag(r)
        return q * (diagonal / np.abs(diagonal))[np.newaxis, :]

    def degenerate(self, rows: int, cols: int) -> np.ndarray:
        """Isometria (rows >= cols), co-isometria (rows < cols); unitária se quadrada"""
        if rows >= cols:
            return self.unitary(rows)[:, :cols]
        return self.unitary(cols)[:, :rows].conj().T

    def dims(self, max_dim: int = 3) -> Tuple[int, int]:
        dim_m = int(self.rng.integers(1, max_dim + 1))
        return dim_m, int(self.rng.integers(1, max_dim + 1))

    def sequence(self, dim_m: int, dim_n: int, length: int, terminal: bool = False) -> ChoiceSequence:
        """Γ₀..Γ_{length−1} estritas; com terminal=True a última é degenerada"""
        entries = []
        rows, cols = dim_n, dim_m
        for k in range(length):
            last = terminal and k == length - 1
            gamma = self.degenerate(rows, cols) if last else self.contraction(rows, cols)
            entry = analyze_contraction(gamma, config=self.config)
            entries.append(entry)
            rows, cols = entry.rank_star, entry.rank
        return ChoiceSequence(tuple(entries), dim_m, dim_n)

    def problem(self, dim_m: int, dim_n: int, order: int,
                terminal: bool = False) -> Tuple[ChoiceSequence, SchurProblemData]:
        cs = self.sequence(dim_m, dim_n, order + 1, terminal)
        coeffs = SchurAlgorithm(self.config).params_to_taylor(cs, order, method="recursion")
        return cs, SchurProblemData(dim_m, dim_n, tuple(coeffs))

    def point(self, radius: float = 0.9) -> complex:
        return complex(self.rng.uniform(0.0, radius) * np.exp(2j * np.pi * self.rng.uniform()))


class InvariantSuite:
    """Executa as verificações; a mesma semente produz os mesmos resultados"""

    def __init__(self, config: Optional[ToleranceConfig] = None, seed: int = 0, instances: int = 3):
        self.config = resolve_config(config)
        self.seed = seed
        self.instances = instances

    def run(self, prepared: Optional[PreparedProblem] = None) -> List[InvariantResult]:
        checks: List[Tuple[str, float, Callable[[RandomInstanceFactory], float]]] = [
            ("linalg.psd_sqrt", 1e-10, self._psd_sqrt),
            ("defect.rotation_unitary", 1e-11, self._rotation),
            ("schur.shorted_formula", 1e-9, self._shorted),
            ("schur.round_trip", 1e-9, self._round_trip),
            ("schur.adjoint_parameters", 1e-9, self._adjoint_parameters),
            ("cmv.structure", 1e-11, self._cmv_structure),
            ("coefficients.conservative", 1e-10, self._coefficients),
            ("solution.resolvent_update", 1e-10, self._resolvent_update),
            ("solution.interpolation", 1e-8, self._interpolation),
            ("solution.compression", 1e-9, self._compression),
            ("realization.agreement", 1e-10, self._realizations),
        ]
        results = []
        for offset, (name, threshold, check) in enumerate(checks):
            factory = RandomInstanceFactory(np.random.default_rng([self.seed, offset]), self.config)
            residual = max(check(factory) for _ in range(self.instances))
            results.append(self._record(name, residual, threshold, f"{self.instances} instâncias"))
        if prepared is not None:
            results.extend(self._problem_checks(prepared))
        return results

    def _record(self, name: str, residual: float, threshold: float,
                detail: Optional[str] = None) -> InvariantResult:
        result = InvariantResult(name=name, residual=float(residual), threshold=threshold, detail=detail)
        LogFormatter.log_invariant(result)
        return result

    def _psd_sqrt(self, factory: RandomInstanceFactory) -> float:
        a = factory.gaussian(3, 2)
        h = a @ a.conj().T
        root = psd_sqrt(h, self.config)
        return operator_norm(root @ root - h) / max(1.0, operator_norm(h))

    def _rotation(self, factory: RandomInstanceFactory) -> float:
        rows, cols = factory.dims()
        residual = 0.0
        for gamma in (factory.contraction(rows, cols), factory.degenerate(rows, cols)):
            dd = analyze_contraction(gamma, config=self.config)
            j = elementary_rotation(dd).matrix
            residual = max(
                residual,
                operator_norm(j.conj().T @ j - np.eye(j.shape[1])),
                operator_norm(j @ j.conj().T - np.eye(j.shape[0])),
                operator_norm(dd.gamma @ dd.d_gamma - dd.d_gamma_star @ dd.gamma)
            )
        return residual

    def _shorted(self, factory: RandomInstanceFactory) -> float:
        dim_m, dim_n = factory.dims()
        cs, data = factory.problem(dim_m, dim_n, int(factory.rng.integers(0, 4)))
        classifier = ProblemClassifier(self.config)
        residual = 0.0
        for n in range(data.order + 1):
            direct_m, direct_n = classifier.shorted_pair(data.prefix(n))
            residual = max(residual,
                           operator_norm(direct_m - shorted_via_params(cs, n, SIDE_M)),
                           operator_norm(direct_n - shorted_via_params(cs, n, SIDE_N)))
        return residual

    def _round_trip(self, factory: RandomInstanceFactory) -> float:
        dim_m, dim_n = factory.dims()
        cs, data = factory.problem(dim_m, dim_n, int(factory.rng.integers(1, 5)))
        recovered = SchurAlgorithm(self.config).taylor_to_params(data)
        return max(operator_norm(a - b) for a, b in zip(recovered.gammas, cs.gammas))

    def _adjoint_parameters(self, factory: RandomInstanceFactory) -> float:
        dim_m, dim_n = factory.dims()
        cs, data = factory.problem(dim_m, dim_n, int(factory.rng.integers(1, 4)))
        recovered = SchurAlgorithm(self.config).taylor_to_params(data.adjoint())
        return max(operator_norm(a - b) for a, b in zip(recovered.gammas, cs.adjoint().gammas))

    def _cmv_structure(self, factory: RandomInstanceFactory) -> float:
        dim_m, dim_n = factory.dims()
        n = int(factory.rng.integers(0, 2))
        cs = factory.sequence(dim_m, dim_n, 2 * n + 3, terminal=bool(factory.rng.integers(0, 2)))
        asm = assemble(cs, n, cap=CAP_ACTUAL)
        adjoint = assemble(cs.adjoint(), n, cap=CAP_ACTUAL)
        last = 2 * n + 1
        return max(
            operator_norm(asm.v_n.conj().T @ asm.v_n - np.eye(asm.v_n.shape[1])),
            operator_norm(asm.v_n @ asm.s_n - asm.s_tilde_n @ asm.v_n),
            operator_norm(asm.s_tilde_n.conj().T - adjoint.s_n),
            operator_norm(asm.index.projection([last]) @ asm.s_n0),
            operator_norm(asm.s_tilde_n0 @ asm.index_tilde.embedding([last])),
            max(0.0, operator_norm(asm.s_n) - 1.0),
            max(0.0, operator_norm(asm.s_n0) - 1.0)
        )

    def _coefficients(self, factory: RandomInstanceFactory) -> float:
        dim_m, dim_n = factory.dims()
        cs = factory.sequence(dim_m, dim_n, int(factory.rng.integers(2, 6)))
        cf = CoefficientFunction(cs, self.config)
        z = factory.point()
        blocks = cf.evaluate(z)
        tilde = cf.evaluate(z, tilde=True)
        system = cf.system_matrix()
        e_value = factory.contraction(*cf.parameter_shape)
        return max(
            max(0.0, operator_norm(blocks.as_matrix()) - 1.0),
            operator_norm(blocks.as_matrix() - tilde.as_matrix()),
            operator_norm(system.conj().T @ system - np.eye(system.shape[1])),
            operator_norm(cf.compose(blocks, e_value) - cf.compose_left(blocks, e_value))
        )

    def _resolvent_update(self, factory: RandomInstanceFactory) -> float:
        dim_m, dim_n = factory.dims()
        n = int(factory.rng.integers(0, 2))
        asm = assemble(factory.sequence(dim_m, dim_n, 2 * n + 2), n, cap=CAP_ZERO)
        cap = factory.contraction(*asm.cap_shape, scale=1.0)
        z = factory.point(0.95)
        s_cap, _ = asm.with_cap(cap)
        size = s_cap.shape[0]
        direct = solve(np.eye(size) - z * s_cap, np.eye(size, dtype=complex), self.config)
        return operator_norm(resolvent_update(asm, cap, z, self.config) - direct)

    def _interpolation(self, factory: RandomInstanceFactory) -> float:
        dim_m, dim_n = factory.dims()
        cs, data = factory.problem(dim_m, dim_n, int(factory.rng.integers(1, 5)))
        cf = CoefficientFunction(cs, self.config)
        parameter = ConstantEvaluator(factory.contraction(*cf.parameter_shape, scale=1.0), self.config)
        solution = SolutionEvaluator(cf, parameter, self.config)
        extracted = taylor_extract(solution, data.order, config=self.config)
        return max(operator_norm(a - b) for a, b in zip(extracted, data.coeffs))

    def _compression(self, factory: RandomInstanceFactory) -> float:
        dim_m = int(factory.rng.integers(1, 3))
        n = int(factory.rng.integers(0, 2))
        extra = int(factory.rng.integers(1, 3))
        z = factory.point()
        zero_tail = factory.sequence(dim_m, dim_m, 2 * n + 2 + extra)
        unitary_tail = factory.sequence(dim_m, dim_m, 2 * n + 2 + extra, terminal=True)
        return max(compression_check(zero_tail, n, z, self.config),
                   compression_check(unitary_tail, n, z, self.config))

    def _realizations(self, factory: RandomInstanceFactory) -> float:
        dim_m, dim_n = factory.dims()
        z = factory.point()
        cs = factory.sequence(dim_m, dim_n, int(factory.rng.integers(1, 5)))
        terminated = factory.sequence(dim_m, dim_m, int(factory.rng.integers(1, 5)), terminal=True)
        central = CentralEvaluator(cs, config=self.config)
        return max(
            operator_norm(CentralEvaluator(cs.adjoint(), config=self.config)(np.conj(z)).conj().T - central(z)),
            operator_norm(CentralEvaluator(cs, extra_padding=1, config=self.config)(z) - central(z)),
            operator_norm(RecursiveEvaluator(cs, self.config)(z) - central(z)),
            operator_norm(RecursiveEvaluator(terminated, self.config)(z)
                          - SchurEvaluator.from_sequence(terminated, self.config)(z))
        )

    def _problem_checks(self, prepared: PreparedProblem) -> List[InvariantResult]:
        results = []
        cs, data = prepared.sequence, prepared.data
        if cs is None:
            return [self._record("problem.solvable", prepared.classification.toeplitz_norm - 1.0,
                                 prepared.config.contraction_slack, "‖T_N‖ − 1")]
        shorted_m = shorted_via_params(cs, data.order, SIDE_M)
        results.append(self._record(
            "problem.shorted_formula",
            operator_norm(shorted_m - prepared.classification.shorted_m), 1e-9
        ))
        evaluator = SchurEvaluator.from_sequence(cs, prepared.config)
        extracted = taylor_extract(evaluator, data.order, config=prepared.config)
        results.append(self._record(
            "problem.interpolation",
            max(operator_norm(a - b) for a, b in zip(extracted, data.coeffs)), 1e-8
        ))
        results.append(self._record(
            "problem.certified_norm",
            max(0.0, certify_schur_norm(evaluator) - 1.0), prepared.config.cert_tol, "grade 3×64"
        ))
        return results


__all__ = [
    'RandomInstanceFactory',
    'InvariantSuite'
]
