import dataclasses
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.config import ToleranceConfig, resolve_config
from src.core import (
    CoefficientFunction, assemble, check_disk, corner_resolvent, finite_cmv, operator_norm, solve,
    CAP_ACTUAL, CAP_ZERO
)
from src.exceptions import (
    NotASchurSequence, NotUnique, ShapeMismatch, UniqueProblem
)
from src.models import (
    ChoiceSequence, CmvAssembly, ContractionClass, ParameterDocument, ParameterKind,
    ProblemClassification, ProblemDocument, SchurProblemData, SolutionReport
)
from src.repositories import ProblemRepository
from src.services.schur_sequence import (
    ProblemClassifier, SchurAlgorithm, shorted_via_params, SIDE_M, SIDE_N
)
from src.strategies import (
    CentralEvaluator, ConstantEvaluator, SchurEvaluator, SolutionEvaluator,
    TerminatedEvaluator, certify_schur_norm
)
from src.utils import LogFormatter


@dataclass(eq=False)
class PreparedProblem:
    """Problema pronto para consulta: dados, parâmetros e classificação"""
    data: SchurProblemData
    classification: ProblemClassification
    sequence: Optional[ChoiceSequence]
    config: ToleranceConfig

    def require_sequence(self) -> ChoiceSequence:
        if self.sequence is None:
            raise NotASchurSequence(
                f"problema insolúvel: ‖T_N‖ = {self.classification.toeplitz_norm:.17g}"
            )
        return self.sequence


def compression_check(cs: ChoiceSequence, n: int, z: complex,
                      config: Optional[ToleranceConfig] = None) -> float:
    """
    ‖P_{𝒦ₙ}(I − z𝒯₀)⁻¹|𝒦ₙ − (I − z𝒮ₙ,Θ(z))⁻¹‖ com Θ a função de parâmetros
    Γ_{2n+2}, Γ_{2n+3}, …. A CMV truncada maior vem da unitária finita
    (terminação unitária) ou da montagem fechada com cauda nula.
    """
    config = resolve_config(config)
    z = check_disk(z, config)
    if cs.reason is ContractionClass.UNITARY:
        finite = finite_cmv(cs)
        state = finite.state_operator
        index = finite.index
    else:
        size = max(n, cs.last_index // 2)
        closing = assemble(cs, size, cap=np.zeros(_cap_shape(cs, size)), allow_zero_tail=True)
        state = closing.s_n
        index = closing.index
    corner = sum(index.dims[:2 * n + 2])
    lhs = corner_resolvent(state, corner, z, config)

    section = assemble(cs, n, cap=np.zeros(_cap_shape(cs, n)), allow_zero_tail=True)
    start = 2 * n + 2
    if start <= cs.last_index:
        theta = SchurEvaluator.from_sequence(cs.tail(start), config)(z)
    else:
        theta = np.zeros(section.cap_shape, dtype=complex)
    s_theta, _ = section.with_cap(theta)
    rhs = solve(np.eye(s_theta.shape[0]) - z * s_theta, np.eye(s_theta.shape[0], dtype=complex), config)
    return operator_norm(lhs - rhs)


def _reconcile(classification: ProblemClassification,
               sequence: Optional[ChoiceSequence]) -> ProblemClassification:
    """Unicidade segue a terminação da sequência extraída"""
    if sequence is None:
        return classification
    terminated = sequence.terminated is not None
    if classification.unique == terminated:
        return classification
    LogFormatter.log_classification_adjusted(classification.unique, sequence.terminated)
    return dataclasses.replace(
        classification, unique=terminated, first_degenerate_index=sequence.terminated
    )


def _cap_shape(cs: ChoiceSequence, n: int) -> Tuple[int, int]:
    tail = cs.param(2 * n + 1)
    return tail.rank_star, tail.rank


class SchurProblemProcessor:
    """Orquestrador principal: classificação, parâmetros e avaliação de soluções"""

    def __init__(self, config: Optional[ToleranceConfig] = None,
                 repository: Optional[ProblemRepository] = None):
        self.config = resolve_config(config)
        self.repository = repository

    def load(self, name: str) -> PreparedProblem:
        """Carrega e prepara um problema do repositório"""
        if self.repository is None:
            raise ValueError("processador sem repositório")
        prepared = self.prepare(self.repository.load_problem(name))
        LogFormatter.log_problem_loaded(name, prepared.data.dim_m, prepared.data.dim_n, prepared.data.order)
        return prepared

    def prepare(self, problem: Union[ProblemDocument, SchurProblemData]) -> PreparedProblem:
        """
        Dados de Taylor: classifica e, se solúvel, extrai os parâmetros.
        Parâmetros: constrói a sequência e recupera os coeficientes C₀..C_N.
        """
        config = self.config
        if isinstance(problem, ProblemDocument):
            if problem.tolerances:
                config = config.with_overrides(problem.tolerances)
            algorithm = SchurAlgorithm(config)
            if problem.given_as_parameters:
                sequence = algorithm.build_sequence(problem.parameters, problem.dim_m, problem.dim_n)
                data = SchurProblemData(
                    problem.dim_m, problem.dim_n,
                    tuple(algorithm.params_to_taylor(sequence, sequence.last_index))
                )
                classification = ProblemClassifier(config).classify(data)
                return PreparedProblem(data, _reconcile(classification, sequence), sequence, config)
            data = SchurProblemData(problem.dim_m, problem.dim_n, problem.coefficients)
        else:
            data = problem

        classification = ProblemClassifier(config).classify(data)
        sequence = SchurAlgorithm(config).taylor_to_params(data) if classification.solvable else None
        return PreparedProblem(data, _reconcile(classification, sequence), sequence, config)

    def classify(self, data: SchurProblemData) -> ProblemClassification:
        return ProblemClassifier(self.config).classify(data)

    def parameters(self, prepared: PreparedProblem) -> Tuple[ChoiceSequence, List[Tuple[np.ndarray, np.ndarray]]]:
        """Sequência de escolha e operadores encurtados por nível"""
        cs = prepared.require_sequence()
        shorted = [(shorted_via_params(cs, k, SIDE_M), shorted_via_params(cs, k, SIDE_N))
                   for k in range(len(cs))]
        return cs, shorted

    def coefficient_function(self, prepared: PreparedProblem) -> CoefficientFunction:
        return CoefficientFunction(prepared.require_sequence(), prepared.config)

    def parameter_evaluator(self, prepared: PreparedProblem, document: ParameterDocument) -> SchurEvaluator:
        """E a partir do documento, verificado contra as dimensões de defeito terminais"""
        if prepared.classification.unique:
            raise UniqueProblem("problema de solução única não aceita parâmetro livre")
        expected = self.coefficient_function(prepared).parameter_shape
        config = prepared.config
        if document.kind is ParameterKind.CONSTANT:
            evaluator = ConstantEvaluator(document.matrix, config)
        else:
            rows, cols = document.coefficients[0].shape
            data = SchurProblemData(cols, rows, document.coefficients)
            inner = SchurProblemProcessor(config).prepare(data)
            if document.kind is ParameterKind.CENTRAL:
                sequence = inner.require_sequence()
                evaluator = SchurEvaluator.from_sequence(sequence, config)
            else:
                evaluator = self.unique_evaluator(inner)
        if tuple(evaluator.shape) != tuple(expected):
            raise ShapeMismatch("parâmetro E incompatível com 𝔇_{Γ_N} → 𝔇_{Γ*_N}",
                                tuple(expected), tuple(evaluator.shape))
        return evaluator

    def solution_evaluator(self, prepared: PreparedProblem, parameter: SchurEvaluator) -> SolutionEvaluator:
        """Θ_E = Θ⁽⁰⁾ + C E (I − A E)⁻¹ B"""
        cs = prepared.require_sequence()
        if prepared.classification.unique or cs.terminated is not None:
            raise UniqueProblem("problema de solução única: use unique_solution")
        cf = CoefficientFunction(cs, prepared.config)
        if tuple(parameter.shape) != tuple(cf.parameter_shape):
            raise ShapeMismatch("parâmetro E com dimensões de defeito incorretas",
                                tuple(cf.parameter_shape), tuple(parameter.shape))
        return SolutionEvaluator(cf, parameter, prepared.config)

    def unique_evaluator(self, prepared: PreparedProblem) -> TerminatedEvaluator:
        if not prepared.classification.unique:
            raise NotUnique("o problema admite infinitas soluções")
        return TerminatedEvaluator(prepared.require_sequence(), via_finite_cmv=False, config=prepared.config)

    def central_evaluator(self, prepared: PreparedProblem) -> SchurEvaluator:
        """Solução central; para problemas únicos coincide com a solução única"""
        cs = prepared.require_sequence()
        if cs.terminated is not None:
            return self.unique_evaluator(prepared)
        return CentralEvaluator(cs, config=prepared.config)

    def solve_theta(self, prepared: PreparedProblem, parameter: SchurEvaluator, z: complex) -> SolutionReport:
        evaluator = self.solution_evaluator(prepared, parameter)
        return self.report(evaluator, [z], prepared.config)[0]

    def unique_solution(self, prepared: PreparedProblem, z: complex) -> SolutionReport:
        return self.report(self.unique_evaluator(prepared), [z], prepared.config)[0]

    def report(self, evaluator: SchurEvaluator, points: Sequence[complex],
               config: Optional[ToleranceConfig] = None) -> List[SolutionReport]:
        """Avalia nos pontos e anexa a norma certificada na grade padrão"""
        config = config or self.config
        certified = certify_schur_norm(evaluator)
        if certified > 1.0 + config.cert_tol:
            LogFormatter.log_certification(certified, config.cert_tol)
        return [
            SolutionReport(value=evaluator(z), parameter_used=evaluator.describe(),
                           z=complex(z), certified_norm=certified)
            for z in points
        ]

    def cmv_assembly(self, prepared: PreparedProblem, cap: str = CAP_ZERO) -> Tuple[CmvAssembly, bool]:
        """
        cap "zero": montagem da função coeficiente (elevada se N par).
        cap "actual": Γ_N como tampa de 𝒮ₙ com N = 2n+2.
        """
        cs = prepared.require_sequence()
        if cap == CAP_ZERO:
            cf = CoefficientFunction(cs, prepared.config)
            return cf.assembly, cf.hat
        if cap != CAP_ACTUAL:
            raise ValueError(f"tampa desconhecida: {cap}")
        last = cs.last_index
        if last < 2 or last % 2:
            raise ShapeMismatch("tampa efetiva exige N par e N >= 2", ("N par >= 2",), (last,))
        return assemble(cs, (last - 2) // 2, cap=CAP_ACTUAL), False

    def compression_check(self, cs: ChoiceSequence, n: int, z: complex) -> float:
        return compression_check(cs, n, z, self.config)
