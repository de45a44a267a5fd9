"""
Exemplos de uso do resolvedor do problema de Schur matricial
Demonstra classificação, soluções com parâmetro livre, solução única e tolerâncias
"""

import numpy as np

from src.config import ConfigManager, ToleranceConfig
from src.exceptions import ConfigurationError, NotASchurSequence
from src.repositories.memory import InMemoryProblemRepository
from src.services import InvariantSuite, SchurProblemProcessor
from src.strategies import ConstantEvaluator
from src.utils import SchurReportGenerator


def scalar(values):
    """Lista de escalares reais como lista de matrizes 1×1 [re, im]"""
    return [[[[v, 0.0]]] for v in values]


def setup_repository() -> InMemoryProblemRepository:
    repository = InMemoryProblemRepository()
    repository.add_problem("nao_unico", {"dim_m": 1, "dim_n": 1, "coefficients": scalar([0.5, 0.375])})
    repository.add_problem("unico", {"dim_m": 1, "dim_n": 1, "coefficients": scalar([0.5, 0.75])})
    repository.add_problem("insoluvel", {"dim_m": 1, "dim_n": 1, "coefficients": scalar([2.0])})
    repository.add_problem("matricial", {
        "dim_m": 2, "dim_n": 2,
        "coefficients": [
            [[[0.3, 0.0], [0.1, 0.1]], [[0.0, -0.2], [0.2, 0.0]]],
            [[[0.1, 0.0], [0.0, 0.0]], [[0.05, 0.05], [0.1, 0.0]]],
        ],
    })
    repository.add_parameter("meio", {"kind": "constant", "matrix": [[[0.5, 0.0]]]})
    return repository


def example_classification():
    """Exemplo de classificação de problemas escalares"""
    print("\n" + "="*60)
    print("EXEMPLO: Classificação de Problemas")
    print("="*60 + "\n")

    processor = SchurProblemProcessor(repository=setup_repository())
    for name in ("nao_unico", "unico", "insoluvel"):
        prepared = processor.load(name)
        print(f"Problema '{name}':")
        print(SchurReportGenerator.generate_summary(prepared.classification, prepared.sequence))


def example_free_parameter():
    """Exemplo de soluções Θ_E para vários parâmetros constantes"""
    print("\n" + "="*60)
    print("EXEMPLO: Soluções com Parâmetro Livre")
    print("="*60 + "\n")

    repository = setup_repository()
    processor = SchurProblemProcessor(repository=repository)
    prepared = processor.load("nao_unico")
    z = 0.4
    for value in (0.0, 0.5, -1.0, 1j):
        report = processor.solve_theta(prepared, ConstantEvaluator([[value]]), z)
        print(f"E ≡ {value}: Θ({z}) = {report.value[0, 0]:.10f}, "
              f"norma certificada {report.certified_norm:.6f}")

    parameter = processor.parameter_evaluator(prepared, repository.load_parameter("meio"))
    solution = processor.solution_evaluator(prepared, parameter)
    print(f"\nParâmetro do repositório: {solution.describe()}")


def example_unique_solution():
    """Exemplo com problema de solução única"""
    print("\n" + "="*60)
    print("EXEMPLO: Solução Única")
    print("="*60 + "\n")

    processor = SchurProblemProcessor(repository=setup_repository())
    prepared = processor.load("unico")
    print(f"Terminação em p = {prepared.sequence.terminated} ({prepared.sequence.reason.value})")
    for z in (0.0, 0.5, -0.5, 0.5j):
        report = processor.unique_solution(prepared, z)
        expected = (0.5 + z) / (1 + 0.5 * z)
        print(f"Θ({z}) = {complex(report.value[0, 0]):.10f}  (fórmula fechada {expected:.10f})")


def example_matrix_problem():
    """Exemplo matricial 2×2 com verificação de invariantes"""
    print("\n" + "="*60)
    print("EXEMPLO: Problema Matricial e Suíte de Invariantes")
    print("="*60 + "\n")

    processor = SchurProblemProcessor(repository=setup_repository())
    try:
        prepared = processor.load("matricial")
    except NotASchurSequence as error:
        print(f"✗ Dados rejeitados: {error}")
        return
    print(SchurReportGenerator.generate_summary(prepared.classification, prepared.sequence))
    central = processor.central_evaluator(prepared)
    print(f"Θ_central(0.3) =\n{np.round(central(0.3), 6)}")

    results = InvariantSuite(prepared.config, seed=1, instances=2).run(prepared)
    failed = [r for r in results if not r.passed]
    print(f"\nInvariantes: {len(results) - len(failed)}/{len(results)} aprovados")
    for result in failed:
        print(f"  ✗ {result.name}: {result.residual:.3e}")


def example_invalid_configuration():
    """Exemplo tratando erro de configuração inválida"""
    print("\n" + "="*60)
    print("EXEMPLO: Tratamento de Erro de Configuração")
    print("="*60 + "\n")

    try:
        ToleranceConfig().with_overrides({"rank_tol": 2.0})
    except ConfigurationError as error:
        print(f"✓ Erro capturado: {error}")

    config_manager = ConfigManager()
    config_manager.set_config(ToleranceConfig(contraction_slack=1e-6))
    print(f"✓ Folga de contração ativa: {config_manager.get_config().contraction_slack:.1e}")
    config_manager.reset()


if __name__ == "__main__":
    print("\n╔════════════════════════════════════════════════════════════╗")
    print("║        EXEMPLOS - PROBLEMA DE SCHUR MATRICIAL             ║")
    print("╚════════════════════════════════════════════════════════════╝")

    example_classification()
    example_free_parameter()
    example_unique_solution()
    example_matrix_problem()
    example_invalid_configuration()

    print("\n" + "="*60)
    print("Todos os exemplos foram executados com sucesso!")
    print("="*60 + "\n")
