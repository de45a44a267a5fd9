"""
Hierarquia de erros do sistema de interpolação de Schur
"""

from typing import Optional, Tuple


class SchurError(Exception):
    """Erro base de todo o pacote"""

    category = "schur"


class NotHermitian(SchurError, ValueError):
    """Matriz não é hermitiana dentro da tolerância"""

    category = "numeric"


class NotPSD(SchurError, ValueError):
    """Matriz possui autovalor negativo além da tolerância"""

    category = "numeric"


class Singular(SchurError, ValueError):
    """Sistema linear numericamente singular"""

    category = "numeric"


class NotContraction(SchurError, ValueError):
    """Norma do operador excede 1 + folga"""

    category = "numeric"


class NotASchurSequence(SchurError, ValueError):
    """Matriz de Toeplitz dos dados não é uma contração (problema sem solução)"""

    category = "unsolvable"


class InconsistentData(SchurError, ValueError):
    """Dados forçam coeficientes fora dos subespaços de defeito"""

    category = "inconsistent"


class ShapeMismatch(SchurError, ValueError):
    """Dimensões incompatíveis"""

    category = "shape"

    def __init__(
        self,
        message: str,
        expected: Optional[Tuple[int, ...]] = None,
        actual: Optional[Tuple[int, ...]] = None
    ):
        if expected is not None or actual is not None:
            message = f"{message} (esperado {expected}, recebido {actual})"
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class DegenerateTail(SchurError, ValueError):
    """Tampa nula pedida com espaço de defeito terminal trivial"""

    category = "degenerate"


class NotTerminated(SchurError, ValueError):
    """Sequência de escolha não terminada"""

    category = "degenerate"


class OutsideDisk(SchurError, ValueError):
    """Ponto fora do disco |z| <= 1 - guarda"""

    category = "domain"


class UniqueProblem(SchurError, ValueError):
    """Problema com solução única: use unique_solution"""

    category = "unique"


class NotUnique(SchurError, ValueError):
    """Problema sem solução única"""

    category = "unique"


class ProblemFormatError(SchurError, ValueError):
    """Documento de entrada malformado"""

    category = "format"

    def __init__(self, field: str, message: str):
        super().__init__(f"campo '{field}': {message}")
        self.field = field


class ConfigurationError(SchurError, ValueError):
    """Configuração de tolerâncias inválida"""

    category = "format"


class IndexOutOfRange(SchurError, IndexError):
    """Índice além das entradas da sequência"""

    category = "index"


__all__ = [
    'SchurError',
    'NotHermitian',
    'NotPSD',
    'Singular',
    'NotContraction',
    'NotASchurSequence',
    'InconsistentData',
    'ShapeMismatch',
    'DegenerateTail',
    'NotTerminated',
    'OutsideDisk',
    'UniqueProblem',
    'NotUnique',
    'ProblemFormatError',
    'ConfigurationError',
    'IndexOutOfRange',
]
