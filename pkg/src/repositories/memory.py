from typing import Any, Dict

from src.exceptions import ProblemFormatError
from src.models import ParameterDocument, ProblemDocument
from src.repositories import ProblemDocumentParser, ProblemRepository


class InMemoryProblemRepository(ProblemRepository):
    """Implementação em memória do repositório de problemas"""

    def __init__(self):
        self.problems: Dict[str, ProblemDocument] = {}
        self.parameters: Dict[str, ParameterDocument] = {}

    def add_problem(self, name: str, raw: Any) -> ProblemDocument:
        """Registra um documento já decodificado (dict) após validação"""
        document = raw if isinstance(raw, ProblemDocument) else ProblemDocumentParser.parse_problem(raw)
        self.problems[name] = document
        return document

    def add_parameter(self, name: str, raw: Any) -> ParameterDocument:
        document = raw if isinstance(raw, ParameterDocument) else ProblemDocumentParser.parse_parameter(raw)
        self.parameters[name] = document
        return document

    def load_problem(self, name: str) -> ProblemDocument:
        if name not in self.problems:
            raise ProblemFormatError(name, "problema não registrado")
        return self.problems[name]

    def load_parameter(self, name: str) -> ParameterDocument:
        if name not in self.parameters:
            raise ProblemFormatError(name, "parâmetro não registrado")
        return self.parameters[name]
