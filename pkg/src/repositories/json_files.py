import json
from pathlib import Path
from typing import Any

from src.exceptions import ProblemFormatError
from src.models import ParameterDocument, ProblemDocument
from src.repositories import ProblemDocumentParser, ProblemRepository


class JsonFileProblemRepository(ProblemRepository):
    """Problemas e parâmetros lidos de arquivos JSON; nomes relativos a base_dir"""

    def __init__(self, base_dir: str = "."):
        self.base_dir = Path(base_dir)

    def _read(self, name: str) -> Any:
        path = Path(name)
        if not path.is_absolute():
            path = self.base_dir / path
        try:
            with open(path, "r", encoding="utf-8") as handle:
                return json.load(handle)
        except OSError as error:
            raise ProblemFormatError(str(path), f"falha de leitura: {error.strerror or error}")
        except json.JSONDecodeError as error:
            raise ProblemFormatError(str(path), f"JSON inválido na linha {error.lineno}: {error.msg}")

    def load_problem(self, name: str) -> ProblemDocument:
        return ProblemDocumentParser.parse_problem(self._read(name))

    def load_parameter(self, name: str) -> ParameterDocument:
        return ProblemDocumentParser.parse_parameter(self._read(name))
