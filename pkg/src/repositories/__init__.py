from abc import ABC, abstractmethod
from numbers import Real
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.exceptions import ProblemFormatError
from src.models import ParameterDocument, ParameterKind, ProblemDocument


class ProblemRepository(ABC):
    """Interface para repositório de problemas e parâmetros"""

    @abstractmethod
    def load_problem(self, name: str) -> ProblemDocument:
        pass

    @abstractmethod
    def load_parameter(self, name: str) -> ParameterDocument:
        pass


def _is_number(value: Any) -> bool:
    return isinstance(value, Real) and not isinstance(value, bool)


def _decode_entry(value: Any, field: str) -> complex:
    if _is_number(value):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(_is_number(v) for v in value):
        return complex(float(value[0]), float(value[1]))
    raise ProblemFormatError(field, f"entrada deve ser par [re, im], recebido {value!r}")


class ProblemDocumentParser:
    """Validação dos documentos JSON de problema e de parâmetro"""

    @staticmethod
    def decode_matrix(value: Any, field: str, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
        """
        Linhas aninhadas de pares [re, im]; com forma conhecida aceita também
        lista plana de pares em ordem de linhas, ou um único par para 1×1.
        """
        if not isinstance(value, (list, tuple)):
            if shape == (1, 1):
                return np.array([[_decode_entry(value, field)]])
            raise ProblemFormatError(field, "matriz deve ser uma lista")

        if (shape is None or shape[0] * shape[1] == 1) and len(value) == 2 \
                and all(_is_number(v) for v in value):
            return np.array([[_decode_entry(value, field)]])

        nested = all(isinstance(row, (list, tuple)) and
                     all(isinstance(e, (list, tuple)) for e in row) for row in value)
        if value and nested:
            widths = {len(row) for row in value}
            if len(widths) != 1:
                raise ProblemFormatError(field, "linhas com comprimentos diferentes")
            matrix = np.array([[_decode_entry(e, f"{field}[{i}][{j}]") for j, e in enumerate(row)]
                               for i, row in enumerate(value)], dtype=complex)
        elif shape is not None:
            entries = [_decode_entry(e, f"{field}[{i}]") for i, e in enumerate(value)]
            if len(entries) != shape[0] * shape[1]:
                raise ProblemFormatError(
                    field, f"esperadas {shape[0] * shape[1]} entradas, recebidas {len(entries)}"
                )
            matrix = np.array(entries, dtype=complex).reshape(shape)
        elif not value:
            raise ProblemFormatError(field, "matriz vazia sem forma declarada")
        else:
            raise ProblemFormatError(field, "esperadas linhas aninhadas de pares [re, im]")

        if shape is not None and matrix.shape != tuple(shape):
            raise ProblemFormatError(field, f"forma {matrix.shape} difere da declarada {tuple(shape)}")
        if not np.all(np.isfinite(matrix)):
            raise ProblemFormatError(field, "entradas não finitas")
        return matrix

    @staticmethod
    def _dimension(raw: Dict[str, Any], name: str) -> int:
        if name not in raw:
            raise ProblemFormatError(name, "campo obrigatório ausente")
        value = raw[name]
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ProblemFormatError(name, f"dimensão deve ser inteiro positivo, recebido {value!r}")
        return value

    @classmethod
    def _matrix_list(cls, raw: Any, field: str, shape: Optional[Tuple[int, int]]) -> Tuple[np.ndarray, ...]:
        if not isinstance(raw, list) or not raw:
            raise ProblemFormatError(field, "deve ser lista não vazia de matrizes")
        return tuple(cls.decode_matrix(item, f"{field}[{k}]", shape) for k, item in enumerate(raw))

    @staticmethod
    def _tolerances(raw: Any) -> Dict[str, float]:
        if raw is None:
            return {}
        if not isinstance(raw, dict):
            raise ProblemFormatError("tolerances", "deve ser um objeto")
        for name, value in raw.items():
            if not _is_number(value):
                raise ProblemFormatError(f"tolerances.{name}", f"valor não numérico {value!r}")
        return {name: float(value) for name, value in raw.items()}

    @classmethod
    def parse_problem(cls, raw: Any) -> ProblemDocument:
        if not isinstance(raw, dict):
            raise ProblemFormatError("<raiz>", "documento de problema deve ser um objeto")
        dim_m = cls._dimension(raw, "dim_m")
        dim_n = cls._dimension(raw, "dim_n")
        has_coefficients = "coefficients" in raw
        has_parameters = "parameters" in raw
        if has_coefficients == has_parameters:
            raise ProblemFormatError("coefficients", "informe exatamente um entre 'coefficients' e 'parameters'")

        if has_coefficients:
            return ProblemDocument(
                dim_m=dim_m,
                dim_n=dim_n,
                coefficients=cls._matrix_list(raw["coefficients"], "coefficients", (dim_n, dim_m)),
                tolerances=cls._tolerances(raw.get("tolerances"))
            )
        # Γ₀ tem forma conhecida; as demais dependem dos postos de defeito
        params = raw["parameters"]
        if not isinstance(params, list) or not params:
            raise ProblemFormatError("parameters", "deve ser lista não vazia de matrizes")
        decoded = [cls.decode_matrix(params[0], "parameters[0]", (dim_n, dim_m))]
        decoded += [cls.decode_matrix(item, f"parameters[{k}]") for k, item in enumerate(params[1:], 1)]
        return ProblemDocument(
            dim_m=dim_m,
            dim_n=dim_n,
            parameters=tuple(decoded),
            tolerances=cls._tolerances(raw.get("tolerances"))
        )

    @classmethod
    def parse_parameter(cls, raw: Any) -> ParameterDocument:
        if not isinstance(raw, dict):
            raise ProblemFormatError("<raiz>", "documento de parâmetro deve ser um objeto")
        try:
            kind = ParameterKind(raw.get("kind"))
        except ValueError:
            choices = ", ".join(k.value for k in ParameterKind)
            raise ProblemFormatError("kind", f"esperado um de {{{choices}}}, recebido {raw.get('kind')!r}")

        if kind is ParameterKind.CONSTANT:
            if "matrix" not in raw:
                raise ProblemFormatError("matrix", "campo obrigatório para kind=constant")
            return ParameterDocument(kind=kind, matrix=cls.decode_matrix(raw["matrix"], "matrix"))

        if "coefficients" not in raw:
            raise ProblemFormatError("coefficients", f"campo obrigatório para kind={kind.value}")
        if not isinstance(raw["coefficients"], list) or not raw["coefficients"]:
            raise ProblemFormatError("coefficients", "deve ser lista não vazia de matrizes")
        first = cls.decode_matrix(raw["coefficients"][0], "coefficients[0]")
        coefficients = cls._matrix_list(raw["coefficients"], "coefficients", first.shape)
        return ParameterDocument(kind=kind, coefficients=coefficients)


__all__ = [
    'ProblemRepository',
    'ProblemDocumentParser'
]
