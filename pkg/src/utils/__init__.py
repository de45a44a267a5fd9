import logging
import math
import json
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from src.models import (
    ChoiceSequence, CmvAssembly, ContractionClass, DefectData, InvariantResult,
    ProblemClassification, SolutionReport
)


class SchurReportGenerator:
    """Gerador de relatórios JSON determinísticos"""

    FLOAT_FORMAT = '.17g'

    @staticmethod
    def encode_complex(value) -> List[float]:
        value = complex(value)
        return [value.real + 0.0, value.imag + 0.0]

    @staticmethod
    def encode_matrix(matrix) -> List:
        """Matriz como linhas de pares [re, im]"""
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim == 1:
            return [SchurReportGenerator.encode_complex(v) for v in matrix]
        return [[SchurReportGenerator.encode_complex(v) for v in row] for row in matrix]

    @classmethod
    def dumps(cls, payload: Any, indent: int = 2) -> str:
        """Serializa com ordem de chaves fixa e floats em 17 dígitos significativos"""
        return cls._emit(payload, indent, 0) + "\n"

    @classmethod
    def _emit(cls, value: Any, indent: int, depth: int) -> str:
        if value is None:
            return "null"
        if isinstance(value, (bool, np.bool_)):
            return "true" if value else "false"
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            number = float(value)
            if not math.isfinite(number):
                raise ValueError(f"valor não finito na saída: {number}")
            return format(number + 0.0, cls.FLOAT_FORMAT)
        if isinstance(value, (complex, np.complexfloating)):
            return cls._emit(cls.encode_complex(value), indent, depth)
        if isinstance(value, np.ndarray):
            return cls._emit(cls.encode_matrix(value), indent, depth)
        if isinstance(value, str):
            return json.dumps(value, ensure_ascii=False)
        pad = " " * (indent * (depth + 1))
        close = " " * (indent * depth)
        if isinstance(value, dict):
            if not value:
                return "{}"
            items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {cls._emit(v, indent, depth + 1)}"
                     for k, v in value.items()]
            return "{\n" + ",\n".join(items) + "\n" + close + "}"
        if isinstance(value, (list, tuple)):
            if not value:
                return "[]"
            # listas de números ficam numa linha
            if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in value):
                return "[" + ", ".join(cls._emit(v, indent, depth) for v in value) + "]"
            items = [pad + cls._emit(v, indent, depth + 1) for v in value]
            return "[\n" + ",\n".join(items) + "\n" + close + "]"
        raise TypeError(f"tipo não serializável: {type(value).__name__}")

    @staticmethod
    def classification_report(result: ProblemClassification) -> Dict[str, Any]:
        return {
            "solvable": result.solvable,
            "unique": result.unique,
            "p": result.first_degenerate_index,
            "shorted_m": result.shorted_m,
            "shorted_n": result.shorted_n,
            "toeplitz_norm": result.toeplitz_norm,
            "degeneracy_threshold": result.degeneracy_threshold,
            "shorted_norms": [list(pair) for pair in result.shorted_norms],
        }

    @staticmethod
    def sequence_report(cs: ChoiceSequence, shorted: Sequence) -> Dict[str, Any]:
        """Parâmetros por nível com dimensões de defeito e operadores encurtados"""
        levels = []
        for k, entry in enumerate(cs.entries):
            level = {
                "index": k,
                "gamma": entry.gamma,
                "rank": entry.rank,
                "rank_star": entry.rank_star,
                "class": entry.kind.value,
            }
            if k < len(shorted):
                level["shorted_m"], level["shorted_n"] = shorted[k]
            levels.append(level)
        return {
            "dim_m": cs.dim_m,
            "dim_n": cs.dim_n,
            "terminated": cs.terminated,
            "reason": cs.reason.value if cs.reason is not None else None,
            "levels": levels,
        }

    @staticmethod
    def evaluation_entry(report: SolutionReport) -> Dict[str, Any]:
        return {
            "z": report.z,
            "theta": report.value,
            "certified_norm": report.certified_norm,
            "parameter": report.parameter_used,
        }

    @classmethod
    def evaluations_report(cls, reports: Sequence[SolutionReport],
                           extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Um ponto: objeto único; vários pontos: {"evaluations": [...]}"""
        if len(reports) == 1:
            payload = cls.evaluation_entry(reports[0])
        else:
            payload = {"evaluations": [cls.evaluation_entry(r) for r in reports]}
        if extra:
            payload.update(extra)
        return payload

    @staticmethod
    def assembly_report(assembly: CmvAssembly, hat_lifted: bool) -> Dict[str, Any]:
        return {
            "n": assembly.n,
            "hat_lifted": hat_lifted,
            "cap": "zero" if assembly.cap is None else assembly.cap,
            "spaces": [[label, dim] for label, dim in assembly.index.spaces],
            "spaces_tilde": [[label, dim] for label, dim in assembly.index_tilde.spaces],
            "v_n": assembly.v_n,
            "w_n": assembly.w_n,
            "w_n0": assembly.w_n0,
            "s_n": assembly.s_n,
            "s_tilde_n": assembly.s_tilde_n,
            "s_n0": assembly.s_n0,
            "s_tilde_n0": assembly.s_tilde_n0,
        }

    @staticmethod
    def verification_report(results: Sequence[InvariantResult], seed: int) -> Dict[str, Any]:
        return {
            "seed": seed,
            "passed": all(r.passed for r in results),
            "failures": sum(1 for r in results if not r.passed),
            "results": [
                {
                    "name": r.name,
                    "residual": r.residual,
                    "threshold": r.threshold,
                    "passed": r.passed,
                    "detail": r.detail,
                }
                for r in results
            ],
        }

    @staticmethod
    def generate_summary(result: ProblemClassification, cs: Optional[ChoiceSequence] = None) -> str:
        """Resumo legível da classificação"""
        status = "✓ SOLÚVEL" if result.solvable else "✗ INSOLÚVEL"
        unicity = "única" if result.unique else "infinitas soluções" if result.solvable else "-"
        report = f"""
╔════════════════════════════════════════════════════════════╗
║                 PROBLEMA DE SCHUR MATRICIAL                ║
╚════════════════════════════════════════════════════════════╝

CLASSIFICAÇÃO:
──────────────
• Status: {status}
• Solução: {unicity}
• ‖T_N‖: {result.toeplitz_norm:.12g}
• Primeiro índice degenerado: {result.first_degenerate_index}
• Limiar de degenerescência: {result.degeneracy_threshold:.1e}
"""
        if cs is not None:
            report += "\nPARÂMETROS DE SCHUR:\n────────────────────\n"
            for k, entry in enumerate(cs.entries):
                report += (f"  Γ_{k}: forma {entry.shape}, ‖Γ‖ = {_norm(entry.gamma):.6f}, "
                           f"r = {entry.rank}, r* = {entry.rank_star} ({entry.kind.value})\n")
        return report


def _norm(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix, 2)) if matrix.size else 0.0


class LogFormatter:
    """Formatador de logs do processamento"""

    logger = logging.getLogger("src.schur")

    @staticmethod
    def log_problem_loaded(name: str, dim_m: int, dim_n: int, order: int) -> None:
        LogFormatter.logger.info("Problema %s carregado: 𝔐=%d, 𝔑=%d, N=%d", name, dim_m, dim_n, order)

    @staticmethod
    def log_level_extracted(level: int, dd: DefectData) -> None:
        LogFormatter.logger.debug("Nível %d: Γ %s, r=%d, r*=%d (%s)",
                                  level, dd.shape, dd.rank, dd.rank_star, dd.kind.value)

    @staticmethod
    def log_termination(level: int, kind: ContractionClass) -> None:
        LogFormatter.logger.info("Sequência terminada em p=%d (%s)", level, kind.value)

    @staticmethod
    def log_classification(result: ProblemClassification) -> None:
        LogFormatter.logger.info("Classificação: solúvel=%s, única=%s, p=%s, ‖T_N‖=%.12g",
                                 result.solvable, result.unique,
                                 result.first_degenerate_index, result.toeplitz_norm)

    @staticmethod
    def log_classification_adjusted(unique: bool, terminated) -> None:
        LogFormatter.logger.warning("Unicidade dos encurtados (%s) difere da terminação (p=%s); "
                                    "prevalece a sequência", unique, terminated)

    @staticmethod
    def log_cross_check(gap: float, tolerance: float) -> None:
        LogFormatter.logger.warning("Caminhos de Taylor divergem: %.3e > %.1e", gap, tolerance)

    @staticmethod
    def log_certification(norm: float, tolerance: float) -> None:
        LogFormatter.logger.warning("Norma certificada %.17g excede 1 + %.1e", norm, tolerance)

    @staticmethod
    def log_invariant(result: InvariantResult) -> None:
        if result.passed:
            LogFormatter.logger.info("[OK] %s: resíduo %.3e", result.name, result.residual)
        else:
            LogFormatter.logger.warning("[FALHA] %s: resíduo %.3e > %.1e (%s)",
                                        result.name, result.residual, result.threshold, result.detail)


__all__ = [
    'SchurReportGenerator',
    'LogFormatter'
]
