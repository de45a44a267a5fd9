#!/usr/bin/env python3
"""
Problema de Schur matricial: classificação, parâmetros de Schur,
soluções e montagens CMV a partir de arquivos JSON.

Uso:
    python main.py check problema.json
    python main.py solve problema.json --param e.json --eval 0.2,0.1+0.3i
    python main.py central problema.json --grid 0.3,0.6/8
    python main.py cmv problema.json --cap zero
    python main.py verify problema.json --seed 7
"""

import argparse
import dataclasses
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.config import ConfigManager, ToleranceConfig
from src.core import CAP_ACTUAL, CAP_ZERO
from src.exceptions import NotASchurSequence, ProblemFormatError, SchurError, ShapeMismatch
from src.repositories.json_files import JsonFileProblemRepository
from src.services import InvariantSuite, PreparedProblem, SchurProblemProcessor
from src.utils import SchurReportGenerator

EXIT_OK = 0
EXIT_FORMAT = 1
EXIT_UNSOLVABLE = 2
EXIT_SHAPE = 3
EXIT_VERIFY = 4


def parse_points(text: str) -> List[complex]:
    """Pontos "re+imi" separados por vírgula"""
    points = []
    for token in text.split(","):
        token = token.strip().replace(" ", "")
        if not token:
            continue
        try:
            points.append(complex(token.replace("i", "j")))
        except ValueError:
            raise ProblemFormatError("--eval", f"ponto complexo inválido: {token!r}")
    if not points:
        raise ProblemFormatError("--eval", "nenhum ponto informado")
    return points


def parse_grid(text: str) -> List[complex]:
    """Círculos "r1,r2/k": k pontos equiespaçados em cada raio"""
    try:
        radii_text, count_text = text.split("/")
        radii = [float(r) for r in radii_text.split(",") if r.strip()]
        count = int(count_text)
    except ValueError:
        raise ProblemFormatError("--grid", f"esperado R1,R2/K, recebido {text!r}")
    if count < 1 or not radii:
        raise ProblemFormatError("--grid", "raios e contagem devem ser positivos")
    return [r * np.exp(2j * np.pi * j / count) for r in radii for j in range(count)]


def parse_tolerances(items: Optional[Sequence[str]]) -> Dict[str, float]:
    overrides = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise ProblemFormatError("--tol", f"esperado NOME=VALOR, recebido {item!r}")
        try:
            overrides[name.strip()] = float(value)
        except ValueError:
            raise ProblemFormatError(f"--tol {name}", f"valor não numérico {value!r}")
    return overrides


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schur", description="Problema de Schur matricial")
    parser.add_argument("--verbose", action="store_true", help="logs INFO em stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("problem", help="arquivo JSON do problema")
        sub.add_argument("--out", help="grava o JSON no arquivo em vez de stdout")
        sub.add_argument("--tol", action="append", metavar="NAME=VALUE", help="sobrescreve tolerância")
        return sub

    add_command("check", "classifica solubilidade e unicidade")
    add_command("params", "lista os parâmetros de Schur")
    for name, help_text in (("central", "avalia a solução central"), ("solve", "avalia Θ_E")):
        sub = add_command(name, help_text)
        sub.add_argument("--eval", dest="points", help="pontos re+imi separados por vírgula")
        sub.add_argument("--grid", help="círculos R1,R2/K")
        if name == "solve":
            sub.add_argument("--param", help="arquivo JSON do parâmetro E")
    cmv = add_command("cmv", "exporta a montagem CMV")
    cmv.add_argument("--cap", choices=[CAP_ZERO, CAP_ACTUAL], default=CAP_ZERO)
    verify = add_command("verify", "executa a suíte de invariantes")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--instances", type=int, default=3)
    return parser


def collect_points(args: argparse.Namespace) -> List[complex]:
    points: List[complex] = []
    if args.points:
        points.extend(parse_points(args.points))
    if args.grid:
        points.extend(parse_grid(args.grid))
    if not points:
        raise ProblemFormatError("--eval", "informe --eval ou --grid")
    return points


def cmd_check(processor: SchurProblemProcessor, prepared: PreparedProblem,
              args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    payload = SchurReportGenerator.classification_report(prepared.classification)
    return payload, EXIT_OK if prepared.classification.solvable else EXIT_UNSOLVABLE


def cmd_params(processor: SchurProblemProcessor, prepared: PreparedProblem,
               args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    cs, shorted = processor.parameters(prepared)
    payload = SchurReportGenerator.sequence_report(cs, shorted)
    payload["unique"] = prepared.classification.unique
    return payload, EXIT_OK


def cmd_central(processor: SchurProblemProcessor, prepared: PreparedProblem,
                args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    evaluator = processor.central_evaluator(prepared)
    reports = processor.report(evaluator, collect_points(args), prepared.config)
    return SchurReportGenerator.evaluations_report(reports), EXIT_OK


def cmd_solve(processor: SchurProblemProcessor, prepared: PreparedProblem,
              args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    points = collect_points(args)
    prepared.require_sequence()
    if prepared.classification.unique:
        evaluator = processor.unique_evaluator(prepared)
    else:
        if not args.param:
            raise ProblemFormatError("--param", "obrigatório para problemas com infinitas soluções")
        document = processor.repository.load_parameter(args.param)
        parameter = processor.parameter_evaluator(prepared, document)
        evaluator = processor.solution_evaluator(prepared, parameter)
    reports = processor.report(evaluator, points, prepared.config)
    return SchurReportGenerator.evaluations_report(
        reports, {"unique": prepared.classification.unique}
    ), EXIT_OK


def cmd_cmv(processor: SchurProblemProcessor, prepared: PreparedProblem,
            args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    assembly, hat_lifted = processor.cmv_assembly(prepared, args.cap)
    return SchurReportGenerator.assembly_report(assembly, hat_lifted), EXIT_OK


def cmd_verify(processor: SchurProblemProcessor, prepared: PreparedProblem,
               args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    suite = InvariantSuite(prepared.config, seed=args.seed, instances=args.instances)
    results = suite.run(prepared)
    payload = SchurReportGenerator.verification_report(results, args.seed)
    return payload, EXIT_OK if payload["passed"] else EXIT_VERIFY


COMMANDS = {
    "check": cmd_check,
    "params": cmd_params,
    "central": cmd_central,
    "solve": cmd_solve,
    "cmv": cmd_cmv,
    "verify": cmd_verify,
}


def emit(payload: Dict[str, Any], out: Optional[str]) -> None:
    text = SchurReportGenerator.dumps(payload)
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def exit_code_for(error: Exception) -> int:
    if isinstance(error, NotASchurSequence):
        return EXIT_UNSOLVABLE
    if isinstance(error, ShapeMismatch):
        return EXIT_SHAPE
    return EXIT_FORMAT


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        overrides = parse_tolerances(args.tol)
        ConfigManager().set_config(ToleranceConfig().with_overrides(overrides))
        repository = JsonFileProblemRepository()
        processor = SchurProblemProcessor(repository=repository)
        document = repository.load_problem(args.problem)
        if overrides:
            # flags prevalecem sobre o arquivo
            document = dataclasses.replace(document, tolerances={**document.tolerances, **overrides})
        prepared = processor.prepare(document)
        payload, code = COMMANDS[args.command](processor, prepared, args)
        emit(payload, args.out)
        return code
    except SchurError as error:
        sys.stderr.write(f"error[{error.category}]: {error}\n")
        return exit_code_for(error)
    except OSError as error:
        sys.stderr.write(f"error[io]: {error}\n")
        return EXIT_FORMAT
    except ValueError as error:
        sys.stderr.write(f"error[format]: {error}\n")
        return EXIT_FORMAT
    finally:
        ConfigManager().reset()


if __name__ == "__main__":
    sys.exit(main())
