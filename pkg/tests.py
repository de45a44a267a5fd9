"""
Testes unitários para o resolvedor do problema de Schur matricial
"""

import contextlib
import io
import json
import os
import tempfile
import unittest

import numpy as np
from numpy.testing import assert_allclose
from hypothesis import given, settings, strategies as st

from src.config import ConfigManager, ToleranceConfig
from src.core import (
    CoefficientFunction, analyze_contraction, as_matrix, assemble, canonical_basis, corner_resolvent,
    elementary_rotation, finite_cmv, hat_lift, operator_norm, psd_sqrt, range_basis, resolvent_update,
    solve, transfer_function, CAP_ACTUAL, CAP_ZERO
)
from src.exceptions import (
    ConfigurationError, DegenerateTail, InconsistentData, IndexOutOfRange, NotASchurSequence,
    NotContraction, NotHermitian, NotPSD, NotTerminated, NotUnique, OutsideDisk,
    ProblemFormatError, ShapeMismatch, Singular, UniqueProblem
)
from src.models import (
    ChoiceSequence, ContractionClass, InvariantResult, ParameterKind,
    ProblemClassification, ProblemDocument, SchurProblemData
)
from src.repositories import ProblemDocumentParser
from src.repositories.json_files import JsonFileProblemRepository
from src.repositories.memory import InMemoryProblemRepository
from src.services import (
    InvariantSuite, ProblemClassifier, RandomInstanceFactory, SchurAlgorithm,
    SchurProblemProcessor, build_toeplitz, compression_check, krein_short,
    shorted_via_params, SIDE_M, SIDE_N
)
from src.services.processor import _reconcile
from src.strategies import (
    CentralEvaluator, ConstantEvaluator, RecursiveEvaluator, SchurEvaluator, SolutionEvaluator,
    TerminatedEvaluator, certify_schur_norm, taylor_extract
)
from src.utils import LogFormatter, SchurReportGenerator
import main as cli

SEEDS = st.integers(min_value=0, max_value=2**32 - 1)


# Oráculos escalares independentes do pacote

def series_div(a, b):
    quotient = np.zeros(len(a), dtype=complex)
    for k in range(len(a)):
        quotient[k] = (a[k] - sum(b[i] * quotient[k - i] for i in range(1, min(k, len(b) - 1) + 1))) / b[0]
    return quotient


def plus_constant(series, constant):
    shifted = np.array(series, dtype=complex)
    shifted[0] += constant
    return shifted


def continued_fraction_series(gammas, order):
    """Taylor de f_k = (γ_k + z f_{k+1}) / (1 + γ̄_k z f_{k+1}) com cauda nula"""
    f = np.zeros(order + 1, dtype=complex)
    for gamma in reversed(gammas):
        zf = np.concatenate([[0.0], f[:-1]])
        f = series_div(plus_constant(zf, gamma), plus_constant(np.conj(gamma) * zf, 1.0))
    return f


def continued_fraction_value(gammas, tail, z):
    f = tail
    for gamma in reversed(gammas):
        f = (gamma + z * f) / (1.0 + np.conj(gamma) * z * f)
    return f


def classical_schur(coeffs):
    """Algoritmo de Schur escalar clássico sobre a série truncada"""
    c = np.asarray(coeffs, dtype=complex)
    gammas = []
    while len(c):
        gamma = c[0]
        gammas.append(gamma)
        if abs(gamma) >= 1.0 - 1e-12:
            break
        numerator = plus_constant(c, -gamma)[1:]
        denominator = plus_constant(-np.conj(gamma) * c, 1.0)[:len(numerator)]
        c = series_div(numerator, denominator) if len(numerator) else numerator
    return gammas


def shorted_by_pinv(s, k):
    """S_𝒦 = A − B C⁺ B* para S = [[A, B], [B*, C]] com 𝒦 as k primeiras coordenadas"""
    a, b, c = s[:k, :k], s[:k, k:], s[k:, k:]
    return a - b @ np.linalg.pinv(c, rcond=1e-10, hermitian=True) @ b.conj().T


def entrywise_cmv(cs, n, cap):
    """𝒮ₙ montada bloco a bloco pelas fórmulas de cinco diagonais"""
    p = [cs.param(k) for k in range(2 * n + 2)]
    last = 2 * n + 1
    asm = assemble(cs, n, cap=np.zeros((p[last].rank_star, p[last].rank)))
    index = asm.index
    s = np.zeros((index.total, index.total), dtype=complex)

    def put(i, j, block):
        s[index.slot(i), index.slot(j)] = block

    put(0, 0, -p[0].gstar_leg @ p[1].gamma)
    put(0, 1, -p[0].gstar_leg @ p[1].dstar_leg)
    for i in range(1, last + 1):
        if i % 2:
            upper = cap if i == last else p[i + 1].gamma
            put(i, i - 1, upper @ p[i].d_leg)
            put(i, i, -upper @ p[i].gstar_leg)
            if i < last:
                put(i, i + 1, p[i + 1].dstar_leg @ p[i + 2].gamma)
                put(i, i + 2, p[i + 1].dstar_leg @ p[i + 2].dstar_leg)
        else:
            put(i, i - 2, p[i].d_leg @ p[i - 1].d_leg)
            put(i, i - 1, -p[i].d_leg @ p[i - 1].gstar_leg)
            put(i, i, -p[i].gstar_leg @ p[i + 1].gamma)
            put(i, i + 1, -p[i].gstar_leg @ p[i + 1].dstar_leg)
    return s


def scalar_data(values):
    return SchurProblemData(1, 1, tuple(np.array([[v]], dtype=complex) for v in values))


def scalar_sequence(values):
    return SchurAlgorithm().build_sequence([np.array([[v]]) for v in values], 1, 1)


def random_disk(rng, size, radius=0.95):
    return radius * np.sqrt(rng.uniform(size=size)) * np.exp(2j * np.pi * rng.uniform(size=size))


class TestConfig(unittest.TestCase):
    """Testes para a configuração de tolerâncias"""

    def test_default_is_valid(self):
        config = ToleranceConfig()
        self.assertTrue(config.is_valid())
        self.assertEqual(config.contour_nodes, 128)

    def test_overrides(self):
        config = ToleranceConfig().with_overrides({"rank_tol": 1e-8, "contour_nodes": 64.0})
        self.assertEqual(config.rank_tol, 1e-8)
        self.assertEqual(config.contour_nodes, 64)

    def test_unknown_override(self):
        with self.assertRaises(ConfigurationError):
            ToleranceConfig().with_overrides({"nao_existe": 1.0})

    def test_invalid_override(self):
        with self.assertRaises(ConfigurationError):
            ToleranceConfig().with_overrides({"contour_radius": 1.5})

    def test_config_manager_singleton(self):
        manager = ConfigManager()
        try:
            manager.set_config(ToleranceConfig(cert_tol=1e-7))
            self.assertIs(manager, ConfigManager())
            self.assertEqual(ConfigManager().get_config().cert_tol, 1e-7)
        finally:
            manager.reset()
        self.assertEqual(ConfigManager().get_config().cert_tol, 1e-9)


class TestLinalgCore(unittest.TestCase):
    """Testes para o núcleo de álgebra linear"""

    def test_psd_sqrt(self):
        h = np.array([[2.0, 1.0j], [-1.0j, 2.0]])
        root = psd_sqrt(h)
        assert_allclose(root @ root, h, atol=1e-12)
        assert_allclose(root, root.conj().T, atol=1e-14)

    def test_psd_sqrt_rejects(self):
        with self.assertRaises(NotHermitian):
            psd_sqrt(np.array([[1.0, 1.0], [0.0, 1.0]]))
        with self.assertRaises(NotPSD):
            psd_sqrt(np.diag([1.0, -0.5]))

    def test_range_basis(self):
        basis = range_basis(np.diag([0.0, 2.0, 1.0]))
        self.assertEqual(basis.shape, (3, 2))
        assert_allclose(np.abs(basis[:, 0]), [0, 1, 0], atol=1e-14)
        self.assertEqual(range_basis(np.zeros((2, 2))).shape, (2, 0))

    def test_operator_norm(self):
        self.assertAlmostEqual(operator_norm(np.diag([0.5, -2.0])), 2.0)
        self.assertEqual(operator_norm(np.zeros((0, 3))), 0.0)

    def test_solve_singular(self):
        with self.assertRaises(Singular):
            solve(np.array([[1.0, 2.0], [2.0, 4.0]]), np.eye(2))

    def test_corner_resolvent_matches_inverse(self):
        rng = np.random.default_rng(3)
        t = 0.3 * (rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
        z = 0.4 - 0.2j
        full = np.linalg.inv(np.eye(5) - z * t)
        assert_allclose(corner_resolvent(t, 2, z), full[:2, :2], atol=1e-12)

    def test_transfer_function(self):
        system = np.array([[0.5, 1.0], [1.0, 0.25]])
        z = 0.3
        self.assertAlmostEqual(complex(transfer_function(system, 1, 1, z)[0, 0]), 0.5 + z / (1 - 0.25 * z))

    def test_as_matrix_rejects_non_finite(self):
        for value in ([[np.nan]], [[1.0, np.inf]]):
            with self.assertRaises(ProblemFormatError) as caught:
                as_matrix(value, "C_0")
            self.assertEqual(caught.exception.category, "format")
            self.assertEqual(caught.exception.field, "C_0")

    def test_canonical_basis_depends_only_on_projector(self):
        factory = RandomInstanceFactory(np.random.default_rng(5))
        q = factory.unitary(3)[:, :2]
        rotated = q @ factory.unitary(2)
        basis = canonical_basis(q @ q.conj().T, 2)
        assert_allclose(canonical_basis(rotated @ rotated.conj().T, 2), basis, atol=1e-12)
        assert_allclose(basis.conj().T @ basis, np.eye(2), atol=1e-12)
        assert_allclose(basis @ basis.conj().T, q @ q.conj().T, atol=1e-12)
        self.assertEqual(canonical_basis(np.zeros((3, 3)), 0).shape, (3, 0))
        with self.assertRaises(Singular):
            canonical_basis(np.zeros((2, 2)), 1)


class TestContractionDefect(unittest.TestCase):
    """Testes para operadores de defeito e rotações elementares"""

    def test_scalar(self):
        dd = analyze_contraction([[0.6]])
        assert_allclose(dd.d_gamma, [[0.8]], atol=1e-14)
        self.assertEqual(dd.kind, ContractionClass.STRICT)
        assert_allclose(elementary_rotation(dd).matrix, [[0.6, 0.8], [0.8, -0.6]], atol=1e-14)

    def test_degenerate_classes(self):
        self.assertEqual(analyze_contraction([[1.0]]).kind, ContractionClass.UNITARY)
        self.assertEqual(analyze_contraction([[1.0], [0.0]]).kind, ContractionClass.ISOMETRIC)
        self.assertEqual(analyze_contraction([[1.0, 0.0]]).kind, ContractionClass.CO_ISOMETRIC)

    def test_zero_matrix(self):
        dd = analyze_contraction(np.zeros((2, 3)))
        self.assertEqual((dd.rank, dd.rank_star), (3, 2))
        assert_allclose(dd.d_gamma, np.eye(3))

    def test_rejects_non_contraction(self):
        with self.assertRaises(NotContraction):
            analyze_contraction([[1.5]])

    def test_adjoint_swaps_sides(self):
        dd = analyze_contraction([[0.3, 0.1j], [0.0, 0.5]])
        adjoint = dd.adjoint()
        assert_allclose(adjoint.gamma, dd.gamma.conj().T, atol=1e-12)
        assert_allclose(elementary_rotation(adjoint).matrix, elementary_rotation(dd).matrix.conj().T, atol=1e-12)

    def test_adjoint_bases_with_repeated_singular_values(self):
        factory = RandomInstanceFactory(np.random.default_rng(11))
        for gamma in (0.5 * factory.unitary(2), 0.5 * factory.degenerate(3, 2)):
            dd = analyze_contraction(gamma)
            adjoint = analyze_contraction(gamma.conj().T)
            assert_allclose(adjoint.basis_d, dd.basis_d_star, atol=1e-12)
            assert_allclose(adjoint.basis_d_star, dd.basis_d, atol=1e-12)
            assert_allclose(elementary_rotation(adjoint).matrix, elementary_rotation(dd).matrix.conj().T,
                            atol=1e-12)

    @settings(max_examples=20, deadline=None)
    @given(seed=SEEDS)
    def test_rotation_unitary_property(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        rows, cols = factory.dims()
        for gamma in (factory.contraction(rows, cols), factory.degenerate(rows, cols)):
            dd = analyze_contraction(gamma)
            j = elementary_rotation(dd).matrix
            assert_allclose(j.conj().T @ j, np.eye(j.shape[1]), atol=1e-11)
            assert_allclose(dd.gamma @ dd.d_gamma, dd.d_gamma_star @ dd.gamma, atol=1e-11)


class TestToeplitzAndShorted(unittest.TestCase):
    """Testes para a matriz de Toeplitz e operadores encurtados"""

    def test_build_toeplitz(self):
        assert_allclose(build_toeplitz(scalar_data([0.5, 0.75])), [[0.5, 0], [0.75, 0.5]])
        assert_allclose(build_toeplitz(scalar_data([0.0])), [[0.0]])

    def test_build_toeplitz_adjoint_blocks(self):
        data = SchurProblemData(1, 2, (np.array([[0.5], [0.0]]), np.array([[0.0], [0.5]])))
        assert_allclose(build_toeplitz(data, adjoint=True), [[0.5, 0, 0, 0], [0, 0.5, 0.5, 0]])

    def test_krein_short_examples(self):
        e1 = np.eye(3)[:, :1]
        assert_allclose(krein_short(np.eye(3), e1), e1 @ e1.T, atol=1e-12)
        assert_allclose(krein_short(np.diag([0.0, 1.0]), np.eye(2)[:, :1]), np.zeros((2, 2)), atol=1e-12)
        assert_allclose(krein_short(np.zeros((2, 2)), np.eye(2)[:, :1]), np.zeros((2, 2)))

    def test_shorted_via_params_examples(self):
        assert_allclose(shorted_via_params(scalar_sequence([0.5, 0.5]), 1), [[0.5625]], atol=1e-14)
        assert_allclose(shorted_via_params(scalar_sequence([0.5, 1.0]), 1), [[0.0]], atol=1e-14)
        assert_allclose(shorted_via_params(scalar_sequence([0.0, 0.0, 0.0]), 2), [[1.0]])

    def test_shorted_via_params_index(self):
        with self.assertRaises(IndexOutOfRange):
            shorted_via_params(scalar_sequence([0.5]), 3)
        assert_allclose(shorted_via_params(scalar_sequence([1.0]), 4, SIDE_N), [[0.0]])

    @settings(max_examples=100, deadline=None)
    @given(seed=SEEDS)
    def test_shorted_formula_matches_definition(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        dim_m, dim_n = factory.dims()
        cs, data = factory.problem(dim_m, dim_n, int(factory.rng.integers(0, 6)))
        for n in range(data.order + 1):
            t = build_toeplitz(data.prefix(n))
            square = np.eye(t.shape[1]) - t.conj().T @ t
            corner = np.eye(t.shape[1])[:, :dim_m]
            expected = shorted_by_pinv(square, dim_m)
            assert_allclose(shorted_via_params(cs, n, SIDE_M), expected, atol=1e-9)
            assert_allclose(krein_short(square, corner)[:dim_m, :dim_m], expected, atol=1e-9)
            t_adj = build_toeplitz(data.prefix(n), adjoint=True)
            square_adj = np.eye(t_adj.shape[1]) - t_adj.conj().T @ t_adj
            assert_allclose(shorted_via_params(cs, n, SIDE_N), shorted_by_pinv(square_adj, dim_n), atol=1e-9)


class TestSchurAlgorithm(unittest.TestCase):
    """Testes para a conversão coeficientes ↔ parâmetros"""

    def setUp(self):
        self.algorithm = SchurAlgorithm()

    def test_taylor_to_params_examples(self):
        cs = self.algorithm.taylor_to_params(scalar_data([0.5, 0.375]))
        assert_allclose([g[0, 0] for g in cs.gammas], [0.5, 0.5], atol=1e-14)
        self.assertIsNone(cs.terminated)

        cs = self.algorithm.taylor_to_params(scalar_data([0.0, 1.0]))
        assert_allclose([g[0, 0] for g in cs.gammas], [0.0, 1.0], atol=1e-14)
        self.assertEqual(cs.terminated, 1)
        self.assertEqual(cs.reason, ContractionClass.UNITARY)

        cs = self.algorithm.taylor_to_params(scalar_data([0.0, 0.0, 0.0]))
        assert_allclose([g[0, 0] for g in cs.gammas], [0.0, 0.0, 0.0])

    def test_not_a_schur_sequence(self):
        with self.assertRaises(NotASchurSequence):
            self.algorithm.taylor_to_params(scalar_data([0.5, 0.9]))

    def test_inconsistent_data(self):
        data = SchurProblemData(1, 2, (np.array([[1.0], [0.0]]), np.array([[0.0], [1e-5]])))
        with self.assertRaises(InconsistentData):
            self.algorithm.taylor_to_params(data)

    def test_params_to_taylor_examples(self):
        coeffs = self.algorithm.params_to_taylor(scalar_sequence([0.5, 0.5]), 1)
        assert_allclose([c[0, 0] for c in coeffs], [0.5, 0.375], atol=1e-12)
        coeffs = self.algorithm.params_to_taylor(scalar_sequence([0.0]), 3)
        assert_allclose([c[0, 0] for c in coeffs], [0, 0, 0, 0], atol=1e-12)

    def test_build_sequence_shapes(self):
        with self.assertRaises(ShapeMismatch):
            self.algorithm.build_sequence([np.array([[0.5]]), np.array([[0.1, 0.2]])], 1, 1)
        cs = self.algorithm.build_sequence([np.array([[1.0]]), np.zeros((0, 0))], 1, 1)
        self.assertEqual(len(cs), 1)

    @settings(max_examples=200, deadline=None)
    @given(seed=SEEDS)
    def test_scalar_oracle(self, seed):
        rng = np.random.default_rng(seed)
        gammas = random_disk(rng, int(rng.integers(1, 8)))
        coeffs = continued_fraction_series(gammas, len(gammas) - 1)
        cs = self.algorithm.taylor_to_params(scalar_data(coeffs))
        assert_allclose([g[0, 0] for g in cs.gammas], gammas, atol=1e-9)
        assert_allclose(classical_schur(coeffs), gammas, atol=1e-9)

    @settings(max_examples=15, deadline=None)
    @given(seed=SEEDS)
    def test_round_trip(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        dim_m, dim_n = factory.dims()
        cs = factory.sequence(dim_m, dim_n, int(factory.rng.integers(1, 5)))
        coeffs = self.algorithm.params_to_taylor(cs, cs.last_index, cross_check=False)
        recursion = self.algorithm.params_to_taylor(cs, cs.last_index, method="recursion")
        for a, b in zip(coeffs, recursion):
            assert_allclose(a, b, atol=1e-10)
        recovered = self.algorithm.taylor_to_params(SchurProblemData(dim_m, dim_n, tuple(coeffs)))
        for a, b in zip(recovered.gammas, cs.gammas):
            assert_allclose(a, b, atol=1e-9)

    @settings(max_examples=15, deadline=None)
    @given(seed=SEEDS)
    def test_adjoint_symmetry(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        dim_m, dim_n = factory.dims()
        cs, data = factory.problem(dim_m, dim_n, int(factory.rng.integers(1, 4)))
        recovered = self.algorithm.taylor_to_params(data.adjoint())
        for a, b in zip(recovered.gammas, cs.gammas):
            assert_allclose(a, b.conj().T, atol=1e-9)

    @settings(max_examples=50, deadline=None)
    @given(seed=SEEDS)
    def test_adjoint_symmetry_repeated_singular_values(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        head = factory.unitary(2) if factory.rng.integers(0, 2) else factory.degenerate(3, 2)
        rows, cols = head.shape
        params = [0.5 * head, factory.contraction(rows, cols), factory.contraction(rows, cols)]
        cs = self.algorithm.build_sequence(params, cols, rows)
        data = SchurProblemData(cols, rows, tuple(self.algorithm.params_to_taylor(cs, 2, method="recursion")))
        recovered = self.algorithm.taylor_to_params(data.adjoint())
        for a, b in zip(recovered.gammas, cs.adjoint().gammas):
            assert_allclose(a, b, atol=1e-9)

    def test_near_unitary_terminates_like_classification(self):
        value = np.sqrt(1 - 5e-10)
        data = scalar_data([value])
        cs = self.algorithm.taylor_to_params(data)
        self.assertEqual(cs.terminated, 0)
        self.assertEqual(cs.reason, ContractionClass.UNITARY)
        result = ProblemClassifier().classify(data)
        self.assertTrue(result.unique)
        self.assertEqual(result.first_degenerate_index, 0)

        gammas = [0.5, np.sqrt(1 - 4e-10)]
        data = scalar_data(continued_fraction_series(gammas, 1))
        cs = self.algorithm.taylor_to_params(data)
        self.assertEqual(cs.terminated, 1)
        assert_allclose([g[0, 0] for g in cs.gammas], gammas, atol=1e-9)
        self.assertEqual(ProblemClassifier().classify(data).first_degenerate_index, 1)


class TestClassification(unittest.TestCase):
    """Testes para a classificação do problema"""

    def setUp(self):
        self.classifier = ProblemClassifier()

    def test_unique(self):
        result = self.classifier.classify(scalar_data([0.5, 0.75]))
        self.assertTrue(result.solvable)
        self.assertTrue(result.unique)
        self.assertEqual(result.first_degenerate_index, 1)

    def test_not_unique(self):
        result = self.classifier.classify(scalar_data([0.5, 0.375]))
        self.assertTrue(result.solvable)
        self.assertFalse(result.unique)
        assert_allclose(result.shorted_m, [[0.5625]], atol=1e-10)
        self.assertEqual(len(result.shorted_norms), 2)

    def test_unsolvable(self):
        result = self.classifier.classify(scalar_data([2.0]))
        self.assertFalse(result.solvable)
        self.assertFalse(result.unique)

    def test_logs_classification(self):
        with self.assertLogs("src.schur", level="INFO"):
            self.classifier.classify(scalar_data([0.5]))

    @settings(max_examples=50, deadline=None)
    @given(seed=SEEDS)
    def test_uniqueness_path(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        dim_m, dim_n = factory.dims()
        order = int(factory.rng.integers(0, 4))
        cs, data = factory.problem(dim_m, dim_n, order, terminal=True)
        result = self.classifier.classify(data)
        self.assertTrue(result.unique)
        self.assertEqual(result.first_degenerate_index, order)

        processor = SchurProblemProcessor()
        prepared = processor.prepare(data)
        self.assertEqual(prepared.sequence.terminated, order)
        evaluator = processor.unique_evaluator(prepared)
        for a, b in zip(taylor_extract(evaluator, order), data.coeffs):
            assert_allclose(a, b, atol=1e-8)


class TestCmvBuilder(unittest.TestCase):
    """Testes para a montagem das matrizes CMV"""

    def test_zero_parameters(self):
        asm = assemble(scalar_sequence([0.0, 0.0]), 0)
        assert_allclose(asm.v_n, [[0, 1], [1, 0]])
        assert_allclose(asm.s_n0, np.zeros((2, 2)))

    def test_hand_product(self):
        asm = assemble(scalar_sequence([0.6, 0.8]), 0)
        assert_allclose(asm.v_n, [[0.8, 0.6], [0.6, -0.8]], atol=1e-14)
        assert_allclose(asm.s_n0, [[-0.48, -0.36], [0, 0]], atol=1e-14)

    def test_zero_cap_requires_defects(self):
        with self.assertRaises(DegenerateTail):
            assemble(scalar_sequence([0.5, 1.0]), 0)

    def test_hat_lift(self):
        lifted = hat_lift(scalar_sequence([0.5]))
        assert_allclose([g[0, 0] for g in lifted.gammas], [0.0, 0.5])
        empty = hat_lift(ChoiceSequence((), 1, 1))
        assert_allclose([g[0, 0] for g in empty.gammas], [0.0])

    def test_hat_lift_multiplies_by_z(self):
        cs = scalar_sequence([0.5, 0.25])
        z = 0.3
        lifted = CentralEvaluator(hat_lift(cs))(z)
        assert_allclose(lifted, z * CentralEvaluator(cs)(z), atol=1e-10)

    def test_finite_cmv(self):
        u0 = finite_cmv(scalar_sequence([0.5, 1.0])).u0
        root = np.sqrt(0.75)
        assert_allclose(u0, [[0.5, root], [root, -0.5]], atol=1e-12)
        assert_allclose(finite_cmv(scalar_sequence([1.0])).u0, [[1.0]])
        unitary = RandomInstanceFactory(np.random.default_rng(5)).unitary(2)
        cs = SchurAlgorithm().build_sequence([unitary], 2, 2)
        assert_allclose(finite_cmv(cs).u0, unitary, atol=1e-12)

    def test_finite_cmv_requires_termination(self):
        with self.assertRaises(NotTerminated):
            finite_cmv(scalar_sequence([0.5]))

    def test_finite_cmv_isometric_arity(self):
        finite = finite_cmv(SchurAlgorithm().build_sequence([np.array([[1.0], [0.0]])], 1, 2))
        self.assertFalse(finite.unitary)
        self.assertEqual(finite.tail_arity, 1)

    @settings(max_examples=20, deadline=None)
    @given(seed=SEEDS)
    def test_structure_and_entrywise_oracle(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        dim_m, dim_n = factory.dims()
        n = int(factory.rng.integers(0, 3))
        cs = factory.sequence(dim_m, dim_n, 2 * n + 3, terminal=bool(factory.rng.integers(0, 2)))
        asm = assemble(cs, n, cap=CAP_ACTUAL)
        last = 2 * n + 1
        assert_allclose(asm.v_n.conj().T @ asm.v_n, np.eye(asm.v_n.shape[1]), atol=1e-11)
        assert_allclose(asm.s_n, entrywise_cmv(cs, n, cs.param(last + 1).gamma), atol=1e-11)
        assert_allclose(asm.v_n @ asm.s_n, asm.s_tilde_n @ asm.v_n, atol=1e-11)
        assert_allclose(asm.s_tilde_n.conj().T, assemble(cs.adjoint(), n, cap=CAP_ACTUAL).s_n, atol=1e-12)
        assert_allclose(asm.index.projection([last]) @ asm.s_n0, 0.0, atol=1e-14)
        assert_allclose(asm.s_tilde_n0 @ asm.index_tilde.embedding([last]), 0.0, atol=1e-14)
        s_gamma, _ = asm.with_cap(cs.param(last + 1).gamma)
        assert_allclose(s_gamma, asm.s_n, atol=1e-12)
        self.assertLessEqual(operator_norm(asm.s_n), 1.0 + 1e-10)


class TestCoefficientFunction(unittest.TestCase):
    """Testes para a função coeficiente"""

    def test_at_origin(self):
        cs = scalar_sequence([0.4, 0.3, 0.2])
        blocks = CoefficientFunction(cs).evaluate(0.0)
        assert_allclose(blocks.theta0, [[0.4]])
        assert_allclose(blocks.a, 0.0)
        assert_allclose(blocks.b, 0.0)

    def test_zero_parameters(self):
        cf = CoefficientFunction(scalar_sequence([0.0, 0.0]))
        for tilde in (False, True):
            blocks = cf.evaluate(0.3, tilde=tilde)
            assert_allclose(blocks.theta0, [[0.0]], atol=1e-14)
            assert_allclose(blocks.a, [[0.0]], atol=1e-14)
            assert_allclose(blocks.b, [[0.3]], atol=1e-14)
            assert_allclose(blocks.c, [[0.3]], atol=1e-14)

    def test_outside_disk(self):
        with self.assertRaises(OutsideDisk):
            CoefficientFunction(scalar_sequence([0.0, 0.0])).evaluate(1.0)

    def test_parameter_shape_checked(self):
        cf = CoefficientFunction(scalar_sequence([0.2]))
        with self.assertRaises(ShapeMismatch):
            cf.compose(cf.evaluate(0.1), np.zeros((2, 2)))

    @settings(max_examples=20, deadline=None)
    @given(seed=SEEDS)
    def test_conservative_property(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        dim_m, dim_n = factory.dims()
        cf = CoefficientFunction(factory.sequence(dim_m, dim_n, int(factory.rng.integers(1, 6))))
        system = cf.system_matrix()
        assert_allclose(system.conj().T @ system, np.eye(system.shape[1]), atol=1e-10)
        e_value = factory.contraction(*cf.parameter_shape, scale=1.0)
        for _ in range(5):
            z = 0.9 * np.exp(2j * np.pi * factory.rng.uniform())
            blocks = cf.evaluate(z)
            self.assertLessEqual(operator_norm(blocks.as_matrix()), 1.0 + 1e-9)
            assert_allclose(cf.evaluate(z, tilde=True).as_matrix(), blocks.as_matrix(), atol=1e-10)
            assert_allclose(cf.compose(blocks, e_value), cf.compose_left(blocks, e_value), atol=1e-11)


class TestSolutionParametrization(unittest.TestCase):
    """Testes para Θ_E, solução única, resolvente e compressão"""

    def setUp(self):
        self.processor = SchurProblemProcessor()

    def test_solve_examples(self):
        prepared = self.processor.prepare(scalar_data([0.0]))
        report = self.processor.solve_theta(prepared, ConstantEvaluator([[0.5]]), 0.2)
        assert_allclose(report.value, [[0.1]], atol=1e-12)
        self.assertLessEqual(report.certified_norm, 1.0 + 1e-9)

        prepared = self.processor.prepare(scalar_data([0.0, 0.5]))
        report = self.processor.solve_theta(prepared, ConstantEvaluator([[1.0]]), 0.4)
        assert_allclose(report.value, [[0.3]], atol=1e-12)

    def test_zero_parameter_is_central(self):
        prepared = self.processor.prepare(scalar_data([0.3, 0.2, -0.1]))
        central = self.processor.central_evaluator(prepared)
        for z in (0.1, -0.5j, 0.7):
            value = self.processor.solve_theta(prepared, ConstantEvaluator([[0.0]]), z).value
            assert_allclose(value, central(z), atol=1e-12)

    def test_unique_examples(self):
        prepared = self.processor.prepare(scalar_data([0.5, 0.75]))
        assert_allclose(self.processor.unique_solution(prepared, 0.5).value, [[0.8]], atol=1e-10)
        prepared = self.processor.prepare(scalar_data([1.0]))
        for z in (0.0, 0.5, -0.9j):
            assert_allclose(self.processor.unique_solution(prepared, z).value, [[1.0]])
        c0 = np.array([[1.0], [0.0]])
        prepared = self.processor.prepare(SchurProblemData(1, 2, (c0,)))
        assert_allclose(self.processor.unique_solution(prepared, 0.6).value, c0)

    def test_near_unitary_unique_solution(self):
        value = np.sqrt(1 - 5e-10)
        prepared = self.processor.prepare(scalar_data([value]))
        self.assertTrue(prepared.classification.unique)
        self.assertEqual(prepared.sequence.terminated, 0)
        assert_allclose(self.processor.unique_solution(prepared, 0.3).value, [[value]], atol=1e-12)

    def test_unique_and_free_parameter_errors(self):
        unique = self.processor.prepare(scalar_data([0.5, 0.75]))
        with self.assertRaises(UniqueProblem):
            self.processor.solve_theta(unique, ConstantEvaluator([[0.5]]), 0.1)
        free = self.processor.prepare(scalar_data([0.5]))
        with self.assertRaises(NotUnique):
            self.processor.unique_solution(free, 0.1)
        with self.assertRaises(ShapeMismatch):
            self.processor.solve_theta(free, ConstantEvaluator(np.eye(2) * 0.5), 0.1)

    def test_resolvent_update_examples(self):
        asm = assemble(scalar_sequence([0.3, 0.6]), 0)
        assert_allclose(resolvent_update(asm, [[0.7]], 0.0), np.eye(2), atol=1e-14)
        z = 0.5
        base = np.linalg.inv(np.eye(2) - z * asm.s_n0)
        assert_allclose(resolvent_update(asm, [[0.0]], z), base, atol=1e-14)
        s_cap, _ = asm.with_cap([[0.7]])
        assert_allclose(resolvent_update(asm, [[0.7]], z), np.linalg.inv(np.eye(2) - z * s_cap), atol=1e-10)

    def test_compression_examples(self):
        self.assertLess(compression_check(scalar_sequence([0.3, 0.4]), 0, 0.5), 1e-12)
        self.assertLess(compression_check(scalar_sequence([0.3, 0.4, 0.5, 0.6]), 0, 0.5), 1e-9)
        self.assertLess(compression_check(scalar_sequence([0.3, 0.4, 0.5, 1.0]), 0, 0.7), 1e-9)

    @settings(max_examples=200, deadline=None)
    @given(seed=SEEDS)
    def test_scalar_continued_fraction(self, seed):
        rng = np.random.default_rng(seed)
        gammas = random_disk(rng, int(rng.integers(1, 8)))
        e_value = random_disk(rng, 1, radius=1.0)[0]
        prepared = self.processor.prepare(scalar_data(continued_fraction_series(gammas, len(gammas) - 1)))
        evaluator = self.processor.solution_evaluator(prepared, ConstantEvaluator([[e_value]]))
        for z in random_disk(rng, 10, radius=0.9):
            expected = continued_fraction_value(gammas, e_value, z)
            assert_allclose(evaluator(z), [[expected]], atol=1e-9)

    @settings(max_examples=100, deadline=None)
    @given(seed=SEEDS)
    def test_interpolation_and_parameter_recovery(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        dim_m, dim_n = factory.dims()
        order = int(factory.rng.integers(2, 6))
        cs, data = factory.problem(dim_m, dim_n, order)
        cf = CoefficientFunction(cs)
        e_value = factory.contraction(*cf.parameter_shape)
        solution = SolutionEvaluator(cf, ConstantEvaluator(e_value))
        extracted = taylor_extract(solution, order + 2)
        for a, b in zip(extracted, data.coeffs):
            assert_allclose(a, b, atol=1e-8)
        recovered = SchurAlgorithm().taylor_to_params(SchurProblemData(dim_m, dim_n, tuple(extracted)))
        assert_allclose(recovered.gammas[order + 1], e_value, atol=1e-7)
        assert_allclose(recovered.gammas[order + 2], 0.0, atol=1e-7)
        self.assertLessEqual(certify_schur_norm(solution), 1.0 + 1e-9)

    @settings(max_examples=15, deadline=None)
    @given(seed=SEEDS)
    def test_resolvent_update_property(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        dim_m, dim_n = factory.dims()
        n = int(factory.rng.integers(0, 2))
        asm = assemble(factory.sequence(dim_m, dim_n, 2 * n + 2), n, cap=CAP_ZERO)
        cap = factory.contraction(*asm.cap_shape, scale=1.0)
        s_cap, _ = asm.with_cap(cap)
        for _ in range(10):
            z = factory.point(0.95)
            direct = np.linalg.inv(np.eye(s_cap.shape[0]) - z * s_cap)
            assert_allclose(resolvent_update(asm, cap, z), direct, atol=1e-10)

    @settings(max_examples=10, deadline=None)
    @given(seed=SEEDS)
    def test_compression_property(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        dim = int(factory.rng.integers(1, 3))
        n = int(factory.rng.integers(0, 2))
        length = 2 * n + 2 + int(factory.rng.integers(1, 3))
        z = factory.point()
        self.assertLess(compression_check(factory.sequence(dim, dim, length), n, z), 1e-9)
        self.assertLess(compression_check(factory.sequence(dim, dim, length, terminal=True), n, z), 1e-9)


class TestEvaluators(unittest.TestCase):
    """Testes para as estratégias de avaliação"""

    def test_examples(self):
        self.assertAlmostEqual(complex(ConstantEvaluator([[0.5]])(0.7)[0, 0]), 0.5)
        assert_allclose(CentralEvaluator(scalar_sequence([0.5]))(0.3), [[0.5]], atol=1e-12)
        assert_allclose(TerminatedEvaluator(scalar_sequence([0.5, 1.0]))(0.5), [[0.8]], atol=1e-12)

    def test_kinds(self):
        self.assertIsInstance(SchurEvaluator.from_sequence(scalar_sequence([0.5, 1.0])), TerminatedEvaluator)
        self.assertIsInstance(SchurEvaluator.from_sequence(scalar_sequence([0.5])), CentralEvaluator)
        with self.assertRaises(DegenerateTail):
            CentralEvaluator(scalar_sequence([1.0]))
        with self.assertRaises(NotTerminated):
            TerminatedEvaluator(scalar_sequence([0.5]))
        with self.assertRaises(NotContraction):
            ConstantEvaluator([[1.5]])
        with self.assertRaises(OutsideDisk):
            ConstantEvaluator([[0.5]])(0.9999999999)

    def test_taylor_extract(self):
        coeffs = taylor_extract(ConstantEvaluator([[0.5]]), 2)
        assert_allclose([c[0, 0] for c in coeffs], [0.5, 0, 0], atol=1e-14)
        coeffs = taylor_extract(TerminatedEvaluator(scalar_sequence([0.0, 1.0])), 2)
        assert_allclose([c[0, 0] for c in coeffs], [0, 1, 0], atol=1e-12)

    def test_certify(self):
        self.assertAlmostEqual(certify_schur_norm(ConstantEvaluator([[0.5]])), 0.5)
        identity = TerminatedEvaluator(scalar_sequence([0.0, 1.0]))
        self.assertAlmostEqual(certify_schur_norm(identity, radii=(0.3, 0.9)), 0.9)

    @settings(max_examples=15, deadline=None)
    @given(seed=SEEDS)
    def test_realizations_agree(self, seed):
        factory = RandomInstanceFactory(np.random.default_rng(seed))
        dim_m, dim_n = factory.dims()
        z = factory.point()
        cs = factory.sequence(dim_m, dim_n, int(factory.rng.integers(1, 5)))
        central = CentralEvaluator(cs)
        assert_allclose(CentralEvaluator(cs.adjoint())(np.conj(z)).conj().T, central(z), atol=1e-10)
        assert_allclose(CentralEvaluator(cs, extra_padding=2)(z), central(z), atol=1e-10)
        assert_allclose(RecursiveEvaluator(cs)(z), central(z), atol=1e-10)

        terminated = factory.sequence(dim_m, dim_m, int(factory.rng.integers(1, 5)), terminal=True)
        via_cmv = TerminatedEvaluator(terminated)
        via_coefficients = TerminatedEvaluator(terminated, via_finite_cmv=False)
        assert_allclose(via_cmv(z), RecursiveEvaluator(terminated)(z), atol=1e-10)
        assert_allclose(via_coefficients(z), via_cmv(z), atol=1e-10)


class TestRepositories(unittest.TestCase):
    """Testes para leitura e validação de documentos"""

    def test_parse_problem(self):
        document = ProblemDocumentParser.parse_problem({
            "dim_m": 1, "dim_n": 2,
            "coefficients": [[[[0.5, 0.0]], [[0.0, 0.1]]], [[0.1, 0.0], [0.2, -0.1]]],
            "tolerances": {"rank_tol": 1e-9},
        })
        self.assertEqual(len(document.coefficients), 2)
        assert_allclose(document.coefficients[0], [[0.5], [0.1j]])
        assert_allclose(document.coefficients[1], [[0.1], [0.2 - 0.1j]])
        self.assertEqual(document.tolerances, {"rank_tol": 1e-9})

    def test_errors_name_field(self):
        cases = [
            ({"dim_n": 1, "coefficients": [[[[0.5, 0]]]]}, "dim_m"),
            ({"dim_m": 1, "dim_n": 1}, "coefficients"),
            ({"dim_m": 1, "dim_n": 1, "coefficients": [[[["a", 0]]]]}, "coefficients[0]"),
            ({"dim_m": 1, "dim_n": 1, "coefficients": [[[[0.5, 0]]]], "tolerances": {"rank_tol": "x"}},
             "tolerances.rank_tol"),
            ({"dim_m": 2, "dim_n": 1, "coefficients": [[[[0.5, 0]]]]}, "coefficients[0]"),
        ]
        for raw, field in cases:
            with self.assertRaises(ProblemFormatError) as context:
                ProblemDocumentParser.parse_problem(raw)
            self.assertIn(field, str(context.exception))

    def test_parse_parameter(self):
        document = ProblemDocumentParser.parse_parameter({"kind": "constant", "matrix": [[[0.5, 0.0]]]})
        self.assertEqual(document.kind, ParameterKind.CONSTANT)
        document = ProblemDocumentParser.parse_parameter({"kind": "central", "coefficients": [[[[0.1, 0]]]]})
        self.assertEqual(len(document.coefficients), 1)
        with self.assertRaises(ProblemFormatError):
            ProblemDocumentParser.parse_parameter({"kind": "rational"})

    def test_in_memory_repository(self):
        repository = InMemoryProblemRepository()
        repository.add_problem("p", {"dim_m": 1, "dim_n": 1, "parameters": [[[[0.5, 0.0]]], [[[1.0, 0.0]]]]})
        self.assertTrue(repository.load_problem("p").given_as_parameters)
        with self.assertRaises(ProblemFormatError):
            repository.load_problem("ausente")

    def test_json_repository(self):
        with tempfile.TemporaryDirectory() as directory:
            with open(os.path.join(directory, "p.json"), "w") as handle:
                json.dump({"dim_m": 1, "dim_n": 1, "coefficients": [[0.5, 0.0]]}, handle)
            with open(os.path.join(directory, "ruim.json"), "w") as handle:
                handle.write("{")
            repository = JsonFileProblemRepository(directory)
            assert_allclose(repository.load_problem("p.json").coefficients[0], [[0.5]])
            with self.assertRaises(ProblemFormatError):
                repository.load_problem("ruim.json")
            with self.assertRaises(ProblemFormatError):
                repository.load_problem("ausente.json")


class TestReportGenerator(unittest.TestCase):
    """Testes para a serialização determinística"""

    def test_float_format(self):
        text = SchurReportGenerator.dumps({"x": 0.1, "z": 1 + 2j, "zero": -0.0})
        self.assertEqual(text, '{\n  "x": 0.10000000000000001,\n  "z": [1, 2],\n  "zero": 0\n}\n')

    def test_rejects_nan(self):
        with self.assertRaises(ValueError):
            SchurReportGenerator.dumps({"x": float("nan")})

    def test_matrix_encoding(self):
        self.assertEqual(SchurReportGenerator.encode_matrix(np.array([[0.5 - 1j]])), [[[0.5, -1.0]]])

    def test_evaluations_report(self):
        processor = SchurProblemProcessor()
        prepared = processor.prepare(scalar_data([0.5]))
        reports = processor.report(processor.central_evaluator(prepared), [0.1, 0.2])
        self.assertIn("evaluations", SchurReportGenerator.evaluations_report(reports))
        self.assertIn("theta", SchurReportGenerator.evaluations_report(reports[:1]))

    def test_log_invariant_failure(self):
        with self.assertLogs("src.schur", level="WARNING"):
            LogFormatter.log_invariant(InvariantResult("x", 1.0, 0.5))


class TestProcessor(unittest.TestCase):
    """Testes para o orquestrador"""

    def setUp(self):
        self.repository = InMemoryProblemRepository()
        self.processor = SchurProblemProcessor(repository=self.repository)

    def test_problem_from_parameters(self):
        self.repository.add_problem("p", {"dim_m": 1, "dim_n": 1, "parameters": [[[[0.5, 0]]], [[[0.5, 0]]]]})
        prepared = self.processor.load("p")
        assert_allclose([c[0, 0] for c in prepared.data.coeffs], [0.5, 0.375], atol=1e-10)
        self.assertFalse(prepared.classification.unique)

    def test_file_tolerances(self):
        document = ProblemDocument(1, 1, coefficients=(np.array([[0.5]]),), tolerances={"cert_tol": 1e-6})
        self.assertEqual(self.processor.prepare(document).config.cert_tol, 1e-6)

    def test_parameter_documents(self):
        prepared = self.processor.prepare(scalar_data([0.0]))
        self.repository.add_parameter("central", {"kind": "central", "coefficients": [[[[0.5, 0]]]]})
        self.repository.add_parameter("terminated", {"kind": "terminated", "coefficients": [[[[1.0, 0]]]]})
        self.repository.add_parameter("largo", {"kind": "constant", "matrix": [[[0.1, 0], [0.1, 0]]]})
        central = self.processor.parameter_evaluator(prepared, self.repository.load_parameter("central"))
        assert_allclose(central(0.3), [[0.5]], atol=1e-12)
        terminated = self.processor.parameter_evaluator(prepared, self.repository.load_parameter("terminated"))
        solution = self.processor.solution_evaluator(prepared, terminated)
        assert_allclose(solution(0.4), [[0.4]], atol=1e-12)
        with self.assertRaises(ShapeMismatch):
            self.processor.parameter_evaluator(prepared, self.repository.load_parameter("largo"))

    def test_unsolvable_requires_sequence(self):
        prepared = self.processor.prepare(scalar_data([2.0]))
        with self.assertRaises(NotASchurSequence):
            self.processor.central_evaluator(prepared)

    def test_classification_follows_termination(self):
        free = ProblemClassification(solvable=True, unique=False, first_degenerate_index=None,
                                     shorted_m=None, shorted_n=None, toeplitz_norm=0.9,
                                     degeneracy_threshold=1e-9)
        self.assertIs(_reconcile(free, scalar_sequence([0.5])), free)
        self.assertIs(_reconcile(free, None), free)
        with self.assertLogs("src.schur", level="WARNING"):
            adjusted = _reconcile(free, scalar_sequence([0.5, 1.0]))
        self.assertTrue(adjusted.unique)
        self.assertEqual(adjusted.first_degenerate_index, 1)

    def test_parameters_report(self):
        prepared = self.processor.prepare(scalar_data([0.5, 0.375]))
        cs, shorted = self.processor.parameters(prepared)
        self.assertEqual(len(shorted), len(cs))
        assert_allclose(shorted[1][0], [[0.5625]], atol=1e-12)

    def test_cmv_assembly(self):
        assembly, hat = self.processor.cmv_assembly(self.processor.prepare(scalar_data([0.6, 0.512])))
        self.assertFalse(hat)
        assert_allclose(assembly.s_n0, [[-0.48, -0.36], [0, 0]], atol=1e-12)
        _, hat = self.processor.cmv_assembly(self.processor.prepare(scalar_data([0.6])))
        self.assertTrue(hat)
        with self.assertRaises(ShapeMismatch):
            self.processor.cmv_assembly(self.processor.prepare(scalar_data([0.6, 0.512])), CAP_ACTUAL)


class TestInvariantSuite(unittest.TestCase):
    """Testes para a suíte de invariantes"""

    def test_all_pass_and_deterministic(self):
        prepared = SchurProblemProcessor().prepare(scalar_data([0.5, 0.375]))
        first = InvariantSuite(seed=11, instances=1).run(prepared)
        second = InvariantSuite(seed=11, instances=1).run(prepared)
        failed = [r.name for r in first if not r.passed]
        self.assertEqual(failed, [])
        self.assertEqual([r.residual for r in first], [r.residual for r in second])


class TestCli(unittest.TestCase):
    """Testes para a linha de comando"""

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.directory.cleanup()

    def write(self, name, payload):
        path = os.path.join(self.directory.name, name)
        with open(path, "w") as handle:
            if isinstance(payload, str):
                handle.write(payload)
            else:
                json.dump(payload, handle)
        return path

    def problem(self, values):
        return self.write("problema.json", {"dim_m": 1, "dim_n": 1, "coefficients": [[[[v, 0.0]]] for v in values]})

    def run_cli(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            code = cli.main(list(argv))
        return code, stdout.getvalue(), stderr.getvalue()

    def test_check(self):
        code, out, _ = self.run_cli("check", self.problem([0.5, 0.375]))
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertTrue(payload["solvable"])
        self.assertFalse(payload["unique"])

        code, out, _ = self.run_cli("check", self.problem([0.5, 0.75]))
        payload = json.loads(out)
        self.assertTrue(payload["unique"])
        self.assertEqual(payload["p"], 1)

        code, out, _ = self.run_cli("check", self.problem([2.0]))
        self.assertEqual(code, 2)
        self.assertFalse(json.loads(out)["solvable"])

    def test_solve_and_central(self):
        param = self.write("e.json", {"kind": "constant", "matrix": [[[0.5, 0.0]]]})
        code, out, _ = self.run_cli("solve", self.problem([0.0]), "--param", param, "--eval", "0.2")
        self.assertEqual(code, 0)
        assert_allclose(json.loads(out)["theta"], [[[0.1, 0.0]]], atol=1e-12)

        code, out, _ = self.run_cli("central", self.problem([0.0, 0.0]), "--eval", "0.3")
        assert_allclose(json.loads(out)["theta"], [[[0.0, 0.0]]], atol=1e-12)

        code, out, _ = self.run_cli("central", self.problem([0.5]), "--grid", "0.3,0.6/4", "--eval", "0+0.1i")
        self.assertEqual(len(json.loads(out)["evaluations"]), 9)

    def test_cmv_dump(self):
        code, out, _ = self.run_cli("cmv", self.problem([0.6, 0.512]), "--cap", "zero")
        self.assertEqual(code, 0)
        payload = json.loads(out)
        assert_allclose(payload["s_n0"], [[[-0.48, 0], [-0.36, 0]], [[0, 0], [0, 0]]], atol=1e-12)
        self.assertFalse(payload["hat_lifted"])

    def test_error_codes(self):
        code, _, err = self.run_cli("check", self.write("ruim.json", {"dim_n": 1, "coefficients": []}))
        self.assertEqual(code, 1)
        self.assertTrue(err.startswith("error[format]:"))
        self.assertIn("dim_m", err)
        self.assertEqual(len(err.strip().splitlines()), 1)

        param = self.write("e.json", {"kind": "constant", "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]})
        code, _, err = self.run_cli("solve", self.problem([0.0]), "--param", param, "--eval", "0.2")
        self.assertEqual(code, 3)
        self.assertIn("(1, 1)", err)
        self.assertIn("(2, 2)", err)

        code, _, err = self.run_cli("central", self.problem([2.0]), "--eval", "0.1")
        self.assertEqual(code, 2)

        code, _, err = self.run_cli("check", self.problem([0.5]), "--tol", "rank_tol=5")
        self.assertEqual(code, 1)

    def test_out_file_and_determinism(self):
        problem = self.problem([0.5, 0.375])
        param = self.write("e.json", {"kind": "constant", "matrix": [[[0.25, 0.1]]]})
        target = os.path.join(self.directory.name, "saida.json")
        self.run_cli("solve", problem, "--param", param, "--grid", "0.5/3", "--out", target)
        with open(target) as handle:
            first = handle.read()
        _, second, _ = self.run_cli("solve", problem, "--param", param, "--grid", "0.5/3")
        self.assertEqual(first, second)

    def test_verify(self):
        code, out, _ = self.run_cli("verify", self.problem([0.5, 0.375]), "--instances", "1", "--seed", "3")
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["passed"])


if __name__ == '__main__':
    unittest.main(verbosity=2)
