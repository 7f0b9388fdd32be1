from fractions import Fraction

import numpy as np
import pytest

from anomdet.gram import (
    ProblemInstance,
    closed_form_spectrum,
    direct_spectrum,
    gram_matrix,
    matrix_sqrt,
)
from anomdet.combin import binomial, enumerate_patterns
from anomdet.johnson import scheme_projector

C_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)


class TestProblemInstance:
    def test_validation(self):
        with pytest.raises(ValueError):
            ProblemInstance(0, 0, 0.5)
        with pytest.raises(ValueError):
            ProblemInstance(4, 5, 0.5)
        with pytest.raises(ValueError):
            ProblemInstance(4, 2, 1.5)

    def test_exact_flag(self):
        assert ProblemInstance(4, 2, Fraction(1, 2)).exact
        assert not ProblemInstance(4, 2, 0.5).exact


class TestGramMatrix:
    def test_orthogonal_hypotheses(self):
        G = gram_matrix(ProblemInstance(5, 2, 0.0))
        assert np.array_equal(G, np.eye(10))

    def test_identical_hypotheses(self):
        G = gram_matrix(ProblemInstance(5, 2, 1.0))
        assert np.array_equal(G, np.ones((10, 10)))

    def test_distance_two_entry(self):
        inst = ProblemInstance(4, 2, Fraction(1, 3))
        G = gram_matrix(inst)
        pats = enumerate_patterns(4, 2)
        a, b = pats.index((3, 4)), pats.index((1, 2))
        assert G[a][b] == Fraction(1, 3) ** 4
        assert all(G[i][i] == 1 for i in range(6))

    def test_size_cap(self):
        with pytest.raises(ValueError):
            gram_matrix(ProblemInstance(30, 15, 0.5), size_cap=100)


class TestClosedFormSpectrum:
    def test_single_anomaly(self):
        # two distinct eigenvalues: 1 + (n-1)c^2 and 1 - c^2
        for n in (2, 5, 11):
            z = Fraction(1, 4)
            spec = closed_form_spectrum(ProblemInstance(n, 1, Fraction(1, 2)))
            assert [(e.value, e.multiplicity) for e in spec.entries] == [
                (1 + (n - 1) * z, 1),
                (1 - z, n - 1),
            ]

    def test_frozen_example_4_2(self):
        # dense eigendecomposition of the explicit 6x6 Gram gives
        # (33/16, 15/16, 9/16) with multiplicities (1, 3, 2)
        spec = closed_form_spectrum(ProblemInstance(4, 2, Fraction(1, 2)))
        assert [(e.value, e.multiplicity) for e in spec.entries] == [
            (Fraction(33, 16), 1),
            (Fraction(15, 16), 3),
            (Fraction(9, 16), 2),
        ]

    def test_zero_overlap(self):
        spec = closed_form_spectrum(ProblemInstance(7, 3, 0.0))
        assert all(e.value == 1.0 for e in spec.entries)

    def test_trace_identity(self):
        for n, k in [(6, 2), (8, 3), (9, 4)]:
            spec = closed_form_spectrum(ProblemInstance(n, k, Fraction(2, 7)))
            assert sum(e.value * e.multiplicity for e in spec.entries) == binomial(n, k)

    def test_perron_is_row_sum(self):
        for n, k in [(5, 2), (7, 3)]:
            inst = ProblemInstance(n, k, Fraction(3, 5))
            G = gram_matrix(inst)
            row_sum = sum(G[0])
            assert closed_form_spectrum(inst).entries[0].value == row_sum

    def test_strictly_decreasing(self):
        spec = closed_form_spectrum(ProblemInstance(9, 4, 0.6))
        vals = [e.value for e in spec.entries]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("c", C_GRID)
    @pytest.mark.parametrize("n,k", [(5, 2), (7, 3), (9, 4), (8, 2)])
    def test_matches_dense_oracle(self, n, k, c):
        inst = ProblemInstance(n, k, c)
        closed = closed_form_spectrum(inst).as_multiset()
        dense = direct_spectrum(gram_matrix(inst))
        assert np.abs(closed - dense).max() < 1e-9

    def test_spectral_reconstruction(self):
        inst = ProblemInstance(6, 2, 0.4)
        G = gram_matrix(inst)
        recon = np.zeros_like(G)
        for e in closed_form_spectrum(inst).entries:
            recon += float(e.value) * scheme_projector(6, 2, e.j)
        assert np.abs(G - recon).max() < 1e-10


class TestDirectSpectrum:
    def test_identity(self):
        assert np.allclose(direct_spectrum(np.eye(7)), np.ones(7))

    def test_all_ones(self):
        ev = direct_spectrum(np.ones((6, 6)))
        assert abs(ev[0] - 6) < 1e-12
        assert np.abs(ev[1:]).max() < 1e-12

    def test_rejects_nonsymmetric(self):
        with pytest.raises(ValueError):
            direct_spectrum(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestMatrixSqrt:
    def test_identity(self):
        assert np.abs(matrix_sqrt(np.eye(5)) - np.eye(5)).max() < 1e-12

    def test_all_ones(self):
        J = np.ones((8, 8))
        assert np.abs(matrix_sqrt(J) - J / np.sqrt(8)).max() < 1e-7

    def test_squares_back(self):
        G = np.array(gram_matrix(ProblemInstance(6, 2, 0.7)))
        S = matrix_sqrt(G)
        assert np.abs(S - S.T).max() < 1e-12
        assert np.linalg.norm(S @ S - G) < 1e-9

    def test_constant_diagonal(self):
        inst = ProblemInstance(4, 2, 0.5)
        S = matrix_sqrt(np.array(gram_matrix(inst)))
        d = np.diag(S)
        assert d.max() - d.min() < 1e-10
        # diagonal value is (sum_l sqrt(lambda_l)) / N
        trace = sum(
            e.multiplicity * np.sqrt(float(e.value))
            for e in closed_form_spectrum(inst).entries
        )
        assert abs(d[0] - trace / inst.N) < 1e-12

    def test_trace_squared_matches_protocol(self):
        from anomdet.protocols import min_error_success

        inst = ProblemInstance(5, 2, 0.6)
        S = matrix_sqrt(np.array(gram_matrix(inst)))
        assert abs((np.trace(S) / inst.N) ** 2 - min_error_success(inst).value) < 1e-12

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError):
            matrix_sqrt(np.diag([1.0, -0.5]))
