import random
from fractions import Fraction

import pytest

from dmint.bell import PartitionIndex, bell_eval, enumerate_indices, l_matrix
from dmint.symseries import GeneralizedPolynomial, GeneralizedRational, parse_rational, profile

from support import partitions_by_block_count, random_int_poly

BELL_NUMBERS = (1, 2, 5, 15, 52, 203, 877, 4140)


class TestEnumeration:
    def test_examples(self):
        assert [idx.j for idx in enumerate_indices(3, 2)] == [(1, 1)]
        assert [idx.j for idx in enumerate_indices(4, 2)] == [(0, 2, 0), (1, 0, 1)]
        for n in range(1, 7):
            assert [idx.j for idx in enumerate_indices(n, n)] == [(n,)]

    def test_invalid_arguments(self):
        for n, k in ((0, 0), (3, 0), (2, 3), (-1, 1)):
            with pytest.raises(ValueError):
                enumerate_indices(n, k)

    def test_constraints_and_order(self):
        for n in range(1, 9):
            for k in range(1, n + 1):
                indices = enumerate_indices(n, k)
                assert len(set(idx.j for idx in indices)) == len(indices)
                assert [idx.j for idx in indices] == sorted(idx.j for idx in indices)
                for idx in indices:
                    assert len(idx.j) == n - k + 1
                    assert sum(idx.j) == k
                    assert sum(i * ji for i, ji in enumerate(idx.j, 1)) == n
                    coeff = idx.coefficient()
                    assert isinstance(coeff, int) and coeff > 0


class TestBellEval:
    def test_last_argument_identity(self):
        rng = random.Random(0)
        for n in range(1, 7):
            y = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
            assert bell_eval(n, 1, y) == y[-1]

    def test_diagonal_power(self):
        for n in range(1, 7):
            assert bell_eval(n, n, [Fraction(3)]) == Fraction(3) ** n

    def test_small_closed_form(self):
        y1, y2 = Fraction(2), Fraction(7)
        assert bell_eval(3, 2, [y1, y2]) == 3 * y1 * y2

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            bell_eval(4, 2, [1.0, 2.0])

    def test_bell_numbers_against_set_partitions(self):
        for n in range(1, 9):
            counts = partitions_by_block_count(n)
            ones = [Fraction(1)] * n
            per_k = [bell_eval(n, k, ones[: n - k + 1]) for k in range(1, n + 1)]
            for k, value in enumerate(per_k, 1):
                assert value == counts.get(k, 0)
            assert sum(per_k) == BELL_NUMBERS[n - 1]

    def test_numeric_and_symbolic_agree(self):
        rng = random.Random(1)
        for n in range(1, 6):
            for k in range(1, n + 1):
                y_exact = [Fraction(rng.randint(-4, 4)) for _ in range(n - k + 1)]
                exact = bell_eval(n, k, y_exact)
                approx = bell_eval(n, k, [float(v) for v in y_exact])
                assert approx == pytest.approx(float(exact), rel=1e-12, abs=1e-12)


class TestLMatrix:
    def test_square_substitution_values(self):
        g = GeneralizedPolynomial({2: 1})
        table = l_matrix(g, 3)
        assert table[(3, 2)] == parse_rational("12*x")
        assert table[(3, 3)] == parse_rational("8*x^3")
        assert table[(2, 1)] == parse_rational("2")

    def test_diagonal_is_gprime_power(self):
        rng = random.Random(2)
        for s in (1, 2, 3):
            g = random_int_poly(rng, s)
            if g.lead_coefficient < 0:
                g = g.scaled(-1)
            gprime = GeneralizedRational(g).derivative()
            table = l_matrix(g, 4)
            for k in range(1, 5):
                assert table[(k, k)] == gprime ** k
                assert profile(table[(k, k)]).gamma == k * (s - 1)

    def test_exponent_bound(self):
        # lead exponent of L[n,k] is at most s*k - n, with equality when
        # n - k + 1 <= s.
        rng = random.Random(3)
        for s in (1, 2, 3):
            for g in (GeneralizedPolynomial({s: 1}), random_int_poly(rng, s)):
                if g.lead_coefficient < 0:
                    g = g.scaled(-1)
                table = l_matrix(g, 8)
                for (n, k), value in table.items():
                    if value.is_zero:
                        continue
                    gamma = profile(value).gamma
                    assert gamma <= s * k - n
                    if n - k + 1 <= s:
                        assert gamma == s * k - n

    def test_rejects_bad_g(self):
        with pytest.raises(ValueError):
            l_matrix(GeneralizedPolynomial({0: 1}), 2)  # constant
        with pytest.raises(ValueError):
            l_matrix(GeneralizedPolynomial({2: -1}), 2)  # negative lead
        with pytest.raises(ValueError):
            l_matrix(GeneralizedPolynomial({1: 1}, 2), 2)  # half grid
