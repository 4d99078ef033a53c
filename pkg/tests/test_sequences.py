"""
Tests for the sequence engines
"""

from fractions import Fraction
import json
import math

import pytest

from congruence_lab.arith import PrimeRange, Residue, primes_in, to_residue
from congruence_lab.cache import ResidueCache
from congruence_lab.errors import EvenIndex, KTooLarge, NotInvertible, TooLarge
from congruence_lab.sequences import (
    SequenceEngine,
    eulerian_closed,
    eulerian_mod,
    generalized_eulerian_row,
    multinomial_size,
    odd_power_sums,
    power_sum,
)
from tests.conftest import (
    EHAT_NUMBERS,
    EULER_NUMBERS,
    EULERIAN_ROWS,
    GENOCCHI_NUMBERS,
    TANGENT_NUMBERS,
    ZIGZAG_NUMBERS,
)

COHERENCE_PRIMES = primes_in(PrimeRange(5, 199))
COHERENCE_MAX_N = 30


class TestEulerian:
    """Test exact and modular Eulerian rows"""

    def test_golden_rows(self, engine, eulerian_rows):
        """Test rows 1..7"""
        for n, row in eulerian_rows.items():
            assert engine.eulerian_row(n) == row

    def test_rows_sum_to_factorial(self, engine):
        """Test each row sums to n!"""
        total = 1
        for n in range(1, 15):
            total *= n
            assert sum(engine.eulerian_row(n)) == total

    def test_row_is_a_copy(self, engine):
        """Test callers cannot corrupt the memo"""
        row = engine.eulerian_row(4)
        row[0] = 99
        assert engine.eulerian_row(4) == [1, 11, 11, 1]

    def test_invalid_row(self, engine):
        """Test row 0 is refused"""
        with pytest.raises(ValueError):
            engine.eulerian_row(0)

    def test_closed_form_matches(self, engine):
        """Test the closed formula on row 9"""
        assert [eulerian_closed(9, m) for m in range(9)] == engine.eulerian_row(9)

    def test_row_mod(self, engine):
        """Test row 5 mod 7"""
        assert engine.eulerian_row_mod(5, 7) == [1, 5, 3, 5, 1]

    def test_mod_huge_index(self):
        """Test E(n, 1) = 2^n - n - 1 for a huge n"""
        n = 10 ** 18
        expected = (pow(2, n, 7) - n - 1) % 7
        assert eulerian_mod(n, 1, 7) == Residue(expected, 7)

    def test_mod_small_index(self):
        """Test E(5, 2) mod 7"""
        assert eulerian_mod(5, 2, 7).value == 66 % 7

    def test_mod_column_too_large(self):
        """Test m + 1 >= p is refused"""
        with pytest.raises(KTooLarge):
            eulerian_mod(10, 6, 7)

    def test_even_ascent_count(self, engine):
        """Test N_3 and N_4"""
        assert engine.even_ascent_count(3) == 2
        assert engine.even_ascent_count(4) == 12
        assert engine.even_ascent_count_mod(4, 5) == Residue(2, 5)


class TestGeneralizedEulerian:
    """Test rows solved from the Shanks identity"""

    def test_multiplicity_one_is_eulerian(self):
        """Test i = 1 gives the ordinary rows"""
        assert generalized_eulerian_row(4, 1) == EULERIAN_ROWS[4]

    def test_small_rows(self):
        """Test rows for multiplicity 2"""
        assert generalized_eulerian_row(2, 2) == [1, 4, 1]
        assert generalized_eulerian_row(3, 2) == [1, 20, 48, 20, 1]

    def test_row_sums(self):
        """Test each row sums to the number of words"""
        for n, i in [(2, 3), (3, 3), (4, 2)]:
            assert sum(generalized_eulerian_row(n, i)) == multinomial_size(n, i)

    def test_too_large(self):
        """Test the size cap"""
        with pytest.raises(TooLarge):
            generalized_eulerian_row(6, 4)

    def test_invalid_arguments(self):
        """Test zero multiplicity is refused"""
        with pytest.raises(ValueError):
            generalized_eulerian_row(3, 0)


class TestBoustrophedon:
    """Test the zigzag family and its derived sequences"""

    def test_zigzag(self, engine):
        """Test z_0..z_12"""
        assert engine.zigzag(12) == ZIGZAG_NUMBERS

    def test_zigzag_mod(self, engine):
        """Test the modular table agrees after reduction"""
        assert engine.zigzag_mod(12, 7, 2) == [z % 49 for z in ZIGZAG_NUMBERS]

    def test_euler_numbers(self, engine):
        """Test E_0..E_12"""
        assert [engine.euler_number(n) for n in range(13)] == EULER_NUMBERS

    def test_euler_mod(self, engine):
        """Test E_6 = -61 mod 7 and odd indices"""
        assert engine.euler_mod(6, 7) == Residue(2, 7)
        assert engine.euler_mod(5, 7) == Residue(0, 7)

    def test_generalized_euler(self, engine):
        """Test Ê_0..Ê_12 and its modular mirror"""
        assert [engine.generalized_euler(n) for n in range(13)] == EHAT_NUMBERS
        for n in range(13):
            assert engine.ehat_mod(n, 11).value == EHAT_NUMBERS[n] % 11

    def test_tangent_numbers(self, engine):
        """Test T_1..T_11"""
        for n, t in TANGENT_NUMBERS.items():
            assert engine.tangent_number(n) == t
        assert engine.tangent_mod(7, 5) == Residue(2, 5)

    def test_tangent_even_index(self, engine):
        """Test even indices are refused"""
        with pytest.raises(EvenIndex):
            engine.tangent_number(4)
        with pytest.raises(EvenIndex):
            engine.tangent_mod(4, 5)

    def test_genocchi_numbers(self, engine):
        """Test G_1..G_12"""
        assert [engine.genocchi_number(n) for n in range(1, 13)] == GENOCCHI_NUMBERS

    def test_genocchi_index_zero(self, engine):
        """Test G_0 is refused"""
        with pytest.raises(ValueError):
            engine.genocchi_number(0)

    def test_genocchi_mod(self, engine):
        """Test G_6 mod 7 and G_4 / 4 mod 7"""
        assert engine.genocchi_mod(6, 7) == Residue(4, 7)
        assert engine.divided_genocchi(4, 7) == Residue(2, 7)

    def test_genocchi_mod_agrees(self, engine):
        """Test G_n mod 13^2 for n up to 24"""
        for n in range(1, 25):
            assert engine.genocchi_mod(n, 13, 2).value == engine.genocchi_number(n) % 169


class TestBernoulli:
    """Test exact and modular Bernoulli numbers"""

    def test_exact(self, engine):
        """Test B_0..B_4 with B_1 = -1/2"""
        assert engine.bernoulli_exact(4) == [
            1,
            Fraction(-1, 2),
            Fraction(1, 6),
            0,
            Fraction(-1, 30),
        ]
        assert engine.bernoulli(12) == Fraction(-691, 2730)

    def test_mod(self, engine):
        """Test B_2 mod 5 and B_4 mod 7"""
        assert engine.bernoulli_mod(2, 5) == Residue(1, 5)
        assert engine.bernoulli_mod(4, 7) == Residue(3, 7)
        assert engine.bernoulli_mod(0, 7) == Residue(1, 7)

    def test_divided(self, engine):
        """Test B_2 / 2 mod 7"""
        assert engine.divided_bernoulli(2, 7) == Residue(1, 7) / 12


class TestHarmonicAndPowerSums:
    """Test harmonic residues and power sums"""

    def test_harmonic_mod_p(self, engine):
        """Test H_0..H_4 and H' mod 5"""
        table = engine.harmonic_table(5)
        assert [h.value for h in table.H] == [0, 1, 4, 1, 0]
        assert table.Hprime == Residue(3, 5)
        assert table.modulus == 5

    def test_harmonic_mod_p_squared(self, engine):
        """Test H_4 vanishes mod 25"""
        table = engine.harmonic_table(5, 2)
        assert [h.value for h in table.H] == [0, 1, 14, 6, 0]
        assert table.Hprime == Residue(18, 25)

    def test_power_sum(self):
        """Test S_1 = 1 + 2 + 3 mod 7"""
        assert power_sum(1, 7) == Residue(6, 7)

    def test_odd_power_sums(self):
        """Test S_1 + S_3 mod 49 against the direct sum"""
        assert odd_power_sums(7, 2, 1, 3) == Residue(42, 49)
        direct = power_sum(1, 11, 2) + power_sum(3, 11, 2) + power_sum(5, 11, 2)
        assert odd_power_sums(11, 2, 1, 5) == direct

    def test_odd_power_sums_empty(self):
        """Test an empty range sums to zero"""
        assert odd_power_sums(7, 1, 5, 3) == Residue(0, 7)

    def test_odd_power_sums_even_bound(self):
        """Test even bounds are refused"""
        with pytest.raises(ValueError):
            odd_power_sums(7, 1, 2, 4)


class TestResidueCaching:
    """Test modular tables persist through the residue cache"""

    def test_zigzag_written_and_reused(self, cached_engine, cache_dir):
        """Test a second engine reads the stored table"""
        values = cached_engine.zigzag_mod(10, 5)
        assert (cache_dir / "zigzag" / "5_1.json").exists()

        fresh = SequenceEngine(ResidueCache(cache_dir))
        assert fresh.zigzag_mod(10, 5) == values
        assert fresh.euler_mod(10, 5).value == EULER_NUMBERS[10] % 5

    def test_harmonic_written(self, cached_engine, cache_dir):
        """Test harmonic tables are stored as decimal strings"""
        cached_engine.harmonic_table(7)
        payload = json.loads((cache_dir / "harmonic" / "7_1.json").read_text())
        assert payload["schema_version"] == 1
        assert payload["family"] == "harmonic"
        assert len(payload["values"]) == 8
        assert all(isinstance(v, str) for v in payload["values"])

    def test_eulerian_row_cached_at_p_minus_two(self, cached_engine, cache_dir):
        """Test row p-2 is the one persisted"""
        row = cached_engine.eulerian_row_mod(3, 5)
        assert row == [1, 4, 1]
        assert (cache_dir / "eulerian" / "5_1.json").exists()

    def test_warm_and_cold_agree(self, cached_engine, cache_dir):
        """Test warm reads equal cold computation"""
        cold = cached_engine.harmonic_table(11, 2)
        warm = SequenceEngine(ResidueCache(cache_dir)).harmonic_table(11, 2)
        assert warm == cold


class TestExactModularCoherence:
    """Test every modular path equals its exact value reduced mod p^e"""

    @pytest.fixture(scope="class")
    def exact(self):
        engine = SequenceEngine()
        return {
            "zigzag": engine.zigzag(COHERENCE_MAX_N),
            "euler": [engine.euler_number(n) for n in range(COHERENCE_MAX_N + 1)],
            "ehat": [engine.generalized_euler(n) for n in range(COHERENCE_MAX_N + 1)],
            "genocchi": [engine.genocchi_number(n) for n in range(1, COHERENCE_MAX_N + 1)],
            "bernoulli": engine.bernoulli_exact(COHERENCE_MAX_N),
        }

    @pytest.mark.parametrize("e", [1, 2, 3])
    @pytest.mark.parametrize("p", COHERENCE_PRIMES)
    def test_boustrophedon_family(self, exact, p, e):
        """Test zigzag, Euler, Ê, tangent and Genocchi residues"""
        engine = SequenceEngine()
        m = p ** e
        assert engine.zigzag_mod(COHERENCE_MAX_N, p, e) == [z % m for z in exact["zigzag"]]
        for n in range(COHERENCE_MAX_N + 1):
            assert engine.euler_mod(n, p, e).value == exact["euler"][n] % m
            assert engine.ehat_mod(n, p, e).value == exact["ehat"][n] % m
            if n % 2:
                assert engine.tangent_mod(n, p, e).value == exact["zigzag"][n] % m
            if n >= 1:
                assert engine.genocchi_mod(n, p, e).value == exact["genocchi"][n - 1] % m

    @pytest.mark.parametrize("e", [1, 2, 3])
    @pytest.mark.parametrize("p", COHERENCE_PRIMES)
    def test_bernoulli(self, exact, p, e):
        """Test B_n mod p^e wherever 1 - 2^n is a unit, and the refusal elsewhere"""
        engine = SequenceEngine()
        m = p ** e
        for n, b in enumerate(exact["bernoulli"]):
            if n >= 1 and (pow(2, n, p) - 1) % p == 0:
                with pytest.raises(NotInvertible):
                    engine.bernoulli_mod(n, p, e)
            else:
                assert engine.bernoulli_mod(n, p, e).value == to_residue(b, m)

    @pytest.mark.parametrize("e", [1, 2, 3])
    @pytest.mark.parametrize("p", COHERENCE_PRIMES)
    def test_harmonic_table(self, p, e):
        """Test H_0..H_(p-1) and H' against exact harmonic sums"""
        table = SequenceEngine().harmonic_table(p, e)
        m = p ** e
        h = Fraction(0)
        for k in range(p):
            if k:
                h += Fraction(1, k)
            assert table.H[k].value == to_residue(h, m)
        odd = sum(Fraction(1, k) for k in range(1, p, 2))
        assert table.Hprime.value == to_residue(odd, m)


class TestEulerianHarmonicLink:
    """Test row p-2 of the Eulerian triangle against harmonic numbers mod p"""

    @pytest.mark.parametrize("p", primes_in(PrimeRange(5, 500)))
    def test_row_p_minus_two(self, p):
        """Test E(p-2, k) = H_(k+1) mod p for 0 <= k <= p-3"""
        engine = SequenceEngine()
        row = engine.eulerian_row_mod(p - 2, p)
        H = engine.harmonic_table(p).H
        assert row == [H[k + 1].value for k in range(p - 2)]

    @pytest.mark.parametrize("p", primes_in(PrimeRange(5, 60)))
    def test_column_formula(self, p):
        """Test the column formula agrees with the same harmonic residues"""
        H = SequenceEngine().harmonic_table(p).H
        for k in range(p - 2):
            assert eulerian_mod(p - 2, k, p) == H[k + 1]


class TestEulerianShape:
    """Test symmetry, positivity and row sums of the triangle"""

    def test_rows_up_to_fifty(self, engine):
        """Test E(n, m) = E(n, n-1-m) > 0 and the row sum n! for n <= 50"""
        for n in range(1, 51):
            row = engine.eulerian_row(n)
            assert len(row) == n
            assert row == row[::-1]
            assert all(v > 0 for v in row)
            assert row[0] == 1
            assert sum(row) == math.factorial(n)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
