"""
Tests for exact and modular arithmetic
"""

import math
from fractions import Fraction

import pytest

from congruence_lab.arith import (
    PrimeRange,
    Residue,
    binomial_exact,
    binomial_mod,
    binomial_poly,
    euler_totient_prime_power,
    fermat_quotient,
    inverse_mod,
    is_prime,
    legendre_symbol,
    mod_inverse,
    mod_pow,
    primes_in,
    represent_a2_plus_4b2,
    sqrt_mod_prime,
    to_residue,
    xgcd,
)
from congruence_lab.errors import (
    DivByP,
    KTooLarge,
    ModulusMismatch,
    NonResidue,
    NotInvertible,
    WrongResidueClass,
)

PRIMES_TO_200 = primes_in(PrimeRange(5, 200))


class TestResidue:
    """Test the fixed-modulus carrier"""

    def test_value_is_reduced(self):
        """Test values are reduced into [0, m)"""
        assert Residue(7, 5).value == 2
        assert Residue(-1, 5).value == 4

    def test_ring_operations(self):
        """Test addition, subtraction, multiplication and negation"""
        a, b = Residue(3, 5), Residue(4, 5)
        assert a + b == Residue(2, 5)
        assert a - b == Residue(4, 5)
        assert a * b == Residue(2, 5)
        assert -a == Residue(2, 5)
        assert 1 - a == Residue(3, 5)

    def test_integer_and_fraction_coercion(self):
        """Test plain ints and fractions are coerced into the ring"""
        assert Residue(2, 5) / 3 == Residue(4, 5)
        assert Residue(2, 5) * Fraction(1, 2) == Residue(1, 5)
        assert Residue(1, 7) + 13 == Residue(0, 7)

    def test_modulus_mismatch(self):
        """Test mixing moduli is rejected"""
        with pytest.raises(ModulusMismatch):
            Residue(1, 5) + Residue(1, 7)

    def test_nonpositive_modulus(self):
        """Test a zero modulus is rejected"""
        with pytest.raises(ValueError):
            Residue(1, 0)

    def test_power_and_inverse(self):
        """Test exponentiation, including negative exponents"""
        assert Residue(2, 7) ** 3 == Residue(1, 7)
        assert mod_pow(Residue(3, 7), -1) == Residue(5, 7)
        assert Residue(3, 7).inverse() == Residue(5, 7)
        assert Residue(3, 9).is_unit() is False


class TestInverses:
    """Test extended gcd and modular inverses"""

    def test_xgcd_bezout(self):
        """Test the Bezout relation holds"""
        g, x, y = xgcd(240, 46)
        assert g == 2
        assert 240 * x + 46 * y == 2

    def test_mod_inverse_prime_power(self):
        """Test 12 is invertible mod 25"""
        assert mod_inverse(Residue(12, 25)) == Residue(23, 25)

    def test_mod_inverse_not_unit(self):
        """Test 5 is not invertible mod 25"""
        with pytest.raises(NotInvertible) as info:
            mod_inverse(Residue(5, 25))
        assert info.value.modulus == 25

    @pytest.mark.parametrize("p", [5, 7, 11, 13, 101])
    def test_every_unit_inverts(self, p):
        """Test a * inv(a) == 1 for every unit"""
        for a in range(1, p):
            assert Residue(a, p) * mod_inverse(Residue(a, p)) == Residue(1, p)

    def test_to_residue(self):
        """Test rational reduction"""
        assert to_residue(Fraction(1, 2), 5) == 3
        assert to_residue(Fraction(10, 1), 7) == 3
        assert to_residue(-3, 5) == 2
        with pytest.raises(NotInvertible):
            to_residue(Fraction(1, 5), 5)

    def test_inverse_mod_plain(self):
        """Test the integer-level helper"""
        assert inverse_mod(2, 9) == 5


class TestBinomials:
    """Test exact, polynomial and modular binomial coefficients"""

    def test_exact(self):
        """Test small values and out-of-range arguments"""
        assert binomial_exact(6, 3) == 20
        assert binomial_exact(3, 5) == 0
        assert binomial_exact(3, -1) == 0

    def test_polynomial_upper_index(self):
        """Test negative and rational upper indices"""
        assert binomial_poly(-1, 3) == -1
        assert binomial_poly(Fraction(1, 2), 2) == Fraction(-1, 8)
        assert binomial_poly(5, 2) == 10

    def test_mod_prime(self):
        """Test C(6,3) mod 7"""
        assert binomial_mod(6, 3, 7) == Residue(6, 7)

    def test_mod_prime_square(self):
        """Test C(5,2) mod 25"""
        assert binomial_mod(5, 2, 5, 2) == Residue(10, 25)

    def test_huge_upper_index(self):
        """Test a huge n agrees with the exact value"""
        n = 10 ** 20 + 3
        assert binomial_mod(n, 4, 7).value == math.comb(n, 4) % 7

    def test_small_upper_index(self):
        """Test n < k gives zero"""
        assert binomial_mod(2, 3, 7) == Residue(0, 7)

    def test_k_too_large(self):
        """Test k >= p is refused"""
        with pytest.raises(KTooLarge):
            binomial_mod(10, 5, 5)


class TestPrimes:
    """Test the sieve and primality"""

    def test_primes_in_range(self):
        """Test the primes of [5, 20]"""
        assert primes_in(PrimeRange(5, 20)) == [5, 7, 11, 13, 17, 19]

    def test_small_primes_excluded(self):
        """Test 2 and 3 are never produced"""
        assert primes_in(PrimeRange(1, 10)) == [5, 7]

    def test_empty_range(self):
        """Test an inverted range is empty"""
        assert primes_in(PrimeRange(20, 10)) == []

    def test_prime_range_iterates(self):
        """Test PrimeRange is iterable"""
        assert list(PrimeRange(5, 13)) == [5, 7, 11, 13]

    def test_sieve_agrees_with_trial_division(self):
        """Test the numpy sieve against trial division"""
        expected = [n for n in range(5, 1000) if is_prime(n)]
        assert primes_in(PrimeRange(5, 999)) == expected
        assert len(expected) == 166

    def test_is_prime(self):
        """Test a few known values"""
        assert is_prime(97)
        assert not is_prime(91)
        assert not is_prime(1)


class TestQuotientsAndRoots:
    """Test Fermat quotients, square roots and two-square representations"""

    def test_fermat_quotient(self):
        """Test q_2(5) and q_3(5)"""
        assert fermat_quotient(2, 5) == Residue(3, 5)
        assert fermat_quotient(3, 5).value == 1

    def test_fermat_quotient_higher_precision(self):
        """Test q_2(7) = 9 is kept to two digits"""
        assert fermat_quotient(2, 7, 2) == Residue(9, 49)

    def test_fermat_quotient_div_by_p(self):
        """Test p | a is refused"""
        with pytest.raises(DivByP):
            fermat_quotient(10, 5)

    def test_legendre_symbol(self):
        """Test Euler's criterion"""
        assert legendre_symbol(2, 7) == 1
        assert legendre_symbol(3, 7) == -1
        assert legendre_symbol(7, 7) == 0

    def test_sqrt_mod_prime(self):
        """Test canonical roots"""
        assert sqrt_mod_prime(Residue(4, 13)) == Residue(2, 13)
        assert sqrt_mod_prime(Residue(-1, 13)) == Residue(5, 13)
        assert sqrt_mod_prime(Residue(2, 17)) == Residue(6, 17)
        assert sqrt_mod_prime(Residue(0, 17)) == Residue(0, 17)

    def test_sqrt_non_residue(self):
        """Test 2 has no root mod 5"""
        with pytest.raises(NonResidue):
            sqrt_mod_prime(Residue(2, 5))

    @pytest.mark.parametrize(
        "p,expected", [(5, (1, 1)), (13, (3, 1)), (29, (5, 1)), (37, (1, 3)), (41, (5, 2))]
    )
    def test_represent(self, p, expected):
        """Test p = a^2 + 4b^2"""
        a, b = represent_a2_plus_4b2(p)
        assert (a, b) == expected
        assert a * a + 4 * b * b == p

    @pytest.mark.parametrize("p", [7, 9, 11])
    def test_represent_wrong_class(self, p):
        """Test primes 3 mod 4 and composites are refused"""
        with pytest.raises(WrongResidueClass):
            represent_a2_plus_4b2(p)

    def test_totient(self):
        """Test phi(p^a)"""
        assert euler_totient_prime_power(5, 2) == 20
        assert euler_totient_prime_power(7, 1) == 6


class TestArithmeticInvariants:
    """Test identities the congruence checks rely on, over whole prime ranges"""

    @pytest.mark.parametrize("p", PRIMES_TO_200)
    def test_binomial_row_p_minus_one(self, p):
        """Test C(p-1, s) = (-1)^s mod p for every s < p"""
        for s in range(p):
            assert binomial_mod(p - 1, s, p) == Residue((-1) ** s, p)

    @pytest.mark.parametrize("p", PRIMES_TO_200)
    def test_binomial_row_p_mod_p_squared(self, p):
        """Test C(p, k) = (-1)^(k+1) p / k mod p^2 for 1 <= k < p"""
        m = p * p
        for k in range(1, p):
            expected = Residue((-1) ** (k + 1) * p * inverse_mod(k, m), m)
            assert binomial_mod(p, k, p, 2) == expected
            assert binomial_mod(p, k, p, 2).value == math.comb(p, k) % m

    @pytest.mark.parametrize("e", [1, 2, 3])
    def test_fermat_quotient_exact(self, e):
        """Test q_2 and q_3 against the exact quotient for p <= 50"""
        for p in primes_in(PrimeRange(5, 50)):
            for a in (2, 3):
                exact = (a ** (p - 1) - 1) // p
                assert fermat_quotient(a, p, e) == Residue(exact, p ** e)

    @pytest.mark.parametrize("p", [5, 7, 25, 27, 101, 121])
    def test_inverse_is_an_involution(self, p):
        """Test inv(inv(a)) == a for every unit"""
        for a in range(1, p):
            if math.gcd(a, p) == 1:
                r = Residue(a, p)
                assert mod_inverse(mod_inverse(r)) == r

    def test_represent_matches_exhaustive_search(self):
        """Test the representation is the unique one for every prime 1 mod 4 below 10^4"""
        for p in primes_in(PrimeRange(5, 10 ** 4)):
            if p % 4 != 1:
                continue
            found = [
                (a, b)
                for a in range(1, math.isqrt(p) + 1, 2)
                for b in [math.isqrt((p - a * a) // 4)]
                if b > 0 and a * a + 4 * b * b == p
            ]
            assert found == [represent_a2_plus_4b2(p)], p


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
