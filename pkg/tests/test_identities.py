"""
Tests for the identity registry
"""

from fractions import Fraction

import pytest

from congruence_lab.errors import UnknownIdentity
from congruence_lab.identities import (
    REGISTRY,
    IdentityRegistry,
    bareiss_determinant,
    euler_determinant_matrix,
    harmonic_exact,
    verify_identity,
)

FLAGGED = {"I15", "I21b"}
HOLDING = [d.id for d in REGISTRY if d.id not in FLAGGED]


class TestRegistry:
    """Test lookup and registration"""

    def test_ids_are_unique(self, identity_registry):
        """Test no id is registered twice"""
        ids = identity_registry.ids()
        assert len(ids) == len(set(ids))
        assert "I01" in ids and "I22" in ids

    def test_flagged_entries(self):
        """Test exactly the misprinted identities are flagged"""
        assert {d.id for d in REGISTRY if d.flagged} == FLAGGED

    def test_unknown_identity(self, identity_registry):
        """Test unknown ids raise a KeyError subclass"""
        with pytest.raises(UnknownIdentity) as info:
            identity_registry.get("I99")
        assert isinstance(info.value, KeyError)
        assert "I99" in str(info.value)


class TestSweeps:
    """Test every identity over a reduced grid"""

    @pytest.mark.parametrize("identity_id", HOLDING)
    def test_identity_holds(self, identity_registry, identity_id):
        """Test the identity holds at every instance"""
        sweep = identity_registry.sweep(identity_id, max_n=6, series_order=8)
        assert sweep.instances > 0
        assert sweep.failures == 0, sweep.first_failure
        assert sweep.status == "PASS"

    @pytest.mark.parametrize("identity_id", sorted(FLAGGED))
    def test_flagged_identity_is_discrepancy(self, identity_registry, identity_id):
        """Test the printed forms fail and are reported as discrepancies"""
        sweep = identity_registry.sweep(identity_id, max_n=4, series_order=8)
        assert sweep.failures > 0
        assert sweep.first_failure is not None
        assert sweep.status == "DISCREPANCY"

    def test_empty_grid_is_skip(self, identity_registry):
        """Test a grid with no instances reports SKIP"""
        sweep = identity_registry.sweep("I01", max_n=0)
        assert sweep.instances == 0
        assert sweep.status == "SKIP"


class TestSingleInstances:
    """Test individual evaluations"""

    def test_weighted_alternating_sum(self, engine):
        """Test n = 5 gives 112 = 7 * 16"""
        result = verify_identity("I19", {"n": 5}, engine)
        assert result.lhs == result.rhs == 112
        assert result.holds

    def test_alternating_bernoulli(self, identity_registry):
        """Test n = 3 gives -2"""
        result = identity_registry.verify("I03", {"n": 3})
        assert result.lhs == result.rhs == -2

    def test_convolved_powers_fails_at_two(self, identity_registry):
        """Test the printed convolution gives 10 instead of 1 at n = 2"""
        result = identity_registry.verify("I15", {"i": 1, "j": 1, "n": 2})
        assert result.lhs == 1
        assert result.rhs == 10
        assert not result.holds

    def test_double_sum_fails_at_one(self, identity_registry):
        """Test the printed double sum gives -5 instead of E_2"""
        result = identity_registry.verify("I21b", {"n": 1})
        assert result.lhs == -1
        assert result.rhs == -5

    def test_euler_polynomial(self, identity_registry):
        """Test E_4 = 2^4 E_4(1/2)"""
        result = identity_registry.verify("I07", {"n": 4, "order": 6})
        assert result.lhs == result.rhs == 5


class TestHelpers:
    """Test harmonic numbers and determinants"""

    def test_harmonic_exact(self):
        """Test H_0..H_3"""
        assert harmonic_exact(3) == [0, 1, Fraction(3, 2), Fraction(11, 6)]

    def test_bareiss(self):
        """Test small determinants, including a pivot swap"""
        assert bareiss_determinant([[2, 1], [1, 3]]) == 5
        assert bareiss_determinant([[0, 1], [1, 0]]) == -1
        assert bareiss_determinant([[1, 2], [2, 4]]) == 0
        assert bareiss_determinant([]) == 1

    def test_euler_matrix(self):
        """Test the 2x2 matrix for E_2"""
        assert euler_determinant_matrix(1) == [[0, 1], [-1, 0]]
        assert bareiss_determinant(euler_determinant_matrix(1)) == 1


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
