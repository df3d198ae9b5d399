import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfcover import (
    EVEN,
    ODD,
    LambdaDecomposition,
    Permutation,
    Weight,
    WeightSystem,
    act,
    chi,
    deck_group,
    is_sn_invariant,
    lambda_decompositions,
    length,
    parity,
    quotient_label,
)


def w(*exps):
    return Weight(tuple(exps))


class TestWeightBasics:
    def test_length_of_generator_sum(self):
        assert length(w(1, 1, 1)) == 3

    def test_length_of_zero(self):
        assert length(Weight.zero(4)) == 0

    def test_length_counts_exponents(self):
        assert length(w(1, 0, 1)) == 2

    def test_chi_agrees_with_length(self):
        assert chi(w(1, 0, 1)) == 2
        assert chi(Weight.zero(3)) == 0
        assert chi(w(1, 1, 1)) == 3

    def test_negative_entries_rejected(self):
        with pytest.raises(ValueError):
            Weight((1, -1))

    def test_multiplicity_free(self):
        assert w(1, 0, 1).is_multiplicity_free
        assert not w(2, 0).is_multiplicity_free

    def test_block(self):
        assert Weight.block(4, 2, 3) == w(0, 1, 1, 0)


class TestParity:
    def test_two_odd_generators_sum_even(self):
        sys = WeightSystem.full(2, ODD)
        assert parity(w(1, 1), sys) == EVEN

    def test_single_odd_generator(self):
        sys = WeightSystem.full(2, ODD)
        assert parity(w(1, 0), sys) == ODD

    def test_even_generators_always_even(self):
        sys = WeightSystem.full(3, EVEN)
        for member in sys.members:
            assert parity(member, sys) == EVEN


class TestAction:
    def test_transposition_moves_generator(self):
        s = Permutation.transposition(2, 1, 2)
        assert act(s, w(1, 0)) == w(0, 1)

    def test_identity_fixes(self):
        s = Permutation.identity(3)
        assert act(s, w(1, 0, 1)) == w(1, 0, 1)

    def test_three_cycle(self):
        s = Permutation((2, 3, 1))  # 1->2, 2->3, 3->1
        assert act(s, w(1, 1, 0)) == w(0, 1, 1)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            act(Permutation.identity(2), w(1, 0, 0))


@settings(max_examples=200)
@given(st.data())
def test_act_is_a_group_action(data):
    n = data.draw(st.integers(min_value=1, max_value=5))
    s = Permutation(tuple(data.draw(st.permutations(list(range(1, n + 1))))))
    t = Permutation(tuple(data.draw(st.permutations(list(range(1, n + 1))))))
    delta = Weight(tuple(data.draw(st.lists(
        st.integers(min_value=0, max_value=1), min_size=n, max_size=n))))
    assert act(s * t, delta) == act(s, act(t, delta))
    assert act(Permutation.identity(n), delta) == delta
    assert act(s, delta).length == delta.length


class TestSnInvariance:
    def test_full_system_invariant(self):
        assert is_sn_invariant(WeightSystem.full(2, ODD))

    def test_partial_system_not_invariant(self):
        sys = WeightSystem(2, ODD, frozenset({Weight.zero(2), w(1, 0)}))
        assert not is_sn_invariant(sys)

    def test_zero_only_invariant(self):
        assert is_sn_invariant(WeightSystem(3, EVEN, frozenset({Weight.zero(3)})))

    def test_matches_brute_force(self):
        for members in itertools.combinations(list(WeightSystem.full(3, EVEN).members), 4):
            if Weight.zero(3) not in members:
                continue
            sys = WeightSystem(3, EVEN, frozenset(members))
            brute = all(
                act(s, m) in sys.members
                for s in Permutation.all(3)
                for m in sys.members
            )
            assert is_sn_invariant(sys) == brute


class TestQuotientLabel:
    def test_pair_system(self):
        sys = WeightSystem(2, EVEN, frozenset({Weight.zero(2), w(1, 0), w(0, 1)}))
        assert quotient_label(sys).sorted_lengths() == [0, 1]

    def test_single_generator_system(self):
        sys = WeightSystem(1, EVEN, frozenset({Weight.zero(1), w(1)}))
        assert quotient_label(sys).sorted_lengths() == [0, 1]

    def test_zero_system(self):
        sys = WeightSystem(2, ODD, frozenset({Weight.zero(2)}))
        assert quotient_label(sys).sorted_lengths() == [0]

    def test_rejects_non_invariant(self):
        sys = WeightSystem(2, ODD, frozenset({Weight.zero(2), w(1, 0)}))
        with pytest.raises(ValueError):
            quotient_label(sys)

    def test_parity_carried_over(self):
        assert quotient_label(WeightSystem.full(2, ODD)).beta_parity == ODD


class TestDeckGroup:
    def test_full_two(self):
        group = deck_group(WeightSystem.full(2, EVEN))
        assert len(group) == 2
        strs = sorted(s.cycle_string() for s in group)
        assert strs == ["(1 2)", "id"]

    def test_full_three(self):
        assert len(deck_group(WeightSystem.full(3, EVEN))) == 6

    def test_trivial(self):
        group = deck_group(WeightSystem.full(1, ODD))
        assert [s.cycle_string() for s in group] == ["id"]

    def test_rejects_missing_generator(self):
        sys = WeightSystem(2, EVEN, frozenset({Weight.zero(2), w(1, 1)}))
        with pytest.raises(ValueError):
            deck_group(sys)

    def test_closed_under_composition_and_inverse(self):
        for n in (2, 3):
            group = deck_group(WeightSystem.full(n, ODD))
            elems = set(group)
            for s in group:
                assert s.inverse() in elems
                for t in group:
                    assert (s * t) in elems

    def test_partial_invariant_system_still_full(self):
        # all generators present, S_n-invariant, but not all of Delta_n
        sys = WeightSystem.from_lengths(3, EVEN, {0, 1, 3})
        assert len(deck_group(sys)) == 6

    def test_non_invariant_system_smaller_group(self):
        # generators present but only a1+a2 of length two: stabilizer of {1,2}
        members = {Weight.zero(3), w(1, 0, 0), w(0, 1, 0), w(0, 0, 1), w(1, 1, 0)}
        sys = WeightSystem(3, EVEN, frozenset(members))
        group = deck_group(sys)
        assert len(group) == 2
        assert sorted(s.cycle_string() for s in group) == ["(1 2)", "id"]


def brute_force_block_decompositions(k: int, sys: WeightSystem):
    """Oracle: ordered tuples of nonzero system weights that sum to the
    prefix weight and have the consecutive-block, non-decreasing shape."""
    prefix = Weight.block(sys.n, 1, k)
    nonzero = [m for m in sys.members if not m.is_zero]
    found = []

    def recurse(remaining, chosen):
        if remaining == Weight.zero(sys.n):
            found.append(tuple(chosen))
            return
        for m in nonzero:
            if chosen and m.length < chosen[-1].length:
                continue
            if any(a > b for a, b in zip(m.exponents, remaining.exponents)):
                continue
            chosen.append(m)
            recurse(
                Weight(tuple(b - a for a, b in zip(m.exponents, remaining.exponents))),
                chosen,
            )
            chosen.pop()

    recurse(prefix, [])
    keep = []
    for combo in found:
        try:
            LambdaDecomposition(combo)
        except ValueError:
            continue
        keep.append(combo)
    return keep


class TestLambdaDecompositions:
    def test_paper_three(self):
        sys = WeightSystem.full(3, EVEN)
        decs = lambda_decompositions(3, sys)
        shapes = [d.part_lengths() for d in decs]
        assert shapes == [(1, 1, 1), (1, 2), (3,)]
        assert decs[1].parts == (w(1, 0, 0), w(0, 1, 1))

    def test_blocks_must_not_decrease(self):
        with pytest.raises(ValueError):
            LambdaDecomposition((w(1, 1, 0), w(0, 0, 1)))

    def test_non_consecutive_block_rejected(self):
        with pytest.raises(ValueError):
            LambdaDecomposition((w(1, 0, 1), w(0, 1, 0)))

    def test_k_one(self):
        sys = WeightSystem.full(3, ODD)
        decs = lambda_decompositions(1, sys)
        assert len(decs) == 1
        assert decs[0].parts == (w(1, 0, 0),)

    def test_rejects_k_outside_label(self):
        sys = WeightSystem.from_lengths(3, EVEN, {0, 1})
        with pytest.raises(ValueError):
            lambda_decompositions(2, sys)

    def test_parts_restricted_by_label(self):
        sys = WeightSystem.from_lengths(3, EVEN, {0, 1, 3})
        decs = lambda_decompositions(3, sys)
        assert [d.part_lengths() for d in decs] == [(1, 1, 1), (3,)]

    @pytest.mark.parametrize("n,k", [(3, 2), (3, 3), (4, 3), (4, 4), (5, 4)])
    def test_counts_match_brute_force(self, n, k):
        sys = WeightSystem.full(n, EVEN)
        decs = lambda_decompositions(k, sys)
        brute = brute_force_block_decompositions(k, sys)
        assert len(decs) == len(brute)
        assert {d.parts for d in decs} == set(brute)

    def test_every_output_satisfies_invariants(self):
        sys = WeightSystem.full(5, ODD)
        for k in range(1, 6):
            for dec in lambda_decompositions(k, sys):
                assert dec.total_length == k
                lens = dec.part_lengths()
                assert lens == tuple(sorted(lens))
                for part in dec.parts:
                    assert part in sys.members


class TestPermutation:
    def test_cycle_string(self):
        assert Permutation((2, 1, 3)).cycle_string() == "(1 2)"
        assert Permutation((2, 3, 1)).cycle_string() == "(1 2 3)"
        assert Permutation((2, 1, 4, 3)).cycle_string() == "(1 2)(3 4)"
        assert Permutation.identity(4).cycle_string() == "id"

    def test_inverse(self):
        s = Permutation((3, 1, 2))
        assert (s * s.inverse()).is_identity
        assert (s.inverse() * s).is_identity

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 3))
