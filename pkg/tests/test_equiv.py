import pytest

from drtcalc.equiv import (
    NO, RELATIONS, UNKNOWN, YES, compare_terms, decide, get_checker, validate_witness, verdict_is_valid,
)
from drtcalc.statespace import explore_many, time_free_project
from drtcalc.terms import TAU_ACT, Act, Alt, Delay, Par, Rec, RecSpec, Seq, Var, delayable

a, b, c, d = Act("a"), Act("b"), Act("c"), Act("d")
tau = TAU_ACT


def drb5_pair():
    """a̲·(τ̲·σ(b̲) + c̲) and a̲·(σ(b̲) + c̲)."""
    left = Seq(a, Alt(Seq(tau, Delay(b)), c))
    right = Seq(a, Alt(Delay(b), c))
    return left, right


class TestRegistry:
    """Tests for relation lookup."""

    def test_relation_names(self):
        assert set(RELATIONS) == {"strong", "b", "rb", "rb-ts", "da-rb", "untimed-rb"}

    def test_unknown_relation(self):
        with pytest.raises(KeyError):
            get_checker("weak")

    def test_state_out_of_range(self, table):
        l = explore_many([a], table)
        with pytest.raises(IndexError):
            decide("strong", l, 0, 7)


class TestStrong:
    """Tests for strong bisimilarity."""

    def test_idempotent_choice(self, table):
        assert compare_terms("strong", Alt(Seq(a, b), Seq(a, b)), Seq(a, b), table).answer == YES

    def test_branching_structure_matters(self, table):
        lhs = Seq(a, Alt(b, c))
        rhs = Alt(Seq(a, b), Seq(a, c))
        verdict = compare_terms("strong", lhs, rhs, table)
        assert verdict.answer == NO
        assert verdict.evidence

    def test_time_steps_compared(self, table):
        assert compare_terms("strong", Delay(a), a, table).answer == NO
        assert compare_terms("strong", Delay(Alt(a, b)), Alt(Delay(a), Delay(b)), table).answer == YES

    def test_merge_expansion(self, table):
        lhs = Par(a, d)
        rhs = Alt(Seq(a, d), Seq(d, a))
        assert compare_terms("strong", lhs, rhs, table).holds


class TestBranching:
    """Tests for the branching family."""

    def test_inert_tau_unrooted(self, table):
        assert compare_terms("b", Seq(tau, a), a, table).answer == YES

    def test_root_condition(self, table):
        assert compare_terms("rb", Seq(tau, a), a, table).answer == NO
        assert compare_terms("rb-ts", Seq(tau, a), a, table).answer == NO

    def test_inert_tau_after_action(self, table):
        lhs, rhs = Seq(a, Seq(tau, b)), Seq(a, b)
        assert compare_terms("strong", lhs, rhs, table).answer == NO
        assert compare_terms("rb", lhs, rhs, table).answer == YES
        assert compare_terms("rb-ts", lhs, rhs, table).answer == YES

    def test_non_inert_tau(self, table):
        """a̲·(τ̲·b̲ + c̲) ≠ a̲·(b̲ + c̲): the τ discards the option c̲."""
        lhs = Seq(a, Alt(Seq(tau, b), c))
        rhs = Seq(a, Alt(b, c))
        assert compare_terms("rb-ts", lhs, rhs, table).answer == NO

    def test_drb1_on_undelayable_action(self, table):
        """a̲·τ̲ = a̲."""
        assert compare_terms("rb-ts", Seq(a, tau), a, table).holds

    def test_root_failure_after_delay_is_unknown(self, table):
        """σ(τ̲·a̲) against σ(a̲): the roots agree, their σ-derivatives do not."""
        lhs, rhs = Delay(Seq(tau, a)), Delay(a)
        verdict = compare_terms("rb", lhs, rhs, table)
        assert verdict.answer == UNKNOWN
        assert "sigma-derivative" in verdict.note
        assert compare_terms("b", lhs, rhs, table).answer == YES
        assert compare_terms("rb-ts", lhs, rhs, table).answer == NO

    def test_tau_loop_untimed(self, table):
        x = Rec("X", RecSpec.from_dict({"X": Alt(Seq(a, Var("X")), Seq(b, Var("X")))}))
        y = Rec("Y", RecSpec.from_dict({"Y": Alt(Seq(a, Seq(tau, Var("Y"))), Seq(b, Var("Y")))}))
        assert compare_terms("untimed-rb", x, y, table).holds


class TestCoarsening:
    """Dormancy-aware bisimilarity is strictly coarser and not a congruence for merge."""

    def test_dormant_tau_ignored(self, table):
        left, right = drb5_pair()
        assert compare_terms("da-rb", left, right, table).answer == YES

    def test_time_stamped_distinguishes(self, table):
        left, right = drb5_pair()
        assert compare_terms("rb-ts", left, right, table).answer == NO

    def test_not_preserved_by_merge(self, table):
        left, right = drb5_pair()
        assert compare_terms("da-rb", Par(left, d), Par(right, d), table).answer == NO

    def test_time_stamped_implies_dormancy_aware(self, table):
        lhs, rhs = Seq(a, Seq(tau, b)), Seq(a, b)
        assert compare_terms("da-rb", lhs, rhs, table).holds


class TestUntimed:
    """Tests for rooted branching bisimilarity after abstracting from time."""

    def test_delay_is_invisible(self, table):
        assert compare_terms("untimed-rb", Delay(a), a, table).holds
        assert compare_terms("untimed-rb", Seq(Delay(a), b), Seq(a, Delay(b)), table).holds

    def test_delayable_and_undelayable_agree(self, table):
        assert compare_terms("untimed-rb", delayable("a"), a, table).holds

    def test_actions_still_count(self, table):
        assert compare_terms("untimed-rb", Delay(a), b, table).answer == NO


class TestWitness:
    """Tests for re-checking yes-witnesses."""

    @pytest.mark.parametrize("relation", ["strong", "b", "rb", "rb-ts", "da-rb"])
    def test_witness_is_valid(self, table, relation):
        lhs, rhs = Seq(a, Seq(tau, b)), Seq(a, b)
        if relation == "strong":
            lhs = Alt(rhs, rhs)
        l = explore_many([lhs, rhs], table)
        verdict = decide(relation, l, *l.roots)
        assert verdict.holds
        assert verdict.witness
        assert verdict_is_valid(verdict, l, *l.roots)

    def test_untimed_witness(self, table):
        l = explore_many([Delay(a), a], table)
        verdict = decide("untimed-rb", l, *l.roots)
        assert verdict.holds
        assert not validate_witness("untimed-rb", time_free_project(l), *l.roots, verdict.witness)

    def test_bogus_witness_rejected(self, table):
        l = explore_many([a, b], table)
        s1, s2 = l.roots
        violations = validate_witness("strong", l, s1, s2, frozenset({(s1, s2)}))
        assert violations

    def test_missing_root_pair(self, table):
        l = explore_many([a, b], table)
        violations = validate_witness("strong", l, *l.roots, frozenset())
        assert violations[0].condition == "membership"

    def test_no_verdict_is_trivially_valid(self, table):
        l = explore_many([a, b], table)
        verdict = decide("strong", l, *l.roots)
        assert verdict.answer == NO
        assert verdict_is_valid(verdict, l, *l.roots)
