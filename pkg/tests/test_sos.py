import pytest

from drtcalc.canon import canonicalize
from drtcalc.equiv import compare_terms
from drtcalc.errors import RewriteError, TermError
from drtcalc.sos import (
    Semantics, Step, StampedStep, action_steps, desugar, idling, shift_term, sigma_derivative, sigma_step,
    time_free_term,
)
from drtcalc.terms import (
    DELTA_ACT, TAU_ACT, TICK, Abstr, Act, Alt, CommMerge, Delay, Encap, LeftMerge, Par, Rec, RecSpec, Seq,
    Shift, TimeIter, Timeout, Var, delayable, sigma_n,
)

a, b, c, d = Act("a"), Act("b"), Act("c"), Act("d")


class TestActionSteps:
    """Tests for the action transition rules."""

    def test_atomic_action_terminates(self, table):
        assert action_steps(a, table) == {Step("a", TICK)}

    def test_deadlock_has_no_steps(self, table):
        assert action_steps(DELTA_ACT, table) == frozenset()

    def test_delay_blocks_actions(self, table):
        assert action_steps(Delay(a), table) == frozenset()
        assert action_steps(Alt(a, Delay(b)), table) == {Step("a", TICK)}

    def test_sequential_composition(self, table):
        assert action_steps(Seq(a, b), table) == {Step("a", b)}

    def test_merge_interleaves_and_communicates(self, table):
        steps = action_steps(Par(a, b), table)
        assert steps == {Step("a", b), Step("b", a), Step("c", TICK)}

    def test_left_merge_starts_left(self, table):
        assert action_steps(LeftMerge(a, b), table) == {Step("a", b)}

    def test_communication_merge(self, table):
        assert action_steps(CommMerge(a, b), table) == {Step("c", TICK)}
        assert action_steps(CommMerge(a, d), table) == frozenset()

    def test_encapsulation_forces_communication(self, table):
        t = Encap(frozenset({"a", "b"}), Par(a, b))
        assert action_steps(t, table) == {Step("c", TICK)}

    def test_abstraction_renames_to_tau(self, table):
        t = Abstr(frozenset({"a"}), Seq(a, b))
        assert action_steps(t, table) == {Step("tau", Abstr(frozenset({"a"}), b))}

    def test_timeout_keeps_current_slice(self, table):
        t = Timeout(Alt(a, Delay(b)))
        assert action_steps(t, table) == {Step("a", TICK)}
        assert sigma_step(t) is None

    def test_recursion_unfolds(self, table):
        x = Rec("X", RecSpec.from_dict({"X": Seq(a, Var("X"))}))
        assert action_steps(x, table) == {Step("a", x)}

    def test_unknown_action(self, table):
        with pytest.raises(TermError):
            action_steps(Act("z"), table)

    def test_free_variable(self, table):
        with pytest.raises(TermError):
            action_steps(Seq(Var("X"), a), table)

    def test_memo_is_per_table(self, table, plain_table):
        """The same merge communicates under one table and not the other."""
        t = Par(a, b)
        assert Step("c", TICK) in Semantics(table).action_steps(t)
        assert Step("c", TICK) not in Semantics(plain_table).action_steps(t)


class TestTimeSteps:
    """Tests for the unique σ-successor."""

    def test_undelayable_action_cannot_idle(self):
        assert sigma_step(a) is None
        assert sigma_step(DELTA_ACT) is None

    def test_delay(self):
        assert sigma_step(Delay(a)) == a

    def test_alternative_keeps_idling_side(self):
        assert sigma_step(Alt(a, Delay(b))) == b
        assert sigma_step(Alt(Delay(a), Delay(b))) == Alt(a, b)

    def test_merge_needs_both_sides(self):
        assert sigma_step(Par(Delay(a), Delay(b))) == Par(a, b)
        assert sigma_step(Par(a, Delay(b))) is None

    def test_delayable_action_idles_to_itself(self):
        assert sigma_step(delayable("a")) == delayable("a")

    def test_idling(self):
        t = sigma_n(a, 2)
        assert idling(t, 2)
        assert not idling(t, 3)
        assert sigma_derivative(t, 2) == a
        assert sigma_derivative(t, 3) is None

    def test_time_determinism(self):
        """Two delays of the same summand merge into one successor."""
        t = Alt(Delay(a), Delay(a))
        assert canonicalize(sigma_step(t)) == a


class TestStampedSteps:
    """Tests for time-stamped steps."""

    def test_stamps_follow_delays(self, table):
        view = Semantics(table).stamped_steps(Alt(a, Delay(b)), 3)
        assert view.steps == {StampedStep("a", 0, TICK), StampedStep("b", 1, TICK)}
        assert not view.truncated

    def test_idling_forever_truncates(self, table):
        view = Semantics(table).stamped_steps(delayable("a"), 2)
        assert view.truncated
        assert {s.stamp for s in view.steps} == {0, 1, 2}

    def test_activeness(self, table):
        sem = Semantics(table)
        silent_deadlock = Seq(TAU_ACT, DELTA_ACT)
        active = sem.activeness([silent_deadlock, DELTA_ACT, a, TICK, Seq(TAU_ACT, a)])
        assert active(a)
        assert active(Seq(TAU_ACT, a))
        assert not active(silent_deadlock)
        assert not active(DELTA_ACT)
        assert not active(TICK)


class TestDerivedOperators:
    """Tests for shift, time-free projection and time iteration."""

    def test_shift(self):
        assert shift_term(a) == DELTA_ACT
        assert shift_term(Alt(a, Delay(b))) == b
        assert shift_term(Seq(Delay(a), b)) == Seq(a, b)
        assert shift_term(Seq(a, b)) == DELTA_ACT

    def test_shift_of_merge_is_sigma_successor(self):
        assert shift_term(Par(Delay(a), Delay(b))) == Par(a, b)
        assert shift_term(Par(a, Delay(b))) == DELTA_ACT

    def test_time_free_projection(self):
        t = time_free_term(Seq(a, Delay(b)))
        assert t == canonicalize(Seq(delayable("a"), delayable("b")))

    def test_time_free_of_delayable_action(self):
        assert time_free_term(delayable("b")) == canonicalize(delayable("b"))
        assert time_free_term(Seq(a, delayable("b"))) == canonicalize(Seq(delayable("a"), delayable("b")))

    def test_time_free_of_recursion(self, plain_table):
        x = Rec("X", RecSpec.from_dict({"X": Seq(a, Delay(Var("X")))}))
        loop = Rec("Y", RecSpec.from_dict({"Y": Seq(delayable("a"), Var("Y"))}))
        projected = time_free_term(x)
        assert isinstance(projected, Rec)
        assert compare_terms("strong", projected, loop, plain_table).holds

    def test_time_free_of_recursive_merge_refused(self):
        x = Rec("X", RecSpec.from_dict({"X": Seq(a, Var("X"))}))
        with pytest.raises(RewriteError):
            time_free_term(Par(x, b))

    def test_desugar(self):
        assert isinstance(desugar(TimeIter(1, a)), Rec)
        assert desugar(Shift(Delay(a))) == a
        assert desugar(Seq(a, b)) == Seq(a, b)
