import pytest

from drtcalc.canon import canonicalize, summands
from drtcalc.errors import DegenerateIterationError, GuardednessError, TermError
from drtcalc.recursion import (
    check_guarded, expand_time_iteration, flatten_recursion, guards, has_nested_recursion, require_guarded,
)
from drtcalc.terms import (
    DELTA_ACT, TAU_ACT, Abstr, Act, ActionTable, Alt, Delay, Par, Rec, RecSpec, Seq, TimeIter, Var,
    alt_all, delayable, free_vars, is_closed, is_delayable, seq_all, sigma_n, size, substitute, unfold,
)

a, b, c = Act("a"), Act("b"), Act("c")


class TestActionTable:
    """Tests for the communication function."""

    def test_communicate_is_commutative(self, table):
        assert table.communicate("a", "b") == "c"
        assert table.communicate("b", "a") == "c"
        assert table.communicate("a", "c") is None

    def test_tau_and_delta_never_communicate(self, table):
        assert table.communicate("tau", "a") is None
        assert table.communicate("delta", "delta") is None

    def test_reserved_names_rejected(self):
        with pytest.raises(TermError):
            ActionTable.build(["a", "tau"])

    def test_unknown_action_in_comm_rejected(self):
        with pytest.raises(TermError):
            ActionTable.build(["a", "b"], {("a", "b"): "z"})

    def test_conflicting_entries_rejected(self):
        with pytest.raises(TermError):
            ActionTable.build(["a", "b", "c", "d"], {("a", "b"): "c", ("b", "a"): "d"})

    def test_handshaking_violation(self):
        """c = a | b communicating again breaks handshaking."""
        comm = {("a", "b"): "c", ("c", "d"): "a"}
        assert not ActionTable.build(["a", "b", "c", "d"], comm).is_handshaking()
        with pytest.raises(TermError):
            ActionTable.build(["a", "b", "c", "d"], comm, handshaking=True)

    def test_equal_tables_hash_equal(self):
        t1 = ActionTable.build(["a", "b", "c"], {("a", "b"): "c"})
        t2 = ActionTable.build(["c", "b", "a"], {("b", "a"): "c"})
        assert t1 == t2
        assert hash(t1) == hash(t2)


class TestTerms:
    """Tests for term construction and traversal."""

    def test_structural_equality_and_hash(self):
        x = Seq(a, Delay(b))
        y = Seq(Act("a"), Delay(Act("b")))
        assert x == y
        assert hash(x) == hash(y)
        assert len({x, y}) == 1

    def test_constructors(self):
        assert sigma_n(a, 3) == Delay(Delay(Delay(a)))
        assert alt_all([]) == DELTA_ACT
        assert alt_all([a, b, c]) == Alt(a, Alt(b, c))
        assert seq_all([a, b, c]) == Seq(a, Seq(b, c))
        with pytest.raises(TermError):
            seq_all([])

    def test_size(self):
        assert size(a) == 1
        assert size(Alt(a, Seq(b, c))) == 5

    def test_free_vars(self):
        spec = RecSpec.from_dict({"X": Seq(a, Var("X"))})
        assert free_vars(Seq(a, Var("Y"))) == frozenset({"Y"})
        assert is_closed(Rec("X", spec))

    def test_rec_variable_must_be_defined(self):
        spec = RecSpec.from_dict({"X": a})
        with pytest.raises(TermError):
            Rec("Y", spec)

    def test_spec_validate(self):
        with pytest.raises(TermError):
            RecSpec.from_dict({"X": Seq(a, Var("Z"))}).validate()

    def test_spec_name_takes_no_part_in_equality(self):
        assert RecSpec.from_dict({"X": a}, "One") == RecSpec.from_dict({"X": a}, "Two")

    def test_unfold(self):
        spec = RecSpec.from_dict({"X": Seq(a, Var("Y")), "Y": Seq(b, Var("X"))})
        assert unfold(Rec("X", spec)) == Seq(a, Rec("Y", spec))

    def test_substitute_avoids_capture(self):
        """A substituted term mentioning a bound variable renames the spec apart."""
        spec = RecSpec.from_dict({"X": Seq(a, Alt(Var("X"), Var("Y")))})
        t = substitute(Rec("X", spec), {"Y": Var("X")})
        assert isinstance(t, Rec)
        assert t.var != "X"
        assert free_vars(t) == frozenset({"X"})

    def test_delayable_sugar(self):
        d = delayable("a")
        assert is_delayable(d) == "a"
        assert is_delayable(Rec("X", RecSpec.from_dict({"X": Seq(a, Var("X"))}))) is None
        assert delayable("a") is delayable("a")


class TestCanonicalize:
    """Tests for canonical forms modulo A1, A2, A3 and A6DR."""

    def test_commutativity_and_associativity(self):
        assert canonicalize(Alt(a, Alt(b, c))) == canonicalize(Alt(Alt(c, a), b))

    def test_idempotence(self):
        assert canonicalize(Alt(a, a)) == a

    def test_deadlock_summand_dropped(self):
        assert canonicalize(Alt(a, DELTA_ACT)) == a
        assert canonicalize(Alt(DELTA_ACT, DELTA_ACT)) == DELTA_ACT

    def test_nested_positions(self):
        assert canonicalize(Seq(Alt(b, a), c)) == canonicalize(Seq(Alt(a, b), c))

    def test_spec_bodies_canonicalized(self):
        s1 = RecSpec.from_dict({"X": Alt(Seq(a, Var("X")), b)})
        s2 = RecSpec.from_dict({"X": Alt(b, Seq(a, Var("X")))})
        assert canonicalize(Rec("X", s1)) == canonicalize(Rec("X", s2))

    def test_summands(self):
        assert summands(Alt(a, Alt(b, c))) == [a, b, c]
        assert summands(a) == [a]


class TestGuardedness:
    """Tests for syntactic guardedness."""

    def test_guarded_by_action(self):
        assert check_guarded(RecSpec.from_dict({"X": Seq(a, Var("X"))}))

    def test_guarded_by_delay(self):
        assert check_guarded(RecSpec.from_dict({"X": Alt(a, Delay(Var("X")))}))

    def test_tau_does_not_guard(self):
        assert not guards(TAU_ACT)
        assert not check_guarded(RecSpec.from_dict({"X": Seq(TAU_ACT, Var("X"))}))

    def test_unguarded_sum(self):
        assert not check_guarded(RecSpec.from_dict({"X": Alt(a, Var("X"))}))

    def test_guarded_through_unfolding(self):
        spec = RecSpec.from_dict({"X": Var("Y"), "Y": Seq(a, Var("X"))})
        assert check_guarded(spec)

    def test_variable_below_abstraction(self):
        spec = RecSpec.from_dict({"X": Seq(a, Abstr(frozenset({"a"}), Var("X")))})
        assert not check_guarded(spec)

    def test_require_guarded_raises(self):
        with pytest.raises(GuardednessError):
            require_guarded(RecSpec.from_dict({"X": Var("X")}, "Loop"))


class TestTimeIteration:
    """Tests for σ* expansion."""

    def test_expands_to_recursion(self):
        t = expand_time_iteration(TimeIter(2, a))
        assert isinstance(t, Rec)
        assert t.spec.get(t.var) == Alt(a, sigma_n(Var(t.var), 2))

    def test_fresh_variable(self):
        inner = Rec("T", RecSpec.from_dict({"T": Seq(a, Var("T"))}))
        t = expand_time_iteration(TimeIter(1, inner))
        assert isinstance(t, Rec)

    def test_degenerate_period(self):
        with pytest.raises(DegenerateIterationError):
            expand_time_iteration(TimeIter(0, a))


class TestFlattenRecursion:
    """Tests for flattening nested specifications."""

    def test_flatten(self):
        inner = Rec("Y", RecSpec.from_dict({"Y": Seq(b, Var("Y"))}))
        outer = Rec("X", RecSpec.from_dict({"X": Seq(a, inner)}))
        assert has_nested_recursion(outer)
        flat = flatten_recursion(outer)
        assert not has_nested_recursion(flat)
        assert flat.spec.variables == frozenset({"X", "Y"})
        assert flat.spec.get("X") == Seq(a, Var("Y"))

    def test_clashing_names_renamed(self):
        inner = Rec("X", RecSpec.from_dict({"X": Seq(b, Var("X"))}))
        outer = Rec("X", RecSpec.from_dict({"X": Seq(a, inner)}))
        flat = flatten_recursion(outer)
        assert len(flat.spec.variables) == 2
        assert flat.var == "X"

    def test_identical_inner_specs_merged(self):
        inner = Rec("Y", RecSpec.from_dict({"Y": Seq(b, Var("Y"))}))
        outer = Rec("X", RecSpec.from_dict({"X": Alt(Seq(a, inner), Seq(c, inner))}))
        assert len(flatten_recursion(outer).spec.variables) == 2

    def test_flat_input_unchanged(self):
        t = Rec("X", RecSpec.from_dict({"X": Seq(a, Var("X"))}))
        assert flatten_recursion(t) is t

    def test_constant_below_abstraction_kept(self):
        """⟨X | X = d̲·X + τ_{a,d}(b)⟩ with b delayable stays guarded."""
        d = Act("d")
        hidden = Abstr(frozenset({"a", "d"}), delayable("b"))
        outer = Rec("X", RecSpec.from_dict({"X": Alt(Seq(d, Var("X")), hidden)}))
        flat = flatten_recursion(outer)
        assert check_guarded(flat.spec)
        assert not has_nested_recursion(flat, below_abstraction=False)
        assert flat.spec.get("X") == Alt(Seq(d, Var("X")), hidden)

    def test_lifts_outside_abstraction_only(self):
        inner = Rec("Y", RecSpec.from_dict({"Y": Seq(b, Var("Y"))}))
        hidden = Abstr(frozenset({"b"}), inner)
        outer = Rec("X", RecSpec.from_dict({"X": Alt(Seq(a, inner), Seq(c, hidden))}))
        flat = flatten_recursion(outer)
        assert flat.spec.variables == frozenset({"X", "Y"})
        assert flat.spec.get("X") == Alt(Seq(a, Var("Y")), Seq(c, hidden))
        assert check_guarded(flat.spec)
