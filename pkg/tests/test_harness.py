import numpy as np
import pytest

from drtcalc.harness import (
    AXIOMS, META_PROPERTIES, GenOptions, Tally, TermGenerator, axiom_ids, check_axiom_soundness,
    check_meta_property, gen_closed_term, get_axiom, harness_table, run_axiom_suite,
)
from drtcalc.harness.soundness import sample_rng
from drtcalc.harness.tally import MAX_PRINTED_FAILURES
from drtcalc.recursion import check_guarded
from drtcalc.terms import CommMerge, Encap, LeftMerge, Par, Rec, is_closed, size, subterms

SAMPLES = 4


class TestGenerator:
    """Tests for seeded term generation."""

    def test_deterministic(self):
        assert gen_closed_term(7, 6) == gen_closed_term(7, 6)

    def test_closed_and_bounded(self):
        for seed in range(30):
            t = gen_closed_term(seed, 5)
            assert is_closed(t)
            assert size(t) <= 5

    def test_size_one_is_constant(self):
        t = gen_closed_term(3, 1, GenOptions.recursion_free())
        assert size(t) == 1

    def test_bpa_has_no_merges(self):
        for seed in range(30):
            t = gen_closed_term(seed, 7, GenOptions.bpa(recursion=False, delayable=False))
            assert not any(isinstance(s, (Par, LeftMerge, CommMerge, Encap)) for s in subterms(t))

    def test_recursion_free(self):
        for seed in range(30):
            t = gen_closed_term(seed, 7, GenOptions.recursion_free())
            assert not any(isinstance(s, Rec) for s in subterms(t))

    def test_spec_is_guarded(self):
        gen = TermGenerator(np.random.default_rng(11), GenOptions())
        for _ in range(10):
            spec = gen.spec(3)
            assert spec.variables == frozenset({"X0", "X1", "X2"})
            spec.validate()
            assert check_guarded(spec)

    def test_sample_rng_independent_of_order(self):
        first = sample_rng(42, 5).integers(1000, size=4)
        sample_rng(42, 4).integers(1000)
        again = sample_rng(42, 5).integers(1000, size=4)
        assert list(first) == list(again)

    def test_harness_table(self):
        table = harness_table()
        assert table.communicate("a", "b") == "c"
        assert table.handshaking


class TestTally:
    """Tests for pass/fail counting."""

    def test_counts(self):
        tally = Tally("A1", "strong")
        tally.record(True)
        tally.record(False, {"sample": 1})
        tally.skip()
        assert (tally.samples, tally.passed, tally.failed, tally.skipped) == (2, 1, 1, 1)
        assert not tally.ok
        assert tally.to_row() == {"id": "A1", "relation": "strong", "samples": 2, "passed": 1, "failed": 1}
        assert tally.to_dict()["failures"] == [{"sample": 1}]

    def test_failures_capped(self):
        tally = Tally("A1", "strong")
        for i in range(MAX_PRINTED_FAILURES + 3):
            tally.record(False, {"sample": i})
        assert tally.failed == MAX_PRINTED_FAILURES + 3
        assert len(tally.failures) == MAX_PRINTED_FAILURES


class TestAxioms:
    """Sampled soundness of the axiom schemas."""

    def test_registry(self):
        ids = axiom_ids()
        assert ids[0] == "A1"
        for expected in ("DRT1", "CM1", "CFDR", "DRTO1", "DRB5", "DRSH1", "DRTFP1", "RDP"):
            assert expected in ids
        assert get_axiom("DRB1").relation == "rb-ts"
        assert get_axiom("DRB5").relation == "da-rb"
        assert get_axiom("DRTFP2").relation == "untimed-rb"

    def test_unknown_axiom(self):
        with pytest.raises(KeyError):
            get_axiom("A99")
        with pytest.raises(KeyError):
            check_axiom_soundness("A99", samples=1)

    @pytest.mark.parametrize("axiom_id", list(AXIOMS))
    def test_sound(self, axiom_id):
        tally = check_axiom_soundness(axiom_id, samples=SAMPLES, seed=42)
        assert tally.failed == 0, tally.failures
        assert tally.samples + tally.skipped == SAMPLES

    def test_instances_are_closed(self):
        for axiom_id, ax in AXIOMS.items():
            gen = TermGenerator(sample_rng(1, 0), ax.options)
            lhs, rhs = ax.instantiate(gen)
            assert is_closed(lhs) and is_closed(rhs), axiom_id

    def test_suite_order(self):
        tallies = run_axiom_suite(["A2", "A1"], samples=2, seed=3)
        assert [t.id for t in tallies] == ["A2", "A1"]

    def test_same_seed_same_tally(self):
        first = check_axiom_soundness("CM1", samples=3, seed=9)
        again = check_axiom_soundness("CM1", samples=3, seed=9)
        assert first.to_dict() == again.to_dict()


class TestMetaProperties:
    """Sampled meta-properties of the semantics and relations."""

    def test_registry(self):
        for expected in ("canonical-idempotent", "tp-ts-coincidence", "inclusion", "congruence", "linearization"):
            assert expected in META_PROPERTIES

    def test_label_views_registered(self):
        for expected in ("abstraction-commutes", "encapsulation-commutes", "b-strong-coincidence"):
            assert META_PROPERTIES[expected].check is not None

    @pytest.mark.parametrize("prop_id", ["abstraction-commutes", "encapsulation-commutes", "b-strong-coincidence"])
    def test_label_views_hold_over_seeds(self, prop_id):
        for seed in (1, 7):
            tally = check_meta_property(prop_id, samples=3, seed=seed)
            assert tally.failed == 0, tally.failures
            assert tally.passed > 0

    @pytest.mark.parametrize("prop_id", list(META_PROPERTIES))
    def test_holds(self, prop_id):
        tally = check_meta_property(prop_id, samples=2, seed=42)
        assert tally.failed == 0, tally.failures

    def test_unknown_property(self):
        with pytest.raises(KeyError):
            check_meta_property("no-such-property", samples=1)
