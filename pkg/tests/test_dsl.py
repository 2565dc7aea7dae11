import pytest

from drtcalc.canon import canonicalize
from drtcalc.dsl import RELATION_NAMES, parse, parse_file, parse_term, print_model, print_term
from drtcalc.errors import ModelError
from drtcalc.terms import (
    TAU_ACT, Abstr, Act, Alt, Delay, Encap, LeftMerge, Par, Rec, RecSpec, Seq, TimeIter, Timeout, Var, delayable,
)

a, b, c = Act("a"), Act("b"), Act("c")

MODEL = """
# A small model
actions a, b, c;
comm a | b = c;
handshaking;

spec Loop { X = u(a) . Y; Y = u(b) . X + sigma(Y); }

proc P = <X | Loop>;
proc Q = u(a) . u(b) . P;
proc R = encap({a, b}, P || Q);

check strong P ~ u(a) . <Y | Loop> expect yes;
check rb-ts Q ~ P;
"""


class TestParse:
    """Tests for model files."""

    def test_summary(self):
        model = parse(MODEL)
        summary = model.summary()
        assert summary["actions"] == 3
        assert summary["communications"] == 1
        assert summary["handshaking"] is True
        assert summary["specs"] == {"Loop": 2}
        assert summary["procs"] == ["P", "Q", "R"]
        assert summary["checks"] == 2

    def test_procs_resolved(self):
        model = parse(MODEL)
        loop = model.specs["Loop"]
        assert model.proc("P") == Rec("X", loop)
        assert model.proc("Q") == Seq(a, Seq(b, Rec("X", loop)))
        assert model.proc("R") == Encap(frozenset({"a", "b"}), Par(Rec("X", loop), model.proc("Q")))

    def test_check_directives(self):
        model = parse(MODEL)
        first, second = model.checks
        assert first.relation == "strong"
        assert first.expect == "yes"
        assert first.line == 13
        assert second.relation == "rb-ts"
        assert second.expect is None

    def test_constant(self):
        model = parse(MODEL)
        assert model.constant("Loop", "Y") == Rec("Y", model.specs["Loop"])
        with pytest.raises(ModelError):
            model.constant("Loop", "Z")
        with pytest.raises(ModelError):
            model.constant("Nope", "X")

    def test_unknown_proc(self):
        with pytest.raises(ModelError):
            parse(MODEL).proc("S")

    def test_parse_file(self, tmp_path):
        path = tmp_path / "model.drt"
        path.write_text(MODEL, encoding="utf-8")
        assert parse_file(path).summary() == parse(MODEL).summary()

    def test_relation_names(self):
        assert RELATION_NAMES == ("strong", "b", "rb", "rb-ts", "da-rb", "untimed-rb")


class TestTermSyntax:
    """Tests for precedence and operator syntax."""

    def test_bare_name_is_delayable(self, table):
        assert parse_term("a", table) == delayable("a")
        assert parse_term("u(a)", table) == a

    def test_silent_and_deadlock(self, table):
        assert parse_term("tau", table) == TAU_ACT
        assert parse_term("u(tau) . u(a)", table) == Seq(TAU_ACT, a)

    def test_sequence_binds_tighter_than_choice(self, table):
        assert parse_term("u(a) . u(b) + u(c)", table) == Alt(Seq(a, b), c)

    def test_merge_between_sequence_and_choice(self, table):
        assert parse_term("u(a) || u(b) . u(c)", table) == Par(a, Seq(b, c))
        assert parse_term("u(a) || u(b) + u(c)", table) == Alt(Par(a, b), c)

    def test_right_associative(self, table):
        assert parse_term("u(a) . u(b) . u(c)", table) == Seq(a, Seq(b, c))
        assert parse_term("u(a) |_ u(b) || u(c)", table) == LeftMerge(a, Par(b, c))

    def test_choice_left_associative(self, table):
        assert parse_term("u(a) + u(b) + u(c)", table) == Alt(Alt(a, b), c)

    def test_time_operators(self, table):
        assert parse_term("sigma(u(a))", table) == Delay(a)
        assert parse_term("sigma^3(u(a))", table) == Delay(Delay(Delay(a)))
        assert parse_term("sigma*2(u(a))", table) == TimeIter(2, a)
        assert parse_term("to(u(a) + sigma(u(b)))", table) == Timeout(Alt(a, Delay(b)))

    def test_hide(self, table):
        assert parse_term("hide({a}, u(a))", table) == Abstr(frozenset({"a"}), a)

    def test_inline_specification(self, table):
        t = parse_term("<X | X = u(a) . X; >", table)
        assert t == Rec("X", RecSpec.from_dict({"X": Seq(a, Var("X"))}))


class TestErrors:
    """Tests for error reporting."""

    def test_syntax_error_has_position(self):
        with pytest.raises(ModelError) as exc:
            parse("actions a;\nproc P = u(a) . ;\n")
        assert exc.value.line == 2

    def test_undeclared_action(self):
        with pytest.raises(ModelError) as exc:
            parse("actions a;\nproc P = u(z);\n")
        assert "z" in str(exc.value)
        assert exc.value.line == 2

    def test_unknown_name(self):
        with pytest.raises(ModelError):
            parse("actions a;\nproc P = Q;\n")

    def test_unknown_relation(self):
        with pytest.raises(ModelError) as exc:
            parse("actions a;\ncheck weak u(a) ~ u(a);\n")
        assert "unknown relation" in str(exc.value)

    def test_unguarded_spec(self):
        with pytest.raises(ModelError):
            parse("actions a;\nspec S { X = X + u(a); }\n")

    def test_recursive_proc(self):
        with pytest.raises(ModelError):
            parse("actions a;\nproc P = u(a) . P;\n")

    def test_duplicate_definitions(self):
        with pytest.raises(ModelError):
            parse("actions a;\nproc P = u(a);\nproc P = u(a);\n")
        with pytest.raises(ModelError):
            parse("actions a;\nspec S { X = u(a) . X; X = u(a); }\n")

    def test_reserved_action(self):
        with pytest.raises(ModelError):
            parse("actions tau;\n")

    def test_undefined_spec_variable(self):
        with pytest.raises(ModelError):
            parse("actions a;\nspec S { X = u(a) . X; }\nproc P = <Y | S>;\n")


class TestPrinter:
    """Tests for printing terms and models back."""

    @pytest.mark.parametrize("text", [
        "u(a) . sigma(u(b)) + u(c)",
        "(u(a) + u(b)) . u(c)",
        "(u(a) || u(b)) || u(c)",
        "u(a) |_ (u(b) + u(c))",
        "encap({a, b}, u(a) || u(b))",
        "hide({a}, a . sigma^2(u(b)))",
        "to(sigma*3(u(a)))",
        "<X | X = u(a) . X + sigma(X); >",
    ])
    def test_print_then_parse(self, table, text):
        t = parse_term(text, table)
        assert canonicalize(parse_term(print_term(t), table)) == canonicalize(t)

    def test_examples(self):
        assert print_term(Seq(a, Delay(b))) == "u(a) . sigma(u(b))"
        assert print_term(delayable("a")) == "a"
        assert print_term(Delay(Delay(a))) == "sigma^2(u(a))"

    def test_named_spec_reference(self):
        model = parse(MODEL)
        assert print_term(model.proc("P"), model.specs) == "<X | Loop>"

    def test_print_model_round_trip(self):
        model = parse(MODEL)
        again = parse(print_model(model))
        assert again.summary() == model.summary()
        assert again.procs == model.procs
