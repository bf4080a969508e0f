import pathlib

import pytest

import rieszkit

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def test_fremlin_is_order_continuous():
    report = rieszkit.check_order_continuous(rieszkit.fremlin_operator())
    assert report["verdict"] == "order continuous"
    assert report["certificate"]["reverified"] is True


def test_limit_functional_is_not_order_continuous():
    report = rieszkit.check_order_continuous(rieszkit.limit_rank_one())
    assert report["verdict"] == "not order continuous"


def test_matrix_positive_part_matches_oracle():
    op = rieszkit.matrix_operator([[1, -2], ["3/4", 0]])
    report = rieszkit.positive_part(op)
    assert report["oracle"]["agrees"] is True
    assert report["oracle"]["matrix_positive_part"] == [["1", "0"], ["3/4", "0"]]


def test_fremlin_positive_part_does_not_exist():
    report = rieszkit.positive_part(rieszkit.fremlin_operator())
    assert report["certificate"]["in_F"] is False


def test_spec_file_round_trip():
    spec = rieszkit.parse_spec((FIXTURES / "fremlin.spec").read_text())
    assert spec.build() == rieszkit.fremlin_operator()
    assert rieszkit.parse_spec(str(spec)) == spec
    report = rieszkit.run("check", ["order_bounded"], spec=spec)
    assert report["verdict"] == "order bounded"


def test_errors_map_to_python_exceptions():
    with pytest.raises(rieszkit.ParseError, match="line 1"):
        rieszkit.parse_spec("space E = nonsense")
    with pytest.raises(rieszkit.PreconditionError):
        rieszkit.witness_pervasive(rieszkit.fremlin_operator())
    ck = "space K = CK\noperator T : K -> K {\n  unit -> one\n}\n"
    with pytest.raises(rieszkit.UnsupportedHypothesis):
        rieszkit.run("check", ["order_bounded"], spec=ck)
    assert issubclass(rieszkit.UnsupportedHypothesis, rieszkit.Error)


def test_casebook_and_classify():
    assert rieszkit.casebook("directedness")["verdict"] == "not directed"
    assert "nonregular-oc" in rieszkit.casebook_names()
    conclusions = rieszkit.classify("l0inf", "l0inf")["verdict"]
    assert "riesz_kantorovich" in conclusions


def test_reports_are_deterministic():
    a = rieszkit.casebook("projection-demo", seed=7)
    b = rieszkit.casebook("projection-demo", seed=7)
    assert a == b
