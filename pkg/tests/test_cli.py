import json

import pytest

from qhall.cartan import A2
from qhall.cli import main
from qhall.double import DoubleElement
from qhall.exprs import ParseError, format_element, parse_expr
from qhall.falgebra import normal_form
from qhall.freealg import FreeElement
from qhall.ratfunc import ONE, RatFunc, parse_ratfunc, v_pow
from qhall.ualgebra import UElement, u_mul


def test_parse_u_product():
    val = parse_expr(A2, "E1*F1")
    assert isinstance(val, UElement)
    assert val == u_mul(UElement.E(A2, 1), UElement.F(A2, 1))


def test_parse_divided_powers():
    val = parse_expr(A2, "th1^(2)*th2")
    assert isinstance(val, FreeElement)
    from qhall.ratfunc import qfact

    want = FreeElement(A2, {(1, 1, 2): qfact(2).inverse()})
    assert val == want
    u = parse_expr(A2, "E1^(3)")
    from qhall.falgebra import theta_divided
    from qhall.ualgebra import embed_plus

    assert u == embed_plus(theta_divided(A2, 1, 3))


def test_parse_scalars_and_powers():
    assert parse_expr(A2, "v + v^-1") == v_pow(1) + v_pow(-1)
    assert parse_expr(A2, "(v^2-1)/(v-1)") == parse_ratfunc("v + 1")
    assert parse_expr(A2, "2v^2") == RatFunc.const(2) * v_pow(2)
    assert parse_expr(A2, "F1^2") == u_mul(UElement.F(A2, 1), UElement.F(A2, 1))


def test_parse_double_wrappers():
    val = parse_expr(A2, "p(th1)*m(th1)")
    assert isinstance(val, DoubleElement)
    k = parse_expr(A2, "k(1,-1)")
    assert k == DoubleElement.torus(A2, (1, -1))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_expr(A2, "E9")
    with pytest.raises(ParseError):
        parse_expr(A2, "th1 + ")
    with pytest.raises(ParseError):
        parse_expr(A2, "K(1)")
    with pytest.raises(ValueError):
        parse_expr(A2, "th1*E1")


def test_print_parse_round_trip_idempotent():
    sources = [
        "E1*F1",
        "th1*th2 - v*th2*th1",
        "K(1,0)*E1*E2",
        "p(th1*th2)*k(0,1)",
        "m(th2)*p(th1)",
        "(v+v^-1)*F2",
    ]
    for src in sources:
        val = parse_expr(A2, src)
        canon = format_element(val)
        val2 = parse_expr(A2, canon)
        assert format_element(val2) == canon
        assert type(val2) is type(val)


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_cli_f_commands(capsys):
    code, out = run_cli(capsys, "f", "dim", "2,1")
    assert code == 0 and "dim f_(2, 1) = 2" in out
    code, out = run_cli(capsys, "f", "nf", "th2*th1*th1")
    assert code == 0 and "th1*th1*th2" in out
    code, out = run_cli(capsys, "f", "decompose", "1", "th2*th1")
    assert code == 0 and "t=1" in out


def test_cli_u_commands(capsys):
    code, out = run_cli(capsys, "u", "mul", "E1", "F1")
    assert code == 0 and "F1*E1" in out
    code, out = run_cli(capsys, "u", "hopf-check", "E1*E2")
    assert code == 0 and out.strip() == "pass"
    code, out = run_cli(capsys, "--json", "u", "nf", "E1")
    payload = json.loads(out)
    assert payload["schema"] == "qhall/1"
    assert payload["terms"] == [{"F": "1", "K": "0,0", "E": "E1", "c": "1"}]


def test_cli_ti_and_braid(capsys):
    code, out = run_cli(capsys, "ti", "apply", "1", "E2")
    assert code == 0 and "E1*E2" in out
    code, out = run_cli(capsys, "braid", "verify", "1", "2")
    assert code == 0 and out.strip() == "pass"
    code, out = run_cli(
        capsys, "--datum", "1->2,2->3", "braid", "verify", "1", "3"
    )
    assert code == 0


def test_cli_hall_commands(capsys):
    code, out = run_cli(capsys, "hall", "classes", "1->2", "1,1", "2")
    assert code == 0 and "orbit 1" in out
    code, out = run_cli(capsys, "hall", "strata", "1->2", "1,1", "3", "2")
    assert code == 0 and "r=0:2 r=1:1" in out
    code, out = run_cli(
        capsys, "hall", "number", "1->2", "2", "1,1:1", "1,0:0", "0,1:0"
    )
    assert code == 0 and out.strip() == "1"
    code, out = run_cli(capsys, "hall", "compare", "1->2", "1,0", "0,1", "--q", "4")
    assert code == 0 and "ok" in out


def test_cli_double_commands(capsys):
    code, out = run_cli(capsys, "double", "mul", "p(th1)", "m(th1)")
    assert code == 0 and "k(1,0)" in out
    code, out = run_cli(capsys, "double", "calibrate")
    assert code == 0 and "c_1" in out


def test_cli_verify_json(capsys):
    code, out = run_cli(capsys, "--json", "verify", "braid")
    assert code == 0
    payload = json.loads(out)
    results = payload["results"]
    assert all(r["status"] in ("pass", "skip") for r in results)
    assert all(set(r) == {"check", "status", "millis"} for r in results)


def test_cli_verify_suite_accepts_prefix(capsys):
    code, out = run_cli(capsys, "verify", "verify-double")
    assert code == 0 and "double-cross-relation" in out


def test_cli_verify_deterministic_statuses(capsys):
    code1, out1 = run_cli(capsys, "--json", "verify", "double")
    code2, out2 = run_cli(capsys, "--json", "verify", "double")
    strip = lambda payload: [
        (r["check"], r["status"]) for r in json.loads(payload)["results"]
    ]
    assert strip(out1) == strip(out2)
    assert code1 == code2 == 0


def test_cli_budget_guard_marks_skip(capsys):
    code, out = run_cli(
        capsys, "--json", "--budget", "10", "verify", "hall"
    )
    payload = json.loads(out)
    statuses = {r["check"]: r["status"] for r in payload["results"]}
    assert statuses["hall-strata-partition"] == "skip"
    assert code == 0


def test_cli_single_vertex_datum(capsys):
    code, out = run_cli(
        capsys,
        "--datum",
        '{"vertices": [1], "arrows": []}',
        "verify",
        "braid",
    )
    assert code == 0
