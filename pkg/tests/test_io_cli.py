import json

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from groupdist.catalog import by_name, catalog
from groupdist.cli import main
from groupdist.errors import NotAGroup, ParseError
from groupdist.groups import apply_bijection
from groupdist.io import DistCache, MuCache, Report, parse_table, read_table, serialize_table, validate_report

from strategies import fixing_zero


@settings(max_examples=100)
@given(st.integers(1, 16).flatmap(lambda n: st.tuples(st.sampled_from(catalog(n)), fixing_zero(n) if n > 1 else st.just(None))))
def test_round_trip(args):
    (_, t), perm = args
    if perm is not None:
        t = apply_bijection(t, perm)
    text = serialize_table(t, ["note"])
    back = parse_table(text)
    assert (back.table == t.table).all()
    assert serialize_table(back, ["note"]) == text


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_table("3\n0 1 2\n1 x 0\n2 0 1\n")
    assert (e.value.line, e.value.column) == (3, 3)
    with pytest.raises(ParseError):
        parse_table("2\n0 1\n")
    with pytest.raises(ParseError):
        parse_table("2\n0 1\n1 5\n")
    with pytest.raises(NotAGroup):
        parse_table("3\n0 1 2\n1 0 2\n2 2 0\n")
    t = parse_table("# comment\n\n2\n0 1\n1 0\n")
    assert t.n == 2


def test_report_schema():
    doc = Report("x", {}, {"a": 1}).to_json()
    assert doc["provenance"]["backend"] in ("cython", "python")
    with pytest.raises(jsonschema.ValidationError):
        validate_report({**doc, "extra": 1})
    with pytest.raises(jsonschema.ValidationError):
        validate_report({**doc, "results": {"v": 0.5}})


def test_caches(tmp_path):
    d = DistCache(tmp_path)
    d.put("C8", "D8", 24, True)
    d.put("C8", "Q8", 30, False)
    again = DistCache(tmp_path)
    assert again.get("C8", "D8") == (24, True) and again.get("C8", "Q8") == (30, False)
    assert MuCache(tmp_path).get(3, 8) == 15


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_table(capsys):
    code, out, _ = run_cli(capsys, "table", "4")
    doc = json.loads(out)
    assert code == 0 and doc["results"]["matrix"] == [[7, 4], [4, 16]] and doc["proven"]
    validate_report(doc)


def test_cli_dist_and_classdist(capsys, tmp_path):
    path = tmp_path / "d8.txt"
    path.write_text(serialize_table(by_name("D8")))
    code, out, _ = run_cli(capsys, "dist", "C8", str(path))
    assert code == 0 and json.loads(out)["results"]["dist"] > 0
    code, out, _ = run_cli(capsys, "classdist", "8:1", "C4xC2")
    assert code == 0 and json.loads(out)["results"]["distance"] == 16


def test_cli_verify(capsys, tmp_path):
    good = tmp_path / "g.txt"
    good.write_text(serialize_table(by_name("Q8")))
    code, out, _ = run_cli(capsys, "verify", str(good))
    assert code == 0 and json.loads(out)["results"]["class"] == "Q8"
    bad = tmp_path / "b.txt"
    bad.write_text("3\n0 1 2\n1 0 2\n2 2 0\n")
    code, out, _ = run_cli(capsys, "verify", str(bad))
    assert code == 1 and not json.loads(out)["results"]["isGroup"]
    broken = tmp_path / "x.txt"
    broken.write_text("3\n0 1\n")
    code, _, err = run_cli(capsys, "verify", str(broken))
    assert code == 2 and "error" in err


def test_cli_sieve(capsys):
    code, out, _ = run_cli(capsys, "sieve", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["results"]["counts"]["PIPELINE"] == 7
    code, out, _ = run_cli(capsys, "sieve")
    assert "(24,1,17,3): r<=3, s<=6, t<=6, u>=33" in out
    code, _, _ = run_cli(capsys, "sieve", "--stage", "Z9")
    assert code == 2


def test_cli_mu_and_special(capsys):
    code, out, _ = run_cli(capsys, "mu", "3", "8")
    assert code == 0 and json.loads(out)["results"]["mu"] == 15
    code, out, _ = run_cli(capsys, "special", "m2", "8")
    assert json.loads(out)["results"]["minDistance"] == 16
    code, _, _ = run_cli(capsys, "special", "cyclic", "8", "2")
    assert code == 3


def test_cli_construct(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "construct", "c2", "--a", "3", "--b", "3", "--out", str(tmp_path))
    doc = json.loads(out)
    assert code == 0 and doc["results"][0]["actualDistance"] == 18 and doc["proven"]
    left = read_table(tmp_path / "c2_0_left.txt")
    assert left.n == 9
    code, _, err = run_cli(capsys, "construct", "c1", "C4")
    assert code == 3 and "error" in err
    code, _, err = run_cli(capsys, "construct", "cyclic", "C8", "--normal", "0,4", "--h", "0", "--m", "2")
    assert code == 3 and "central" in err
    code, out, _ = run_cli(capsys, "construct", "extend", "--a", "3", "--b", "2", "--by", "C3")
    assert json.loads(out)["results"][0]["actualDistance"] == 72


def test_cli_budget_strict(capsys):
    code, _, _ = run_cli(capsys, "classdist", "C8", "C2^3", "--budget", "3", "--strict")
    assert code == 4


def test_cli_unknown_group(capsys):
    code, _, _ = run_cli(capsys, "dist", "Nope", "C8")
    assert code == 2
