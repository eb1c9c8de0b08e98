import json

import pytest
from click.testing import CliRunner

from arborrep.cli import (EXIT_CAPACITY, EXIT_SPEC, SpecError, format_text, main, parse_spec,
                          run)
from arborrep.families import dihedral_automaton

GGS = {"family": "ggs", "p": 3, "k": 1, "e": [1, 2, 0], "depth": 4}


def invoke(tmp_path, spec, *args):
    path = tmp_path / "spec.json"
    path.write_text(spec if isinstance(spec, str) else json.dumps(spec))
    return CliRunner().invoke(main, ["analyze", "--spec", str(path), *args])


# -- parsing ------------------------------------------------------------------


def test_parse_valid_specs(tmp_path):
    spec = parse_spec(GGS)
    assert spec.family == "ggs" and spec.depth == 4 and spec.params["e"] == [1, 2, 0]
    path = tmp_path / "s.json"
    path.write_text(json.dumps(GGS))
    assert parse_spec(path).params == spec.params
    assert parse_spec(json.dumps(GGS)).params == spec.params
    assert parse_spec({"family": "dihedral_binary"}).depth is None
    aut = parse_spec({"family": "automaton", "automaton": dihedral_automaton().to_json()})
    assert aut.params["automaton"]["degree"] == 2


@pytest.mark.parametrize("spec,path", [
    ({"family": "ggs", "p": 3, "k": 1, "e": [3, 6, 0], "depth": 3}, "$.e"),
    ({"family": "gl_congruence", "p": 2, "N": 1}, "$.p"),
    ({"family": "gl_congruence", "p": 3, "N": 1, "ring": "adic"}, "$.ring"),
    ({"family": "ggs", "p": 3, "e": [1, 2, 0], "depth": "3"}, "$.depth"),
    ({"family": "ggs", "e": [1, 2, 0]}, "$.p"),
    ({"family": "iterated_wreath", "levels": [{"degree": 3, "generators": [[1, 0, 2]]}]},
     "$.levels[0]"),
    ({"family": "iterated_wreath", "levels": [{"degree": 3, "generators": [[1, 1, 2]]}]},
     "$.levels[0].generators[0]"),
    ({"family": "iterated_wreath", "builtin": "s4"}, "$.builtin"),
    ({"family": "hyperbolic"}, "$.family"),
    ({"e": [1]}, "$.family"),
    ({"family": "automaton", "degree": 2, "states": [{"name": "x"}]}, "$"),
])
def test_schema_errors_carry_a_field_path(spec, path):
    with pytest.raises(SpecError) as info:
        parse_spec(spec)
    assert info.value.path == path


def test_malformed_json():
    with pytest.raises(SpecError):
        parse_spec("{not json")


# -- analyses -----------------------------------------------------------------


def test_ggs_report():
    rep = run(parse_spec(GGS), depth=3)
    assert rep["schema_version"] == 1
    assert [row["n"] for row in rep["levels"]] == [1, 2, 3]
    assert all(row["spherical"] for row in rep["levels"])
    assert [row["locally2"] for row in rep["levels"]] == [True, True, None]
    assert all(row["commutative"] for row in rep["levels"])
    assert [row["rank"] for row in rep["levels"]] == [3, 5, 7]
    assert [row["image_order"] for row in rep["levels"]][:2] == [3, 27]
    assert rep["zeta"]["terms"] == [[1, 3], [3, 2], [9, 2]]
    assert rep["zeta"]["depth"] == 3
    assert rep["ggs"] == {"aperiodic": True, "centered": False, "prediction": True,
                          "empirical": True, "agreement": True}
    assert rep["rank_identity"]["holds"]
    text = format_text(rep)
    assert "locally 2-transitive: yes to depth 3" in text
    assert "prediction vs empirical locally 2-transitive: agree" in text


def test_dihedral_report():
    rep = run(parse_spec({"family": "dihedral_binary"}), depth=3)
    rows = rep["levels"]
    assert rows[1]["locally2"] is False
    assert all(row["commutative"] for row in rows)
    assert rows[2]["image_order"] == 16
    assert rep["witness"]["stabilizer_order"] == 2 and rep["witness"]["pairs"] == 4
    assert rep["zeta"]["formula_verified"] is False


def test_s3_wreath_report():
    rep = run(parse_spec({"family": "iterated_wreath", "builtin": "s3_regular"}), depth=2)
    rows = rep["levels"]
    assert not any(row["commutative"] for row in rows)
    assert rows[1]["distance"] is False
    assert rows[1]["rank"] == 11
    assert rows[0]["theta0"] == [[1, 1], [2, 2]]


def test_explicit_wreath_and_automaton_specs():
    spec = {"family": "iterated_wreath", "repeat_last": True,
            "levels": [{"degree": 3, "generators": [[1, 2, 0]]}]}
    rep = run(parse_spec(spec), depth=3)
    assert all(row["locally2"] for row in rep["levels"][:2])
    aut = {"family": "automaton", **dihedral_automaton().to_json()}
    rep2 = run(parse_spec(aut), depth=3)
    assert rep2["levels"][2]["image_order"] == 16


def test_gl_reports_agree_across_ring_kinds():
    reps = [run(parse_spec({"family": "gl_congruence", "p": 3, "N": 1, "ring": kind}), depth=3)
            for kind in ("p-adic", "laurent")]
    assert reps[0]["levels"] == reps[1]["levels"]
    assert reps[0]["zeta"] == reps[1]["zeta"]


def test_check_selection_and_caps():
    rep = run(parse_spec(GGS), depth=2, checks=("zeta",))
    assert rep["zeta"]["terms"] == [[1, 3], [3, 2]]
    assert all(row["rank"] is None and row["theta0"] is None for row in rep["levels"])
    rep = run(parse_spec({"family": "iterated_wreath", "builtin": "s3_regular"}), depth=2,
              cap_enum=5)
    assert all(row["theta0"] is None for row in rep["levels"])
    assert rep["zeta"] is None
    assert rep["levels"][1]["rank"] == 11          # other analyses still ran
    assert any("cap" in note for note in rep["notes"])
    rep = run(parse_spec(GGS), depth=3, cap_level=10)
    assert rep["levels"][2]["rank"] is None and rep["levels"][2]["image_order"] is None
    assert rep["levels"][1]["rank"] == 5


# -- command line ------------------------------------------------------------------


def test_cli_is_deterministic(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    r1 = invoke(tmp_path, GGS, "--depth", "3", "--json", str(out1))
    r2 = invoke(tmp_path, GGS, "--depth", "3", "--json", str(out2))
    assert r1.exit_code == r2.exit_code == 0
    assert r1.output == r2.output
    assert out1.read_bytes() == out2.read_bytes()
    assert json.loads(out1.read_text())["zeta"]["terms"] == [[1, 3], [3, 2], [9, 2]]


def test_cli_json_to_stdout(tmp_path):
    r = invoke(tmp_path, {"family": "dihedral_binary"}, "--depth", "3", "--json", "-")
    assert r.exit_code == 0
    assert json.loads(r.output)["levels"][2]["image_order"] == 16


def test_cli_exit_codes(tmp_path):
    bad = {"family": "ggs", "p": 3, "k": 1, "e": [3, 6, 0], "depth": 3}
    assert invoke(tmp_path, bad).exit_code == EXIT_SPEC
    assert invoke(tmp_path, {"family": "gl_congruence", "p": 2, "N": 1},
                  "--depth", "2").exit_code == EXIT_SPEC
    assert invoke(tmp_path, {"family": "dihedral_binary"}).exit_code == EXIT_SPEC  # no depth
    assert invoke(tmp_path, GGS, "--checks", "bogus").exit_code == EXIT_SPEC
    assert invoke(tmp_path, GGS, "--depth", "11").exit_code == EXIT_CAPACITY
    # a failing mathematical verdict is still a completed analysis
    assert invoke(tmp_path, {"family": "dihedral_binary"}, "--depth", "3").exit_code == 0


def test_cli_text_qualifies_verdicts(tmp_path):
    r = invoke(tmp_path, {"family": "iterated_wreath", "builtin": "s3_regular"}, "--depth", "2")
    assert r.exit_code == 0
    assert "boundary Gelfand (commutative schemes): no to depth 2" in r.output
    assert "distance transitive: no to depth 2" in r.output
