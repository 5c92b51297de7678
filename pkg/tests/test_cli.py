import csv
import io
import json
from pathlib import Path

import jsonschema
import pytest

from curvlab import cli
from curvlab.homogeneous import build_space, space_to_dict
from curvlab.report import rational_guess

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "schemas" / "report_envelope.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


def pairs(data):
    return [(e["rational"], e["multiplicity"]) for e in data["results"]["eigenvalues"]]


def test_spectrum_s2_minus(capsys):
    code, d = run_json(capsys, "spectrum", "--space", "s3xs3", "--operator", "rring", "--subspace", "s2_minus")
    assert code == 0 and d["status"] == "ok"
    assert pairs(d) == [("-4", 2), ("2", 10)]


def test_spectrum_aw_weyl(capsys):
    code, d = run_json(capsys, "spectrum", "--space", "aw-su3xsu2", "--operator", "what", "--subspace", "omega2_14")
    assert d["results"]["eigenvalues"][0]["value"] == -19.2
    assert d["results"]["dimension"] == 14


def test_spectrum_pretty_format(capsys):
    code, out, _ = run(capsys, "spectrum", "--space", "aw-su3xsu2", "--operator", "rhat", "--format", "pretty")
    assert code == 0
    assert "-18/5 ×7" in out


def test_spectrum_csv_columns(capsys):
    code, out, _ = run(capsys, "spectrum", "--space", "s3xs3", "--operator", "rhat", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert out.splitlines()[0] == "value,rational,multiplicity"
    assert [(r["rational"], int(r["multiplicity"])) for r in rows] == [("-7", 3), ("-2", 7), ("1", 5)]


def test_spectrum_wrong_subspace_kind(capsys):
    code, _, err = run(capsys, "spectrum", "--space", "s3xs3", "--operator", "rhat", "--subspace", "s2_minus")
    assert code == 1 and "error" in err


def test_spectrum_from_json_file(capsys, tmp_path):
    p = tmp_path / "space.json"
    p.write_text(json.dumps(space_to_dict(build_space("s3xs3"))))
    code, d = run_json(capsys, "spectrum", "--space", str(p), "--operator", "rring", "--subspace", "s2_minus")
    assert pairs(d) == [("-4", 2), ("2", 10)]


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["--theorem", "ring-einstein", "--n", "7", "--k", "10.8", "--delta", "0.2", "--Delta", "7.4"], (-9.4, 9.8)),
        (["--theorem", "hat-special", "--delta", "0", "--Delta", "2.25"], (-7.5, 3.0)),
    ],
)
def test_bounds_examples(capsys, argv, expected):
    code, d = run_json(capsys, "bounds", *argv)
    iv = d["results"]["intervals"][0]
    assert code == 0
    assert (iv["lo"], iv["hi"]) == pytest.approx(expected)


def test_bounds_reversed_exit_1(capsys):
    code, _, err = run(capsys, "bounds", "--theorem", "hat-special", "--delta", "3", "--Delta", "1")
    assert code == 1 and "exceeds" in err


def test_bounds_missing_n(capsys):
    code, _, _ = run(capsys, "bounds", "--theorem", "hat-general", "--delta", "0", "--Delta", "1")
    assert code == 1


def test_betti_s3_spectral(capsys):
    code, d = run_json(capsys, "betti", "--space", "s3xs3", "--mode", "spectral")
    assert code == 0
    assert d["results"]["verdicts"] == {"b2": "zero", "b3": "no_conclusion"}


def test_betti_s3_sectional(capsys):
    code, d = run_json(capsys, "betti", "--space", "s3xs3", "--mode", "sectional", "--delta", "0", "--Delta", "2.25")
    assert d["results"]["verdicts"]["b2"] == "zero"


def test_betti_aw_spectral_still_exit_0(capsys):
    code, d = run_json(capsys, "betti", "--space", "aw-su3xsu2", "--mode", "spectral")
    assert code == 0
    assert d["results"]["verdicts"] == {"b2": "no_conclusion", "b3": "no_conclusion"}


def test_betti_manual_inputs(capsys):
    code, d = run_json(
        capsys, "betti", "--type", "nearly_kahler6", "--k", "5", "--mode", "spectral",
        "--min", "what_omega2_8=-5", "--min", "wring_s2_plus0=-2.5", "--min", "wring_s2_minus=-5",
    )
    assert d["results"]["verdicts"] == {"b2": "zero", "b3": "no_conclusion"}


def test_betti_manual_missing(capsys):
    code, _, _ = run(capsys, "betti", "--type", "nearly_g2", "--k", "3", "--mode", "spectral", "--min", "what_omega2_14=0")
    assert code == 1


def test_betti_sectional_sampled(capsys):
    code, d = run_json(capsys, "betti", "--space", "s3xs3", "--mode", "sectional", "--samples", "500", "--seed", "1")
    assert code == 0 and d["inputs"]["seed"] == 1


def test_identities_all_zero(capsys):
    for structure, count in (("g2", 5), ("su3", 17)):
        code, d = run_json(capsys, "identities", "--structure", structure)
        assert code == 0 and d["results"]["count"] == count
        assert set(d["results"]["residuals"].values()) == {0.0}


def test_usage_errors_exit_1(capsys):
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "spectrum", "--space", "s3xs3")[0] == 1
    assert run(capsys, "spectrum", "--space", "nowhere", "--operator", "rhat")[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "--help")[0] == 0


def test_json_deterministic_and_roundtrips(capsys):
    argv = ["spectrum", "--space", "aw-su3xsu2", "--operator", "rring", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert json.dumps(json.loads(a), indent=2, sort_keys=True, ensure_ascii=False) + "\n" == a


def test_verify_all_skip_sampling(capsys):
    code, d = run_json(capsys, "verify-all", "--samples", "0")
    statuses = {c["id"]: c["status"] for c in d["results"]["criteria"]}
    assert code == 0 and statuses[5] == "skipped"
    assert all(s == "pass" for i, s in statuses.items() if i != 5)


def test_verify_all_corrupt_exit_2(capsys):
    code, d = run_json(capsys, "verify-all", "--samples", "0", "--corrupt")
    assert code == 2 and d["status"] == "check_failed"
    assert d["results"]["criteria"][0]["status"] == "fail"


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CURVLAB_SEED", "17")
    _, d = run_json(capsys, "verify-all", "--samples", "0")
    assert d["inputs"]["seed"] == 17
    monkeypatch.setenv("CURVLAB_SEED", "oops")
    assert run(capsys, "verify-all", "--samples", "0")[0] == 1


def test_rational_guess():
    assert rational_guess(-3.6) == "-18/5"
    assert rational_guess(2.0) == "2"
    assert rational_guess(2 ** 0.5) is None
