from __future__ import annotations

import json

import pytest

from nilbreadth.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_then_analyze(tmp_path, capsys):
    f = tmp_path / "g1.json"
    code, _, _ = run(capsys, "construct", "gm", "--q", "3", "--m", "1", "-o", str(f))
    assert code == 0 and f.exists()
    code, out, _ = run(capsys, "analyze", str(f), "--fingerprint")
    fp = json.loads(out)["fingerprint"]
    assert code == 0
    assert fp["type_set"] == [0, 2] and fp["nilpotency_class"] == 3


@pytest.mark.parametrize(
    "kind,args",
    [
        ("gm", ["--q", "3", "--m", "2"]),
        ("gm-quotient", ["--q", "3"]),
        ("lm", ["--q", "5"]),
        ("u3", ["--q", "3", "--m", "2"]),
        ("u5", ["--q", "3"]),
        ("v", ["--q", "3", "--m", "2"]),
        ("lf-dickson", ["--q", "9"]),
        ("lf-field", ["--q", "3", "--m", "2"]),
        ("gm", ["--p", "3", "--s", "1", "--m", "2", "--poly", "2,1,1"]),
    ],
)
def test_every_construction_round_trips(tmp_path, capsys, kind, args):
    f = tmp_path / "alg.json"
    assert run(capsys, "construct", kind, *args, "-o", str(f))[0] == 0
    code, out, _ = run(capsys, "analyze", str(f), "--series")
    assert code == 0 and json.loads(out)["series"]["nilpotency_class"] in (2, 3, 4)


def test_verify_parity_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "parity", "--q", "3")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_verify_output_is_byte_identical(capsys):
    outs = {run(capsys, "verify", "gm", "--q", "3", "--m", "2", "--workers", w)[1] for w in ("1", "2", "4")}
    assert len(outs) == 1
    assert json.loads(outs.pop())["elapsed_ms"] is None
    _, timed, _ = run(capsys, "verify", "gm", "--q", "3", "--timing")
    assert json.loads(timed)["elapsed_ms"] >= 0


def test_characteristic_two_is_a_usage_error(capsys):
    code, out, err = run(capsys, "construct", "gm", "--q", "4", "--m", "1")
    assert code == 2 and out == "" and "characteristic" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "verify", "nope", "--q", "3")[0] == 2
    assert run(capsys, "construct", "gm", "--q", "6")[0] == 2
    assert run(capsys, "construct", "gm")[0] == 2
    assert run(capsys, "construct", "gm", "--q", "3", "--p", "5")[0] == 2
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", str(bad))[0] == 2
    assert run(capsys, "construct", "gm", "--q", "3", "--m", "2", "--poly", "2,0,1")[0] == 2  # reducible


def test_budget_exceeded_exit_three(tmp_path, capsys, monkeypatch):
    f = tmp_path / "u5.json"
    run(capsys, "construct", "u5", "--q", "5", "-o", str(f))
    assert run(capsys, "analyze", str(f), "--budget", "100")[0] == 3
    monkeypatch.setenv("LBA_BUDGET", "10")
    assert run(capsys, "analyze", str(f))[0] == 3


def test_verification_failure_exit_one(tmp_path, capsys):
    f = tmp_path / "g.json"
    run(capsys, "construct", "gm", "--q", "3", "-o", str(f))
    code, _, err = run(capsys, "semifield", "extract", str(f))
    assert code == 1 and "class" in err


def test_semifield_commands(tmp_path, capsys):
    d = tmp_path / "d.json"
    assert run(capsys, "semifield", "dickson", "--q", "9", "-o", str(d))[0] == 0
    code, out, _ = run(capsys, "semifield", "mid", str(d))
    mid = json.loads(out)
    assert code == 0 and mid["size"] == 9 and mid["is_field"] and mid["commutative"] and not mid["associative"]

    fld = tmp_path / "f.json"
    assert run(capsys, "semifield", "field", "--q", "3", "--n", "2", "-o", str(fld))[0] == 0
    code, out, _ = run(capsys, "semifield", "mid", str(fld))
    assert json.loads(out)["size"] == 9 and json.loads(out)["associative"]

    ld = tmp_path / "ld.json"
    run(capsys, "construct", "lf-dickson", "--q", "9", "-o", str(ld))
    e = tmp_path / "e.json"
    assert run(capsys, "semifield", "extract", str(ld), "-o", str(e))[0] == 0
    assert json.loads(e.read_text())["mult"] == json.loads(d.read_text())["mult"]


def test_isotopy_check(tmp_path, capsys):
    from nilbreadth import semifield as SF
    from nilbreadth.gf import GF, field_q

    F3 = GF.prime(3)
    D = SF.dickson(field_q(9))
    iso = SF.Isotopism.random(F3, 4, 2)
    P2 = SF.apply_isotopism(D, iso)
    paths = {}
    for name, obj in {"d": D.to_json(), "p2": P2.to_json(), "iso": iso.to_json(F3)}.items():
        paths[name] = tmp_path / f"{name}.json"
        paths[name].write_text(json.dumps(obj))
    code, out, _ = run(capsys, "semifield", "isotopy-check", str(paths["d"]), str(paths["p2"]), str(paths["iso"]))
    assert code == 0 and json.loads(out) == {"isotopism_valid": True, "lie_isomorphism": True}
    wrong = SF.Isotopism(iso.B, iso.A, iso.C)
    paths["iso"].write_text(json.dumps(wrong.to_json(F3)))
    code, out, _ = run(capsys, "semifield", "isotopy-check", str(paths["d"]), str(paths["p2"]), str(paths["iso"]))
    assert code == 1 and json.loads(out)["isotopism_valid"] is False


def test_text_format(capsys):
    code, out, _ = run(capsys, "verify", "dimensions", "--q", "3", "--format", "text")
    assert code == 0 and out.startswith("suite dimensions q=3 m=1: pass")
