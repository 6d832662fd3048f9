"""Command line behaviour: exit codes, payloads, determinism."""

import json

from gitfankit.cli import main


def run(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ysets_oracle_n3(capsys):
    code, out, _ = run(["ysets", "-n", "3", "--oracle"], capsys)
    assert code == 0
    assert "equal: true" in out
    assert "37 Y-sets" in out


def test_ysets_n2_count(capsys):
    code, out, _ = run(["ysets", "-n", "2"], capsys)
    assert code == 0
    assert "8 Y-sets" in out


def test_ysets_guard(capsys):
    code, _, err = run(["ysets", "-n", "7"], capsys)
    assert code == 2
    assert "guard" in err


def test_fan_gitfan_n3(capsys):
    code, out, _ = run(["fan", "gitfan", "-n", "3"], capsys)
    assert code == 0
    assert "4 maximal cones" in out


def test_fan_sigmar_equals_sigma1_n3(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["fan", "sigmar", "-n", "3", "-o", str(a)]) == 0
    assert main(["fan", "sigma1", "-n", "3", "-o", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_fan_delta_guard(capsys):
    code, _, err = run(["fan", "delta", "-n", "5"], capsys)
    assert code == 2


def test_fan_payload_schema(tmp_path, capsys):
    out = tmp_path / "fan.json"
    assert main(["fan", "gitfan", "-n", "3", "-o", str(out)]) == 0
    capsys.readouterr()
    payload = json.loads(out.read_text())
    assert payload["n"] == 3
    assert all(isinstance(x, str) for ray in payload["rays"] for x in ray)
    assert all(
        isinstance(i, int) for cone in payload["cones"] for i in cone["rays"]
    )


def test_verify_delta_subfan_n3(capsys):
    code, out, _ = run(["verify", "delta-subfan", "-n", "3"], capsys)
    assert code == 0
    assert "pass" in out


def test_verify_walls_n4(capsys):
    code, out, _ = run(["verify", "walls", "-n", "4"], capsys)
    assert code == 0


def test_verify_fk_bridge_seeded(capsys):
    code, out, _ = run(["verify", "fk-bridge", "-n", "3", "--seed", "7"], capsys)
    assert code == 0


def test_verify_guard(capsys):
    code, _, err = run(["verify", "delta-subfan", "-n", "5"], capsys)
    assert code == 2


def test_verify_report_deterministic(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["verify", "rays", "-n", "3", "-o", str(a), "--seed", "7"]) == 0
    assert main(["verify", "rays", "-n", "3", "-o", str(b), "--seed", "7"]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    payload = json.loads(a.read_text())
    assert payload["claim"] == "rays" and payload["result"] is True
    assert "elapsed" not in json.dumps(payload)


def test_centers_fixture(capsys):
    code, out, _ = run(["centers", "-n", "3", "-A", "2,3"], capsys)
    assert code == 0
    assert "T2*S3-T3*S2" in out
    assert "extra: T2*T3" in out


def test_centers_schema_n4(capsys):
    code, out, _ = run(["centers", "-n", "4", "-A", "2,3,4"], capsys)
    assert code == 0
    for gen in ("T2*S3-T3*S2", "T2*S4-T4*S2", "T3*S4-T4*S3"):
        assert gen in out


def test_centers_rejects_singleton(capsys):
    code, _, err = run(["centers", "-n", "3", "-A", "3"], capsys)
    assert code == 2


def test_poset_dump(tmp_path, capsys):
    out = tmp_path / "poset.json"
    assert main(["poset", "sigma1", "-n", "3", "-o", str(out)]) == 0
    capsys.readouterr()
    payload = json.loads(out.read_text())
    assert set(payload) >= {"elements", "hasse"}
    assert len(payload["elements"]) == 18


def test_n_too_small(capsys):
    code, _, err = run(["ysets", "-n", "1"], capsys)
    assert code == 2


def test_verify_all_n3(capsys):
    code, out, _ = run(["verify", "all", "-n", "3", "--seed", "2024"], capsys)
    assert code == 0
    for claim in ("walls", "star-subfan", "fk-bridge", "thm44", "delta-subfan", "rays", "nu-equality"):
        assert f"{claim}: pass" in out
