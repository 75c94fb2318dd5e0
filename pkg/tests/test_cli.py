import pytest

from zkcompare import bench, cli, snark


@pytest.fixture(scope="module")
def keys(tmp_path_factory):
    d = tmp_path_factory.mktemp("keys")
    pk, vk = d / "k.pk", d / "k.vk"
    assert cli.main(["snark-setup", "--seed", "11", "--out-pk", str(pk), "--out-vk", str(vk)]) == 0
    return pk, vk


@pytest.fixture(scope="module")
def snark_proof_file(keys, tmp_path_factory):
    pk, _ = keys
    out = tmp_path_factory.mktemp("proof") / "x3.proof"
    assert cli.main(["snark-prove", "--x", "3", "--pk", str(pk), "--out", str(out)]) == 0
    return out


def test_no_arguments_is_usage_error(capsys):
    assert cli.main([]) == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(capsys):
    assert cli.main(["stark-verify", "--nope"]) == 2
    assert "usage" in capsys.readouterr().err


def test_missing_seed_is_generated_and_reported(tmp_path, capsys):
    code = cli.main(["snark-setup", "--out-pk", str(tmp_path / "a.pk"), "--out-vk", str(tmp_path / "a.vk")])
    assert code == 0
    assert "seed:" in capsys.readouterr().err


def test_snark_round_trip(keys, snark_proof_file):
    _, vk = keys
    args = ["snark-verify", "--vk", str(vk), "--proof", str(snark_proof_file)]
    assert cli.main(args + ["--public-y", "35"]) == 0
    assert cli.main(args + ["--public-y", "36"]) == 1


def test_same_seed_gives_identical_proof(keys, snark_proof_file, tmp_path):
    d = tmp_path
    assert cli.main(["snark-setup", "--seed", "11", "--out-pk", str(d / "k.pk"), "--out-vk", str(d / "k.vk")]) == 0
    assert (d / "k.pk").read_bytes() == keys[0].read_bytes()
    assert cli.main(["snark-prove", "--x", "3", "--pk", str(d / "k.pk"), "--out", str(d / "p")]) == 0
    assert (d / "p").read_bytes() == snark_proof_file.read_bytes()


def test_truncated_proof_is_invalid(keys, snark_proof_file, tmp_path):
    bad = tmp_path / "bad.proof"
    bad.write_bytes(snark_proof_file.read_bytes()[:-1])
    assert cli.main(["snark-verify", "--vk", str(keys[1]), "--proof", str(bad), "--public-y", "35"]) == 1


def test_missing_file_is_io_error(keys, tmp_path):
    code = cli.main(["snark-verify", "--vk", str(keys[1]), "--proof", str(tmp_path / "none"), "--public-y", "35"])
    assert code == 3


def test_stark_round_trip(tmp_path):
    out = tmp_path / "p.stark-proof"
    assert cli.main(["stark-prove", "--queries", "2", "--out", str(out)]) == 0
    assert cli.main(["stark-verify", "--proof", str(out)]) == 0
    data = bytearray(out.read_bytes())
    data[20] ^= 0xFF
    out.write_bytes(bytes(data))
    assert cli.main(["stark-verify", "--proof", str(out)]) == 1


def test_bench_and_report(tmp_path, capsys):
    csv_path, md_path = tmp_path / "b.csv", tmp_path / "b.md"
    args = ["bench", "--iterations", "1", "--warmup", "0", "--seed", "1", "--queries", "1"]
    assert cli.main(args + ["--csv", str(csv_path), "--markdown", str(md_path)]) == 0
    rows = bench.parse_csv(csv_path.read_bytes())
    assert [r.system for r in rows] == ["snark", "stark"]
    assert "Proof Gen Time" in md_path.read_text()
    capsys.readouterr()
    assert cli.main(["report", "--csv", str(csv_path)]) == 0
    assert "Security Assump" in capsys.readouterr().out


def test_bench_usage_and_gate(monkeypatch):
    assert cli.main(["bench", "--iterations", "0"]) == 2
    monkeypatch.setattr(snark, "verify_snark", lambda *a, **k: False)
    assert cli.main(["bench", "--iterations", "1", "--warmup", "0", "--seed", "1"]) == 1
