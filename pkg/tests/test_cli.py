"""Command-line surface: exit codes, golden output, KAT wiring."""

import dataclasses

import pytest

from g2cgl import cli
from g2cgl.kat import load_vectors


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _kat(name):
    (vec,) = [v for v in load_vectors() if v.name == name]
    return vec


def test_hash_golden_line(capsys):
    vec = _kat("msg-p1019-01")  # empty message at p = 1019
    code, out, err = run(capsys, "hash", "--prime", "1019", "--in", "")
    assert code == 0
    assert out.strip() == vec.expected.hex()
    assert err.splitlines()[0] == "p=1019 n=2 lambda=13"
    code2, out2, _ = run(capsys, "hash", "--prime", "1019", "--in", "")
    assert (code2, out2) == (code, out)  # line-stable


def test_hash_stdin_and_file(tmp_path, capsys, monkeypatch):
    vec = _kat("msg-p1019-05")  # 0xdeadbeef
    f = tmp_path / "m.bin"
    f.write_bytes(bytes.fromhex("deadbeef"))
    code, out, _ = run(
        capsys, "hash", "--prime", "1019", "--in", f"@{f}"
    )
    assert code == 0 and out.strip() == vec.expected.hex()
    code, out, _ = run(
        capsys, "hash", "--prime", "1019", "--in", "deadbeef"
    )
    assert code == 0 and out.strip() == vec.expected.hex()


def test_hash_bottom_exit_code(capsys):
    code, out, err = run(
        capsys, "hash", "--prime", "1019", "--in", "616263"
    )
    assert code == 3 and out == "" and "degenerate" in err


def test_hash_parallel_flag_same_digest(capsys):
    _, seq, _ = run(capsys, "hash", "--prime", "10007", "--in", "0a0b")
    _, par, _ = run(
        capsys, "hash", "--prime", "10007", "--in", "0a0b", "--parallel"
    )
    assert seq == par


def test_hash_usage_errors(capsys):
    assert run(capsys, "hash")[0] == 2  # neither prime nor security
    assert (
        run(capsys, "hash", "--prime", "11", "--security", "8")[0] == 2
    )
    assert run(capsys, "hash", "--prime", "4", "--in", "")[0] == 2
    assert run(capsys, "hash", "--prime", "1019", "--in", "zz")[0] == 2


def test_explore_pass_and_failures(capsys):
    code, out, _ = run(capsys, "explore", "--prime", "13")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("CHECK")]
    assert len(lines) == 5 and all(" PASS " in l for l in lines)
    assert run(capsys, "explore", "--prime", "4")[0] == 2
    assert run(capsys, "explore", "--prime", "211")[0] == 2
    assert (
        run(capsys, "explore", "--prime", "13", "--check", "bogus")[0]
        == 2
    )


def test_explore_export_and_list(tmp_path, capsys):
    out_file = tmp_path / "g.json"
    code, out, _ = run(
        capsys,
        "explore", "--prime", "11", "--check", "counts",
        "--export", "json", "--out", str(out_file), "--list",
    )
    assert code == 0 and out_file.exists()
    assert "J0" in out and "E0" in out  # vertex table listed


def test_path_commands(capsys):
    code, out, _ = run(
        capsys, "path", "--prime", "13", "--src", "J0", "--dst", "E0"
    )
    assert code == 0 and "replay verified" in out
    code, out, _ = run(
        capsys,
        "path", "--prime", "13", "--src", "J0", "--dst", "J2",
        "--good-only",
    )
    assert code == 0
    assert run(capsys, "path", "--prime", "13", "--src", "J9",
               "--dst", "E0")[0] == 2


def test_bench_command(capsys, tmp_path):
    report = tmp_path / "bench.json"
    code, out, _ = run(
        capsys,
        "bench", "--security", "32", "--mode", "elliptic-cgl",
        "--message-bits", "16", "--messages", "1",
        "--json", str(report),
    )
    assert code == 0 and "elliptic-cgl" in out and report.exists()


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "selftest: PASS" in out


def test_selftest_catches_corrupted_vector(capsys, monkeypatch):
    vecs = load_vectors()
    victim = next(v for v in vecs if v.expected is not None)
    bad = dataclasses.replace(
        victim, expected = bytes(len(victim.expected))
    )
    tampered = [bad if v.name == victim.name else v for v in vecs]
    monkeypatch.setattr(cli, "load_vectors", lambda: tampered)
    code, out, _ = run(capsys, "selftest")
    assert code == 1 and victim.name in out
