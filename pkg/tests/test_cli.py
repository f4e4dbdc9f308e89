import csv
import subprocess
import sys

import numpy as np
import pytest

from flexpolar.cli import bits_to_hex, hex_to_bits, main
from flexpolar.construction import load_code
from flexpolar.xform import encode_systematic


def run(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def test_hex_helpers():
    assert bits_to_hex([1, 0, 1, 0, 1, 0, 1, 1]) == "AB"
    assert bits_to_hex([1, 1, 0]) == "6"
    assert hex_to_bits("6", 3).tolist() == [1, 1, 0]
    assert hex_to_bits("0xab", 8).tolist() == [1, 0, 1, 0, 1, 0, 1, 1]
    with pytest.raises(ValueError):
        hex_to_bits("1F", 4)
    with pytest.raises(ValueError):
        hex_to_bits("zz", 8)


def test_construct_encode_decode(tmp_path, capsys):
    code_path = tmp_path / "c.txt"
    assert run(capsys, "construct", "--n", "4", "--k", "12", "--method", "huawei",
               "--out", str(code_path))[0] == 0
    code = load_code(code_path)
    assert code.good.elements == (3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15)

    rc, out = run(capsys, "encode", "--code", str(code_path), "--systematic", "--info", "ABC")
    x = hex_to_bits(out.strip(), 16)
    assert rc == 0
    assert np.array_equal(x, encode_systematic(code, hex_to_bits("ABC", 12)))

    llrs = tmp_path / "y.txt"
    llrs.write_text("\n".join(str(v) for v in (1.0 - 2.0 * x) * 3.0) + "\n")
    for dec in (["--decoder", "sc"], ["--decoder", "fast", "--r", "16", "--mode", "optimal"]):
        rc, out = run(capsys, "decode", "--code", str(code_path), *dec, "--llrs", str(llrs))
        lines = dict(line.split("=") for line in out.split())
        assert rc == 0 and lines["xhat"] == bits_to_hex(x)


def test_construct_bec_default_eps(tmp_path, capsys):
    path = tmp_path / "c.txt"
    run(capsys, "construct", "--n", "5", "--k", "16", "--method", "bec", "--out", str(path))
    assert load_code(path).params["eps"] == pytest.approx(np.exp(-1))


def test_simulate_writes_csv(tmp_path, capsys):
    code_path = tmp_path / "c.txt"
    run(capsys, "construct", "--n", "5", "--k", "16", "--method", "bec", "--out", str(code_path))
    outs = []
    for name in ("a.csv", "b.csv"):
        rc, _ = run(capsys, "simulate", "--code", str(code_path), "--decoder", "fast", "--r", "8",
                    "--mode", "lowcomplexity", "--snr-start", "0", "--snr-stop", "1",
                    "--snr-step", "0.5", "--min-errors", "20", "--max-frames", "5000",
                    "--seed", "9", "--out", str(tmp_path / name))
        assert rc == 0
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]
    rows = list(csv.DictReader((tmp_path / "a.csv").open()))
    assert [r["snr_db"] for r in rows] == ["0", "0.5", "1"]
    assert {r["decoder_id"] for r in rows} == {"fast8-lowcomplexity"}


def test_enumerate(capsys):
    rc, out = run(capsys, "enumerate", "--r", "8")
    lines = out.splitlines()
    assert rc == 0 and lines[0] == "20" and len(lines) == 21
    rc, out = run(capsys, "enumerate", "--r", "32")
    assert out.split() == ["7581"]


def test_verify_tables(capsys):
    rc, out = run(capsys, "verify-tables")
    assert rc == 0 and "checks passed" in out


def test_latency(tmp_path, capsys):
    code_path = tmp_path / "c.txt"
    run(capsys, "construct", "--n", "4", "--k", "12", "--method", "huawei", "--out", str(code_path))
    rc, out = run(capsys, "latency", "--code", str(code_path), "--r", "16", "--tc", "3", "--tm", "2",
                  "--out", str(tmp_path / "r.csv"))
    assert rc == 0
    assert (tmp_path / "r.csv").read_text().splitlines() == [
        "block_index,mask_hex,case_id,fast_cycles,sc_cycles", "0,E800,12,9,61"]


def test_errors_exit_nonzero(tmp_path, capsys):
    rc = main(["encode", "--code", str(tmp_path / "missing.txt"), "--info", "1"])
    assert rc != 0
    with pytest.raises(SystemExit):
        main(["enumerate", "--r", "3"])


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "flexpolar", "enumerate", "--r", "4"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[0] == "6"
