import json

import pytest

import entsort.cli as cli
from entsort.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_entropy_toronto(tmp_path, capsys):
    f = tmp_path / "toronto.txt"
    f.write_text("TORONTO")
    code, out, _ = run_cli(capsys, "entropy", str(f), "--mode", "chars",
                           "-l", "2")
    assert code == 0
    values = [float(x) for x in out.split()]
    assert values[0] == pytest.approx(1.84237099, abs=1e-6)
    assert values[1] == pytest.approx(2 / 7, abs=1e-9)
    assert values[2] == 0.0


def test_entropy_json_format(tmp_path, capsys):
    f = tmp_path / "toronto.txt"
    f.write_text("TORONTO")
    code, out, _ = run_cli(capsys, "entropy", str(f), "--mode", "chars",
                           "-l", "1", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["m"] == 7 and rec["n"] == 4
    assert len(rec["entropy"]) == 2


def test_sort_report_and_bounds(tmp_path, capsys):
    f = tmp_path / "data.bin"
    f.write_bytes(bytes([5, 1, 5, 3, 1, 1, 200, 0]))
    code, out, _ = run_cli(capsys, "sort", str(f), "-l", "0",
                           "--check-bounds", "--baseline")
    assert code == 0
    rec = json.loads(out)
    for field in ("m", "n", "order", "entropy", "comparisons",
                  "budget_lemma1", "budget_per_context", "wall_ms",
                  "stable", "sorted_ok", "permutation"):
        assert field in rec
    assert rec["schema"] == 1
    assert rec["stable"] and rec["sorted_ok"]
    assert rec["comparisons"]["total"] <= rec["budget_lemma1"]
    assert set(rec["comparisons"]) == {"search", "verify", "b1", "merge",
                                       "total"}
    assert rec["baseline"] > 0
    assert sorted(rec["permutation"]) == list(range(1, 9))


def test_sort_zero_based(tmp_path, capsys):
    f = tmp_path / "d.bin"
    f.write_bytes(b"cab")
    code, out, _ = run_cli(capsys, "sort", str(f), "--zero-based")
    rec = json.loads(out)
    assert code == 0
    assert rec["permutation"] == [1, 2, 0]


def test_sort_sorted_output(tmp_path, capsys):
    f = tmp_path / "t.txt"
    f.write_text("TORONTO")
    code, out, _ = run_cli(capsys, "sort", str(f), "--mode", "chars",
                           "-l", "1", "--sorted-output")
    assert code == 0
    assert out.strip() == "NOOORTT"


def test_sort_orders_agree(tmp_path, capsys):
    f = tmp_path / "t.txt"
    f.write_text("TORONTO")
    perms = []
    for order in ("0", "1", "2"):
        code, out, _ = run_cli(capsys, "sort", str(f), "--mode", "chars",
                               "-l", order)
        assert code == 0
        perms.append(json.loads(out)["permutation"])
    assert perms[0] == perms[1] == perms[2] == [5, 2, 4, 7, 3, 1, 6]


def test_sort_csv_format(tmp_path, capsys):
    f = tmp_path / "d.bin"
    f.write_bytes(b"hello world")
    code, out, _ = run_cli(capsys, "sort", str(f), "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert "comparisons_total" in header
    assert len(header.split(",")) == len(row.split(","))


def test_gen_periodic_pattern(tmp_path, capsys):
    out_file = tmp_path / "p.txt"
    code, _, _ = run_cli(capsys, "gen", "--kind", "periodic", "--pattern",
                         "abc", "--length", "9", "--mode", "chars",
                         "--out", str(out_file))
    assert code == 0
    assert out_file.read_text() == "abcabcabc"


def test_gen_then_sort_roundtrip(tmp_path, capsys):
    corpus = tmp_path / "c.bin"
    code, _, _ = run_cli(capsys, "gen", "--kind", "markov", "--n", "16",
                         "--length", "2000", "--seed", "11",
                         "--out", str(corpus))
    assert code == 0
    assert corpus.stat().st_size == 2000
    code, out, _ = run_cli(capsys, "sort", str(corpus), "-l", "1",
                           "--check-bounds")
    assert code == 0
    rec = json.loads(out)
    assert rec["sorted_ok"] and rec["stable"]


def test_gen_ints_mode(tmp_path, capsys):
    f = tmp_path / "ints.txt"
    code, _, _ = run_cli(capsys, "gen", "--kind", "uniform", "--n", "1000",
                         "--length", "50", "--mode", "ints",
                         "--out", str(f))
    assert code == 0
    values = [int(t) for t in f.read_text().split()]
    assert len(values) == 50
    code, out, _ = run_cli(capsys, "sort", str(f), "--mode", "ints")
    assert code == 0
    assert json.loads(out)["m"] == 50


def test_tokens_mode(tmp_path, capsys):
    f = tmp_path / "words.txt"
    f.write_text("pear apple pear fig")
    code, out, _ = run_cli(capsys, "sort", str(f), "--mode", "tokens",
                           "--sorted-output")
    assert code == 0
    assert out.split() == ["apple", "fig", "pear", "pear"]


def test_bench_jsonl(capsys):
    code, out, _ = run_cli(capsys, "bench", "--limit", "2", "--orders",
                           "0,1", "--check-bounds")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 4  # 2 specs x 2 orders
    for row in rows:
        assert row["sorted_ok"] and row["stable"]
        assert row["comparisons"]["total"] <= row["budget_lemma1"]


def test_bench_csv(capsys):
    code, out, _ = run_cli(capsys, "bench", "--limit", "1", "--orders", "0",
                           "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert "comparisons_total" in lines[0]


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sort", "--mode", "bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 2


def test_bad_data_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("not-an-int 12")
    code, _, err = run_cli(capsys, "sort", str(f), "--mode", "ints")
    assert code == 2
    code, _, err = run_cli(capsys, "entropy", str(tmp_path / "missing"))
    assert code == 2


def test_empty_input_exit_2(tmp_path, capsys):
    f = tmp_path / "empty"
    f.write_bytes(b"")
    code, _, _ = run_cli(capsys, "sort", str(f))
    assert code == 2


def test_check_bounds_violation_exit_1(tmp_path, capsys, monkeypatch):
    # Bounds hold on every real input, so force the checker to fail to
    # exercise the exit path.
    monkeypatch.setattr(cli, "_bounds_ok", lambda report, outcome: False)
    f = tmp_path / "d.bin"
    f.write_bytes(b"data")
    code, _, err = run_cli(capsys, "sort", str(f), "--check-bounds")
    assert code == 1
    assert "violation" in err
    code, _, _ = run_cli(capsys, "sort", str(f))  # without the flag: fine
    assert code == 0


def test_bench_both_kernels(capsys):
    from entsort.kernel import available_kernels
    code, out, _ = run_cli(capsys, "bench", "--limit", "1", "--orders", "0",
                           "--kernels", "both")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == len(available_kernels())
    kernels = {row["kernel"] for row in rows}
    assert kernels == set(available_kernels())
    totals = {row["comparisons"]["total"] for row in rows}
    assert len(totals) == 1  # kernels agree on counts


def test_sort_explicit_kernel(tmp_path, capsys):
    f = tmp_path / "d.bin"
    f.write_bytes(b"mississippi")
    code, out, _ = run_cli(capsys, "sort", str(f), "--kernel", "python")
    assert code == 0
    rec = json.loads(out)
    assert rec["sorted_ok"] and rec["stable"]
