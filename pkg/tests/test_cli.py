"""
命令行：在进程内调用 main()，检查输出文件与退出码
"""
import orjson
import pytest
from loguru import logger

from graphs.graph import complete_graph
from graphs.io import read_instance, write_graph
from labeling.label_file import read_label_file
from main import EXIT_FORMAT, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from utils.file_handler import load_csv, load_json


@pytest.fixture
def q4_files(tmp_path):
    """Q4 实例与其标签文件"""
    cpi = tmp_path / "q4.cpi"
    lbl = tmp_path / "q4.lbl"
    assert main(["gen", "hypercube", "--d", "4", "-o", str(cpi)]) == EXIT_OK
    assert main(["encode", str(cpi), "-o", str(lbl), "--seed", "1"]) == EXIT_OK
    return cpi, lbl


class TestGen:
    def test_hypercube(self, tmp_path):
        path = tmp_path / "q4.cpi"
        assert main(["gen", "hypercube", "--d", "4", "-o", str(path)]) == EXIT_OK
        instance = read_instance(path)
        assert instance.size == 16 and instance.d == 4
        assert instance.is_induced

    def test_random_sub_reproducible(self, tmp_path):
        a, b = tmp_path / "a.cpi", tmp_path / "b.cpi"
        args = ["gen", "random-sub", "--base", "hypercube", "--d", "5", "--density", "0.5", "--seed", "1"]
        assert main([*args, "-o", str(a)]) == EXIT_OK
        assert main([*args, "-o", str(b)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()
        assert not read_instance(a).is_induced

    def test_dense_monotone(self, tmp_path):
        gr = write_graph(complete_graph(4), tmp_path / "k4.gr")
        out = tmp_path / "dense.cpi"
        assert main(["gen", "dense-monotone", "--gprime", str(gr), "--n", "16", "-o", str(out)]) == EXIT_OK
        assert read_instance(out).size == 16

    def test_random_induced(self, tmp_path):
        out = tmp_path / "ri.cpi"
        assert main(["gen", "random-induced", "--d", "3", "--size", "8", "--seed", "5", "-o", str(out)]) == EXIT_OK
        instance = read_instance(out)
        assert instance.size == 8 and instance.d == 3

    def test_missing_parameter(self, tmp_path):
        assert main(["gen", "hypercube", "-o", str(tmp_path / "x.cpi")]) == EXIT_USAGE

    def test_log_file_records_seed(self, tmp_path):
        log = tmp_path / "run.log"
        argv = ["gen", "hypercube", "--d", "3", "-o", str(tmp_path / "q3.cpi"), "--seed", "ab", "--log-file", str(log)]
        assert main(argv) == EXIT_OK
        logger.remove()
        assert "seed=ab" in log.read_text(encoding="utf-8")

    def test_missing_output(self):
        assert main(["gen", "hypercube", "--d", "3"]) == EXIT_USAGE


class TestEncodeQuery:
    def test_same_seed_same_bytes(self, tmp_path, q4_files):
        cpi, lbl = q4_files
        again = tmp_path / "again.lbl"
        assert main(["encode", str(cpi), "-o", str(again), "--seed", "1"]) == EXIT_OK
        assert again.read_bytes() == lbl.read_bytes()

    def test_query(self, q4_files, capsys):
        _, lbl = q4_files
        capsys.readouterr()
        assert main(["query", str(lbl), "0", "1"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "adjacent"
        assert main(["query", str(lbl), "0", "3"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "not-adjacent"
        assert main(["query", str(lbl), "0", "0"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "not-adjacent"

    def test_query_missing_vertex(self, q4_files):
        _, lbl = q4_files
        assert main(["query", str(lbl), "0", "16"]) == EXIT_USAGE

    def test_subgraph_mode_on_induced_instance(self, tmp_path, q4_files):
        cpi, _ = q4_files
        assert main(["encode", str(cpi), "--mode", "subgraph", "-o", str(tmp_path / "x.lbl")]) == EXIT_USAGE

    def test_subgraph_encode(self, tmp_path):
        cpi, lbl = tmp_path / "sub.cpi", tmp_path / "sub.lbl"
        assert main(["gen", "random-sub", "--d", "4", "--density", "0.5", "-o", str(cpi)]) == EXIT_OK
        assert main(["encode", str(cpi), "-o", str(lbl)]) == EXIT_OK
        descriptor, _ = read_label_file(lbl)
        assert descriptor.mode == "subgraph"

    def test_subgraph_stats_report_mphf_floor(self, tmp_path, capsys):
        cpi, lbl = tmp_path / "sub.cpi", tmp_path / "sub.lbl"
        assert main(["gen", "random-sub", "--d", "5", "--density", "0.5", "-o", str(cpi)]) == EXIT_OK
        assert main(["encode", str(cpi), "-o", str(lbl)]) == EXIT_OK
        capsys.readouterr()
        assert main(["stats", str(lbl), "--json"]) == EXIT_OK
        stats = orjson.loads(capsys.readouterr().out)
        assert stats["mphf_floor_bits_per_key"] == pytest.approx(1.4427, abs=1e-4)
        assert stats["mphf_bits_per_key"] > stats["mphf_floor_bits_per_key"]
        assert main(["stats", str(lbl)]) == EXIT_OK
        assert "下界 1.443" in capsys.readouterr().out

    def test_wrong_class_base(self, tmp_path):
        cpi = tmp_path / "grid.cpi"
        assert main(["gen", "grid", "--dims", "3,3", "-o", str(cpi)]) == EXIT_OK
        assert main(["encode", str(cpi), "--base", "clique", "-o", str(tmp_path / "g.lbl")]) == EXIT_USAGE

    def test_bad_seed(self, tmp_path, q4_files):
        cpi, _ = q4_files
        assert main(["encode", str(cpi), "--seed", "zz", "-o", str(tmp_path / "x.lbl")]) == EXIT_USAGE

    def test_malformed_instance(self, tmp_path):
        cpi = tmp_path / "bad.cpi"
        cpi.write_text("factors two\n")
        assert main(["encode", str(cpi), "-o", str(tmp_path / "x.lbl")]) == EXIT_FORMAT

    def test_missing_file(self, tmp_path):
        assert main(["encode", str(tmp_path / "none.cpi"), "-o", str(tmp_path / "x.lbl")]) == EXIT_USAGE


class TestVerifyStats:
    def test_verify_ok(self, q4_files, capsys):
        cpi, lbl = q4_files
        capsys.readouterr()
        assert main(["verify", str(cpi), str(lbl), "--json"]) == EXIT_OK
        report = orjson.loads(capsys.readouterr().out)
        assert report["mismatch_count"] == 0
        assert report["pairs_checked"] == 120

    def test_verify_detects_swapped_label(self, q4_files, capsys):
        cpi, lbl = q4_files
        lines = lbl.read_text().splitlines()
        # 顶点0的行换成顶点15（对径点）的十六进制串
        _, bitlen, hex15 = lines[2 + 15].split()
        lines[2] = f"0 {bitlen} {hex15}"
        lbl.write_text("\n".join(lines) + "\n")
        capsys.readouterr()
        assert main(["verify", str(cpi), str(lbl)]) == EXIT_MISMATCH
        assert "mismatch 0 1" in capsys.readouterr().out

    def test_verify_malformed(self, q4_files):
        cpi, lbl = q4_files
        lines = lbl.read_text().splitlines()
        lines[0] = "scheme other v1"
        lbl.write_text("\n".join(lines) + "\n")
        assert main(["verify", str(cpi), str(lbl)]) == EXIT_FORMAT

    def test_verify_size_mismatch(self, tmp_path, q4_files):
        _, lbl = q4_files
        q3 = tmp_path / "q3.cpi"
        assert main(["gen", "hypercube", "--d", "3", "-o", str(q3)]) == EXIT_OK
        assert main(["verify", str(q3), str(lbl)]) == EXIT_USAGE

    def test_stats_json(self, q4_files, capsys):
        _, lbl = q4_files
        capsys.readouterr()
        assert main(["stats", str(lbl), "--json"]) == EXIT_OK
        stats = orjson.loads(capsys.readouterr().out)
        assert sum(stats["field_totals"].values()) == stats["total_bits"]
        assert stats["n"] == 16

    def test_save_reports(self, tmp_path, q4_files):
        cpi, lbl = q4_files
        assert main(["verify", str(cpi), str(lbl), "--save", str(tmp_path / "verify.json")]) == EXIT_OK
        assert load_json(tmp_path / "verify.json")["pairs_checked"] == 120
        assert main(["stats", str(lbl), "--save", str(tmp_path / "stats.json")]) == EXIT_OK
        assert load_json(tmp_path / "stats.json")["mode"] == "induced"

    def test_stats_text(self, q4_files, capsys):
        _, lbl = q4_files
        capsys.readouterr()
        assert main(["stats", str(lbl)]) == EXIT_OK
        assert "total" in capsys.readouterr().out


class TestBench:
    def test_csv_and_report(self, tmp_path):
        csv, md = tmp_path / "bench.csv", tmp_path / "bench.md"
        argv = ["bench", "--params", "3,4", "--modes", "induced,subgraph", "--out", str(csv), "--report", str(md)]
        assert main(argv) == EXIT_OK
        df = load_csv(csv)
        assert df.height == 4
        assert set(df["mode"].to_list()) == {"induced", "subgraph"}
        assert md.read_text(encoding="utf-8").startswith("# ")

    def test_json_lines(self, capsys):
        capsys.readouterr()
        assert main(["bench", "--family", "star", "--params", "4,5"]) == EXIT_OK
        rows = [orjson.loads(line) for line in capsys.readouterr().out.splitlines() if line.strip()]
        assert [r["n"] for r in rows] == [5, 6]
