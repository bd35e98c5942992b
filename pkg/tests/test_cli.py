import pytest

from qcontain.cli import main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "inst.txt"
    path.write_text("nodes 2\n0 1 0.5 0.3\nseeds 0\nlambda 1.0\n")
    return str(path)


class TestGen:
    def test_deterministic_output(self, tmp_path, capsys):
        out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
        args = ["gen", "--nodes", "5", "--edge-prob", "0.4", "--seeds", "1", "--rng", "7"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_too_many_seeds(self, capsys):
        code, _, err = run(["gen", "--nodes", "5", "--edge-prob", "0.4", "--seeds", "6"], capsys)
        assert code == 2
        assert "n_seeds > n_nodes" in err

    def test_zero_edge_prob(self, tmp_path, capsys):
        out = tmp_path / "empty.txt"
        code, _, _ = run(
            ["gen", "--nodes", "4", "--edge-prob", "0", "--out", str(out)], capsys
        )
        assert code == 0
        assert "lambda" in out.read_text()
        assert len([l for l in out.read_text().splitlines() if l[0].isdigit() and " " in l and l.count(" ") == 3]) == 0

    def test_generated_instance_parses(self, tmp_path, capsys):
        out = tmp_path / "g.txt"
        run(["gen", "--nodes", "6", "--edge-prob", "0.5", "--out", str(out)], capsys)
        from qcontain.graph import parse_instance

        inst = parse_instance(out.read_text())
        assert inst.graph.node_count == 6


class TestEstimate:
    def test_exact(self, instance_file, capsys):
        code, out, _ = run(["estimate", "--instance", instance_file, "--method", "exact"], capsys)
        assert code == 0
        assert "sigma 1.5" in out

    def test_mc(self, instance_file, capsys):
        code, out, _ = run(
            ["estimate", "--instance", instance_file, "--method", "mc",
             "--trials", "10000", "--rng", "1"],
            capsys,
        )
        assert code == 0
        sigma = float(next(l.split()[1] for l in out.splitlines() if l.startswith("sigma ")))
        assert 1.48 <= sigma <= 1.52

    def test_qae_analytic(self, instance_file, capsys):
        code, out, _ = run(
            ["estimate", "--instance", instance_file, "--method", "qae",
             "--epsilon", "0.05", "--analytic", "--rng", "1"],
            capsys,
        )
        assert code == 0
        sigma = float(next(l.split()[1] for l in out.splitlines() if l.startswith("sigma ")))
        assert abs(sigma - 1.5) <= 0.1

    def test_qae_oversized_without_analytic(self, tmp_path, capsys):
        big = tmp_path / "big.txt"
        run(["gen", "--nodes", "8", "--edge-prob", "0.9", "--out", str(big)], capsys)
        code, _, err = run(
            ["estimate", "--instance", str(big), "--method", "qae", "--epsilon", "0.01"],
            capsys,
        )
        assert code == 2
        assert "--analytic" in err

    def test_csv_row(self, instance_file, tmp_path, capsys):
        out = tmp_path / "est.csv"
        run(
            ["estimate", "--instance", instance_file, "--method", "exact", "--out", str(out)],
            capsys,
        )
        lines = out.read_text().splitlines()
        assert lines[1] == "method,work_units,sigma,sigma_normalized,error,rng_seed"
        assert lines[2].startswith("exact,")


class TestContain:
    def test_star_example(self, tmp_path, capsys):
        star = tmp_path / "star.txt"
        star.write_text("nodes 3\n0 1 1.0 0.1\n0 2 0.1 0.1\nseeds 0\nlambda 1.0\n")
        code, out, _ = run(
            ["contain", "--instance", str(star), "--estimator", "exact",
             "--finder", "linear", "--k-max", "1"],
            capsys,
        )
        assert code == 0
        assert "k=1 edge=0->1" in out

    def test_gmf_matches_linear_value(self, tmp_path, capsys):
        star = tmp_path / "star.txt"
        star.write_text("nodes 3\n0 1 1.0 0.1\n0 2 0.1 0.1\nseeds 0\nlambda 1.0\n")
        code, out, _ = run(
            ["contain", "--instance", str(star), "--finder", "gmf", "--rng", "3",
             "--k-max", "1"],
            capsys,
        )
        assert code == 0
        assert "k=1 edge=0->1" in out
        calls = int(next(
            tok.split("=")[1]
            for line in out.splitlines()
            for tok in line.split()
            if tok.startswith("grover_oracle_calls=")
        ))
        assert calls > 0

    def test_k_max_zero(self, instance_file, capsys):
        code, out, _ = run(
            ["contain", "--instance", instance_file, "--k-max", "0"], capsys
        )
        assert code == 0
        assert "removed=0" in out


class TestBenchmarks:
    def test_estimation_csv_schema(self, instance_file, tmp_path, capsys):
        out = tmp_path / "bench.csv"
        code, _, _ = run(
            ["bench-estimation", "--instance", instance_file, "--reps", "3",
             "--out", str(out), "--rng", "5"],
            capsys,
        )
        assert code == 0
        lines = out.read_text().splitlines()
        header = [l for l in lines if not l.startswith("#")][0]
        assert header == "method,work_units,error,rng_seed"
        assert any(l.startswith("mc,") for l in lines)
        assert any(l.startswith("qae,") for l in lines)

    def test_minfind_csv(self, tmp_path, capsys):
        out = tmp_path / "mf.csv"
        code, _, _ = run(
            ["bench-minfind", "--sizes", "1,4", "--reps", "5", "--out", str(out), "--rng", "2"],
            capsys,
        )
        assert code == 0
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        rows = [l.split(",") for l in lines[1:]]
        linear_rows = [r for r in rows if r[0] == "linear"]
        # linear search always reports the true minimum at cost N
        for r in linear_rows:
            assert r[1] == r[2]
            assert r[3] == r[4]
        gmf_n1 = [r for r in rows if r[0] == "gmf" and r[1] == "1"]
        assert all(int(r[2]) == 0 for r in gmf_n1)

    def test_reruns_are_byte_identical(self, instance_file, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["bench-estimation", "--instance", instance_file, "--reps", "2", "--rng", "9"]
        run(args + ["--out", str(a)], capsys)
        run(args + ["--out", str(b)], capsys)
        assert a.read_bytes() == b.read_bytes()


def test_missing_instance_file(capsys):
    code, _, err = run(["estimate", "--instance", "/nonexistent", "--method", "exact"], capsys)
    assert code == 1
