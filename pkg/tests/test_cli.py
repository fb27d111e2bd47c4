import io

import pytest

from denmune import generate_blobs
from denmune.cli import main


def run(argv):
    out = io.StringIO()
    status = main(argv, out=out)
    return status, out.getvalue()


@pytest.fixture
def blobs_file(tmp_path):
    ps = generate_blobs(30, [[0, 0], [20, 0]], 1.0, rng_seed=2)
    path = tmp_path / "blobs.csv"
    rows = [f"{x:.6f},{y:.6f},c{t}" for (x, y), t in zip(ps.coords, ps.truth_labels)]
    path.write_text("\n".join(rows) + "\n")
    return str(path)


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pair.csv"
    path.write_text("0,0\n1,0\n")
    return str(path)


def test_cluster_writes_labels(tmp_path, blobs_file):
    out_path = tmp_path / "labels.txt"
    status, out = run(["cluster", "--input", blobs_file, "--label-col", "2", "--k", "6",
                       "--output", str(out_path)])
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "k,m,n_strong,n_weak_assigned,n_noise1,n_noise2"
    k, m, *counts = map(int, lines[1].split(","))
    assert k == 6 and m == 2 and sum(counts) == 60
    assert lines[2] == "f1,nmi,ari,homogeneity,completeness"
    labels = out_path.read_text().splitlines()
    assert len(labels) == 60


def test_cluster_errors(tmp_path, pair_file, capsys):
    status, _ = run(["cluster", "--input", pair_file, "--k", "2"])
    assert status != 0
    err = capsys.readouterr().err.strip()
    assert err.startswith("error:") and "k must be < N" in err and "\n" not in err

    status, _ = run(["cluster", "--input", str(tmp_path / "missing.csv"), "--k", "1"])
    assert status != 0
    assert "No such file" in capsys.readouterr().err


def test_sweep_rows_and_best(blobs_file):
    status, out = run(["sweep", "--input", blobs_file, "--label-col", "2",
                       "--k-min", "1", "--k-max", "8"])
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "k,n_strong,n_weak_assigned,n_noise1,n_noise2,m,f1,nmi,ari"
    rows = [line.split(",") for line in lines[1:-1]]
    assert [int(r[0]) for r in rows] == list(range(1, 9))
    for r in rows:
        assert sum(map(int, r[1:5])) == 60
    best = lines[-1].split(",")
    assert best[0] == "best_k" and best[2] == "f1"
    assert float(best[3]) == max(float(r[6]) for r in rows)


def test_sweep_single_k_and_truth_file(tmp_path, blobs_file):
    truth = tmp_path / "truth.txt"
    truth.write_text("".join(f"{'ab'[i // 30]}\n" for i in range(60)))
    status, out = run(["sweep", "--input", blobs_file, "--label-col", "2", "--k", "5",
                       "--truth", str(truth), "--metric", "ari"])
    assert status == 0
    lines = out.splitlines()
    assert len(lines) == 3 and lines[-1].startswith("best_k,5,ari,")


def test_sweep_without_truth(pair_file):
    status, out = run(["sweep", "--input", pair_file, "--k", "1"])
    assert status == 0
    assert out.splitlines()[1] == "1,2,0,0,0,1,,,"


def test_stats(pair_file, blobs_file):
    status, out = run(["stats", "--input", pair_file, "--k", "1"])
    assert status == 0
    assert out.splitlines() == ["K,strong,weak,noise1,noise2", "1,2,0,0,0"]
    status, out = run(["stats", "--input", blobs_file, "--label-col", "2",
                       "--k-min", "1", "--k-max", "3"])
    assert len(out.splitlines()) == 4
    assert run(["stats", "--input", pair_file])[0] != 0


def test_metrics_command(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("0\n1\n0\n1\n")
    b.write_text("0\n0\n1\n1\n")
    status, out = run(["metrics", "--pred", str(a), "--truth", str(a)])
    assert status == 0
    assert out.splitlines()[1] == ",".join(["1.000000"] * 5)

    status, out = run(["metrics", "--pred", str(a), "--truth", str(b)])
    values = dict(zip(*[line.split(",") for line in out.splitlines()]))
    assert float(values["ari"]) == pytest.approx(-0.5)

    b.write_text("0\n0\n1\n")
    assert run(["metrics", "--pred", str(a), "--truth", str(b)])[0] != 0
    assert "mismatch" in capsys.readouterr().err


def test_plot(tmp_path, blobs_file):
    labels = tmp_path / "labels.txt"
    svg = tmp_path / "out.svg"
    run(["cluster", "--input", blobs_file, "--label-col", "2", "--k", "6",
         "--output", str(labels)])
    lab = labels.read_text().splitlines()
    lab[0] = "-1"
    lab[1] = "-2"
    labels.write_text("\n".join(lab) + "\n")

    assert run(["plot", "--input", blobs_file, "--label-col", "2", "--labels", str(labels),
                "--output", str(svg)])[0] == 0
    text = svg.read_text()
    assert text.count("<circle") == 60
    assert 'class="noise1"' in text and 'class="noise2"' in text
    first = svg.read_bytes()
    run(["plot", "--input", blobs_file, "--label-col", "2", "--labels", str(labels),
         "--output", str(svg)])
    assert svg.read_bytes() == first


def test_plot_rejects_3d(tmp_path, capsys):
    data = tmp_path / "d3.csv"
    data.write_text("0,0,0\n1,1,1\n2,2,2\n")
    labels = tmp_path / "l.txt"
    labels.write_text("0\n0\n0\n")
    status, _ = run(["plot", "--input", str(data), "--labels", str(labels),
                     "--output", str(tmp_path / "x.svg")])
    assert status != 0
    assert "2-D" in capsys.readouterr().err


def test_bench_rows(blobs_file):
    status, out = run(["bench", "--input", blobs_file, "--label-col", "2", "--k", "3,5",
                       "--repeats", "3"])
    assert status == 0
    rows = out.splitlines()[1:]
    assert len(rows) == 3 * 2
    assert {r.split(",")[2] for r in rows} == {"graph", "phase1", "phase2"}

    status, out = run(["bench", "--input", blobs_file, "--label-col", "2", "--k", "3",
                       "--sizes", "20,40,60", "--repeats", "1"])
    assert [int(r.split(",")[1]) for r in out.splitlines()[1:]] == [20] * 3 + [40] * 3 + [60] * 3


def test_bench_rejects_k0(blobs_file):
    status, _ = run(["bench", "--input", blobs_file, "--label-col", "2", "--k", "0,3"])
    assert status != 0


def test_threads_flag(blobs_file):
    a = run(["sweep", "--input", blobs_file, "--label-col", "2", "--k", "4"])[1]
    b = run(["sweep", "--input", blobs_file, "--label-col", "2", "--k", "4", "--threads", "3"])[1]
    assert a == b


def test_module_entry_point(pair_file):
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "denmune", "stats", "--input", pair_file,
                           "--k", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "1,2,0,0,0"
