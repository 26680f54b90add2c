import json
import os

import pytest

import charcycle.cli as cli
from charcycle.cli import DiskCache, JobSyntaxError, SCHEMA, main, parse_job, read_report, run
from charcycle.cli.cache import CacheWarning, cache_key
from charcycle.cech import local_cohomology
from charcycle.cycles import zero_section
from charcycle.decompose import UnresolvedComponentError

LOCALIZE = "ring x,y,z; ideal x; localize"
SPLIT = "ring x; ideal x; module T*[0] + T*[x]; cech"


def test_parse_job_examples():
    job = parse_job("ring x1..x3\nideal x1*x2 | x3, x2\ncech")
    assert job.ring.names == ("x1", "x2", "x3")
    assert [len(fs) for fs in job.factor_lists] == [2, 1]
    assert str(job.ideal[0]) == "x1*x2*x3"
    assert job.strategy == "iterative" and job.format == "text"
    job = parse_job(LOCALIZE, strategy="single", format="structured")
    assert (job.command, job.strategy, job.format) == ("localize", "single", "structured")
    job = parse_job(SPLIT + "; split T*[0] | T*[x]")
    assert len(job.split) == 2 and job.module == job.split[0] + job.split[1]


@pytest.mark.parametrize(
    "text, column",
    [
        ("ring x,y; ideal x +; localize", 19),
        ("ring x; ideal 0; localize", 15),
        ("ring x; ideal x; frobnicate", 18),
        ("ideal x; ring x; localize", 1),
        ("ring x;   ideal x;  ring y; cech", 21),
    ],
)
def test_parse_errors_point_at_column(text, column):
    with pytest.raises(JobSyntaxError) as info:
        parse_job(text)
    assert info.value.column == column
    assert "^" in info.value.render()


@pytest.mark.parametrize(
    "text",
    [
        "ring x; ideal x",
        "ring x; localize",
        "ring x; ideal x; module T*[x]; lyubeznik",
        "ring x; ideal x; split T*[0]; localize",
        SPLIT + "; split T*[0]",
        "ring x,y; ideal x; module T*[x*y]; cech",
        "ring x; ideal x; strategy fast; cech",
    ],
)
def test_invalid_jobs(text):
    with pytest.raises(JobSyntaxError):
        parse_job(text)


def test_exit_codes(capsys, monkeypatch):
    assert main([LOCALIZE]) == 0
    assert "T*[x]" in capsys.readouterr().out
    assert main(["ring x,y; ideal x +; localize"]) == 2
    err = capsys.readouterr().err
    assert "^" in err and "column 19" in err
    assert main(["ring x,y; ideal y; module T*[x] + T*[y] + T*[x, y]; cech", "--strict"]) == 4
    assert "warning:" in capsys.readouterr().err

    def broken(*a, **k):
        raise UnresolvedComponentError("leaf (x*y)")

    monkeypatch.setattr(cli, "run", broken)
    assert main([LOCALIZE]) == 3
    assert "UnresolvedComponentError" in capsys.readouterr().err


def test_job_from_file_and_stdin(tmp_path, capsys, monkeypatch):
    job = tmp_path / "job.cc"
    job.write_text("ring x, y\nideal x*y\ncech\n")
    assert main([str(job), "--no-figures"]) == 0
    from_file = capsys.readouterr().out
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(job.read_text()))
    assert main(["-"]) == 0
    assert capsys.readouterr().out == from_file


def test_text_report_sections(capsys):
    assert main(["ring x,y; ideal x, y; cech", "--vertices"]) == 0
    out = capsys.readouterr().out
    for section in ("[cohomology]", "[pruned M]", "[vertices M]"):
        assert section in out
    assert "\t" in out


def test_deterministic_output(capsys):
    outs = []
    for _ in range(2):
        assert main(["ring x,y,z; ideal x*y, y*z; cech", "--format", "structured", "--vertices"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_structured_round_trip():
    job = parse_job("ring x,y; ideal x*y, y; cech", format="structured")
    report = run(job, vertices=True)
    text = report.render()
    data = json.loads(text)
    assert data["schema"] == SCHEMA
    back = read_report(text)
    h, _ = local_cohomology(zero_section(job.cotangent), job.factor_lists)
    assert back["result"]["cohomology"] == h
    assert back["ring"] == data["ring"] == ["x", "y"]


def test_split_flag(capsys):
    assert main([SPLIT, "--split", "T*[0] | T*[x]", "--format", "structured", "--strict"]) == 0
    data = read_report(capsys.readouterr().out)
    h = data["result"]["cohomology"]
    assert repr(h[0]) == repr(h[1]) == "T*[x]"
    assert main([SPLIT, "--split", "T*[x]"]) == 2


def test_figures_written(tmp_path, capsys):
    out = tmp_path / "run" / "minors.txt"
    assert main(["ring x,y; ideal x, y; cech", "--vertices", "-o", str(out)]) == 0
    files = sorted(os.listdir(out.parent))
    assert "minors.txt" in files
    pngs = [f for f in files if f.endswith(".png")]
    assert "minors-cube-M.png" in pngs and "minors-cohomology.png" in pngs
    for f in pngs:
        assert (out.parent / f).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    figdir = tmp_path / "figs"
    assert main(["ring x,y; ideal x; lyubeznik", "--figures", str(figdir)]) == 0
    assert any(f.endswith("lambda.png") for f in os.listdir(figdir))


def test_cache_reuse_and_corruption(tmp_path, capsys):
    cache = tmp_path / "cache"
    args = ["ring x,y,z; ideal x*y - z^2, x; cech", "--cache-dir", str(cache)]
    assert main(args) == 0
    first = capsys.readouterr().out
    entries = [os.path.join(d, f) for d, _, fs in os.walk(cache) for f in fs]
    assert entries
    for path in entries:
        with open(path, "w") as fh:
            fh.write("{not json")
    assert main(args) == 0
    again = capsys.readouterr()
    assert again.out == first
    assert "warning:" in again.err


def test_disk_cache(tmp_path):
    store = DiskCache(tmp_path)
    assert store.get("k") is None and "k" not in store
    store["k"] = [[["x"], 1]]
    assert store["k"] == [[["x"], 1]] and len(store) == 1
    assert DiskCache(tmp_path).get("k") == [[["x"], 1]]
    assert cache_key("a") != cache_key("b")
    path = next(p for p in tmp_path.rglob("*.json"))
    path.write_text("[]")
    with pytest.warns(CacheWarning):
        assert store.get("k") is None


def test_decompose_command(capsys):
    assert main(["ring x,y; ideal x^2, x*y; decompose", "--format", "structured"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["command"] == "decompose"
    assert main(["ring x,y; ideal x^2, x*y; decompose"]) == 0
    out = capsys.readouterr().out
    assert "x" in out and "embedded" in out.lower()


def test_explicit_zero_section_is_trusted(capsys):
    assert main(["ring x, y; ideal x*y; module T*[0]; cech", "--strict"]) == 0
    assert "warning" not in capsys.readouterr().err


def test_run_uses_zero_section_by_default():
    job = parse_job(LOCALIZE)
    assert job.module_cycle() == zero_section(job.cotangent)
