"""Command-line behavior: flags, exit codes, output files, determinism."""

from __future__ import annotations

import csv
import io
import json
import shutil

import pytest

from baserates.cli import EXIT_EMPTY, EXIT_IO, EXIT_OK, EXIT_USAGE, main
from conftest import CORPUS, SLOC_DIR, SLOC_MANIFEST


def copy_corpus(tmp_path):
    shutil.copy(CORPUS / "metadata.jsonl", tmp_path / "metadata.jsonl")
    shutil.copy(CORPUS / "facts.csv", tmp_path / "facts.csv")


def analyze_args(tmp_path, **overrides):
    args = {
        "metadata": str(tmp_path / "metadata.jsonl"),
        "facts": str(tmp_path / "facts.csv"),
        "cutoff-year": "2012",
        "out": str(tmp_path / "out"),
    }
    args.update(overrides)
    argv = ["analyze"]
    for flag, value in args.items():
        if value is None:
            continue
        argv += [f"--{flag}", str(value)]
    return argv


class TestCount:
    def test_counts_fixture_tree(self, tmp_path, capsys):
        out = tmp_path / "counts.csv"
        assert main(["count", "--root", str(SLOC_DIR), "--out", str(out)]) == EXIT_OK
        rows = list(csv.reader(io.StringIO(out.read_text(encoding="utf-8"))))
        assert rows[0] == ["path", "language", "code", "comment", "blank"]
        total = rows[-1]
        expected = [sum(c[i] for c in SLOC_MANIFEST.values()) for i in range(3)]
        assert total == ["(total)", "(all)"] + [str(v) for v in expected]
        file_rows = [r for r in rows[1:] if r[0] != "(total)"]
        assert len(file_rows) == len(SLOC_MANIFEST)

    def test_stdout_by_default(self, capsys):
        assert main(["count", "--root", str(SLOC_DIR)]) == EXIT_OK
        stdout = capsys.readouterr().out
        assert stdout.startswith("path,language,code,comment,blank")

    def test_missing_root_is_io_error(self, tmp_path, capsys):
        code = main(["count", "--root", str(tmp_path / "absent")])
        assert code == EXIT_IO
        assert "baserates:" in capsys.readouterr().err

    def test_tree_without_registered_extensions(self, tmp_path, capsys):
        (tmp_path / "blob.xyz").write_text("data\n", encoding="utf-8")
        assert main(["count", "--root", str(tmp_path)]) == EXIT_OK
        captured = capsys.readouterr()
        assert "(total),(all),0,0,0" in captured.out
        assert "skipped" in captured.err

    def test_custom_registry(self, tmp_path, capsys):
        registry = tmp_path / "registry.json"
        registry.write_text(
            json.dumps(
                {
                    "languages": [
                        {"name": "lisp", "extensions": [".el"], "line_comments": [";"]}
                    ]
                }
            ),
            encoding="utf-8",
        )
        (tmp_path / "init.el").write_text("; comment\n(setq x 1)\n", encoding="utf-8")
        assert (
            main(
                [
                    "count",
                    "--root",
                    str(tmp_path),
                    "--registry",
                    str(registry),
                ]
            )
            == EXIT_OK
        )
        out = capsys.readouterr().out
        assert "init.el,lisp,1,1,0" in out

    def test_bad_registry_is_io_error(self, tmp_path, capsys):
        registry = tmp_path / "registry.json"
        registry.write_text("{broken", encoding="utf-8")
        assert (
            main(["count", "--root", str(SLOC_DIR), "--registry", str(registry)])
            == EXIT_IO
        )


class TestAnalyze:
    def test_end_to_end_writes_all_artifacts(self, tmp_path):
        copy_corpus(tmp_path)
        assert main(analyze_args(tmp_path, svg=None) + ["--svg"]) == EXIT_OK
        out = tmp_path / "out"
        for name in (
            "report.json",
            "report.txt",
            "yearly_aggregates.csv",
            "boxplot_cs.svg",
            "boxplot_cga.svg",
            "boxplot_cgi.svg",
        ):
            assert (out / name).exists(), name
        doc = json.loads((out / "report.json").read_text(encoding="utf-8"))
        assert doc["validation"]["projects_collected"] == 10
        assert [m["metric"] for m in doc["metrics"]] == ["CS", "CGa", "CGi"]

    def test_no_svg_by_default(self, tmp_path):
        copy_corpus(tmp_path)
        assert main(analyze_args(tmp_path)) == EXIT_OK
        assert not (tmp_path / "out" / "boxplot_cs.svg").exists()

    def test_omitted_cutoff_year_is_usage_error(self, tmp_path, capsys):
        copy_corpus(tmp_path)
        argv = analyze_args(tmp_path)
        index = argv.index("--cutoff-year")
        del argv[index : index + 2]
        assert main(argv) == EXIT_USAGE
        assert "--cutoff-year" in capsys.readouterr().err

    def test_unknown_flag_is_usage_error(self, capsys):
        assert main(["analyze", "--bogus"]) == EXIT_USAGE

    def test_missing_command_is_usage_error(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_missing_input_file_is_io_error(self, tmp_path, capsys):
        copy_corpus(tmp_path)
        argv = analyze_args(tmp_path, metadata=str(tmp_path / "absent.jsonl"))
        assert main(argv) == EXIT_IO

    def test_empty_survivor_set_exits_3_with_report_written(self, tmp_path, capsys):
        copy_corpus(tmp_path)
        argv = analyze_args(tmp_path, **{"cutoff-year": "1990"})
        assert main(argv) == EXIT_EMPTY
        report_text = (tmp_path / "out" / "report.txt").read_text(encoding="utf-8")
        assert "no metrics computed" in report_text
        doc = json.loads(
            (tmp_path / "out" / "report.json").read_text(encoding="utf-8")
        )
        assert doc["validation"]["after_cutoff"]["months"] == 0

    def test_growthless_policy_changes_observation_counts(self, tmp_path):
        copy_corpus(tmp_path)
        assert main(analyze_args(tmp_path)) == EXIT_OK
        undefined_doc = json.loads(
            (tmp_path / "out" / "report.json").read_text(encoding="utf-8")
        )
        assert main(analyze_args(tmp_path, **{"growthless-year-policy": "zero"})) == EXIT_OK
        zero_doc = json.loads(
            (tmp_path / "out" / "report.json").read_text(encoding="utf-8")
        )
        by_metric = lambda doc: {m["metric"]: m for m in doc["metrics"]}
        # foxtrot 2011 has a single month: no growth evidence
        assert by_metric(undefined_doc)["CGa"]["observations"] == 7
        assert by_metric(undefined_doc)["CGa"]["undefined_excluded"] == 1
        assert by_metric(zero_doc)["CGa"]["observations"] == 8
        assert by_metric(zero_doc)["CGa"]["undefined_excluded"] == 0

    def test_config_file_supplies_defaults_and_flags_win(self, tmp_path):
        copy_corpus(tmp_path)
        config = {
            "metadata": str(tmp_path / "metadata.jsonl"),
            "facts": str(tmp_path / "facts.csv"),
            "cutoff_year": 1990,
            "out": str(tmp_path / "out"),
        }
        config_path = tmp_path / "run.json"
        config_path.write_text(json.dumps(config), encoding="utf-8")
        argv = [
            "analyze",
            "--config",
            str(config_path),
            "--cutoff-year",
            "2012",  # overrides the config's 1990
        ]
        assert main(argv) == EXIT_OK
        doc = json.loads((tmp_path / "out" / "report.json").read_text(encoding="utf-8"))
        assert doc["config"]["cutoff_year"] == 2012

    def test_config_alone_is_sufficient(self, tmp_path):
        copy_corpus(tmp_path)
        config = {
            "metadata": str(tmp_path / "metadata.jsonl"),
            "facts": str(tmp_path / "facts.csv"),
            "cutoff_year": 2012,
            "out": str(tmp_path / "out"),
            "svg": True,
        }
        config_path = tmp_path / "run.json"
        config_path.write_text(json.dumps(config), encoding="utf-8")
        assert main(["analyze", "--config", str(config_path)]) == EXIT_OK
        assert (tmp_path / "out" / "boxplot_cs.svg").exists()

    def test_bad_cutoff_type_in_config_is_usage_error(self, tmp_path, capsys):
        copy_corpus(tmp_path)
        config_path = tmp_path / "run.json"
        config_path.write_text(
            json.dumps(
                {
                    "metadata": str(tmp_path / "metadata.jsonl"),
                    "facts": str(tmp_path / "facts.csv"),
                    "cutoff_year": "2012",
                    "out": str(tmp_path / "out"),
                }
            ),
            encoding="utf-8",
        )
        assert main(["analyze", "--config", str(config_path)]) == EXIT_USAGE

    def test_aggregates_csv_matches_survivors(self, tmp_path):
        copy_corpus(tmp_path)
        assert main(analyze_args(tmp_path)) == EXIT_OK
        lines = (
            (tmp_path / "out" / "yearly_aggregates.csv")
            .read_text(encoding="utf-8")
            .splitlines()
        )
        assert lines[0] == "project,year,cs,cga,cgi,age,months_present"
        assert len(lines) == 1 + 8  # eight surviving project-years
        foxtrot_2011 = next(l for l in lines if l.startswith("foxtrot,2011"))
        assert foxtrot_2011 == "foxtrot,2011,500,,,0,1"
