from __future__ import annotations

import json

import pytest

from askdb.catalog import builtin_config_text
from askdb.cli import CONFIG_ENV, main, render_table
from askdb.sqlcore import ResultSet
from golden import (
    QUESTION_TABLE,
    WORKED_QUESTION,
    WORKED_SQL,
    WORKED_TEMPLATE,
    WORKED_TRIM_COUNT,
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV, raising=False)


def test_render_table_alignment():
    result = ResultSet(columns=("Name", "Code"), rows=(("long name", "D"),))
    assert render_table(result).splitlines() == [
        "Name       Code",
        "---------  ----",
        "long name  D",
    ]


def test_query_plain_output(capsys):
    assert main(["query", WORKED_QUESTION]) == 0
    out = capsys.readouterr().out
    assert f"template: {WORKED_TEMPLATE}" in out
    assert f"sql: {WORKED_SQL}" in out
    row = next(line for line in out.splitlines() if line.startswith("1997"))
    year = "1997".ljust(len("Department Year Of Establishment"))
    code = "DECM".ljust(len("Department Code"))
    assert row == f"{year}  {code}  Department of Economics and Management"


def test_query_json_output(capsys):
    assert main(["query", WORKED_QUESTION, "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["sql"] == [WORKED_SQL]
    assert body["template"] == WORKED_TEMPLATE
    assert body["results"][0]["rows"] == [
        ["1997", "DECM", "Department of Economics and Management"]
    ]


def test_query_trace_output(capsys):
    assert main(["query", WORKED_QUESTION, "--trace"]) == 0
    out = capsys.readouterr().out
    for heading in [
        "Checking Words:",
        "Tokenisation:",
        "Removing Excessive Words:",
        "Mapping Rules:",
        "Identifying SQL Elements:",
        "Mapping SQL Template:",
        "Constructing SQL Query:",
        "Organising Result Set:",
    ]:
        assert heading in out
    assert out.count("the string after removing last word is") == WORKED_TRIM_COUNT
    assert 'the string "equals" mapped with rule symbol: interval_=' in out


def test_query_unknown_word_exits_1(capsys):
    assert main(["query", "What are the available rockets?"]) == 1
    err = capsys.readouterr().err
    assert "word-check" in err
    assert "rockets" in err


def test_query_failure_json_payload(capsys):
    assert main(["query", "What are the available rockets?", "--json"]) == 1
    body = json.loads(capsys.readouterr().out)
    assert body["error"]["stage"] == "word-check"
    assert body["trace"]["unknown_words"] == ["rockets"]


def test_config_flag_reads_file(tmp_path, capsys):
    path = tmp_path / "db.json"
    path.write_text(builtin_config_text())
    assert main(["--config", str(path), "query", QUESTION_TABLE]) == 0
    assert "Department of Bio Science" in capsys.readouterr().out


def test_config_env_fallback(tmp_path, monkeypatch, capsys):
    path = tmp_path / "db.json"
    path.write_text(builtin_config_text())
    monkeypatch.setenv(CONFIG_ENV, str(path))
    assert main(["query", QUESTION_TABLE]) == 0
    assert "Department of Physical Science" in capsys.readouterr().out


def test_missing_config_file_exits_2(capsys):
    assert main(["--config", "/no/such/file.json", "query", "x"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_invalid_config_file_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["--config", str(path), "query", "x"]) == 2
    assert "not valid JSON" in capsys.readouterr().err


def test_validate_builtin_config(capsys):
    assert main(["validate-config"]) == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_validate_reports_problems(tmp_path, capsys):
    document = json.loads(builtin_config_text())
    document["escape_words"].append("starship")
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(document))
    assert main(["--config", str(path), "validate-config"]) == 2
    out = capsys.readouterr().out
    assert "starship" in out


def test_validate_unreadable_file(capsys):
    assert main(["--config", "/no/such/file.json", "validate-config"]) == 2


def test_batch_all_questions_pass(tmp_path, capsys):
    path = tmp_path / "questions.txt"
    path.write_text(
        "\n".join(
            [
                "What are the department names?",
                "",
                QUESTION_TABLE,
                WORKED_QUESTION,
            ]
        )
    )
    assert main(["batch", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.count("question:") == 3
    assert out.count("template:") == 3


def test_batch_failing_line_exits_1(tmp_path, capsys):
    path = tmp_path / "questions.txt"
    path.write_text("What are the department names?\nWhat about rockets?\n")
    assert main(["batch", str(path)]) == 1
    out = capsys.readouterr().out
    assert "error[word-check]" in out
    assert out.count("template:") == 1


def test_batch_unreadable_file(capsys):
    assert main(["batch", "/no/such/questions.txt"]) == 2


def test_serve_rejects_bad_bind(capsys):
    assert main(["serve", "--bind", "nonsense"]) == 2
