import csv
import io
import json

import pytest

from codeweft.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows_of_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def rows_of_jsonl(text):
    return [json.loads(line) for line in text.splitlines() if line]


def test_parse_csv(capsys, example_scripts):
    code, out, err = run(capsys, "parse", *example_scripts)
    assert code == 0 and not err
    rows = rows_of_csv(out)
    assert len(rows) == 9
    assert rows[0]["text"] == "library(tidyverse)"
    assert [r["line"] for r in rows] == ["1", "2", "3", "4", "5", "6", "7", "1", "2"]


def test_parse_jsonl(capsys, example_scripts):
    code, out, _ = run(capsys, "parse", "--format", "jsonl", example_scripts[0])
    assert code == 0
    rows = rows_of_jsonl(out)
    assert len(rows) == 7
    assert rows[0] == {
        "file": example_scripts[0], "line": 1, "text": "library(tidyverse)",
    }


def test_parse_json_ast(capsys, example_scripts):
    _, out, _ = run(capsys, "parse", "--json-ast", example_scripts[0])
    rows = rows_of_csv(out)
    ast = json.loads(rows[0]["ast"])
    assert ast["kind"] == "call"
    assert ast["callee"] == {"kind": "symbol", "name": "library"}


def test_parse_output_file(capsys, tmp_path, example_scripts):
    target = tmp_path / "out.csv"
    code, out, _ = run(capsys, "parse", "--output", str(target), example_scripts[0])
    assert code == 0 and out == ""
    assert len(rows_of_csv(target.read_text())) == 7


def test_unnest(capsys, example_scripts):
    code, out, _ = run(capsys, "unnest", *example_scripts)
    assert code == 0
    rows = rows_of_csv(out)
    assert len(rows) == 35
    assert [r["func"] for r in rows[:4]] == ["library", "library", "<-", "%>%"]
    assert rows[0]["args"] == "tidyverse"
    assert "depth" not in rows[0]


def test_unnest_with_depth(capsys, example_scripts):
    _, out, _ = run(capsys, "unnest", "--with-depth", example_scripts[0])
    rows = rows_of_csv(out)
    assert rows[0]["depth"] == "0"


def test_unnest_drop_literals(capsys, tmp_path):
    src = tmp_path / "s.R"
    src.write_text('"just text"\nf(1)\nNULL\n')
    _, out, _ = run(capsys, "unnest", "--drop-literals", str(src))
    rows = rows_of_csv(out)
    assert [r["func"] for r in rows] == ["f"]


def test_classify_both_lexicons(capsys, example_scripts):
    code, out, _ = run(capsys, "classify", *example_scripts)
    assert code == 0
    rows = rows_of_csv(out)
    assert len(rows) == 322
    assert list(rows[0]) == ["func", "classification", "lexicon", "score"]
    assert rows[0] == {
        "func": "library", "classification": "setup",
        "lexicon": "crowdsource", "score": "0.687",
    }


def test_classify_single_lexicon(capsys, example_scripts):
    _, out, _ = run(capsys, "classify", "--lexicon", "crowdsource", *example_scripts)
    rows = rows_of_csv(out)
    assert len(rows) == 271
    assert list(rows[0]) == ["func", "classification", "score"]


def test_classify_final_table(capsys, example_scripts):
    _, out, _ = run(
        capsys, "classify", "--lexicon", "crowdsource", "--best",
        "--drop-stopfuncs", *example_scripts,
    )
    rows = rows_of_csv(out)
    assert len(rows) == 15
    assert list(rows[0]) == ["func", "classification"]
    assert rows[0] == {"func": "library", "classification": "setup"}
    assert rows[-1] == {"func": "geom_point", "classification": "visualization"}


def test_classify_unknown_lexicon_is_data_error(capsys, example_scripts):
    code, _, err = run(capsys, "classify", "--lexicon", "nope", *example_scripts)
    assert code == 65
    assert "nope" in err


def test_stats_counts(capsys, tmp_path, example_scripts, monkeypatch):
    table = tmp_path / "tokens.csv"
    run(capsys, "unnest", "--output", str(table), *example_scripts)
    code, out, _ = run(
        capsys, "stats", "counts", "--input", str(table), "--by", "func", "--sort"
    )
    assert code == 0
    rows = rows_of_csv(out)
    assert rows[0] == {"func": "%>%", "n": "5"}


def test_stats_percent(capsys, tmp_path, percent_fixture):
    table = tmp_path / "classified.csv"
    with open(table, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "classification"])
        for unit in percent_fixture["units"]:
            for cls, n in unit["counts"].items():
                w.writerows([[unit["unit"], cls]] * n)
    code, out, _ = run(capsys, "stats", "percent", "--input", str(table), "--unit", "id")
    assert code == 0
    rows = rows_of_csv(out)
    got = [(r["classification"], r["average_percent"]) for r in rows]
    assert got == [
        ("data cleaning", "36.40"), ("visualization", "23.17"),
        ("exploratory", "21.32"), ("setup", "18.87"), ("modeling", "17.69"),
        ("import", "8.58"), ("communication", "5.14"), ("evaluation", "3.62"),
        ("export", "0.82"),
    ]


def test_stats_top(capsys, tmp_path):
    table = tmp_path / "counts.csv"
    table.write_text(
        "grp,func,n\ng,a,5\ng,b,3\ng,c,3\ng,d,1\n"
    )
    code, out, _ = run(
        capsys, "stats", "top", "--input", str(table), "--group", "grp", "--n", "2"
    )
    assert code == 0
    assert [r["func"] for r in rows_of_csv(out)] == ["a", "b", "c"]


def test_stats_unknown_column_is_data_error(capsys, tmp_path):
    table = tmp_path / "t.csv"
    table.write_text("func\nf\n")
    code, _, err = run(capsys, "stats", "counts", "--input", str(table), "--by", "zz")
    assert code == 65 and "zz" in err


def test_record_and_table(capsys, tmp_path, monkeypatch):
    log = tmp_path / "log.jsonl"
    monkeypatch.setattr(
        "sys.stdin",
        io.StringIO('dance_start()\n1 + 2\n"here is some text"\nsum(1:10)\n'),
    )
    code, _, _ = run(capsys, "record", "--log", str(log))
    assert code == 0
    code, out, _ = run(capsys, "record", "--table", "--log", str(log))
    assert code == 0
    rows = rows_of_csv(out)
    assert len(rows) == 6
    assert rows[0]["expr"] == "<session info>"
    assert rows[2]["expr"] == "1 + 2"
    code, _, _ = run(capsys, "record", "--remove", "--log", str(log))
    assert code == 0 and not log.exists()


def test_fetch_manifest(capsys, tmp_path, example_scripts):
    mf = tmp_path / "m.txt"
    mf.write_text("\n".join(example_scripts) + "\n")
    code, out, _ = run(capsys, "fetch", str(mf))
    assert code == 0
    assert len(rows_of_csv(out)) == 9


def test_missing_source_is_io_error(capsys):
    code, _, err = run(capsys, "parse", "/no/such/file.R")
    assert code == 66 and "file.R" in err


def test_partial_parse_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.R"
    bad.write_text("x <- ) oops\ny <- 1\n")
    code, out, err = run(capsys, "parse", str(bad))
    assert code == 2
    assert len(rows_of_csv(out)) == 1  # good line still emitted
    assert "line 1" in err


def test_usage_error_exit():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["stats", "nonsense"])
    assert exc.value.code == 64


def test_lexicon_path_flag(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("CODEWEFT_LEXICON_PATH", raising=False)
    (tmp_path / "classifications.csv").write_text(
        "func,classification,lexicon,score\nlibrary,import,crowdsource,1\n"
    )
    src = tmp_path / "s.R"
    src.write_text("library(x)\n")
    _, out, _ = run(
        capsys, "classify", "--lexicon-path", str(tmp_path),
        "--lexicon", "crowdsource", str(src),
    )
    rows = rows_of_csv(out)
    assert rows == [{"func": "library", "classification": "import", "score": "1.0"}]
