import io
import subprocess
import sys

import pytest

from singular_bruhat.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def rows(text):
    return [line.split("\t") for line in text.splitlines()[1:]]


def test_cosets_examples():
    code, text = run("cosets", "--preset", "A2", "-I", "1", "-J", "1")
    assert code == 0 and len(rows(text)) == 2
    _, text = run("cosets", "--preset", "A2", "-I", "", "-J", "1 2")
    assert len(rows(text)) == 1
    _, text = run("cosets", "--preset", "B2", "-I", "1", "-J", "2")
    assert sum(int(r[5]) for r in rows(text)) == 8


def test_rex_example():
    assert run("rex", "--preset", "A2", "-I", "1", "-J", "1", "--min", "2") == (0, "[1],[1 2],[1]\n")


def test_paths_example():
    code, text = run("paths", "--preset", "A2", "--expr", "[],[1],[]")
    assert code == 0
    assert [line for line in text.splitlines() if line.startswith("path")] == ["path 0", "path 1"]


def test_term_accepts_multistep():
    code, text = run("term", "--preset", "A2", "--expr", "[[1 < 1 2 > 1]]")
    assert code == 0 and len(rows(text.split("\n", 1)[1])) == 2


def test_hasse_to_file(tmp_path):
    out = tmp_path / "a2.dot"
    code, text = run("hasse", "--preset", "A2", "--dot", str(out))
    assert code == 0 and text == ""
    assert out.read_text().count("->") == 8


def test_group_file(tmp_path):
    f = tmp_path / "b3.txt"
    f.write_text("rank 3\nm 1 2 4\nm 2 3 3\n")
    code, text = run("group", "--file", str(f))
    assert code == 0 and "size\t48" in text


def test_verify_exit_codes(tmp_path):
    code, text = run("verify", "--preset", "A2", "--width-cap", "6")
    assert code == 0 and text.rstrip().endswith("checks passed")
    tsv = tmp_path / "r.tsv"
    code, _ = run("verify", "--preset", "A2", "--width-cap", "2", "--checks", "rex-search,term-up", "--tsv", str(tsv))
    assert code == 0 and len(tsv.read_text().splitlines()) == 3


@pytest.mark.parametrize("argv,token", [
    (["cosets", "--preset", "A2", "-I", "3"], "'3'"),
    (["cosets", "--preset", "A2", "-I", "x"], "'x'"),
    (["paths", "--preset", "A2", "--expr", "[1],[q]"], "'q'"),
    (["rex", "--preset", "A2", "--min", "1-z"], "'z'"),
    (["verify", "--preset", "A2", "--checks", "bogus"], "'bogus'"),
    (["group", "--preset", "Z9"], "'Z9'"),
    (["group", "--file", "/nonexistent/file"], "/nonexistent/file"),
])
def test_bad_input_names_token(argv, token, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert token in capsys.readouterr().err


def test_group_source_is_required(capsys):
    with pytest.raises(SystemExit) as exc:
        run("cosets", "-I", "1")
    assert exc.value.code != 0


def test_output_is_deterministic():
    assert run("term", "--preset", "B3", "--expr", "[],[1],[1 2],[2],[]") == \
        run("term", "--preset", "B3", "--expr", "[],[1],[1 2],[2],[]")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "singular_bruhat", "group", "--preset", "H3"],
                          capture_output=True, text=True, check=True)
    assert "size\t120" in proc.stdout
