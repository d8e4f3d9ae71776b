import io
import json

import pytest

from ekr.cli import main
from ekr.family import downward_closure, format_fam, full_layer, parse_fam, parse_fam_stream


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def case1_file(tmp_path):
    p = tmp_path / "case1.fam"
    p.write_text(format_fam(downward_closure(full_layer(4, 3))))
    return str(p)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_check_case1(case1_file):
    code, text = run("check", case1_file)
    js = json.loads(text)
    assert code == 0
    assert {k: js[k] for k in ("i", "s", "is_ekr", "is_strict", "classification")} == {
        "i": 7, "s": 7, "is_ekr": True, "is_strict": False, "classification": "CASE1",
    }


def test_classify(case1_file):
    code, text = run("classify", case1_file)
    assert code == 0 and json.loads(text) == {"kind": "CASE1", "K": [1, 2, 3, 4]}


def test_solve_eight_choose_three(tmp_path):
    path = write(tmp_path, "k83.fam", format_fam(full_layer(8, 3)))
    code, text = run("solve", path)
    js = json.loads(text)
    assert code == 0 and js["i"] == 21 and len(js["witness"]) == 21 and js["optimality_proved"]


def test_solve_budget_exit_code(tmp_path):
    path = write(tmp_path, "k93.fam", format_fam(full_layer(9, 3)))
    code, _ = run("solve", path, "--budget", "3")
    assert code == 3


def test_check_non_downset_is_malformed(tmp_path):
    path = write(tmp_path, "k43.fam", format_fam(full_layer(4, 3)))
    assert run("check", path)[0] == 2
    code, text = run("check", path, "--no-classify")
    assert code == 0 and json.loads(text)["i"] == 4


@pytest.mark.parametrize("text", ["1 2\n", "n=3\n1 9\n", "n=3\n1 q\n"])
def test_malformed_input(tmp_path, text):
    assert run("solve", write(tmp_path, "bad.fam", text))[0] == 2


def test_missing_file(tmp_path):
    assert run("solve", str(tmp_path / "nope.fam"))[0] == 2


def test_sunflower_and_flower(tmp_path):
    path = write(tmp_path, "f.fam", "n=7\n1 2 3\n1 4 5\n1 6 7\n")
    code, text = run("sunflower", path, "--k", "3")
    assert code == 0 and json.loads(text) == {"core": [1], "petals": [[1, 2, 3], [1, 4, 5], [1, 6, 7]], "k": 3}
    tri = write(tmp_path, "t.fam", "n=3\n1 2\n1 3\n2 3\n")
    assert run("sunflower", tri, "--k", "3") == (0, "none\n")
    pairs = write(tmp_path, "p.fam", "n=6\n1 2\n3 4\n5 6\n")
    code, text = run("flower", pairs, "--k", "3")
    assert json.loads(text) == {"core": [], "tau_link": 3, "k": 3}
    one = write(tmp_path, "o.fam", "n=3\n1 2 3\n")
    assert run("flower", one, "--k", "2") == (0, "none\n")
    code, text = run("flower", one, "--k", "2", "--allow-member-core")
    assert json.loads(text)["tau_link"] == "UNBOUNDED"


def test_repair(case1_file, tmp_path):
    I = write(tmp_path, "i.fam", "n=4\n1 2\n1 3\n1 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n")
    code, text = run("repair", case1_file, "--intersecting", I)
    F = parse_fam(text)
    assert code == 0 and len(F) == 7 and all(m & 1 for m in F.members)
    bad = write(tmp_path, "b.fam", "n=4\n1 2\n3 4\n")
    assert run("repair", case1_file, "--intersecting", bad)[0] == 2


def test_enumerate():
    code, text = run("enumerate", "--n", "3", "--iso")
    fams = list(parse_fam_stream(text))
    assert code == 0 and len(fams) == 9
    assert run("enumerate", "--n", "7")[0] == 3


def test_verify_and_resume(tmp_path):
    code, text = run("verify", "--n", "3", "--iso", "--jobs", "1")
    rep = json.loads(text)
    assert code == 0
    assert rep["summary"]["counterexamples"] == 0 and rep["summary"]["instances"] == 9
    assert "wall_time" not in rep["summary"]
    resume = str(tmp_path / "resume.jsonl")
    first = run("verify", "--n", "3", "--iso", "--resume", resume)[1]
    second = run("verify", "--n", "3", "--iso", "--resume", resume)[1]
    assert first == second == text
    assert len(open(resume).read().splitlines()) == 9


def test_verify_timings():
    rep = json.loads(run("verify", "--n", "2", "--timings")[1])
    assert "wall_time" in rep["summary"]
    assert all("runtime" in r for r in rep["records"])


def test_campaign_t4_small(tmp_path):
    code, text = run("campaign-t4", "--n", "10", "--trials", "4", "--seed", "5", "--jobs", "1",
                     "--repro-dir", str(tmp_path / "repro"))
    rep = json.loads(text)
    assert code == 0
    assert rep["summary"]["counterexamples"] == 0 and rep["summary"]["seed"] == 5
    assert rep["summary"]["min_i"] >= 31
    assert rep["violations"] == []


def test_campaign_full_records():
    rep = json.loads(run("campaign-t4", "--n", "9", "--trials", "2", "--seed", "1", "--full")[1])
    assert [r["trial"] for r in rep["records"]] == [0, 1]
    assert all(r["seed"] == 1 for r in rep["records"])
