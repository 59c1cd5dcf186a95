import io
import json

import pytest

from eulerdie import complexes
from eulerdie.cli import main
from eulerdie.corpus import CORPUS


def run(*argv):
    out = io.StringIO()
    status = main(list(argv), stdout=out)
    return status, out.getvalue()


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    status, listing = run("--seed-corpus", str(d))
    assert status == 0
    assert sorted(line.rsplit("/", 1)[-1] for line in listing.split()) == sorted(CORPUS)
    return d


def test_seed_corpus_files_parse(corpus):
    for name, data in CORPUS.items():
        assert json.loads((corpus / name).read_text()) == data


def test_numbers_binomial():
    status, out = run("numbers", "binomial", "1")
    assert status == 0
    assert out.splitlines()[1:] == ["0   | 1", "1   | 1 1"]


def test_numbers_json_and_csv():
    _, out = run("numbers", "eulerian", "8", "--format", "json")
    data = json.loads(out)
    assert data["rows"][-1]["values"] == ["1", "247", "4293", "15619", "15619", "4293", "247", "1"]
    _, out = run("numbers", "stirling", "3", "--format", "csv")
    assert out.splitlines() == ["n,k,value", "1,1,1", "2,1,1", "2,2,1", "3,1,1", "3,2,3", "3,3,1"]


def test_numbers_bound():
    assert run("numbers", "eulerian", "500")[0] == 2


def test_verify_eq1():
    status, out = run("verify", "eq1", "--n", "5", "--k", "2")
    assert status == 0
    assert out.splitlines() == ["eq1: PASS (1 case)", "  n=5 k=2 value=66 pass"]


def test_verify_die2_trivial():
    status, out = run("verify", "die2", "--n", "2", "--k", "0", "--format", "json")
    data = json.loads(out)
    assert status == 0 and data["pass"] is True
    assert data["cases"][0]["value"] == "1"


def test_verify_peul(corpus):
    status, out = run("verify", "peul", "--poset", str(corpus / "fig2.json"), "--k", "2", "--format", "json")
    data = json.loads(out)
    assert status == 0 and data["cases"][0]["value"] == "3"
    assert data["first_counterexample"] is None


@pytest.mark.parametrize("identity", ["eq2", "eq3", "worpitzky", "ordered-stirling", "die1"])
def test_verify_default_ranges_pass(identity):
    status, out = run("verify", identity, "--n-max", "4", "--format", "csv")
    assert status == 0
    assert out.startswith("identity,n,k,value,pass")
    assert "False" not in out


def test_verify_die3(corpus):
    status, out = run("verify", "die3", "--complex", str(corpus / "fig4.json"),
                      "--partition", str(corpus / "fig4_partition.json"))
    assert status == 0
    assert "k=1 value=2 pass" in out
    assert run("verify", "die3", "--delta", "3")[0] == 0


def test_verify_die3_counterexample_exit(tmp_path, corpus):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(CORPUS["fig4_partition.json"][:2]))
    status, out = run("verify", "die3", "--complex", str(corpus / "fig4.json"), "--partition", str(bad))
    assert status == 1 and "first counterexample" in out


def test_verify_bowtie_reports_failure(tmp_path):
    p = tmp_path / "bowtie.json"
    p.write_text(json.dumps({"vertices": list("abcde"), "facets": [list("abc"), list("cde")]}))
    status, out = run("verify", "die3", "--complex", str(p))
    assert status == 1 and "no partition exists" in out


def test_verify_usage_errors(capsys):
    assert run("verify", "eq1", "--n", "3", "--k", "3")[0] == 2
    assert run("verify", "peul")[0] == 2
    assert run("verify", "die3")[0] == 2
    assert "error" in capsys.readouterr().err


def test_poset_linext(corpus):
    status, out = run("poset", "linext", str(corpus / "fig1.json"))
    assert status == 0 and out == "132\n312\n"


def test_poset_omega(corpus):
    assert run("poset", "omega", str(corpus / "antichain5.json"), "--k", "0") == (0, "1\n")
    assert run("poset", "omega", str(corpus / "fig2.json"), "--k", "2") == (0, "21\n")
    assert run("poset", "omega", str(corpus / "fig2.json"))[0] == 2


def test_poset_p_eulerian(corpus):
    assert run("poset", "p-eulerian", str(corpus / "fig1.json")) == (0, "0,2,0\n")
    _, out = run("poset", "p-eulerian", str(corpus / "fig2.json"), "--format", "json")
    assert json.loads(out) == {"p-eulerian": {"0": "0", "1": "3", "2": "3", "3": "0", "4": "0"}}


def test_poset_dot(corpus):
    status, out = run("poset", "hasse-dot", str(corpus / "fig1.json"), "--format", "dot")
    assert status == 0 and out.startswith("digraph") and "3 -> 2;" in out


def test_poset_parse_error_has_line(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text('{"n": 3,\n  "covers": [[1, 2],\n]}')
    assert run("poset", "linext", str(p))[0] == 2
    assert "line 3" in capsys.readouterr().err
    q = tmp_path / "cycle.json"
    q.write_text('{"n": 2, "covers": [[1, 2], [2, 1]]}')
    assert run("poset", "linext", str(q))[0] == 2


def test_complex_vectors(corpus):
    assert run("complex", "hvector", str(corpus / "fig4.json")) == (0, "1,2,0,0\n")
    assert run("complex", "fvector", str(corpus / "fig3.json")) == (0, "1,5,6,1\n")
    _, out = run("complex", "hvector", str(corpus / "fig3.json"), "--format", "json")
    assert json.loads(out) == {"h": ["1", "2", "-1", "-1"], "euler_characteristic": "0"}


def test_complex_delta():
    status, out = run("complex", "delta", "--n", "1")
    assert status == 0 and out.startswith("f=(1,1)\n")
    assert run("complex", "delta", "--n", "3", "--boundary")[1].startswith("f=(1,6,6)\n")
    _, out = run("complex", "delta", "--n", "3")
    lines = out.splitlines()
    assert lines[:3] == ["f=(1,7,12,6)", "h=(1,4,1,0)", "blocks=6"]
    assert "  [13|2, 1|3|2|]" in lines


def test_complex_delta_json_round_trip():
    _, out = run("complex", "delta", "--n", "3", "--format", "json")
    data = json.loads(out)
    S = complexes.complex_from_json(data["complex"])
    P = complexes.partition_from_json(S, data["partition"])
    S0, P0 = complexes.delta_n(3)
    assert S == S0 and P == P0
    assert data["h"] == ["1", "4", "1", "0"]


def test_complex_partition_round_trip(corpus, tmp_path):
    status, out = run("complex", "partition", str(corpus / "fig4.json"), "--format", "json")
    assert status == 0
    path = tmp_path / "found.json"
    path.write_text(out)
    status, out = run("complex", "verify-partition", str(corpus / "fig4.json"), "--partition", str(path))
    assert status == 0 and out.startswith("valid: ok\ncensus=1,2,0,0\n")


def test_complex_partition_errors(corpus, tmp_path):
    assert run("complex", "partition", str(corpus / "fig3.json"))[0] == 2
    bowtie = tmp_path / "bowtie.json"
    bowtie.write_text(json.dumps({"vertices": list("abcde"), "facets": [list("abc"), list("cde")]}))
    assert run("complex", "partition", str(bowtie)) == (1, "not partitionable\n")


def test_complex_barycentric(corpus, tmp_path):
    tri = tmp_path / "tri.json"
    tri.write_text(json.dumps({"vertices": list("abc"), "facets": [list("abc")]}))
    assert run("complex", "barycentric", str(tri)) == (0, "f=(1,7,12,6)\nh=(1,4,1,0)\n")
    _, out = run("complex", "barycentric", str(tri), "--format", "json")
    B = complexes.complex_from_json(out)
    assert tuple(complexes.f_vector(B)) == (1, 7, 12, 6)


def test_complex_facedot(corpus):
    status, out = run("complex", "facedot", "--n", "3", "--format", "dot")
    assert status == 0 and out.count("subgraph cluster_") == 6 and 'label="123"' in out
    status, out = run("complex", "facedot", str(corpus / "fig4.json"), "--format", "dot")
    assert status == 0 and out.count("subgraph cluster_") == 3
    assert run("complex", "hvector", str(corpus / "fig4.json"), "--format", "dot")[0] == 2


def test_missing_file_is_usage_error(tmp_path):
    assert run("complex", "hvector", str(tmp_path / "nope.json"))[0] == 2


def test_output_is_deterministic(corpus):
    argvs = [
        ("numbers", "stirling", "12", "--format", "csv"),
        ("complex", "delta", "--n", "4", "--format", "json"),
        ("poset", "linext", str(corpus / "fig2.json")),
        ("complex", "partition", str(corpus / "fig4.json")),
    ]
    for argv in argvs:
        assert run(*argv) == run(*argv)


def test_no_subcommand_is_usage_error():
    assert run()[0] == 2


def test_bad_format_rejected():
    with pytest.raises(SystemExit) as exc:
        run("numbers", "eulerian", "3", "--format", "xml")
    assert exc.value.code == 2
