import json

from ciore.cli import main
from ciore.fo_semantics import Structure, Triple, structure_to_json
from ciore.matrix import ONE, ZERO


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_prove_consistency_of_consistency(capsys):
    code, out, _ = run(capsys, "prove", "|- o o p")
    assert code == 0 and "proved" in out


def test_prove_json_contains_cut_free_proof(capsys):
    code, out, _ = run(capsys, "prove", "--json", "|- o o p")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "proved"

    def rules(node):
        yield node["rule"]
        for prem in node["premises"]:
            yield from rules(prem)

    assert "Cut" not in set(rules(data["proof"]))


def test_countermodel_subcommand(capsys):
    code, out, _ = run(capsys, "countermodel", "p |- o p")
    assert code == 1
    assert json.loads(out) == {"p": "1/2"}
    code, out, _ = run(capsys, "countermodel", "|- o o p")
    assert code == 0 and "valid" in out


def test_fo_prove_refuted_with_structure(capsys):
    code, out, _ = run(capsys, "prove", "--fo", "--json", "exists x. P(x) |- forall x. P(x)")
    assert code == 1
    data = json.loads(out)
    assert data["status"] == "refuted"
    assert "structure" in data and "assignment" in data


def test_validity_exit_codes(capsys):
    assert run(capsys, "validity", "|- p | ~p")[0] == 0
    assert run(capsys, "validity", "|- p & ~p")[0] == 1


def test_validity_in_structure(tmp_path, capsys):
    st = Structure(
        domain=("0", "1"),
        predicates={"P": Triple.from_values((("0",), ("1",)), {("0",): ONE, ("1",): ZERO})},
    )
    path = tmp_path / "structure.json"
    path.write_text(json.dumps(structure_to_json(st)))
    code, out, _ = run(capsys, "validity", "--structure", str(path), "forall x. P(x) |- P(a1)")
    assert code == 0 and "valid" in out
    code, out, _ = run(capsys, "countermodel", "--structure", str(path), "|- P(a1)")
    assert code == 1
    assert json.loads(out) == {"assignment": {"a1": "1"}}


def test_validity_fo_routes_through_prover(capsys):
    code, out, _ = run(capsys, "validity", "--fo", "|- (o forall x. P(x)) -> exists x. o P(x)")
    assert code == 0 and "valid" in out
    code, out, _ = run(capsys, "validity", "--fo", "exists x. P(x) |- forall x. P(x)")
    assert code == 1 and "invalid" in out
    swap = "|- (forall x. exists y. R(x, y)) -> exists y. forall x. R(x, y)"
    code, out, _ = run(capsys, "validity", "--fo", "--nodes", "40", "--depth", "20", swap)
    assert code == 2 and "unknown" in out


def test_check_proof_json_output(tmp_path, capsys):
    code, out, _ = run(capsys, "prove", "--json", "|- p -> p")
    proof = json.loads(out)["proof"]
    path = tmp_path / "proof.json"
    path.write_text(json.dumps(proof))
    code, out, _ = run(capsys, "check-proof", "--json", str(path))
    assert code == 0 and json.loads(out) == {"status": "pass", "error": None}


def test_reduction_tree_budget_exit(capsys):
    swap = "|- (forall x. exists y. R(x, y)) -> exists y. forall x. R(x, y)"
    code, out, _ = run(capsys, "reduction-tree", "--nodes", "40", "--depth", "20", swap)
    assert code == 2
    assert out.splitlines()[0].startswith("status=")


def test_quantified_without_fo_is_usage_error(capsys):
    code, _, err = run(capsys, "prove", "|- forall x. P(x)")
    assert code == 64 and "--fo" in err


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "prove", "p & |- q")
    assert code == 65 and "parse error" in err


def test_atom_cap_exit(capsys):
    goal = " | ".join(f"v{i}" for i in range(13))
    code, _, err = run(capsys, "prove", f"|- {goal}")
    assert code == 2 and "cap" in err


def test_atom_cap_env_override(capsys, monkeypatch):
    monkeypatch.setenv("CIORE_ATOM_CAP", "20")
    goal = " | ".join(f"v{i}" for i in range(13))
    code, _, _ = run(capsys, "prove", f"|- {goal}")
    assert code == 1  # now refutable instead of capped


def test_check_proof_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "prove", "--json", "|- o o p")
    proof = json.loads(out)["proof"]
    path = tmp_path / "proof.json"
    path.write_text(json.dumps(proof))
    code, out, _ = run(capsys, "check-proof", str(path))
    assert code == 0 and "checked" in out

    proof["premises"] = []
    path.write_text(json.dumps(proof))
    code, out, _ = run(capsys, "check-proof", str(path))
    assert code == 1 and "rejected" in out


def test_check_proof_stdin(capsys, monkeypatch, tmp_path):
    import io

    code, out, _ = run(capsys, "prove", "--json", "|- p -> p")
    proof = json.loads(out)["proof"]
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(proof)))
    code, out, _ = run(capsys, "check-proof")
    assert code == 0


def test_check_proof_calculus_choice(tmp_path, capsys):
    code, out, _ = run(capsys, "prove", "--json", "|- ~(p & q), p, q")
    proof = json.loads(out)["proof"]
    path = tmp_path / "proof.json"
    path.write_text(json.dumps(proof))
    code, _, _ = run(capsys, "check-proof", "--calculus", "gciore-prime", str(path))
    assert code == 0


def test_reduction_tree_dump(capsys):
    code, out, _ = run(capsys, "reduction-tree", "P(a1) |- P(a1)")
    assert code == 0
    assert out.splitlines()[0].startswith("status=closed")
    code, out, _ = run(capsys, "reduction-tree", "exists x. P(x) |- forall x. P(x)")
    assert code == 1


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.count("ok") == 4


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "check-proof", "/nonexistent/proof.json")
    assert code == 65
