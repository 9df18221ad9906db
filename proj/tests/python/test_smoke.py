import os
import subprocess
import json

import pytest

import fraisse

PT = {"vertices": ["0"], "edges": []}


def path(n):
    vs = [str(i) for i in range(n)]
    return {"vertices": vs, "edges": [[vs[i], vs[i + 1]] for i in range(n - 1)]}


def to_point(g):
    return {"source": g, "target": PT, "map": {v: "0" for v in g["vertices"]}}


def test_check_epi_and_amalgamate():
    f = to_point(path(3))
    assert fraisse.check_epi(f) == {"homomorphism": True, "epimorphism": True, "connected_epi": True}
    sq = fraisse.amalgamate(f, to_point(path(2)))
    assert len(sq["f_prime"]["source"]["vertices"]) == 6
    assert fraisse.is_exact(sq)
    assert fraisse.is_structurally_exact(sq, "f")
    assert fraisse.is_structurally_exact(sq, "g")


def test_contract_violation_raises():
    bad = {"source": path(2), "target": {"vertices": ["a", "b"], "edges": []}, "map": {"0": "a"}}
    with pytest.raises(fraisse.ContractViolation, match="/map"):
        fraisse.check_epi(bad)
    with pytest.raises(fraisse.FraisseError):
        fraisse.check_epi(bad)


def test_tower_round_trip():
    t = fraisse.build_tower(depth=4)
    assert len(t["levels"]) == 5
    assert fraisse.build_tower(depth=4) == t
    assert fraisse.extend_tower(t, 5) == fraisse.build_tower(depth=5)
    assert fraisse.triangle_persistence(t, 0, 0) == 0


def test_back_and_forth():
    t0 = fraisse.build_tower(depth=6)
    t2 = fraisse.build_tower(depth=6, seed=2)
    it = fraisse.back_and_forth(t0, t2, 2)
    assert len(it["maps"]) == 5


def test_homology():
    rp2 = {"maximal_faces": [["1", "2", "3"], ["1", "3", "4"], ["1", "4", "5"], ["1", "5", "6"], ["1", "2", "6"],
                             ["2", "3", "5"], ["2", "4", "5"], ["2", "4", "6"], ["3", "4", "6"], ["3", "5", "6"]]}
    assert fraisse.reduced_homology(rp2, 1) == {"degree": 1, "rank": 0, "torsion": [2]}
    assert fraisse.reduced_homology(rp2, 2)["rank"] == 0
    assert fraisse.is_n_acyclic(rp2, 0)
    assert not fraisse.is_n_acyclic(rp2, 1)
    hollow = {"maximal_faces": [["a", "b"], ["b", "c"], ["a", "c"]]}
    assert fraisse.reduced_homology(hollow, 1)["rank"] == 1


def test_boundary_and_solve():
    z = {"terms": [{"face": ["a", "b", "c"], "coeff": 1}]}
    b = fraisse.boundary(z)
    assert fraisse.boundary(b) == {"terms": []}
    disk = {"maximal_faces": [["a", "b", "c"]]}
    eta = fraisse.solve_boundary(disk, b)
    assert fraisse.boundary(eta) == b
    hollow = {"maximal_faces": [["a", "b"], ["b", "c"], ["a", "c"]]}
    assert fraisse.solve_boundary(hollow, b) is None


def test_simplicial_amalgam_agrees_with_graph_amalgam():
    seg = {"maximal_faces": [["0", "1"]]}
    f = {"source": seg, "target": {"maximal_faces": [["0"]]}, "map": {"0": "0", "1": "0"}}
    sq = fraisse.amalgamate_acyclic(f, f, 1)
    faces = sq["f_prime"]["source"]["maximal_faces"]
    graph = fraisse.amalgamate(to_point(path(2)), to_point(path(2)))
    assert sorted(map(sorted, faces)) == sorted(map(sorted, graph["f_prime"]["source"]["edges"]))


def test_run_cli_matches_binary():
    code, env = fraisse.run_cli(["tower", "build", "--depth", "2"])
    assert code == 0 and env["status"] == "ok"
    exe = os.environ.get("FRAISSE_CLI")
    if exe:
        proc = subprocess.run([exe, "tower", "build", "--depth", "2"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout) == env
    code, env = fraisse.run_cli(["sx", "homology"])
    assert code == 2 and env["status"] == "contract-violation"
