"""End-to-end solver: known optima, invariants, mode equivalences, verify."""

import json

import pytest

from rrst.config import SolveConfig
from rrst.errors import ValidationError
from rrst.gen import generate_instance
from rrst.instance import CostTriple, Instance, loads_instance
from rrst.matroids import GraphicMatroid, MatroidInstance
from rrst.multigraph import MultiGraph
from rrst.oracle import brute_force_rrmb, brute_force_rrst
from rrst.rational import ONE, ZERO, rat
from rrst.solver import (
    serialize_solution,
    solution_to_dict,
    solve_rrmb,
    solve_rrst,
    verify_basis_solution,
    verify_tree_solution,
)

from conftest import make_instance, make_uniform_instance, TRIANGLE_PAIRS


def test_triangle_unit_k0(triangle_unit):
    sol = solve_rrst(triangle_unit)
    assert sol.total == rat(4)
    assert sol.X == sol.Y  # zero budget forces identical trees
    assert len(sol.Z) == 2 and set(sol.Z) == set(sol.X)
    assert sol.lp_bound == sol.total


def test_triangle_all_unit_k0():
    inst = make_instance(3, TRIANGLE_PAIRS, [(1, 1, 1)] * 3, k=0)
    sol = solve_rrst(inst)
    assert sol.total == rat(6)


def test_triangle_free_recovery_k2():
    inst = make_instance(3, TRIANGLE_PAIRS, [(1, 3, 0), (2, 2, 0), (3, 1, 0)], k=2)
    sol = solve_rrst(inst)
    # stages decouple: cheapest first-stage tree plus cheapest second-stage tree
    assert sol.first_stage == rat(3)
    assert sol.second_stage == rat(3)
    assert sol.total == rat(6)
    assert sol.Z == ()


def test_triangle_asymmetric_k1():
    inst = make_instance(3, TRIANGLE_PAIRS, [(1, 9, 0), (2, 1, 0), (9, 2, 1)], k=1)
    sol = solve_rrst(inst)
    ref = brute_force_rrst(inst)
    assert sol.total == ref.total == rat(7)
    failures = verify_tree_solution(inst, solution_to_dict(sol))
    assert failures == []


def test_single_node_and_single_edge():
    sol = solve_rrst(make_instance(1, [], [], k=0))
    assert sol.total == ZERO and sol.X == () and sol.iterations == 0
    sol2 = solve_rrst(make_instance(2, [(0, 1)], [(3, 2, 1)], k=0))
    assert sol2.total == rat(6)
    assert sol2.X == sol2.Y == (0,) and sol2.Z == (0,)
    sol3 = solve_rrst(make_instance(2, [(0, 1)], [(3, 2, 1)], k=1))
    assert sol3.total == rat(6) and sol3.Z == ()


def test_parallel_edges_instance():
    inst = make_instance(2, [(0, 1), (0, 1)], [(5, 1, 0), (1, 5, 0)], k=1)
    sol = solve_rrst(inst)
    # X buys the cheap-now edge, Y the cheap-later one
    assert sol.total == rat(2)
    assert sol.X == (1,) and sol.Y == (0,)


def test_solution_serialization_is_canonical(triangle_unit):
    sol = solve_rrst(triangle_unit)
    text = serialize_solution(sol)
    doc = json.loads(text)
    assert set(doc) == {"X", "Y", "Z", "first_stage", "second_stage", "total",
                        "lp_bound", "iterations"}
    assert text == serialize_solution(solve_rrst(triangle_unit))
    assert text.endswith("\n")


def test_matroid_uniform_known():
    mi = make_uniform_instance(
        5, 3, [(4, 1, 1), (2, 5, 0), (3, 3, 2), (1, 4, 4), (5, 2, 1)], k=1
    )
    sol = solve_rrmb(mi)
    ref = brute_force_rrmb(mi)
    assert sol.total == ref.total == rat(17)
    assert verify_basis_solution(mi, solution_to_dict(sol)) == []


def test_matroid_rank_zero():
    mi = make_uniform_instance(3, 0, [(1, 1, 1)] * 3, k=0)
    sol = solve_rrmb(mi)
    assert sol.total == ZERO and sol.X == ()


def test_graphic_matroid_equals_tree_solver():
    # the routes may break ties differently, but the optimum value is one
    for seed in range(8):
        inst = generate_instance(5, 0.6, seed % 5, 9, seed + 100)
        mi = MatroidInstance(
            matroid=GraphicMatroid(inst.graph), costs=inst.costs, k=inst.k
        )
        tree_sol = solve_rrst(inst)
        basis_sol = solve_rrmb(mi)
        assert tree_sol.total == basis_sol.total, f"seed {seed}"
        assert verify_basis_solution(mi, solution_to_dict(basis_sol)) == []
        assert verify_tree_solution(inst, solution_to_dict(tree_sol)) == []


@pytest.mark.parametrize("mode", ["batch", "strict"])
@pytest.mark.parametrize("separation", ["mincut", "exhaustive"])
def test_modes_and_separations_agree_with_oracle(mode, separation):
    cfg = SolveConfig(mode=mode, separation=separation)
    for seed in range(6):
        inst = generate_instance(5, 0.5, seed % 5, 8, seed)
        sol = solve_rrst(inst, cfg)
        ref = brute_force_rrst(inst)
        assert sol.total == ref.total, f"seed {seed}"
        assert verify_tree_solution(inst, solution_to_dict(sol)) == []


def test_greedy_completion_off_matches():
    cfg_on = SolveConfig()
    cfg_off = SolveConfig(greedy_completion=False)
    for seed in range(6):
        inst = generate_instance(5, 0.5, seed % 5, 8, seed + 50)
        a, b = solve_rrst(inst, cfg_on), solve_rrst(inst, cfg_off)
        assert a.total == b.total, f"seed {seed}"


def test_iteration_observer_sees_consistent_bookkeeping():
    inst = generate_instance(6, 0.5, 2, 9, 31)
    infos = []
    sol = solve_rrst(inst, SolveConfig(), on_iteration=infos.append)
    assert len(infos) == sol.iterations >= 1
    need = inst.overlap_requirement
    for info in infos:
        assert info.quota >= 0
        assert info.quota + len(info.Z) == need
        assert info.Z <= (info.X & info.Y)
        assert set(info.banked) <= info.Z
        # moves recorded actually happened: committed ids appear in X/Y
        assert set(info.fixed_x) <= info.X and set(info.fixed_y) <= info.Y
        # strict-mode truncation cannot apply in batch mode
        assert info.fixed_x == info.ones_x and info.fixed_y == info.ones_y
    assert len(sol.Z) == need


def test_strict_mode_truncates_but_ones_are_recorded():
    inst = generate_instance(5, 0.4, 1, 7, 9)
    infos = []
    solve_rrst(inst, SolveConfig(mode="strict"), on_iteration=infos.append)
    for info in infos:
        assert len(info.fixed_x) <= 1 and len(info.fixed_y) <= 1
        assert set(info.fixed_x) <= set(info.ones_x)
        assert set(info.fixed_y) <= set(info.ones_y)


def test_lp_bound_equals_total_across_seeds():
    for seed in range(10):
        inst = generate_instance(5, 0.6, seed % 5, 10, seed + 200)
        sol = solve_rrst(inst)
        assert sol.lp_bound == sol.total, f"seed {seed}"


# --- verification ------------------------------------------------------


def _tamper(doc, **changes):
    out = json.loads(json.dumps(doc))
    out.update(changes)
    return out


def test_verify_catches_non_spanning_x(triangle_unit):
    doc = solution_to_dict(solve_rrst(triangle_unit))
    bad = _tamper(doc, X=[0, 1][:1] + [0, 1][1:])  # sanity: same doc passes
    assert verify_tree_solution(triangle_unit, bad) == []
    bad = _tamper(doc, X=[0])
    msgs = verify_tree_solution(triangle_unit, bad)
    assert any("X not spanning" in m for m in msgs)


def test_verify_catches_cost_mismatch(triangle_unit):
    doc = solution_to_dict(solve_rrst(triangle_unit))
    bad = _tamper(doc, total="999")
    msgs = verify_tree_solution(triangle_unit, bad)
    assert any("cost mismatch" in m for m in msgs)


def test_verify_catches_overlap_cheating():
    inst = make_instance(3, TRIANGLE_PAIRS, [(1, 1, 0)] * 3, k=0)
    doc = solution_to_dict(solve_rrst(inst))
    bad = _tamper(doc, Y=[1, 2] if doc["X"] == [0, 1] else [0, 1])
    msgs = verify_tree_solution(inst, bad)
    assert any("overlap too small" in m for m in msgs)


def test_verify_catches_bad_witness(triangle_unit):
    doc = solution_to_dict(solve_rrst(triangle_unit))
    bad = _tamper(doc, Z=[])
    msgs = verify_tree_solution(triangle_unit, bad)
    assert any("Z size mismatch" in m for m in msgs)
    outside = [e for e in (0, 1, 2) if e not in doc["X"] or e not in doc["Y"]]
    if outside:
        bad2 = _tamper(doc, Z=[doc["Z"][0], outside[0]][: len(doc["Z"])])
        if sorted(bad2["Z"]) != sorted(doc["Z"]):
            msgs2 = verify_tree_solution(triangle_unit, bad2)
            assert msgs2


def test_verify_rejects_malformed_selections(triangle_unit):
    doc = solution_to_dict(solve_rrst(triangle_unit))
    with pytest.raises(ValidationError):
        verify_tree_solution(triangle_unit, _tamper(doc, X=[0, 0]))
    with pytest.raises(ValidationError):
        verify_tree_solution(triangle_unit, _tamper(doc, X=[99, 1]))
    with pytest.raises(ValidationError):
        verify_tree_solution(triangle_unit, {k: v for k, v in doc.items() if k != "X"})


def test_verify_basis_catches_non_basis():
    mi = make_uniform_instance(4, 2, [(1, 1, 0)] * 4, k=0)
    doc = solution_to_dict(solve_rrmb(mi))
    msgs = verify_basis_solution(mi, _tamper(doc, X=[0]))
    assert any("X not a basis" in m for m in msgs)
    bad2 = _tamper(doc, X=sorted(set(range(4)) - set(doc["X"])))
    msgs2 = verify_basis_solution(mi, bad2)
    assert msgs2  # overlap with Z breaks even though X is a basis


def test_missing_cost_field_reported(triangle_unit):
    doc = solution_to_dict(solve_rrst(triangle_unit))
    del doc["total"]
    msgs = verify_tree_solution(triangle_unit, doc)
    assert any("missing field total" in m for m in msgs)
