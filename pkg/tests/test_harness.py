import itertools
import json
import random

import pytest

from kleeneseries.automata import refine
from kleeneseries.automata.linear import solve_linear
from kleeneseries.errors import PremiseViolated
from kleeneseries.harness import (GROUPS, CayleyTable, CommutativeInstance, check_commutative,
                                  check_conway, check_group_identity, check_inductive_laws,
                                  check_least_solution, generate_commutative_instance,
                                  group_matrix, random_series)
from kleeneseries.matrix import Matrix, functional, mat_mul
from kleeneseries.semiring import INF, N, NINF, quotient
from kleeneseries.series import SeriesSemiring, TruncatedSeries

from oracles import random_simulation_pair


def test_conway_examples():
    reports = check_conway(NINF, 1, INF)
    assert len(reports) == 6 and all(r.passed for r in reports)
    assert all(r.passed for r in check_conway(NINF, 0, 0))
    S = SeriesSemiring(N, "ab", 6)
    sum_star = check_conway(S, S.letter("a"), S.letter("b"))[0]
    assert sum_star.identity == "sum-star" and sum_star.passed


def test_conway_skips_outside_domain():
    verdicts = {r.identity: r.verdict for r in check_conway(N, 1, 0)}
    assert verdicts["sum-star"] == "skip"
    assert verdicts["zero-star"] == "pass"


def test_conway_detects_a_broken_star():
    class BadStar(type(NINF)):
        name = "bad"

        def star(self, x):
            return 1 if x == 0 else 5

        def _key(self):
            return ("bad",)

    assert any(r.verdict == "fail" for r in check_conway(BadStar(), 1, 1))


def test_group_matrix_examples():
    Z2, Z1, Z3 = GROUPS["z2"], GROUPS["z1"], GROUPS["z3"]
    assert group_matrix(Z2, ["x", "y"], None).to_rows() == [["x", "y"], ["y", "x"]]
    assert group_matrix(Z1, ["x"], None).to_rows() == [["x"]]
    assert group_matrix(Z3, ["x", "y", "z"], None).row(0) == ("x", "y", "z")


def test_group_identity_examples():
    r = check_group_identity(GROUPS["z2"], [1, 1], NINF)
    assert r.passed and r.left is INF and r.right is INF
    assert check_group_identity(GROUPS["z1"], [2], NINF).passed
    S = SeriesSemiring(N, "ab", 6)
    assert check_group_identity(GROUPS["z2"], [S.letter("a"), S.letter("b")], S).passed


def test_s3_table_is_a_group():
    S3 = GROUPS["s3"]
    assert S3.order == 6
    assert any(S3.mul(x, y) != S3.mul(y, x) for x, y in itertools.product(range(6), repeat=2))


def test_cayley_table_rejects_non_groups():
    with pytest.raises(ValueError):
        CayleyTable("bad", ((0, 1), (1, 1)))
    with pytest.raises(ValueError):
        CayleyTable("bad", ((1, 0), (0, 1)))
    G = CayleyTable.from_json(json.dumps({"name": "Z2", "table": [[0, 1], [1, 0]]}))
    assert G == GROUPS["z2"]


def test_generated_instance_is_reproducible():
    i1 = generate_commutative_instance(42, 3, 2, 2, "ab")
    i2 = generate_commutative_instance(42, 3, 2, 2, "ab")
    assert i1 == i2 and i1.side_condition()
    # rho_i rho = tau_{i rho} as functional matrices
    R = functional(i1.rho, 2, N)
    for i, g in enumerate(i1.rhos):
        assert mat_mul(functional(g, 3, N), R) == functional(i1.taus[i1.rho[i]], 2, N)


def test_identity_rho_forces_equal_maps():
    inst = generate_commutative_instance(3, 3, 3, 2, "ab")
    if inst.rho == (0, 1, 2):
        assert inst.rhos == inst.taus
    for i, g in enumerate(inst.rhos):
        assert tuple(inst.rho[x] for x in g) == inst.taus[inst.rho[i]]


def test_degenerate_k0_instance():
    inst = generate_commutative_instance(1, 2, 1, 0, "ab")
    assert inst.k == 0
    assert check_commutative(inst.in_series(3)).passed


@pytest.mark.parametrize("direction", ["primal", "dual"])
def test_commutative_instances_pass(direction):
    rng = random.Random(0)
    for seed in range(15):
        n = rng.randint(1, 3)
        inst = generate_commutative_instance(seed, rng.randint(n, 4), n, rng.randint(1, 3), "ab",
                                             direction=direction)
        assert check_commutative(inst.in_series(4)).passed
        for va, vb in itertools.product([1, INF], repeat=2):
            assert check_commutative(inst.at({"a": va, "b": vb}, NINF)).passed


def test_check_commutative_needs_side_condition():
    inst = generate_commutative_instance(5, 3, 2, 2, "ab")
    broken_taus = tuple(tuple((x + 1) % 2 for x in t) for t in inst.taus)
    bad = CommutativeInstance(inst.C, inst.rho, inst.rhos, broken_taus)
    with pytest.raises(PremiseViolated):
        check_commutative(bad)


def test_identity_rho_instance_has_equal_sides():
    inst = generate_commutative_instance(8, 2, 2, 2, "ab")
    inst = CommutativeInstance(inst.C, (0, 1), inst.taus, inst.taus)
    A, B, R = inst.in_series(3).matrices()
    assert A == B
    assert check_commutative(inst.in_series(3)).passed


def test_refinement_instance_passes():
    rng = random.Random(2)
    for _ in range(10):
        A, B, rho = random_simulation_pair(rng, 3, 2)
        w = refine({a: Matrix.from_rows(N, m) for a, m in A.items()},
                   {a: Matrix.from_rows(N, m) for a, m in B.items()}, rho)
        inst = CommutativeInstance(w.C, w.rho, w.rhos, w.taus)
        assert check_commutative(inst.in_series(5)).passed


def test_inductive_laws_on_ninf():
    reports = check_inductive_laws(NINF, [0, 1, 2, INF])
    assert all(r.passed for r in reports)


def test_inductive_laws_on_quotient():
    Q = quotient(3)
    assert all(r.passed for r in check_inductive_laws(Q, Q.elements()))


def test_least_solution_from_solve_linear():
    rng = random.Random(4)
    for k in (0, 1, 2, INF):
        s = random_series(rng, NINF, "ab", 4, proper=True)
        s = s + TruncatedSeries.constant(NINF, "ab", 4, k) if k else s
        r = random_series(rng, NINF, "ab", 4)
        t = random_series(rng, NINF, "ab", 4)
        assert check_least_solution(s, r, solve_linear(s, r, t)).passed


def test_least_solution_detects_non_solution():
    one = TruncatedSeries.constant(NINF, "a", 2, 1)
    a = TruncatedSeries.letter(NINF, "a", 2, "a")
    assert not check_least_solution(a, one, one).passed


def test_report_json_line():
    line = check_conway(NINF, 0, 1)[0].to_json()
    data = json.loads(line)
    assert set(data) == {"identity", "instance", "verdict", "detail"}
    assert data["verdict"] == "pass"
