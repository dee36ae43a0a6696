"""Behaviour that differs from what a plain reading of the definitions suggests.

Each test pins down a computed fact so a regression in either direction is caught.
"""

import numpy as np
import pytest

from monolcs import homs as H
from monolcs import instances
from monolcs import monomial as mono
from monolcs.lcs import classical_solve
from monolcs.mbqc import associated_lcs, evaluate_output, global_product_is_scalar, pauli_quantum_solution

import oracles


@pytest.mark.parametrize("p", [3, 5, 7])
def test_qudit_star_outputs_sum_to_zero(p):
    table = evaluate_output(instances.qudit_star_mbqc(p))
    assert table.total() == 0
    assert table.total() != (p - 1) % p
    # so the merged system is classically satisfiable
    assert classical_solve(associated_lcs(instances.qudit_star_mbqc(p))).verdict == "SAT"


def test_qudit_star_raw_total_at_p3():
    table = evaluate_output(instances.qudit_star_mbqc(3))
    assert sum(table.values.values()) == 9


@pytest.mark.parametrize("p", [3, 5])
def test_qudit_star_measurements_have_unit_determinant(p):
    for j in range(p):
        m = oracles.qudit_star_matrix(p, j)
        assert abs(np.linalg.det(m) - 1) < 1e-9


def test_literal_cyclic_v_N_is_not_additive_on_den9_phases():
    rep = H.homomorphism_audit("vN-cyclic", 3, m=2, exhaustive=True)
    assert rep.failure_count == 864 and rep.pairs_checked == 2025
    assert H.homomorphism_audit("vN", 3, m=2, exhaustive=True).passed


def test_displayed_v_N_fails_at_p5_only_on_mixed_diagonal_pairs():
    rep = H.homomorphism_audit("vN", 5, samples=5000, seed=0)
    assert not rep.passed
    for w in rep.failures:
        a = mono.MonomialOp.from_json(w["M"])
        b = mono.MonomialOp.from_json(w["M_prime"])
        assert a.is_diagonal() and b.is_diagonal()
        cases = {H.v_N_generator_value(a)[1], H.v_N_generator_value(b)[1]}
        assert 4 in cases or H.v_N_generator_value(mono.compose(a, b))[1] == 4
    assert H.homomorphism_audit("vN-affine", 5, samples=5000, seed=0).passed


def test_single_input_ghz_x_has_non_scalar_global_row():
    spec = instances.ghz_x_mbqc(3)
    assert not global_product_is_scalar(spec)
    rep = pauli_quantum_solution(spec)
    assert not rep.passed and rep.constraint_residuals


def test_magic_square_triples_are_picture_columns():
    # reading the triples (x1,x2,x3), ... as picture rows puts XX.YY.ZZ in the
    # last column; the constraint with right-hand side 1 is the last strided triple
    L, qa = instances.mermin_peres_square()
    for j in range(3):
        sup = [L.var_names[k] for k in L.row_support(j)]
        assert sup == [f"x{3 * j + t + 1}" for t in range(3)]
    assert [L.var_names[k] for k in L.row_support(5)] == ["x3", "x6", "x9"]
    mats = [oracles.dense_tensor(qa[v]) for v in ("x3", "x6", "x9")]
    assert oracles.close(mats[0] @ mats[1] @ mats[2], -np.eye(4))
    assert list(L.b) == [0, 0, 0, 0, 0, 1]
