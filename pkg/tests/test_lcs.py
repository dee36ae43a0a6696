import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monolcs import instances
from monolcs import monomial as mono
from monolcs.lcs import Lcs, QuantumAssignment, classical_solve, verify_quantum
from monolcs.phases import MINUS_ONE, Phase
from monolcs.tensorops import TensorOp, kron

import oracles


def _rows(L):
    return [list(L.A.row(j)) for j in range(L.rows)]


def test_magic_square_is_classically_infeasible():
    L, _ = instances.mermin_peres_square()
    res = classical_solve(L)
    assert res.verdict == "UNSAT"
    assert oracles.brute_lcs(_rows(L), L.b, 2) is None
    y = res.certificate
    assert not any(L.A.left_apply(y))
    assert sum(a * b for a, b in zip(y, L.b)) % 2 == 1


def test_mermin_star_is_classically_infeasible():
    L, _ = instances.mermin_star()
    assert classical_solve(L).verdict == "UNSAT"
    assert oracles.brute_lcs(_rows(L), L.b, 2) is None


def test_magic_square_pauli_solution():
    L, qa = instances.mermin_peres_square()
    rep = verify_quantum(L, qa)
    assert rep.passed
    assert dict(rep.row_products)[5] == MINUS_ONE


def test_mermin_star_global_row_is_minus_one():
    L, qa = instances.mermin_star()
    rep = verify_quantum(L, qa)
    assert rep.passed
    assert dict(rep.row_products)[4] == MINUS_ONE


def test_magic_square_operators_match_dense_relations():
    L, qa = instances.mermin_peres_square()
    mats = {v: oracles.dense_tensor(qa[v]) for v in L.var_names}
    for j in range(L.rows):
        sup = [L.var_names[k] for k in L.row_support(j)]
        prod = mats[sup[0]] @ mats[sup[1]] @ mats[sup[2]]
        sign = -1 if L.b[j] else 1
        assert oracles.close(prod, sign * oracles.np.eye(4))


@st.composite
def permutations_of(draw, n):
    return list(draw(st.permutations(range(n))))


@given(st.data())
def test_verdict_invariant_under_row_and_column_order(data):
    L, _ = instances.mermin_star()
    rp = data.draw(permutations_of(L.rows))
    cp = data.draw(permutations_of(L.cols))
    assert classical_solve(L.permuted(rp, cp)).verdict == "UNSAT"
    Lsat = L.with_rhs((0,) * L.rows)
    assert classical_solve(Lsat.permuted(rp, cp)).verdict == "SAT"


def test_solution_reported_by_name():
    L = Lcs.from_rows(3, [[1, 1, 0], [0, 1, 1]], [1, 2], ["a", "b", "c"])
    res = classical_solve(L)
    sol = res.assignment()
    assert (sol["a"] + sol["b"]) % 3 == 1 and (sol["b"] + sol["c"]) % 3 == 2
    assert res.to_json()["solution_space_dim"] == 1


def test_verify_reports_torsion_failure():
    L = Lcs.from_rows(3, [[1]], [0], ["x"])
    bad = TensorOp((mono.phase_gate([Phase(1, 9), Phase(2, 9), Phase(6, 9)]),))
    rep = verify_quantum(L, QuantumAssignment({"x": bad}))
    assert rep.torsion_failures == (("x", 9),)
    assert not rep.passed


def test_verify_reports_noncommuting_row():
    L = Lcs.from_rows(3, [[1, 1]], [0], ["x", "z"])
    qa = QuantumAssignment({"x": kron(mono.X(3)), "z": kron(mono.Z(3))})
    rep = verify_quantum(L, qa)
    assert rep.commutativity_violations == ((0, "x", "z"),)
    assert rep.skipped_rows == (0,)


def test_verify_reports_wrong_rhs():
    L = Lcs.from_rows(3, [[2]], [1], ["x"])
    qa = QuantumAssignment({"x": kron(mono.omega(3, 1))})
    rep = verify_quantum(L, qa)
    # omega^2 != omega^1
    assert rep.constraint_residuals == ((0, Phase(2, 3), Phase(1, 3)),)


def test_verify_missing_variable():
    L = Lcs.from_rows(2, [[1, 1]], [0], ["x", "y"])
    with pytest.raises(ValueError):
        verify_quantum(L, QuantumAssignment({"x": kron(mono.X(2))}))


def test_lcs_rejects_duplicate_names():
    with pytest.raises(ValueError):
        Lcs.from_rows(2, [[1, 1]], [0], ["x", "x"])


def test_sat_system_random_rhs_consistency():
    rng = random.Random("rhs")
    L, _ = instances.mermin_star()
    for _ in range(20):
        x = [rng.randrange(2) for _ in range(L.cols)]
        b = L.A.apply(x)
        assert classical_solve(L.with_rhs(b)).verdict == "SAT"
