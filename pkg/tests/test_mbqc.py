import itertools
from functools import reduce

import numpy as np
import pytest

from monolcs import instances
from monolcs import monomial as mono
from monolcs.lcs import classical_solve, verify_quantum
from monolcs.mbqc import (
    MbqcSpec,
    NotDeterministic,
    NotGrid,
    OutputNotPthRoot,
    associated_lcs,
    contextuality_witness,
    evaluate_output,
    global_op,
    global_product_is_scalar,
    grid_dimension,
    induced_assignment,
    merged_is_classical,
    noncommuting_globals,
    pauli_quantum_solution,
)
from monolcs.monomial import NotPauli
from monolcs.phases import Phase
from monolcs.tensorops import ghz, product_state

import oracles


def dense_star_output(p):
    """Outputs from dense matrices built directly from the defining action."""
    psi = sum(np.eye(p ** 3)[q * (p * p + p + 1)] for q in range(p))
    out = {}
    for i in itertools.product(range(p), repeat=2):
        js = (i[0], i[1], (-i[0] - i[1]) % p)
        u = reduce(np.kron, [oracles.qudit_star_matrix(p, j) for j in js])
        out[i] = oracles.eigen_output(u, psi, p)
    return out


@pytest.mark.parametrize("p", [3, 5, 7])
def test_qudit_star_matches_dense_simulation(p):
    got = dict(evaluate_output(instances.qudit_star_mbqc(p)).values)
    assert got == dense_star_output(p)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_qudit_star_matches_closed_form(p):
    table = evaluate_output(instances.qudit_star_mbqc(p))
    assert all(table[i] == instances.qudit_star_formula(p, i) for i in table.values)


@pytest.mark.parametrize("p", [3, 5])
def test_qudit_star_operator_matches_definition(p):
    for j in range(p):
        op = instances.qudit_star_operator(p, j)
        assert oracles.close(oracles.dense(op), oracles.qudit_star_matrix(p, j))
        assert mono.order(op) == p
        assert mono.determinant(op).is_unit()


def test_mermin_star_outputs_or():
    table = evaluate_output(instances.mermin_star_mbqc())
    assert dict(table.values) == {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}


def test_not_deterministic_names_input():
    ops = {(0, 0): mono.X(3)}
    spec = MbqcSpec(3, 1, (0,), ops, {(0, 0): 1}, product_state(3, (0,)))
    with pytest.raises(NotDeterministic) as exc:
        evaluate_output(spec)
    assert exc.value.label == 0


def test_torsion_forces_pth_root_outputs():
    # a d-torsion global operator has only d-th root eigenvalues, so OutputNotPthRoot
    # is defensive; moving one site off the GHZ support is a determinism failure instead
    op = instances.qudit_star_operator(3, 1)
    ops = {(0, 0): op, (1, 0): mono.identity(3), (2, 0): mono.identity(3)}
    spec = MbqcSpec(3, 3, (0,), ops, {}, ghz(3, 3))
    with pytest.raises(NotDeterministic):
        evaluate_output(spec)
    assert issubclass(OutputNotPthRoot, ValueError)


def test_spec_rejects_wrong_torsion():
    ops = {(0, 0): mono.phase_gate([Phase(1, 9), Phase(2, 9), Phase(6, 9)])}
    with pytest.raises(ValueError):
        MbqcSpec(3, 1, (0,), ops, {}, product_state(3, (0,)))


def test_spec_rejects_missing_entry():
    with pytest.raises(ValueError):
        MbqcSpec(3, 2, (0,), {(0, 0): mono.X(3)}, {}, ghz(3, 2))


@pytest.mark.parametrize("p", [3, 5])
def test_associated_lcs_shape_and_rhs(p):
    spec = instances.qudit_star_mbqc(p)
    raw = associated_lcs(spec, "raw")
    assert raw.A.shape == (p * p + 1, p * p + 3 * p * p)
    merged = associated_lcs(spec, "merged")
    assert merged.A.shape == (p * p + 1, p * p + 3 * p)
    assert merged.b[-1] == raw.b[-1] == evaluate_output(spec).total()


def _row_sets(L):
    return sorted(
        (tuple(sorted((L.var_names[k], L.A[j, k]) for k in L.row_support(j))), L.b[j]) for j in range(L.rows)
    )


@pytest.mark.parametrize("p", [3, 5, 7])
def test_merged_lcs_equals_builtin_system(p):
    merged = associated_lcs(instances.qudit_star_mbqc(p), "merged")
    builtin = instances.qudit_star_lcs(p)
    assert set(merged.var_names) == set(builtin.var_names)
    assert _row_sets(merged) == _row_sets(builtin)


def test_mermin_star_merged_lcs_is_the_star():
    merged = associated_lcs(instances.mermin_star_mbqc(), "merged")
    star, _ = instances.mermin_star()
    assert _row_sets(merged) == _row_sets(star)


@pytest.mark.parametrize("p", [3, 5])
def test_induced_assignment_fails_only_in_global_row(p):
    spec = instances.qudit_star_mbqc(p)
    L = associated_lcs(spec)
    rep = verify_quantum(L, induced_assignment(spec))
    assert rep.commutativity_violations
    assert {row for row, _, _ in rep.commutativity_violations} == {L.rows - 1}
    assert not rep.torsion_failures and not rep.constraint_residuals
    assert noncommuting_globals(spec)


def test_witness_degree_matches_lagrange_oracle():
    for p in (3, 5):
        spec = instances.qudit_star_mbqc(p)
        w = contextuality_witness(spec)
        coeffs = oracles.lagrange_coeffs(dict(evaluate_output(spec).values), p, 2)
        assert w.degree == max(sum(e) for e in coeffs)
        assert w.contextual


def test_witness_on_mermin_star_is_degree_two():
    w = contextuality_witness(instances.mermin_star_mbqc())
    assert w.degree == 2 and w.contextual


def test_grid_dimension():
    assert grid_dimension(instances.qudit_star_mbqc(3)) == 2
    with pytest.raises(NotGrid):
        grid_dimension(instances.ghz_x_mbqc(3))


@pytest.mark.parametrize("spec", [
    instances.mermin_star_mbqc(),
    instances.product_diagonal_mbqc(2, (1, 0, 1)),
    instances.ghz_weyl_mbqc(3),
    instances.ghz_weyl_mbqc(5),
    instances.product_diagonal_mbqc(3),
], ids=["star-d2", "product-d2", "weyl-d3", "weyl-d5", "product-d3"])
def test_pauli_specs_give_quantum_solutions(spec):
    rep = pauli_quantum_solution(spec)
    assert rep.passed
    if spec.d % 2:
        assert merged_is_classical(spec)


def test_mermin_star_quantum_but_not_classical():
    spec = instances.mermin_star_mbqc()
    assert pauli_quantum_solution(spec).passed
    assert not merged_is_classical(spec)


def test_pauli_check_rejects_qudit_star():
    with pytest.raises(NotPauli) as exc:
        pauli_quantum_solution(instances.qudit_star_mbqc(3))
    assert exc.value.site == 0


def test_global_op_applies_exponents():
    spec = instances.qudit_star_mbqc(3)
    t = global_op(spec, (1, 2))
    assert t.factors[2] == instances.qudit_star_operator(3, 0)
    assert global_product_is_scalar(instances.ghz_weyl_mbqc(3))
