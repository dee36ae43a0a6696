"""Builtin constraint systems and computations.

* the Mermin-Peres magic square over Z_2 with its two-qubit Pauli solution;
* Mermin's star as an LCS and as a three-qubit GHZ computation of OR;
* the qudit star: three qudits of odd prime dimension ``p`` measured with
  ``M(j)|q> = theta(j) omega^{j q^{p-1}} |q+1>``, ``theta(j) = exp(2 pi i j / p^2)``;
* small Pauli-only GHZ computations used to exercise the Pauli bridge.
"""

from __future__ import annotations

import itertools

from . import monomial as mono
from .lcs import Lcs, QuantumAssignment
from .mbqc import MbqcSpec, evaluate_output, format_label
from .monomial import MonomialOp
from .phases import Phase
from .tensorops import TensorOp, ghz
from .zpfield import ZpMatrix, check_prime

MP_SQUARE_A = (
    (1, 1, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 1, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 1, 1),
    (1, 0, 0, 1, 0, 0, 1, 0, 0),
    (0, 1, 0, 0, 1, 0, 0, 1, 0),
    (0, 0, 1, 0, 0, 1, 0, 0, 1),
)
MP_SQUARE_B = (0, 0, 0, 0, 0, 1)

M_STAR_A = (
    (1, 0, 0, 0, 1, 0, 1, 0, 1, 0),
    (0, 1, 0, 0, 1, 0, 0, 1, 0, 1),
    (0, 0, 1, 0, 0, 1, 1, 0, 0, 1),
    (0, 0, 0, 1, 0, 1, 0, 1, 1, 0),
    (1, 1, 1, 1, 0, 0, 0, 0, 0, 0),
)
M_STAR_B = (0, 0, 0, 0, 1)
M_STAR_NAMES = ("M(00)", "M(01)", "M(10)", "M(11)", "X1", "Y1", "X2", "Y2", "X3", "Y3")


def _qubit(name: str) -> MonomialOp:
    return {"I": mono.identity(2), "X": mono.X(2), "Y": mono.qubit_Y(), "Z": mono.Z(2)}[name]


def pauli_string(word: str) -> TensorOp:
    """``"XY" -> X (x) Y``; letters from ``IXYZ``."""
    return TensorOp(tuple(_qubit(ch) for ch in word))


def mermin_peres_square() -> tuple[Lcs, QuantumAssignment]:
    """The 6 x 9 magic-square system and its two-qubit Pauli solution.

    The first three rows read the variables in triples ``(x1,x2,x3)``,
    ``(x4,x5,x6)``, ``(x7,x8,x9)``; the operators are laid out so that these
    are the columns of the usual square picture and the final constraint
    ``X1X2 . Y1Y2 . Z1Z2 = -1`` sits in the last row.
    """
    L = Lcs.from_rows(2, MP_SQUARE_A, MP_SQUARE_B, [f"x{k}" for k in range(1, 10)])
    words = ["XI", "IX", "XX", "IY", "YI", "YY", "XY", "YX", "ZZ"]
    qa = QuantumAssignment({f"x{k + 1}": pauli_string(w) for k, w in enumerate(words)})
    return L, qa


def mermin_star() -> tuple[Lcs, QuantumAssignment]:
    L = Lcs(2, ZpMatrix(M_STAR_A, 2), M_STAR_B, M_STAR_NAMES)
    ops = {
        "M(00)": pauli_string("XXX"),
        "M(01)": pauli_string("XYY"),
        "M(10)": pauli_string("YXY"),
        "M(11)": pauli_string("YYX"),
    }
    for k in range(3):
        for ch in "XY":
            ops[f"{ch}{k + 1}"] = pauli_string("".join(ch if s == k else "I" for s in range(3)))
    return L, QuantumAssignment(ops)


def mermin_star_mbqc() -> MbqcSpec:
    """Three-qubit GHZ computation with settings ``f = (i1, i2, i1 + i2)``; outputs OR."""
    inputs = tuple(itertools.product(range(2), repeat=2))
    ops, names = {}, {}
    for i in inputs:
        f = (i[0], i[1], (i[0] + i[1]) % 2)
        for k in range(3):
            ch = "XY"[f[k]]
            ops[(k, i)] = _qubit(ch)
            names[(k, i)] = f"{ch}{k + 1}"
    c = {key: 1 for key in ops}
    return MbqcSpec(2, 3, inputs, ops, c, ghz(2, 3), names)


def _odd_prime(p: int) -> int:
    check_prime(p)
    if p == 2:
        raise ValueError("the qudit star needs an odd prime")
    return p


def qudit_star_operator(p: int, j: int) -> MonomialOp:
    """``M(j)|q> = theta(j) omega^{j q^{p-1}} |q+1>`` with ``theta(j) = exp(2 pi i j / p^2)``."""
    _odd_prime(p)
    j %= p
    phases = [Phase(j, p * p) * Phase(j * pow(q, p - 1, p), p) for q in range(p)]
    return MonomialOp(tuple((q + 1) % p for q in range(p)), phases)


def qudit_star_settings(p: int, i: tuple[int, int]) -> tuple[int, int, int]:
    return i[0] % p, i[1] % p, (-i[0] - i[1]) % p


def qudit_star_mbqc(p: int) -> MbqcSpec:
    _odd_prime(p)
    inputs = tuple(itertools.product(range(p), repeat=2))
    ops, names = {}, {}
    for i in inputs:
        for k, j in enumerate(qudit_star_settings(p, i)):
            ops[(k, i)] = qudit_star_operator(p, j)
            names[(k, i)] = f"M_{k + 1}({j})"
    c = {key: 1 for key in ops}
    return MbqcSpec(p, 3, inputs, ops, c, ghz(p, 3), names)


def qudit_star_formula(p: int, i: tuple[int, int]) -> int:
    """Closed-form output: 0 at the origin, 1 if ``i1 + i2 <= p``, 2 otherwise."""
    if i == (0, 0):
        return 0
    return 1 if i[0] + i[1] <= p else 2


def qudit_star_lcs(p: int) -> Lcs:
    """The ``(p^2 + 1) x (p^2 + 3p)`` system with columns ``M(i)`` then ``M_k(j)`` site-major.

    The last right-hand side entry is the simulated output sum.
    """
    _odd_prime(p)
    inputs = list(itertools.product(range(p), repeat=2))
    g = len(inputs)
    names = [f"M({format_label(i)})" for i in inputs]
    names += [f"M_{k + 1}({j})" for k in range(3) for j in range(p)]
    rows = []
    for r, i in enumerate(inputs):
        row = [0] * (g + 3 * p)
        row[r] = 1
        for k, j in enumerate(qudit_star_settings(p, i)):
            row[g + k * p + j] = 1
        rows.append(row)
    rows.append([1] * g + [0] * (3 * p))
    b_last = evaluate_output(qudit_star_mbqc(p)).total()
    return Lcs(p, ZpMatrix(tuple(map(tuple, rows)), p), tuple([0] * g + [b_last]), tuple(names))


def qudit_star_assignment(p: int) -> QuantumAssignment:
    """The monomial operators induced on :func:`qudit_star_lcs` (locals as inverses)."""
    from .mbqc import induced_assignment

    return induced_assignment(qudit_star_mbqc(p), "merged")


# -- Pauli-only computations ----------------------------------------------------------


def ghz_x_mbqc(d: int) -> MbqcSpec:
    """Single input, ``X`` on every site of ``ghz(d, 3)``; output 0.

    Deterministic and Pauli-only, yet its global row product ``X (x) X (x) X``
    is not a scalar, so the induced assignment is not a quantum solution.
    """
    ops = {(k, 0): mono.X(d) for k in range(3)}
    return MbqcSpec(d, 3, (0,), ops, {key: 1 for key in ops}, ghz(d, 3),
                    {(k, 0): f"X{k + 1}" for k in range(3)})


def ghz_weyl_mbqc(d: int) -> MbqcSpec:
    """Inputs ``Z_d^2``; site ``k`` measures ``Z^{a_k} X^{i1}`` with ``a = (i2, i2, -2 i2)``.

    Every global operator stabilises the GHZ state, and all of them commute.
    ``d`` must be an odd prime: on qubits ``ZX`` has order 4.
    """
    _odd_prime(d)
    inputs = tuple(itertools.product(range(d), repeat=2))
    ops, names = {}, {}
    for i in inputs:
        a = (i[1] % d, i[1] % d, (-2 * i[1]) % d)
        for k in range(3):
            ops[(k, i)] = mono.compose(mono.clock(d, a[k]), mono.shift(d, i[0]))
            names[(k, i)] = f"Z^{a[k]}X^{i[0]}_{k + 1}"
    return MbqcSpec(d, 3, inputs, ops, {key: 1 for key in ops}, ghz(d, 3), names)


def product_diagonal_mbqc(d: int, values=(1, 2, 0)) -> MbqcSpec:
    """Product resource ``|v_1 v_2 v_3>`` measured with ``Z^{i_k}`` at site ``k``.

    A product state admits the obvious noncontextual value assignment, so the
    merged associated LCS is classically solvable.
    """
    inputs = tuple(itertools.product(range(d), repeat=2))
    from .tensorops import product_state

    ops = {}
    for i in inputs:
        f = (i[0], i[1], (i[0] + i[1]) % d)
        for k in range(3):
            ops[(k, i)] = mono.clock(d, f[k])
    return MbqcSpec(d, 3, inputs, ops, {key: 1 for key in ops}, product_state(d, values))
