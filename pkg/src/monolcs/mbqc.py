"""Deterministic non-adaptive Z_d measurement-based computations.

A spec fixes local measurement operators ``M_k(i)`` per site ``k`` and input
``i``, linear post-processing exponents ``c_k(i)`` and a resource state.  The
global operator of input ``i`` is ``M(i) = (x)_k M_k(i)^{c_k(i)}``; the
computation is deterministic when the resource is an eigenstate of every
``M(i)``, and the output ``o(i)`` is read off the eigenvalue ``omega^{o(i)}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from . import monomial as mono
from .lcs import Lcs, QuantumAssignment, VerificationReport, classical_solve, verify_quantum
from .monomial import MonomialOp, NotPauli
from .phases import NotPthRoot, as_zp_exponent
from .tensorops import NotEigenstate, SparseState, TensorOp, eigenphase, local, tensor_commutes
from .zpfield import ZpMatrix, ZpPoly, interpolate


class NotDeterministic(ValueError):
    def __init__(self, label, witness):
        super().__init__(f"resource is not an eigenstate of M({format_label(label)}); witness {witness}")
        self.label = label
        self.witness = witness


class OutputNotPthRoot(NotPthRoot):
    def __init__(self, label, phase):
        super().__init__(f"eigenphase {phase!r} of M({format_label(label)}) is not a d-th root of unity")
        self.label = label
        self.phase = phase


class NotGrid(ValueError):
    pass


def format_label(label) -> str:
    """``(0, 1) -> "01"``; other labels use ``str``."""
    if isinstance(label, tuple) and all(isinstance(x, int) and 0 <= x < 10 for x in label):
        return "".join(str(x) for x in label)
    if isinstance(label, tuple):
        return ",".join(str(x) for x in label)
    return str(label)


@dataclass(frozen=True)
class MbqcSpec:
    """``local_ops[(k, i)]`` and ``c[(k, i)]`` per site ``k`` (0-based) and input label ``i``.

    ``settings`` optionally names each local operator (used as the LCS
    column label); equal operators at one site should share a name.
    """

    d: int
    n: int
    inputs: tuple[Hashable, ...]
    local_ops: Mapping[tuple[int, Hashable], MonomialOp]
    c: Mapping[tuple[int, Hashable], int]
    resource: SparseState
    settings: Mapping[tuple[int, Hashable], str] | None = None

    def __post_init__(self):
        inputs = tuple(self.inputs)
        if not inputs:
            raise ValueError("input set must be nonempty")
        if len(set(inputs)) != len(inputs):
            raise ValueError("input labels must be distinct")
        ops, cs = dict(self.local_ops), {}
        for k in range(self.n):
            for i in inputs:
                if (k, i) not in ops:
                    raise ValueError(f"missing local operator for site {k}, input {i!r}")
                op = ops[(k, i)]
                if op.d != self.d:
                    raise ValueError(f"local operator at site {k}, input {i!r} has dimension {op.d}")
                if self.d % mono.order(op):
                    raise ValueError(f"local operator at site {k}, input {i!r} is not {self.d}-torsion")
                cs[(k, i)] = int(self.c.get((k, i), 1)) % self.d if isinstance(self.c, Mapping) else 1
        if len(ops) != self.n * len(inputs):
            raise ValueError("local operator table has entries outside sites x inputs")
        if self.resource.d != self.d or self.resource.n != self.n:
            raise ValueError("resource state shape differs from the computation")
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "local_ops", ops)
        object.__setattr__(self, "c", cs)
        if self.settings is not None:
            object.__setattr__(self, "settings", dict(self.settings))

    def global_label(self, i) -> str:
        return f"M({format_label(i)})"

    def setting_name(self, k: int, i) -> str:
        if self.settings and (k, i) in self.settings:
            return self.settings[(k, i)]
        return f"M_{k + 1}[{format_label(i)}]"

    def reordered(self, inputs: Sequence[Hashable]) -> MbqcSpec:
        if sorted(map(repr, inputs)) != sorted(map(repr, self.inputs)):
            raise ValueError("not a reordering of the input set")
        return MbqcSpec(self.d, self.n, tuple(inputs), self.local_ops, self.c, self.resource, self.settings)

    def to_json(self) -> dict:
        from .serialization import mbqc_to_json

        return mbqc_to_json(self)


@dataclass(frozen=True)
class OutputTable:
    d: int
    values: Mapping[Hashable, int]

    def __post_init__(self):
        object.__setattr__(self, "values", {k: int(v) % self.d for k, v in dict(self.values).items()})

    def __getitem__(self, i) -> int:
        return self.values[i]

    def total(self) -> int:
        return sum(self.values.values()) % self.d

    def to_json(self) -> dict:
        from .serialization import label_to_json

        return {
            "d": self.d,
            "outputs": [{"input": label_to_json(i), "o": v} for i, v in self.values.items()],
            "sum_mod_d": self.total(),
        }


def global_op(spec: MbqcSpec, i) -> TensorOp:
    if i not in spec.inputs:
        raise KeyError(f"unknown input {i!r}")
    return TensorOp(tuple(mono.power(spec.local_ops[(k, i)], spec.c[(k, i)]) for k in range(spec.n)))


def evaluate_output(spec: MbqcSpec) -> OutputTable:
    out = {}
    for i in spec.inputs:
        try:
            phi = eigenphase(global_op(spec, i), spec.resource)
        except NotEigenstate as exc:
            raise NotDeterministic(i, exc.witness) from exc
        try:
            out[i] = int(as_zp_exponent(phi, spec.d))
        except NotPthRoot as exc:
            raise OutputNotPthRoot(i, phi) from exc
    return OutputTable(spec.d, out)


def output_sum(spec: MbqcSpec) -> int:
    return evaluate_output(spec).total()


# -- associated LCS -------------------------------------------------------------------


def _local_columns(spec: MbqcSpec, mode: str):
    """Local columns in order, and the column of each ``(k, i)``."""
    names, ops, where = [], [], {}
    if mode == "raw":
        for k in range(spec.n):
            for i in spec.inputs:
                where[(k, i)] = len(names)
                names.append(f"M_{k + 1}(i={format_label(i)})")
                ops.append((k, spec.local_ops[(k, i)]))
        return names, ops, where
    if mode != "merged":
        raise ValueError(f"unknown mode {mode!r}; use 'merged' or 'raw'")
    used = set(spec.global_label(i) for i in spec.inputs)
    for k in range(spec.n):
        seen: dict[MonomialOp, int] = {}
        for i in spec.inputs:
            op = spec.local_ops[(k, i)]
            if op not in seen:
                name = spec.setting_name(k, i)
                base, extra = name, 1
                while name in used:
                    extra += 1
                    name = f"{base}#{extra}"
                used.add(name)
                seen[op] = len(names)
                names.append(name)
                ops.append((k, op))
            where[(k, i)] = seen[op]
    return names, ops, where


def associated_lcs(spec: MbqcSpec, mode: str = "merged") -> Lcs:
    """``|I|`` locality rows and one global row over Z_d.

    Row ``i`` has a 1 in the column of ``M(i)`` and ``c_k(i)`` in the column
    of ``M_k(i)``; the last row has 1 in every global column.  ``b`` is zero
    except the last entry, the simulated ``sum_i o(i) mod d``.
    """
    table = evaluate_output(spec)
    d = spec.d
    g = len(spec.inputs)
    lnames, _, where = _local_columns(spec, mode)
    s = g + len(lnames)
    rows = []
    for r, i in enumerate(spec.inputs):
        row = [0] * s
        row[r] = 1
        for k in range(spec.n):
            col = g + where[(k, i)]
            row[col] = (row[col] + spec.c[(k, i)]) % d
        rows.append(row)
    rows.append([1] * g + [0] * len(lnames))
    b = [0] * g + [table.total()]
    names = [spec.global_label(i) for i in spec.inputs] + lnames
    return Lcs(d, ZpMatrix(tuple(map(tuple, rows)), d), tuple(b), tuple(names))


def induced_assignment(spec: MbqcSpec, mode: str = "merged") -> QuantumAssignment:
    """Operators for the associated LCS.

    Globals get ``M(i)``; a local column for ``M_k`` gets ``M_k^{-1}`` on
    site ``k``, so each locality row multiplies to the identity.
    """
    lnames, lops, _ = _local_columns(spec, mode)
    ops = {spec.global_label(i): global_op(spec, i) for i in spec.inputs}
    for name, (k, op) in zip(lnames, lops):
        ops[name] = local(spec.d, spec.n, k, op.inverse())
    return QuantumAssignment(ops)


def noncommuting_globals(spec: MbqcSpec) -> list[tuple]:
    ops = [(i, global_op(spec, i)) for i in spec.inputs]
    out = []
    for (i, a), (j, b) in itertools.combinations(ops, 2):
        if not tensor_commutes(a, b).commute:
            out.append((i, j))
    return out


# -- witnesses ------------------------------------------------------------------------


@dataclass(frozen=True)
class ContextualityWitness:
    p: int
    l: int
    degree: int
    contextual: bool
    polynomial: ZpPoly

    def to_json(self) -> dict:
        return {
            "verdict": "contextual" if self.contextual else "not contextual",
            "p": self.p,
            "l": self.l,
            "degree": self.degree,
            "contextual": self.contextual,
            "polynomial": [
                {"exponents": list(e), "coeff": c} for e, c in self.polynomial.coeffs.items()
            ],
        }


def grid_dimension(spec: MbqcSpec) -> int:
    """``l`` when the inputs are exactly ``Z_d^l`` as integer tuples, else :class:`NotGrid`."""
    labels = spec.inputs
    if not all(isinstance(x, tuple) for x in labels):
        raise NotGrid("input labels are not tuples")
    lens = {len(x) for x in labels}
    if len(lens) != 1:
        raise NotGrid("input tuples have mixed lengths")
    l = lens.pop()
    want = set(itertools.product(range(spec.d), repeat=l))
    if set(labels) != want or len(labels) != len(want):
        raise NotGrid(f"inputs do not form Z_{spec.d}^{l}")
    return l


def contextuality_witness(spec: MbqcSpec) -> ContextualityWitness:
    """Degree of the output function; degree at least ``p`` witnesses contextuality."""
    l = grid_dimension(spec)
    table = evaluate_output(spec)
    poly = interpolate(dict(table.values), spec.d, l)
    deg = poly.total_degree
    return ContextualityWitness(spec.d, l, deg, deg >= spec.d, poly)


def pauli_quantum_solution(spec: MbqcSpec) -> VerificationReport:
    """Check that a Pauli-only computation is a quantum solution of its associated LCS.

    Torsion and row commutativity follow from the Pauli commutation rules,
    and every scalar row product must equal the simulated value; a failure
    of any of these raises :class:`AssertionError`.  The global row
    can still fail when the product of all ``M(i)`` is not a scalar (a
    single input measuring ``X (x) X (x) X`` on GHZ is the smallest case);
    such a report is returned, not raised.
    """
    for k in range(spec.n):
        for i in spec.inputs:
            if not mono.membership(spec.local_ops[(k, i)], mono.TAG_PAULI):
                exc = NotPauli(f"local operator at site {k}, input {i!r} is not Pauli")
                exc.site, exc.input = k, i
                raise exc
    L = associated_lcs(spec, "merged")
    report = verify_quantum(L, induced_assignment(spec, "merged"))
    wrong_scalar = [r for r in report.constraint_residuals if r[1] is not None]
    if report.torsion_failures or report.commutativity_violations or wrong_scalar:
        raise AssertionError(f"Pauli computation failed quantum verification: {report.to_json()}")
    return report


def global_product_is_scalar(spec: MbqcSpec) -> bool:
    prod = TensorOp.identity(spec.d, spec.n)
    for i in spec.inputs:
        prod = prod @ global_op(spec, i)
    return prod.as_scalar() is not None


def merged_is_classical(spec: MbqcSpec) -> bool:
    return classical_solve(associated_lcs(spec, "merged")).verdict == "SAT"
