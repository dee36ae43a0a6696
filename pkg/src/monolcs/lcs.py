"""Linear constraint systems ``A x = b (mod p)`` and their classical and quantum solutions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .phases import Phase
from .tensorops import TensorOp, tensor_commutes, tensor_compose, tensor_power
from .zpfield import SolveResult, ZpMatrix, check_prime, zp_nullspace, zp_solve


@dataclass(frozen=True)
class Lcs:
    p: int
    A: ZpMatrix
    b: tuple[int, ...]
    var_names: tuple[str, ...]

    def __post_init__(self):
        check_prime(self.p)
        if self.A.modulus != self.p:
            raise ValueError("matrix modulus differs from p")
        b = tuple(int(x) % self.p for x in self.b)
        names = tuple(str(x) for x in self.var_names)
        if len(b) != self.A.rows:
            raise ValueError(f"b has {len(b)} entries for {self.A.rows} rows")
        if len(names) != self.A.cols:
            raise ValueError(f"{len(names)} variable names for {self.A.cols} columns")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "var_names", names)

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], b: Sequence[int], var_names=None) -> Lcs:
        A = ZpMatrix(tuple(tuple(r) for r in rows), p)
        if var_names is None:
            var_names = [f"x{k + 1}" for k in range(A.cols)]
        return cls(p, A, tuple(b), tuple(var_names))

    @property
    def rows(self) -> int:
        return self.A.rows

    @property
    def cols(self) -> int:
        return self.A.cols

    def row_support(self, j: int) -> list[int]:
        return [k for k, a in enumerate(self.A.row(j)) if a]

    def permuted(self, row_perm=None, col_perm=None) -> Lcs:
        """Reorder rows and columns; new row ``i`` is old row ``row_perm[i]``."""
        rp = list(range(self.rows)) if row_perm is None else list(row_perm)
        cp = list(range(self.cols)) if col_perm is None else list(col_perm)
        return Lcs(
            self.p,
            self.A.permuted(rp, cp),
            tuple(self.b[i] for i in rp),
            tuple(self.var_names[k] for k in cp),
        )

    def with_rhs(self, b: Sequence[int]) -> Lcs:
        return Lcs(self.p, self.A, tuple(b), self.var_names)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "var_names": list(self.var_names),
            "rows": [
                {"coeffs": [[k, a] for k, a in enumerate(self.A.row(j)) if a], "rhs": self.b[j]}
                for j in range(self.rows)
            ],
        }


@dataclass(frozen=True)
class ClassicalResult:
    lcs: Lcs
    result: SolveResult

    @property
    def verdict(self) -> str:
        return self.result.verdict

    @property
    def solution(self) -> tuple[int, ...] | None:
        return self.result.solution

    @property
    def certificate(self) -> tuple[int, ...] | None:
        return self.result.certificate

    def assignment(self) -> dict[str, int] | None:
        if self.solution is None:
            return None
        return dict(zip(self.lcs.var_names, self.solution))

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "p": self.lcs.p, "rank": self.lcs.A.rank()}
        if self.solution is not None:
            out["solution"] = self.assignment()
            out["solution_space_dim"] = len(zp_nullspace(self.lcs.A))
        else:
            y = self.certificate
            out["certificate"] = {
                "row_weights": list(y),
                "combined_rhs": sum(a * c for a, c in zip(y, self.lcs.b)) % self.lcs.p,
            }
        return out


def classical_solve(L: Lcs) -> ClassicalResult:
    return ClassicalResult(L, zp_solve(L.A, L.b))


@dataclass(frozen=True)
class QuantumAssignment:
    ops: Mapping[str, TensorOp]

    def __post_init__(self):
        ops = dict(self.ops)
        if not ops:
            raise ValueError("empty assignment")
        shapes = {(t.n, t.d) for t in ops.values()}
        if len(shapes) != 1:
            raise ValueError(f"operators have mixed shapes {sorted(shapes)}")
        object.__setattr__(self, "ops", ops)

    @property
    def n(self) -> int:
        return next(iter(self.ops.values())).n

    @property
    def d(self) -> int:
        return next(iter(self.ops.values())).d

    def __getitem__(self, name: str) -> TensorOp:
        return self.ops[name]

    def __eq__(self, other):
        if not isinstance(other, QuantumAssignment):
            return NotImplemented
        return self.ops == other.ops

    def to_json(self) -> dict:
        return {"ops": {k: v.to_json() for k, v in self.ops.items()}}


@dataclass(frozen=True)
class VerificationReport:
    """Result of checking the three quantum-solution conditions.

    ``row_products`` records, for every row whose product could be formed,
    the scalar reached (None if the product is not a scalar); rows with a
    commutativity violation are listed in ``skipped_rows`` instead.
    """

    p: int
    torsion_failures: tuple = ()
    commutativity_violations: tuple = ()
    constraint_residuals: tuple = ()
    skipped_rows: tuple = ()
    row_products: tuple = ()

    @property
    def passed(self) -> bool:
        return not (self.torsion_failures or self.commutativity_violations or self.constraint_residuals)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "p": self.p,
            "torsion_failures": [{"var": v, "order": o} for v, o in self.torsion_failures],
            "commutativity_violations": [
                {"row": j, "pair": [a, b]} for j, a, b in self.commutativity_violations
            ],
            "constraint_residuals": [
                {"row": j, "achieved": None if ph is None else ph.to_json(), "expected": exp.to_json()}
                for j, ph, exp in self.constraint_residuals
            ],
            "skipped_rows": list(self.skipped_rows),
            "row_products": [
                {"row": j, "product": None if ph is None else ph.to_json()} for j, ph in self.row_products
            ],
        }


def verify_quantum(L: Lcs, qa: QuantumAssignment) -> VerificationReport:
    p = L.p
    missing = [v for v in L.var_names if v not in qa.ops]
    if missing:
        raise ValueError(f"assignment misses variables {missing}")
    if qa.d != p:
        raise ValueError(f"assignment dimension {qa.d} differs from p = {p}")
    ops = [qa[v] for v in L.var_names]

    torsion = tuple((v, t.order()) for v, t in zip(L.var_names, ops) if p % t.order())

    violations = []
    bad_rows = set()
    for j in range(L.rows):
        sup = L.row_support(j)
        for x, k in enumerate(sup):
            for k2 in sup[x + 1:]:
                if not tensor_commutes(ops[k], ops[k2]).commute:
                    violations.append((j, L.var_names[k], L.var_names[k2]))
                    bad_rows.add(j)

    residuals, products = [], []
    for j in range(L.rows):
        if j in bad_rows:
            continue
        prod = TensorOp.identity(qa.d, qa.n)
        for k in L.row_support(j):
            prod = tensor_compose(prod, tensor_power(ops[k], L.A[j, k]))
        lam = prod.as_scalar()
        expected = Phase(L.b[j], p)
        products.append((j, lam))
        if lam != expected:
            residuals.append((j, lam, expected))

    return VerificationReport(
        p,
        torsion,
        tuple(violations),
        tuple(residuals),
        tuple(sorted(bad_rows)),
        tuple(products),
    )
