"""Arithmetic and linear algebra over the prime field Z_p.

Matrices are small (the largest instance used here is 50 x 70 at p = 7), so
everything is plain Python integers with Gauss-Jordan elimination.  Pivots are
the first nonzero entry in column order, which keeps certificates reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p!r}")
    return p


class DimensionError(ValueError):
    pass


class IncompleteTable(ValueError):
    pass


@dataclass(frozen=True)
class ZpScalar:
    value: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, ZpScalar):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.value
        if isinstance(other, int):
            return other
        raise TypeError(type(other))

    def __add__(self, other):
        return ZpScalar(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return ZpScalar(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return ZpScalar(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return ZpScalar(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ZpScalar(-self.value, self.modulus)

    def __pow__(self, k: int):
        return ZpScalar(pow(self.value, k, self.modulus), self.modulus)

    def inverse(self) -> ZpScalar:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in Z_p")
        return ZpScalar(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * ZpScalar(self._coerce(other), self.modulus).inverse()

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus
        if isinstance(other, ZpScalar):
            return self.value == other.value and self.modulus == other.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True)
class ZpMatrix:
    """An r x s matrix over Z_p; entries are stored reduced as ints."""

    entries: tuple[tuple[int, ...], ...]
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        rows = tuple(tuple(int(x) % self.modulus for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise DimensionError("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def zeros(cls, r: int, s: int, p: int) -> ZpMatrix:
        return cls(tuple((0,) * s for _ in range(r)), p)

    @classmethod
    def identity(cls, n: int, p: int) -> ZpMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), p)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.entries[i][j]

    def entry(self, i: int, j: int) -> ZpScalar:
        return ZpScalar(self.entries[i][j], self.modulus)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def transpose(self) -> ZpMatrix:
        return ZpMatrix(tuple(zip(*self.entries)), self.modulus)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product ``A x``."""
        if len(x) != self.cols:
            raise DimensionError(f"vector length {len(x)} != {self.cols} columns")
        p = self.modulus
        return tuple(sum(a * int(v) for a, v in zip(row, x)) % p for row in self.entries)

    def left_apply(self, y: Sequence[int]) -> tuple[int, ...]:
        """Row-vector product ``y^T A``."""
        if len(y) != self.rows:
            raise DimensionError(f"vector length {len(y)} != {self.rows} rows")
        p = self.modulus
        return tuple(
            sum(int(y[i]) * self.entries[i][j] for i in range(self.rows)) % p
            for j in range(self.cols)
        )

    def __matmul__(self, other: ZpMatrix) -> ZpMatrix:
        if other.modulus != self.modulus or self.cols != other.rows:
            raise DimensionError("incompatible matrices")
        cols = other.transpose().entries
        p = self.modulus
        return ZpMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols) for r in self.entries),
            p,
        )

    def permuted(self, row_perm: Sequence[int] | None = None, col_perm: Sequence[int] | None = None):
        """Return the matrix with rows/columns reordered: new[i][j] = old[row_perm[i]][col_perm[j]]."""
        rp = range(self.rows) if row_perm is None else row_perm
        cp = range(self.cols) if col_perm is None else col_perm
        return ZpMatrix(tuple(tuple(self.entries[i][j] for j in cp) for i in rp), self.modulus)

    def rank(self) -> int:
        return len(rref(self)[2])


def rref(A: ZpMatrix):
    """Reduced row echelon form.

    Returns ``(R, E, pivots)`` with ``E @ A == R`` where ``E`` is invertible
    and ``pivots`` lists the pivot column of each nonzero row of ``R``.
    """
    p = A.modulus
    r, s = A.shape
    R = [list(row) for row in A.entries]
    E = [[int(i == j) for j in range(r)] for i in range(r)]
    pivots: list[int] = []
    lead = 0
    for col in range(s):
        if lead == r:
            break
        piv = next((i for i in range(lead, r) if R[i][col]), None)
        if piv is None:
            continue
        R[lead], R[piv] = R[piv], R[lead]
        E[lead], E[piv] = E[piv], E[lead]
        inv = pow(R[lead][col], -1, p)
        R[lead] = [x * inv % p for x in R[lead]]
        E[lead] = [x * inv % p for x in E[lead]]
        for i in range(r):
            f = R[i][col]
            if i != lead and f:
                R[i] = [(x - f * y) % p for x, y in zip(R[i], R[lead])]
                E[i] = [(x - f * y) % p for x, y in zip(E[i], E[lead])]
        pivots.append(col)
        lead += 1
    return ZpMatrix(tuple(map(tuple, R)), p), ZpMatrix(tuple(map(tuple, E)), p), pivots


@dataclass(frozen=True)
class SolveResult:
    """Outcome of :func:`zp_solve`.

    Exactly one of ``solution`` (``A x = b``) and ``certificate``
    (``y^T A = 0``, ``y^T b != 0``) is set.
    """

    solution: tuple[int, ...] | None = None
    certificate: tuple[int, ...] | None = None

    @property
    def consistent(self) -> bool:
        return self.solution is not None

    @property
    def verdict(self) -> str:
        return "SAT" if self.consistent else "UNSAT"


def _vector(b: Iterable, p: int) -> tuple[int, ...]:
    out = []
    for v in b:
        if isinstance(v, ZpScalar) and v.modulus != p:
            raise ValueError("mixed moduli")
        out.append(int(v) % p)
    return tuple(out)


def zp_solve(A: ZpMatrix, b: Sequence) -> SolveResult:
    """Solve ``A x = b`` over Z_p, or return an inconsistency certificate."""
    p = A.modulus
    b = _vector(b, p)
    if len(b) != A.rows:
        raise DimensionError(f"rhs length {len(b)} != {A.rows} rows")
    R, E, pivots = rref(A)
    eb = E.apply(b)
    rank = len(pivots)
    for i in range(rank, A.rows):
        if eb[i]:
            y = E.row(i)
            if any(A.left_apply(y)) or sum(a * c for a, c in zip(y, b)) % p == 0:
                raise AssertionError("certificate failed verification")
            return SolveResult(certificate=y)
    x = [0] * A.cols
    for i, col in enumerate(pivots):
        x[col] = eb[i]
    x = tuple(x)
    if A.apply(x) != b:
        raise AssertionError("solution failed verification")
    return SolveResult(solution=x)


def zp_nullspace(A: ZpMatrix) -> list[tuple[int, ...]]:
    """A basis of ``{x : A x = 0}``, one vector per free column."""
    p = A.modulus
    R, _, pivots = rref(A)
    free = [j for j in range(A.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * A.cols
        v[f] = 1
        for i, col in enumerate(pivots):
            v[col] = -R[i, f] % p
        v = tuple(v)
        if any(A.apply(v)):
            raise AssertionError("nullspace vector failed verification")
        basis.append(v)
    return basis


def zp_rank(A: ZpMatrix) -> int:
    return A.rank()


def zp_inverse(A: ZpMatrix) -> ZpMatrix:
    if A.rows != A.cols:
        raise DimensionError("only square matrices are invertible")
    R, E, pivots = rref(A)
    if len(pivots) != A.rows:
        raise ZeroDivisionError("matrix is singular")
    return E


# -- polynomials -----------------------------------------------------------------


def _mono_eval(exps: Sequence[int], point: Sequence[int], p: int) -> int:
    out = 1
    for e, x in zip(exps, point):
        if e:
            out = out * pow(x, e, p) % p
    return out


@dataclass(frozen=True)
class ZpPoly:
    """Polynomial in ``nvars`` variables over Z_p with per-variable degree <= p - 1.

    ``coeffs`` maps exponent tuples to nonzero coefficients.
    """

    nvars: int
    modulus: int
    coeffs: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        p = check_prime(self.modulus)
        clean = {}
        for exps, c in dict(self.coeffs).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise DimensionError(f"exponent tuple {exps} has wrong length")
            if any(e < 0 or e > p - 1 for e in exps):
                raise ValueError(f"exponent tuple {exps} exceeds degree p - 1")
            c = int(c) % p
            if c:
                clean[exps] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __call__(self, *point: int) -> int:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        p = self.modulus
        return sum(c * _mono_eval(e, point, p) for e, c in self.coeffs.items()) % p

    evaluate = __call__

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=0)

    def table(self) -> dict[tuple[int, ...], int]:
        return {pt: self(pt) for pt in grid(self.modulus, self.nvars)}

    def __eq__(self, other):
        if not isinstance(other, ZpPoly):
            return NotImplemented
        return (self.nvars, self.modulus, self.coeffs) == (other.nvars, other.modulus, other.coeffs)

    def __hash__(self):
        return hash((self.nvars, self.modulus, tuple(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e, c in self.coeffs.items():
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            terms.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(terms) + f" (mod {self.modulus})"


def grid(p: int, l: int) -> list[tuple[int, ...]]:
    """All points of Z_p^l in lexicographic order."""
    return list(itertools.product(range(p), repeat=l))


@lru_cache(maxsize=None)
def _interpolation_inverse(p: int, l: int) -> ZpMatrix:
    points = grid(p, l)
    monos = grid(p, l)
    V = ZpMatrix(tuple(tuple(_mono_eval(m, x, p) for m in monos) for x in points), p)
    return zp_inverse(V)


def interpolate(values, p: int, nvars: int | None = None) -> ZpPoly:
    """The unique reduced polynomial whose values on Z_p^l are ``values``.

    ``values`` is either a mapping from points to values or a sequence of
    ``p**l`` values in lexicographic point order.
    """
    check_prime(p)
    if isinstance(values, Mapping):
        keys = list(values)
        if nvars is None:
            if not keys:
                raise IncompleteTable("empty table")
            nvars = len(tuple(keys[0]))
        points = grid(p, nvars)
        missing = [x for x in points if x not in values]
        if missing or len(values) != len(points):
            raise IncompleteTable(f"table must have exactly {p}^{nvars} entries; missing {missing[:3]}")
        vec = [int(values[x]) % p for x in points]
    else:
        vec = [int(v) % p for v in values]
        if nvars is None:
            nvars, n = 0, 1
            while n < len(vec):
                n *= p
                nvars += 1
        if len(vec) != p ** nvars:
            raise IncompleteTable(f"expected {p ** nvars} values, got {len(vec)}")
    coeffs = _interpolation_inverse(p, nvars).apply(vec)
    poly = ZpPoly(nvars, p, dict(zip(grid(p, nvars), coeffs)))
    if [poly(x) for x in grid(p, nvars)] != vec:
        raise AssertionError("interpolation failed verification")
    return poly
