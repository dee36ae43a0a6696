"""Single-qudit monomial unitaries.

A :class:`MonomialOp` acts on the computational basis as
``U|q> = xi(q) |sigma(q)>``; its matrix has the entry ``xi(q)`` at
``(sigma(q), q)``.  Writing ``U = S_chi P_sigma`` with the phase gate on the
left gives ``chi(sigma(q)) = xi(q)``; :meth:`MonomialOp.left_diagonal`
returns ``chi``.  The pair notation ``(chi, sigma)`` used for groups such as
``K``, ``L`` and ``N`` always refers to this left factorisation.

Phases are stored as integer numerators over one reduced common denominator,
which keeps composition cheap inside the homomorphism audits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import perms as P
from .phases import Phase
from .zpfield import ZpScalar, check_prime


class NotPauli(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class NotProportional:
    """``MM'`` and ``M'M`` are not scalar multiples; ``basis`` is the first witness column."""

    basis: int

    def __bool__(self):
        return False


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Phase):
        return x.exponent
    return Fraction(x)


class MonomialOp:
    __slots__ = ("perm", "nums", "den", "_hash")

    def __init__(self, perm: Sequence[int], phases: Iterable | None = None):
        perm = P.check_perm(perm)
        d = len(perm)
        if phases is None:
            nums, den = (0,) * d, 1
        else:
            fr = [_as_fraction(x) for x in phases]
            if len(fr) != d:
                raise DimensionMismatch(f"{len(fr)} phases for dimension {d}")
            den = 1
            for f in fr:
                den = _lcm(den, f.denominator)
            nums = tuple(f.numerator * (den // f.denominator) for f in fr)
        object.__setattr__(self, "perm", perm)
        self._set_phases(nums, den)

    def _set_phases(self, nums, den):
        nums = tuple(n % den for n in nums)
        g = den
        for n in nums:
            g = gcd(g, n)
            if g == 1:
                break
        if g > 1:
            nums = tuple(n // g for n in nums)
            den //= g
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, perm, nums, den) -> MonomialOp:
        op = object.__new__(cls)
        object.__setattr__(op, "perm", perm)
        op._set_phases(nums, den)
        return op

    def __setattr__(self, name, value):
        raise AttributeError("MonomialOp is immutable")

    # -- basic views ------------------------------------------------------------

    @property
    def d(self) -> int:
        return len(self.perm)

    @property
    def phases(self) -> tuple[Phase, ...]:
        return tuple(Phase(n, self.den) for n in self.nums)

    def phase(self, q: int) -> Phase:
        return Phase(self.nums[q], self.den)

    def left_diagonal(self) -> tuple[Phase, ...]:
        """``chi`` with ``self == diag(chi) @ perm_gate(self.perm)``."""
        inv = P.perm_inverse(self.perm)
        return tuple(Phase(self.nums[inv[j]], self.den) for j in range(self.d))

    @classmethod
    def from_left(cls, perm: Sequence[int], chi: Iterable) -> MonomialOp:
        """Build ``S_chi P_sigma``."""
        perm = P.check_perm(perm)
        chi = [_as_fraction(x) for x in chi]
        return cls(perm, [chi[perm[q]] for q in range(len(perm))])

    def diagonal_part(self) -> MonomialOp:
        """The phase gate ``S_chi`` of the left factorisation."""
        return MonomialOp(P.identity_perm(self.d), self.left_diagonal())

    def permutation_part(self) -> MonomialOp:
        return MonomialOp(self.perm)

    def is_diagonal(self) -> bool:
        return P.is_identity(self.perm)

    def is_identity(self) -> bool:
        return self.is_diagonal() and not any(self.nums)

    def is_scalar(self) -> bool:
        return self.is_diagonal() and len(set(self.nums)) == 1

    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.nums)

    def apply_basis(self, q: int) -> tuple[Phase, int]:
        return self.phase(q), self.perm[q]

    def sort_key(self):
        """Total order: one-line permutation form, then phase exponents."""
        return self.perm, self.exponents()

    # -- algebra ----------------------------------------------------------------

    def __matmul__(self, other: MonomialOp) -> MonomialOp:
        return compose(self, other)

    def __pow__(self, k: int) -> MonomialOp:
        return power(self, k)

    def inverse(self) -> MonomialOp:
        inv = P.perm_inverse(self.perm)
        return MonomialOp._raw(inv, tuple(-self.nums[inv[j]] for j in range(self.d)), self.den)

    def scaled(self, ph: Phase) -> MonomialOp:
        den = _lcm(self.den, ph.den)
        s, t = den // self.den, ph.num * (den // ph.den)
        return MonomialOp._raw(self.perm, tuple(n * s + t for n in self.nums), den)

    def __eq__(self, other):
        if not isinstance(other, MonomialOp):
            return NotImplemented
        return self.perm == other.perm and self.den == other.den and self.nums == other.nums

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.perm, self.nums, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        ph = ", ".join(f"{n}/{self.den}" if n else "0" for n in self.nums)
        return f"MonomialOp(perm={list(self.perm)}, phases=[{ph}])"

    def __getstate__(self):
        return self.perm, self.nums, self.den

    def __setstate__(self, state):
        perm, nums, den = state
        object.__setattr__(self, "perm", perm)
        self._set_phases(nums, den)

    # -- serialisation ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"d": self.d, "perm": list(self.perm), "phases": [p.to_json() for p in self.phases]}

    @classmethod
    def from_json(cls, obj) -> MonomialOp:
        from .serialization import monomial_from_json

        return monomial_from_json(obj)


def _check_same_d(a: MonomialOp, b: MonomialOp):
    if a.d != b.d:
        raise DimensionMismatch(f"dimensions {a.d} and {b.d} differ")


def compose(a: MonomialOp, b: MonomialOp) -> MonomialOp:
    """Matrix product ``a @ b`` (apply ``b`` first)."""
    _check_same_d(a, b)
    den = _lcm(a.den, b.den)
    sa, sb = den // a.den, den // b.den
    an, ap = a.nums, a.perm
    perm = tuple(ap[x] for x in b.perm)
    nums = tuple(n * sb + an[x] * sa for n, x in zip(b.nums, b.perm))
    return MonomialOp._raw(perm, nums, den)


def power(m: MonomialOp, k: int) -> MonomialOp:
    """``m ** k`` via ``m^k|q> = prod_{i<k} xi(sigma^i q) |sigma^k q>``; negative ``k`` inverts."""
    if k < 0:
        return power(m.inverse(), -k)
    d = m.d
    r = P.perm_order(m.perm)
    if k >= r:
        # m^r is diagonal, so its powers are cheap to form
        full, rem = divmod(k, r)
        base = _power_small(m, r)
        diag = MonomialOp._raw(P.identity_perm(d), tuple(n * full for n in base.nums), base.den)
        return compose(_power_small(m, rem), diag)
    return _power_small(m, k)


def _power_small(m: MonomialOp, k: int) -> MonomialOp:
    d = m.d
    nums = []
    perm = []
    for q in range(d):
        acc, x = 0, q
        for _ in range(k):
            acc += m.nums[x]
            x = m.perm[x]
        nums.append(acc)
        perm.append(x)
    return MonomialOp._raw(tuple(perm), tuple(nums), m.den)


def order(m: MonomialOp) -> int:
    """Least ``n >= 1`` with ``m ** n`` the identity.

    Rational phases always give a finite order: ``m^r`` is diagonal for
    ``r`` the permutation order, and a diagonal gate has order equal to the
    common denominator of its phases.
    """
    r = P.perm_order(m.perm)
    return r * _power_small(m, r).den


def inverse(m: MonomialOp) -> MonomialOp:
    return m.inverse()


def commutator(a: MonomialOp, b: MonomialOp) -> MonomialOp:
    """``a b a^-1 b^-1``."""
    return compose(compose(a, b), compose(a.inverse(), b.inverse()))


def commute_up_to_phase(a: MonomialOp, b: MonomialOp) -> Phase | NotProportional:
    """``lam`` with ``b a = lam * (a b)``, or :class:`NotProportional`."""
    ab, ba = compose(a, b), compose(b, a)
    for q in range(a.d):
        if ab.perm[q] != ba.perm[q]:
            return NotProportional(q)
    den = _lcm(ab.den, ba.den)
    s1, s2 = den // ab.den, den // ba.den
    lam = None
    for q in range(a.d):
        diff = (ba.nums[q] * s2 - ab.nums[q] * s1) % den
        if lam is None:
            lam = diff
        elif diff != lam:
            return NotProportional(q)
    return Phase(lam, den)


def determinant(m: MonomialOp) -> Phase:
    """``sign(sigma) * prod xi(q)`` as a phase; ``-1`` is ``Phase(1/2)``."""
    det = Phase(sum(m.nums), m.den)
    if P.perm_sign(m.perm) < 0:
        det = det * Phase(1, 2)
    return det


def conjugate_by_perm(tau: Sequence[int], m: MonomialOp) -> MonomialOp:
    """``P_tau m P_tau^-1``: permutation ``tau sigma tau^-1``, phase at ``q`` is ``xi(tau^-1 q)``."""
    tau = P.check_perm(tau, m.d)
    inv = P.perm_inverse(tau)
    perm = tuple(tau[m.perm[inv[q]]] for q in range(m.d))
    nums = tuple(m.nums[inv[q]] for q in range(m.d))
    return MonomialOp._raw(perm, nums, m.den)


# -- constructors -------------------------------------------------------------------


def identity(d: int) -> MonomialOp:
    return MonomialOp(P.identity_perm(d))


def scalar(d: int, ph: Phase) -> MonomialOp:
    return MonomialOp(P.identity_perm(d), [ph] * d)


def omega(d: int, c: int = 1) -> MonomialOp:
    """``omega_d^c`` times the identity."""
    return scalar(d, Phase(c, d))


def perm_gate(perm: Sequence[int]) -> MonomialOp:
    return MonomialOp(perm)


def phase_gate(phases: Iterable) -> MonomialOp:
    phases = list(phases)
    return MonomialOp(P.identity_perm(len(phases)), phases)


def shift(d: int, k: int = 1) -> MonomialOp:
    """``X^k``: ``|q> -> |q + k>``."""
    return MonomialOp(P.cycle_perm(d, k))


def clock(d: int, k: int = 1) -> MonomialOp:
    """``Z^k``: ``|q> -> omega^{kq} |q>``."""
    return phase_gate(Phase(k * q, d) for q in range(d))


def X(d: int) -> MonomialOp:
    return shift(d, 1)


def Z(d: int) -> MonomialOp:
    return clock(d, 1)


def qubit_Y() -> MonomialOp:
    """``Y = [[0, -i], [i, 0]]``: ``Y|0> = i|1>``, ``Y|1> = -i|0>``."""
    return MonomialOp((1, 0), [Phase(1, 4), Phase(3, 4)])


def weyl(x, z, p: int) -> MonomialOp:
    """``W(x, z) = tau^{-xz} Z^z X^x`` with ``tau = omega^{(p+1)/2}``, ``p`` an odd prime."""
    check_prime(p)
    if p == 2:
        raise ValueError("weyl operators are defined here for odd p only")
    x, z = int(x) % p, int(z) % p
    half = (p + 1) // 2
    m = compose(clock(p, z), shift(p, x))
    return m.scaled(Phase(-x * z * half, p))


# -- group membership -----------------------------------------------------------------


@dataclass(frozen=True)
class GroupTag:
    """One of ``T, T_pm(m), H, K, L, N_SU, N_U, Pauli``."""

    kind: str
    m: int | None = None

    KINDS = ("T", "T_pm", "H", "K", "L", "N_SU", "N_U", "Pauli")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown group tag {self.kind!r}")
        if (self.kind == "T_pm") != (self.m is not None):
            raise ValueError("T_pm takes an exponent m >= 1; other tags take none")
        if self.m is not None and self.m < 1:
            raise ValueError("m must be positive")

    @classmethod
    def parse(cls, text: str) -> GroupTag:
        if text.startswith("T_pm"):
            return cls("T_pm", int(text[4:].strip("()")))
        return cls(text)

    def __str__(self):
        return f"T_pm({self.m})" if self.kind == "T_pm" else self.kind


TAG_T = GroupTag("T")
TAG_H = GroupTag("H")
TAG_K = GroupTag("K")
TAG_L = GroupTag("L")
TAG_N_SU = GroupTag("N_SU")
TAG_N_U = GroupTag("N_U")
TAG_PAULI = GroupTag("Pauli")


def T_pm(m: int) -> GroupTag:
    return GroupTag("T_pm", m)


def _diag_det_one(m: MonomialOp) -> bool:
    return sum(m.nums) % m.den == 0


def _affine_left(m: MonomialOp) -> bool:
    """Left diagonal is ``omega^{a + bq}`` with ``omega`` a ``d``-th root."""
    d = m.d
    if d % m.den:
        return False
    chi = [x.num * (d // x.den) for x in m.left_diagonal()]
    step = (chi[1] - chi[0]) % d if d > 1 else 0
    return all((chi[q] - chi[0] - step * q) % d == 0 for q in range(d))


def membership(m: MonomialOp, tag: GroupTag | str) -> bool:
    if isinstance(tag, str):
        tag = GroupTag.parse(tag)
    kind = tag.kind
    d = m.d
    if kind == "N_U":
        return True
    if kind == "N_SU":
        return determinant(m).is_unit()
    if kind == "T":
        return m.is_diagonal() and _diag_det_one(m)
    check_prime(d)
    if kind == "T_pm":
        return m.is_diagonal() and _diag_det_one(m) and (d ** tag.m) % m.den == 0
    if kind == "K":
        return P.cycle_exponent(m.perm) is not None and _diag_det_one(m)
    if kind == "L":
        return d % m.den == 0 and _diag_det_one(m)
    if kind == "H":
        return P.cycle_exponent(m.perm) is not None and _affine_left(m)
    if kind == "Pauli":
        if d != 2:
            return P.cycle_exponent(m.perm) is not None and _affine_left(m)
        if 4 % m.den:
            return False
        chi = m.left_diagonal()
        return (chi[1] / chi[0]).den <= 2
    raise AssertionError(kind)


def pauli_decompose(m: MonomialOp) -> tuple[ZpScalar, ZpScalar, ZpScalar]:
    """``(c, a, b)`` with ``m == omega^c Z^a X^b`` exactly.

    For ``d = 2`` only ``<X, Z, -1>`` decomposes; operators carrying a factor
    ``i`` (such as ``Y``) raise :class:`NotPauli`.
    """
    p = check_prime(m.d)
    b = P.cycle_exponent(m.perm)
    if b is None:
        raise NotPauli(f"permutation {m.perm} is not a power of the shift")
    if p % m.den:
        raise NotPauli("phases are not p-th roots of unity")
    e = [n * (p // m.den) for n in m.nums]
    a = (e[1] - e[0]) % p
    c = (e[0] - a * b) % p
    if any((c + a * (q + b) - e[q]) % p for q in range(p)):
        raise NotPauli("phase exponent is not affine")
    out = ZpScalar(c, p), ZpScalar(a, p), ZpScalar(b, p)
    again = compose(clock(p, a), shift(p, b)).scaled(Phase(c, p))
    if again != m:
        raise AssertionError("pauli decomposition failed recomposition")
    return out
