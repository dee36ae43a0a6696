"""Tensor products of monomial operators and sparse phase-weighted states."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import monomial as mono
from .monomial import DimensionMismatch, MonomialOp, NotProportional
from .phases import UNIT, Phase


class NotEigenstate(ValueError):
    """Raised when a state is not an eigenvector; ``witness`` is a basis tuple where it fails."""

    def __init__(self, witness, message: str = ""):
        super().__init__(message or f"not an eigenstate; witness basis {witness}")
        self.witness = witness


@dataclass(frozen=True)
class TensorOp:
    factors: tuple[MonomialOp, ...]
    global_phase: Phase = UNIT

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ValueError("a tensor operator needs at least one factor")
        if len({f.d for f in factors}) != 1:
            raise DimensionMismatch("all tensor factors must share the dimension")
        object.__setattr__(self, "factors", factors)

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def d(self) -> int:
        return self.factors[0].d

    @classmethod
    def identity(cls, d: int, n: int) -> TensorOp:
        return cls(tuple(mono.identity(d) for _ in range(n)))

    def canonical(self) -> TensorOp:
        """Equal operators have equal canonical forms.

        Each factor's first phase (at basis 0) is moved into the global phase.
        """
        g = self.global_phase
        out = []
        for f in self.factors:
            ph = f.phase(0)
            g = g * ph
            out.append(f.scaled(ph.inverse()))
        return TensorOp(tuple(out), g)

    def __eq__(self, other):
        if not isinstance(other, TensorOp):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.factors == b.factors and a.global_phase == b.global_phase

    def __hash__(self):
        c = self.canonical()
        return hash((c.factors, c.global_phase))

    def as_scalar(self) -> Phase | None:
        """The phase ``lam`` if this operator is ``lam * Identity``, else None."""
        if not all(f.is_scalar() for f in self.factors):
            return None
        return self.canonical().global_phase

    def __matmul__(self, other: TensorOp) -> TensorOp:
        return tensor_compose(self, other)

    def __pow__(self, k: int) -> TensorOp:
        return tensor_power(self, k)

    def inverse(self) -> TensorOp:
        return TensorOp(tuple(f.inverse() for f in self.factors), self.global_phase.inverse())

    def scaled(self, ph: Phase) -> TensorOp:
        return TensorOp(self.factors, self.global_phase * ph)

    def order(self) -> int:
        """Least ``m`` with ``self ** m`` the identity."""
        from math import gcd

        r = 1
        for f in self.factors:
            o = mono.order(f)
            r = r * o // gcd(r, o)
        # t^r is a scalar; its phase order finishes the count
        for k in range(1, r + 1):
            if r % k == 0:
                lam = tensor_power(self, k).as_scalar()
                if lam is not None:
                    return k * lam.den
        raise AssertionError("unreachable")

    def apply_basis(self, basis: Sequence[int]) -> tuple[Phase, tuple[int, ...]]:
        ph = self.global_phase
        out = []
        for f, q in zip(self.factors, basis):
            x, y = f.apply_basis(q)
            ph = ph * x
            out.append(y)
        return ph, tuple(out)

    def __repr__(self):
        return f"TensorOp({list(self.factors)}, global_phase={self.global_phase!r})"

    def to_json(self) -> dict:
        return {"factors": [f.to_json() for f in self.factors], "global_phase": self.global_phase.to_json()}


def _check_shapes(a: TensorOp, b: TensorOp):
    if a.n != b.n or a.d != b.d:
        raise DimensionMismatch(f"shapes (n={a.n}, d={a.d}) and (n={b.n}, d={b.d}) differ")


def tensor_compose(a: TensorOp, b: TensorOp) -> TensorOp:
    _check_shapes(a, b)
    return TensorOp(
        tuple(mono.compose(x, y) for x, y in zip(a.factors, b.factors)),
        a.global_phase * b.global_phase,
    )


def tensor_power(t: TensorOp, k: int) -> TensorOp:
    if k < 0:
        return tensor_power(t.inverse(), -k)
    return TensorOp(tuple(mono.power(f, k) for f in t.factors), t.global_phase ** k)


def tensor_product_of(ops: Iterable[TensorOp]) -> TensorOp:
    """Left-to-right product ``ops[0] @ ops[1] @ ...``."""
    ops = list(ops)
    out = ops[0]
    for o in ops[1:]:
        out = tensor_compose(out, o)
    return out


def kron(*factors: MonomialOp, phase: Phase = UNIT) -> TensorOp:
    return TensorOp(tuple(factors), phase)


def local(d: int, n: int, site: int, op: MonomialOp) -> TensorOp:
    """``op`` acting on ``site``, identity elsewhere."""
    return TensorOp(tuple(op if k == site else mono.identity(d) for k in range(n)))


def full_action(t: TensorOp) -> dict[tuple[int, ...], tuple[Phase, tuple[int, ...]]]:
    """Action on every basis tuple of ``(C^d)^{n}``; used as a dense oracle."""
    return {b: t.apply_basis(b) for b in itertools.product(range(t.d), repeat=t.n)}


# -- states ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SparseState:
    d: int
    n: int
    support: Mapping[tuple[int, ...], Phase]

    def __post_init__(self):
        sup = {}
        for b, ph in dict(self.support).items():
            b = tuple(int(x) for x in b)
            if len(b) != self.n or any(not 0 <= x < self.d for x in b):
                raise ValueError(f"basis tuple {b} out of range for d={self.d}, n={self.n}")
            if not isinstance(ph, Phase):
                ph = Phase.from_fraction(ph)
            sup[b] = ph
        if not sup:
            raise ValueError("state support must be nonempty")
        object.__setattr__(self, "support", dict(sorted(sup.items())))

    def __eq__(self, other):
        if not isinstance(other, SparseState):
            return NotImplemented
        return (self.d, self.n, self.support) == (other.d, other.n, other.support)

    def __hash__(self):
        return hash((self.d, self.n, tuple(self.support.items())))

    def scaled(self, ph: Phase) -> SparseState:
        return SparseState(self.d, self.n, {b: c * ph for b, c in self.support.items()})

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "support": [{"basis": list(b), "phase": c.to_json()} for b, c in self.support.items()],
        }


def ghz(d: int, n: int) -> SparseState:
    if d < 2 or n < 1:
        raise ValueError("ghz needs d >= 2 and n >= 1")
    return SparseState(d, n, {(q,) * n: UNIT for q in range(d)})


def product_state(d: int, basis: Sequence[int]) -> SparseState:
    return SparseState(d, len(basis), {tuple(basis): UNIT})


def tensor_apply(t: TensorOp, s: SparseState) -> SparseState:
    if t.d != s.d or t.n != s.n:
        raise DimensionMismatch(f"operator (n={t.n}, d={t.d}) vs state (n={s.n}, d={s.d})")
    out = {}
    for b, c in s.support.items():
        ph, img = t.apply_basis(b)
        out[img] = c * ph
    return SparseState(s.d, s.n, out)


def eigenphase(t: TensorOp, s: SparseState) -> Phase:
    """``phi`` with ``t |s> = phi |s>`` exactly, else :class:`NotEigenstate`."""
    image = tensor_apply(t, s)
    phi = None
    for b, c in s.support.items():
        if b not in image.support:
            raise NotEigenstate(b, f"basis {b} leaves the support")
        ratio = image.support[b] / c
        if phi is None:
            phi = ratio
        elif ratio != phi:
            raise NotEigenstate(b, f"coefficient ratio {ratio!r} at {b} differs from {phi!r}")
    return phi


# -- commutation analysis -------------------------------------------------------------


@dataclass(frozen=True)
class CommutationReport:
    """Site-local analysis of whether two tensor operators commute.

    ``site_phases[k]`` is ``lam_k`` with ``u'_k u_k = lam_k u_k u'_k`` or a
    :class:`NotProportional`; ``exponents[k]`` is ``l_k in Z_d`` where
    ``u_k u'_k = omega^{l_k} u'_k u_k`` (None when undefined).
    """

    d: int
    site_phases: tuple
    exponents: tuple
    exponent_sum: int | None
    commute: bool
    direct: bool | None = None
    global_ratio: Phase | None = None

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "site_phases": [
                ph.to_json() if isinstance(ph, Phase) else {"not_proportional_at": ph.basis}
                for ph in self.site_phases
            ],
            "exponents": list(self.exponents),
            "exponent_sum": self.exponent_sum,
            "commute": self.commute,
            "direct": self.direct,
        }


def _direct_commute(a: TensorOp, b: TensorOp) -> bool:
    """Compare ``ab`` and ``ba`` on every basis tuple of the full space."""
    for basis in itertools.product(range(a.d), repeat=a.n):
        p1, x1 = b.apply_basis(basis)
        p1b, y1 = a.apply_basis(x1)
        p2, x2 = a.apply_basis(basis)
        p2b, y2 = b.apply_basis(x2)
        if y1 != y2 or p1 * p1b != p2 * p2b:
            return False
    return True


def tensor_commutes(a: TensorOp, b: TensorOp, oracle: bool = False) -> CommutationReport:
    """Decide ``[a, b] = 1`` from the site-local phases.

    Two monomial tensors commute exactly when every site is proportional and
    the site phases multiply to one; for ``d``-torsion factors that is the
    condition ``sum l_k = 0 mod d``.  With ``oracle=True``
    the full-space commutator is also computed and any disagreement raises.
    """
    _check_shapes(a, b)
    d = a.d
    site_phases = []
    exps = []
    for u, v in zip(a.factors, b.factors):
        lam = mono.commute_up_to_phase(u, v)
        site_phases.append(lam)
        if isinstance(lam, NotProportional):
            exps.append(None)
        elif d % lam.den:
            exps.append(None)
        else:
            # u v = lam^{-1} v u, so l_k is the exponent of lam^{-1}
            exps.append((-lam.num * (d // lam.den)) % d)
    if any(isinstance(lam, NotProportional) for lam in site_phases):
        total, verdict = None, False
    else:
        ratio = UNIT
        for lam in site_phases:
            ratio = ratio * lam
        verdict = ratio.is_unit()
        total = None if any(e is None for e in exps) else sum(exps) % d
    direct = None
    if oracle:
        direct = _direct_commute(a, b)
        if direct != verdict:
            raise AssertionError(f"local commutation verdict {verdict} disagrees with direct {direct}")
    return CommutationReport(d, tuple(site_phases), tuple(exps), total, verdict, direct)


def tensor_commute_direct(a: TensorOp, b: TensorOp) -> bool:
    _check_shapes(a, b)
    return _direct_commute(a, b)
