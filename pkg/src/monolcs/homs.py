"""Structure maps into the Heisenberg-Weyl group and their audits.

Notation: ``(chi, sigma)`` is the monomial ``S_chi P_sigma`` (left diagonal
``chi``), ``tau . M`` is conjugation ``P_tau M P_tau^-1``, and ``H`` is the
Heisenberg-Weyl group ``{omega^c Z^a X^b}`` in odd prime dimension ``p``.

The maps implemented here:

* ``phi_N_Sp``: the census conjugator that turns the permutation part of a
  ``p``-cycle element into a power of the standard shift;
* ``phi_Tp_H``: ``diag(omega^{x_q}) -> diag(omega^{x_0 + (x_1 - x_0) q})``;
* ``phi_K_H``, ``phi_L_H``: their extensions to ``K`` and to ``L``;
* ``q_reduce`` and ``phi_NQ_L``: reduction of ``p^m``-th roots to ``p``-th roots;
* ``v_H`` and ``v_N``: ``Z_p``-valued assignments.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Iterator, Sequence

from . import monomial as mono
from . import perms as P
from .monomial import GroupTag, MonomialOp, NotProportional
from .phases import Phase
from .tensorops import TensorOp
from .zpfield import ZpScalar, check_prime


class NotPTorsion(ValueError):
    pass


class NotInK(ValueError):
    pass


class NotInL(ValueError):
    pass


class NotInH(ValueError):
    pass


class DenominatorNotPPower(ValueError):
    pass


class UnsupportedRange(ValueError):
    pass


def _odd_prime(p: int) -> int:
    check_prime(p)
    if p == 2:
        raise ValueError("these maps are defined for odd primes")
    return p


# -- subgroup census ------------------------------------------------------------------


@dataclass(frozen=True)
class CensusEntry:
    index: int
    generator: tuple[int, ...]
    conjugator: tuple[int, ...]
    elements: frozenset


@dataclass(frozen=True)
class SubgroupCensus:
    """All cyclic subgroups of order ``p`` in ``S_p``.

    Entry 0 is generated by the standard cycle.  Each generator ``g`` is the
    unique one with ``g(0) = 1``; its conjugator ``tau`` fixes 0 and 1 and
    satisfies ``tau g tau^-1 = (0 1 ... p-1)``.
    """

    p: int
    entries: tuple[CensusEntry, ...]

    @property
    def count(self) -> int:
        return len(self.entries)

    def lookup(self, perm: Sequence[int]) -> CensusEntry | None:
        return _census_index(self.p).get(tuple(perm))

    def conjugators(self) -> tuple[tuple[int, ...], ...]:
        """The image of ``phi_N_Sp``; the identity comes first."""
        return tuple(e.conjugator for e in self.entries)

    def to_json(self) -> dict:
        return {
            "verdict": "pass" if self.count == factorial(self.p - 2) else "fail",
            "p": self.p,
            "count": self.count,
            "expected_count": factorial(self.p - 2),
            "subgroups": [
                {"id": e.index, "generator": list(e.generator), "conjugator": list(e.conjugator)}
                for e in self.entries
            ],
        }


@lru_cache(maxsize=None)
def subgroup_census(p: int) -> SubgroupCensus:
    _odd_prime(p)
    if p > 7:
        raise UnsupportedRange("the census enumerates S_p and is limited to p <= 7")
    groups = {}
    for s in P.all_perms(p):
        if P.is_full_cycle(s):
            elems = frozenset(P.perm_power(s, k) for k in range(1, p))
            groups.setdefault(elems, s)
    std = P.cycle_perm(p, 1)
    entries = []
    for elems in groups:
        g = next(x for x in elems if x[0] == 1)
        # g^j(0) = a_j; tau sends a_j to j
        tau = [0] * p
        x = 0
        for j in range(p):
            tau[x] = j
            x = g[x]
        tau = tuple(tau)
        if P.perm_compose(P.perm_compose(tau, g), P.perm_inverse(tau)) != std:
            raise AssertionError(f"conjugator {tau} fails for generator {g}")
        if tau[0] != 0 or tau[1] != 1:
            raise AssertionError("conjugator must fix 0 and 1")
        entries.append((g, tau, elems))
    entries.sort(key=lambda e: (e[0] != std, e[0]))
    return SubgroupCensus(p, tuple(CensusEntry(k, g, t, el) for k, (g, t, el) in enumerate(entries)))


@lru_cache(maxsize=None)
def _census_index(p: int) -> dict:
    out = {}
    for e in subgroup_census(p).entries:
        for s in e.elements:
            out[s] = e
    return out


def phi_N_Sp(m: MonomialOp) -> tuple[int, ...]:
    """The census conjugator of the subgroup containing ``proj(m)``, identity otherwise."""
    p = _odd_prime(m.d)
    e = _census_index(p).get(m.perm)
    return e.conjugator if e is not None else P.identity_perm(p)


# -- maps into H ------------------------------------------------------------------------


def _p_exponents(m: MonomialOp, p: int) -> list[int]:
    if p % m.den:
        raise NotPTorsion(f"phases of {m!r} are not p-th roots of unity")
    return [n * (p // m.den) for n in m.nums]


def _affine_gate(p: int, x0: int, slope: int) -> MonomialOp:
    return MonomialOp(P.identity_perm(p), [Phase(x0 + slope * q, p) for q in range(p)])


def phi_Tp_H(s: MonomialOp) -> MonomialOp:
    """``diag(omega^{x_q}) -> diag(omega^{x_0 + (x_1 - x_0) q})``."""
    p = _odd_prime(s.d)
    if not s.is_diagonal():
        raise NotPTorsion(f"{s!r} is not diagonal")
    x = _p_exponents(s, p)
    return _affine_gate(p, x[0], x[1] - x[0])


def phi_K_H(m: MonomialOp) -> MonomialOp:
    """Defined on ``S_chi X^b`` with ``chi`` a determinant-one ``p``-torsion phase gate."""
    p = _odd_prime(m.d)
    b = P.cycle_exponent(m.perm)
    if b is None or not mono.membership(m, mono.TAG_K):
        raise NotInK(f"{m!r} is not in K")
    if p % m.den:
        raise NotPTorsion(f"diagonal part of {m!r} is not p-torsion")
    if b == 0:
        return phi_Tp_H(m)
    if b == 1:
        return mono.compose(phi_Tp_H(m.diagonal_part()), mono.X(p))
    binv = pow(b, -1, p)
    return mono.power(phi_K_H(mono.power(m, binv)), b)


def _in_H(m: MonomialOp) -> bool:
    return mono.membership(m, mono.TAG_H)


def diagonal_conjugator(m: MonomialOp) -> tuple[int, ...] | None:
    """First census conjugator ``tau`` with ``tau . m`` in ``H``, for diagonal ``m``."""
    for tau in subgroup_census(m.d).conjugators():
        if _in_H(mono.conjugate_by_perm(tau, m)):
            return tau
    return None


def phi_L_H(m: MonomialOp) -> MonomialOp:
    p = _odd_prime(m.d)
    if not mono.membership(m, mono.TAG_L):
        raise NotInL(f"{m!r} is not in L")
    if m.is_diagonal():
        tau = diagonal_conjugator(m)
        if tau is not None:
            return phi_Tp_H(mono.conjugate_by_perm(tau, m))
        return phi_Tp_H(m)
    if P.perm_order(m.perm) == p:
        return phi_K_H(mono.conjugate_by_perm(phi_N_Sp(m), m))
    return mono.identity(p)


def phi_L_H_tensor(t: TensorOp) -> TensorOp:
    """Sitewise ``phi_L_H``; the global phase must be a ``p``-th root and is kept."""
    p = _odd_prime(t.d)
    if p % t.global_phase.den:
        raise NotInL("global phase is not a p-th root of unity")
    return TensorOp(tuple(phi_L_H(f) for f in t.factors), t.global_phase)


def q_reduce(ph: Phase, p: int, m: int) -> Phase:
    """``exp(2 pi i n / p^m) -> exp(2 pi i n / p)``."""
    check_prime(p)
    if m < 1:
        raise ValueError("m must be positive")
    if (p ** m) % ph.den:
        raise DenominatorNotPPower(f"denominator of {ph!r} does not divide {p}^{m}")
    return ph ** (p ** (m - 1))


def phi_NQ_L(mop: MonomialOp, m: int) -> MonomialOp:
    """Apply :func:`q_reduce` to every phase, keeping the permutation."""
    p = mop.d
    return MonomialOp(mop.perm, [q_reduce(ph, p, m) for ph in mop.phases])


# -- value assignments ----------------------------------------------------------------


def v_H(m: MonomialOp) -> int:
    """``c`` in ``m = omega^c W(x, z)`` with ``W(x, z) = tau^{-xz} Z^z X^x``, ``tau = omega^{(p+1)/2}``."""
    p = _odd_prime(m.d)
    if not _in_H(m):
        raise NotInH(f"{m!r} is not in H")
    c, a, b = mono.pauli_decompose(m)
    return (int(c) + int(a) * int(b) * ((p + 1) // 2)) % p


def _require_p_torsion(m: MonomialOp) -> int:
    p = _odd_prime(m.d)
    if p % mono.order(m):
        raise NotPTorsion(f"{m!r} has order {mono.order(m)}, not dividing {p}")
    return p


def v_N_generator_value(g: MonomialOp) -> tuple[int, int]:
    """Value of a chosen generator and which of the four defining cases applied."""
    p = g.d
    if not g.is_diagonal():
        tau = phi_N_Sp(g)
        if _in_H(mono.conjugate_by_perm(tau, g.diagonal_part())):
            return v_H(mono.conjugate_by_perm(tau, g)), 1
        return v_H(mono.conjugate_by_perm(tau, g.permutation_part())), 2
    tau = diagonal_conjugator(g)
    if tau is not None:
        return v_H(mono.conjugate_by_perm(tau, g)), 3
    return 0, 4


@lru_cache(maxsize=200_000)
def _cyclic_generator(m: MonomialOp) -> tuple[MonomialOp, int]:
    p = m.d
    best = None
    for a in range(1, p):
        g = mono.power(m, a)
        if best is None or g.sort_key() < best[0].sort_key():
            best = (g, a)
    g, a = best
    # m = g^(a^-1)
    return g, pow(a, -1, p)


@lru_cache(maxsize=200_000)
def _central_generator(m: MonomialOp) -> tuple[MonomialOp, int, int]:
    p = m.d
    best = None
    for a in range(1, p):
        ma = mono.power(m, a)
        for c in range(p):
            g = ma.scaled(Phase(c, p))
            if best is None or g.sort_key() < best[0].sort_key():
                best = (g, a, c)
    g, a, c = best
    # g = omega^c m^a, so m = omega^{-c a'} g^{a'} with a' = a^-1
    ainv = pow(a, -1, p)
    return g, ainv, (-c * ainv) % p


V_N_MODES = ("central", "cyclic")


def v_N(m: MonomialOp, mode: str = "central", diagonal: str = "displayed") -> int:
    """Extend ``v_H`` to ``p``-torsion monomials.

    Diagonal elements take the value of their own case.  A non-diagonal
    element is written through a canonical generator ``g`` of its cyclic
    subgroup and extended by ``v_N(g^a) = a v_N(g)``:

    * ``mode="cyclic"``: ``g`` is the least element of ``<m>``;
    * ``mode="central"`` (default): ``g`` is the least element of
      ``<m> x <omega>`` outside the centre, and ``v_N(omega^c g^a) = c + a v_N(g)``.

    The second mode fixes the generator once per coset of the centre, which
    the literal reading leaves open.

    ``diagonal="affine"`` replaces the two diagonal cases by
    ``v_H(phi_Tp_H(D))``.  This agrees with the third case wherever that case
    applies; it differs from the displayed rule only where no conjugator
    exists, and there the displayed constant is not additive for ``p >= 5``.
    """
    p = _require_p_torsion(m)
    if m.is_diagonal():
        if diagonal == "affine":
            return v_H(phi_Tp_H(m))
        if diagonal != "displayed":
            raise ValueError(f"unknown diagonal rule {diagonal!r}")
        return v_N_generator_value(m)[0]
    if mode == "cyclic":
        g, a = _cyclic_generator(m)
        return (a * v_N_generator_value(g)[0]) % p
    if mode == "central":
        g, a, c = _central_generator(m)
        return (c + a * v_N_generator_value(g)[0]) % p
    raise ValueError(f"unknown v_N mode {mode!r}")


def v_N_tensor(t: TensorOp, mode: str = "central") -> int:
    """Sum of sitewise ``v_N`` plus the exponent of a ``p``-th root global phase."""
    p = _odd_prime(t.d)
    if p % t.global_phase.den:
        raise NotPTorsion("global phase is not a p-th root of unity")
    g = t.global_phase.num * (p // t.global_phase.den)
    return (g + sum(v_N(f, mode) for f in t.factors)) % p


# -- Clifford permutations ------------------------------------------------------------


def is_affine_perm(sigma: Sequence[int]) -> bool:
    p = len(sigma)
    b = sigma[0]
    a = (sigma[1] - b) % p
    return a != 0 and all(sigma[q] == (a * q + b) % p for q in range(p))


def conjugated_x_is_pauli(sigma: Sequence[int]) -> bool:
    p = len(sigma)
    try:
        mono.pauli_decompose(mono.conjugate_by_perm(tuple(sigma), mono.X(p)))
    except mono.NotPauli:
        return False
    return True


def affine_clifford_check(sigma: Sequence[int]) -> bool:
    """True iff ``sigma`` is ``q -> aq + b``; cross-checked against conjugating ``X``."""
    sigma = P.check_perm(sigma)
    check_prime(len(sigma))
    r1, r2 = is_affine_perm(sigma), conjugated_x_is_pauli(sigma)
    if r1 != r2:
        raise AssertionError(f"affinity test and Pauli test disagree on {sigma}")
    return r1


# -- element enumeration and sampling --------------------------------------------------


def _det_one_diagonals(p: int, den: int) -> Iterator[tuple[Phase, ...]]:
    for xs in itertools.product(range(den), repeat=p - 1):
        yield tuple(Phase(x, den) for x in xs) + (Phase(-sum(xs), den),)


def _tag(tag) -> GroupTag:
    return GroupTag.parse(tag) if isinstance(tag, str) else tag


def _diag_den(tag: GroupTag, p: int, m: int) -> int:
    return p if tag.kind in ("L", "H") else p ** (tag.m if tag.kind == "T_pm" else m)


def enumerate_group(tag, p: int, m: int = 1) -> list[MonomialOp]:
    """Every element of the tagged group whose phases are ``p^m``-th roots."""
    tag = _tag(tag)
    if not ((p == 3 and m <= 2) or (p == 5 and m == 1 and tag.kind in ("L", "T", "T_pm", "H", "K"))):
        raise UnsupportedRange(f"exhaustive enumeration unsupported for tag {tag}, p={p}, m={m}")
    if tag.kind == "H":
        return [mono.compose(mono.clock(p, a), mono.shift(p, b)).scaled(Phase(c, p))
                for c in range(p) for a in range(p) for b in range(p)]
    den = _diag_den(tag, p, m)
    if tag.kind in ("T", "T_pm"):
        permset = [P.identity_perm(p)]
    elif tag.kind == "K":
        permset = [P.cycle_perm(p, b) for b in range(p)]
    else:
        permset = P.all_perms(p)
    out = []
    for s in permset:
        for chi in _det_one_diagonals(p, den):
            op = MonomialOp.from_left(s, chi)
            if mono.membership(op, tag) or tag.kind == "N_U":
                out.append(op)
    return out


def enumerate_p_torsion(tag, p: int, m: int = 1) -> list[MonomialOp]:
    return [op for op in enumerate_group(tag, p, m) if p % mono.order(op) == 0]


def random_det_one_diagonal(rng: random.Random, p: int, den: int) -> tuple[Phase, ...]:
    xs = [rng.randrange(den) for _ in range(p - 1)]
    return tuple(Phase(x, den) for x in xs) + (Phase(-sum(xs), den),)


def random_p_cycle(rng: random.Random, p: int) -> tuple[int, ...]:
    rest = list(range(1, p))
    rng.shuffle(rest)
    return P.from_cycle(p, [0] + rest)


def random_h(rng: random.Random, p: int, central: bool = True) -> MonomialOp:
    c = rng.randrange(p) if central else 0
    return mono.compose(mono.clock(p, rng.randrange(p)), mono.shift(p, rng.randrange(p))).scaled(Phase(c, p))


def random_p_torsion(rng: random.Random, tag, p: int, m: int = 1, diag_weight: float = 0.25) -> MonomialOp:
    """A random element of order dividing ``p`` in the tagged group.

    Non-identity ``p``-torsion permutations in ``S_p`` are ``p``-cycles, and a
    ``p``-cycle times a determinant-one phase gate always has order ``p``, so
    sampling splits into diagonal and ``p``-cycle draws.
    """
    tag = _tag(tag)
    _odd_prime(p)
    if tag.kind == "H":
        return random_h(rng, p)
    den = _diag_den(tag, p, m)
    if tag.kind in ("T", "T_pm") or rng.random() < diag_weight:
        return mono.phase_gate(random_det_one_diagonal(rng, p, p))
    if tag.kind == "K":
        s = P.cycle_perm(p, rng.randrange(1, p))
    else:
        s = random_p_cycle(rng, p)
    return MonomialOp.from_left(s, random_det_one_diagonal(rng, p, den))


def sample_p_torsion(tag, p: int, m: int, seed, count: int) -> list[MonomialOp]:
    rng = random.Random(f"sample:{seed}")
    return [random_p_torsion(rng, tag, p, m) for _ in range(count)]


def random_nq(rng: random.Random, p: int, m: int) -> MonomialOp:
    """Any permutation with a determinant-one ``p^m``-torsion phase gate."""
    s = list(range(p))
    rng.shuffle(s)
    return MonomialOp.from_left(tuple(s), random_det_one_diagonal(rng, p, p ** m))


# -- pair predicates ------------------------------------------------------------------


def commutes(a: MonomialOp, b: MonomialOp) -> bool:
    return mono.compose(a, b) == mono.compose(b, a)


def central_commutator(a: MonomialOp, b: MonomialOp) -> bool:
    """``[a, b]`` is a ``p``-th root of unity times the identity."""
    lam = mono.commute_up_to_phase(a, b)
    return not isinstance(lam, NotProportional) and a.d % lam.den == 0


PREDICATES: dict[str, Callable[[MonomialOp, MonomialOp], bool]] = {
    "all": lambda a, b: True,
    "commuting": commutes,
    "central": central_commutator,
}


# -- pair proposals for sampled audits -------------------------------------------------


def _census_entry(rng: random.Random, p: int, standard_only: bool):
    entries = subgroup_census(p).entries
    return entries[0] if standard_only else rng.choice(entries)


def propose_pair(rng: random.Random, tag, p: int, m: int = 1) -> tuple[MonomialOp, MonomialOp]:
    """A candidate pair, biased toward pairs whose commutator is central.

    Four proposal kinds: two phase gates; a conjugated ``K`` element with a
    conjugated ``H`` phase gate; two elements of one conjugated copy of ``H``
    (``M`` and ``(S_chi M^y)``, both conjugated by the same ``tau``); and an
    independent pair.
    """
    tag = _tag(tag)
    den = _diag_den(tag, p, m)
    standard = tag.kind == "K"
    r = rng.random()
    if tag.kind in ("T", "T_pm") or r < 0.2:
        return (mono.phase_gate(random_det_one_diagonal(rng, p, p)),
                mono.phase_gate(random_det_one_diagonal(rng, p, p)))
    if r < 0.9:
        e = _census_entry(rng, p, standard)
        tinv = P.perm_inverse(e.conjugator)
        k0 = MonomialOp.from_left(P.cycle_perm(p, rng.randrange(1, p)), random_det_one_diagonal(rng, p, den))
        mm = mono.conjugate_by_perm(tinv, k0)
        chi = mono.compose(mono.clock(p, rng.randrange(p)), mono.omega(p, rng.randrange(p)))
        if r < 0.45:
            other = mono.conjugate_by_perm(tinv, chi)
        else:
            other = mono.conjugate_by_perm(tinv, mono.compose(chi, mono.power(k0, rng.randrange(1, p))))
        return (mm, other) if rng.random() < 0.5 else (other, mm)
    return random_p_torsion(rng, tag, p, m), random_p_torsion(rng, tag, p, m)


# -- audits ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MapSpec:
    name: str
    fn: Callable
    additive: bool
    tag: str
    predicate: str
    torsion: bool = True
    describe: str = ""


def _vN_cyclic(m):
    return v_N(m, "cyclic")


def _vN_affine(m):
    return v_N(m, "central", "affine")


def _map_specs(p: int, m: int) -> dict[str, MapSpec]:
    vn_tag = "L" if m == 1 else "N_SU"
    return {
        "phiTpH": MapSpec("phiTpH", phi_Tp_H, False, "T_pm(1)", "all", describe="T_(p), all pairs"),
        "phiKH": MapSpec("phiKH", phi_K_H, False, "K", "central",
                         describe="p-torsion K with p-torsion phases, central commutator"),
        "phiLH": MapSpec("phiLH", phi_L_H, False, "L", "central",
                         describe="p-torsion L, central commutator"),
        "phiNQL": MapSpec("phiNQL", lambda x: phi_NQ_L(x, m), False, "N_Q", "all", torsion=False,
                          describe=f"N_Q with Q = T_(p^{m}), all pairs"),
        "vH": MapSpec("vH", v_H, True, "H", "commuting", describe="H, commuting pairs"),
        "vN": MapSpec("vN", v_N, True, vn_tag, "commuting",
                      describe=f"p-torsion {vn_tag} with p^{m}-th root phases, commuting pairs"),
        "vN-cyclic": MapSpec("vN-cyclic", _vN_cyclic, True, vn_tag, "commuting",
                             describe=f"p-torsion {vn_tag}, commuting pairs, literal cyclic generator"),
        "vN-affine": MapSpec("vN-affine", _vN_affine, True, vn_tag, "commuting",
                             describe=f"p-torsion {vn_tag}, commuting pairs, affine-part rule on diagonals"),
    }


MAP_NAMES = ("phiTpH", "phiKH", "phiLH", "phiNQL", "vH", "vN", "vN-cyclic", "vN-affine")


@dataclass
class AuditReport:
    map_name: str
    domain: str
    p: int
    m: int
    predicate: str
    exhaustive: bool
    seed: object
    pairs_checked: int = 0
    failure_count: int = 0
    failures: list = field(default_factory=list)
    domain_size: int | None = None

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_json(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "map": self.map_name,
            "domain": self.domain,
            "domain_size": self.domain_size,
            "p": self.p,
            "phase_exp": self.m,
            "predicate": self.predicate,
            "exhaustive": self.exhaustive,
            "seed": self.seed,
            "pairs_checked": self.pairs_checked,
            "failure_count": self.failure_count,
            "failures": self.failures,
        }


MAX_WITNESSES = 20


def _value_json(v):
    return v.to_json() if isinstance(v, MonomialOp) else v


def check_pair(spec: MapSpec, a: MonomialOp, b: MonomialOp, p: int):
    """None when the identity holds, else a witness dict."""
    ab = mono.compose(a, b)
    fa, fb, fab = spec.fn(a), spec.fn(b), spec.fn(ab)
    want = (fa + fb) % p if spec.additive else mono.compose(fa, fb)
    if fab == want:
        return None
    return {
        "M": a.to_json(),
        "M_prime": b.to_json(),
        "f_M": _value_json(fa),
        "f_M_prime": _value_json(fb),
        "f_product": _value_json(fab),
        "expected": _value_json(want),
    }


def audit_domain(map_name: str, p: int, m: int) -> list[MonomialOp]:
    spec = _map_specs(p, m)[map_name]
    if spec.tag == "N_Q":
        return enumerate_group("N_U", p, m)
    if spec.torsion:
        return enumerate_p_torsion(spec.tag, p, m)
    return enumerate_group(spec.tag, p, m)


def _exhaustive_chunk(args):
    map_name, p, m, predicate, lo, hi = args
    spec = _map_specs(p, m)[map_name]
    dom = audit_domain(map_name, p, m)
    pred = PREDICATES[predicate]
    checked, fails, wit = 0, 0, []
    for a in dom[lo:hi]:
        for b in dom:
            if not pred(a, b):
                continue
            checked += 1
            w = check_pair(spec, a, b, p)
            if w is not None:
                fails += 1
                if len(wit) < MAX_WITNESSES:
                    wit.append(w)
    return checked, fails, wit


def _sample_source(spec: MapSpec, rng: random.Random, p: int, m: int):
    if spec.tag == "N_Q":
        return random_nq(rng, p, m), random_nq(rng, p, m)
    if spec.tag == "T_pm(1)":
        return (mono.phase_gate(random_det_one_diagonal(rng, p, p)),
                mono.phase_gate(random_det_one_diagonal(rng, p, p)))
    if spec.tag == "H":
        return random_h(rng, p), random_h(rng, p)
    tag = "L" if spec.tag == "L" else spec.tag
    return propose_pair(rng, tag, p, m)


CHUNK = 5000


def _sampled_chunk(args):
    map_name, p, m, predicate, seed, chunk, want = args
    spec = _map_specs(p, m)[map_name]
    pred = PREDICATES[predicate]
    rng = random.Random(f"{seed}:{chunk}")
    checked, fails, wit, tries = 0, 0, [], 0
    while checked < want:
        tries += 1
        if tries > 200 * want + 1000:
            raise RuntimeError(f"sampler for {map_name} rarely meets predicate {predicate!r}")
        a, b = _sample_source(spec, rng, p, m)
        if not pred(a, b):
            continue
        checked += 1
        w = check_pair(spec, a, b, p)
        if w is not None:
            fails += 1
            if len(wit) < MAX_WITNESSES:
                wit.append(w)
    return checked, fails, wit


def _run(fn, jobs, threads: int):
    if threads and threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, jobs))
    return [fn(j) for j in jobs]


def homomorphism_audit(
    map_name: str,
    p: int,
    m: int = 1,
    exhaustive: bool = False,
    samples: int = 100_000,
    seed=0,
    predicate: str | None = None,
    threads: int = 1,
) -> AuditReport:
    """Check ``f(MM') = f(M) f(M')`` (or ``+`` for value maps) on pairs meeting the predicate.

    Sampled runs are split into fixed chunks, each seeded from ``(seed, chunk)``,
    so the report does not depend on ``threads``.
    """
    if map_name not in MAP_NAMES:
        raise ValueError(f"unknown map {map_name!r}; choose from {MAP_NAMES}")
    check_prime(p)
    spec = _map_specs(p, m)[map_name]
    predicate = predicate or spec.predicate
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    report = AuditReport(map_name, spec.describe, p, m, predicate, exhaustive, None if exhaustive else seed)
    if exhaustive:
        dom = audit_domain(map_name, p, m)
        report.domain_size = len(dom)
        step = max(1, len(dom) // max(1, threads * 4))
        jobs = [(map_name, p, m, predicate, lo, min(lo + step, len(dom))) for lo in range(0, len(dom), step)]
        results = _run(_exhaustive_chunk, jobs, threads)
    else:
        jobs = []
        left, chunk = samples, 0
        while left > 0:
            n = min(CHUNK, left)
            jobs.append((map_name, p, m, predicate, seed, chunk, n))
            left -= n
            chunk += 1
        results = _run(_sampled_chunk, jobs, threads)
    for checked, fails, wit in results:
        report.pairs_checked += checked
        report.failure_count += fails
        for w in wit:
            if len(report.failures) < MAX_WITNESSES:
                report.failures.append(w)
    return report


# -- structural checks ----------------------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    name: str
    p: int
    m: int
    checked: int
    failures: tuple
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "check": self.name,
            "p": self.p,
            "phase_exp": self.m,
            "checked": self.checked,
            "failures": list(self.failures),
            "details": self.details,
        }


def comm_conjugator_audit(p: int = 3, m: int = 1) -> StructureReport:
    """``phi_N_Sp(M) = phi_N_Sp(M')`` whenever both are non-diagonal with central commutator."""
    tag = "L" if m == 1 else "N_SU"
    dom = [x for x in enumerate_p_torsion(tag, p, m) if not x.is_diagonal()]
    checked, bad = 0, []
    for a in dom:
        for b in dom:
            if central_commutator(a, b):
                checked += 1
                if phi_N_Sp(a) != phi_N_Sp(b):
                    bad.append({"M": a.to_json(), "M_prime": b.to_json()})
    return StructureReport("comm_conjugator", p, m, checked, tuple(bad[:MAX_WITNESSES]))


def h_copy(g: MonomialOp) -> frozenset:
    """``H(chi, sigma) = < g, tau^-1 . (H n T_(p)) >`` with ``tau = phi_N_Sp(g)``."""
    p = g.d
    tinv = P.perm_inverse(phi_N_Sp(g))
    zeta = mono.conjugate_by_perm(tinv, mono.Z(p))
    out = set()
    for a in range(p):
        ga = mono.power(g, a)
        for b in range(p):
            zb = mono.power(zeta, b)
            for c in range(p):
                out.add(mono.compose(zb, ga).scaled(Phase(c, p)))
    return frozenset(out)


def h_intersection_check(p: int = 3, m: int = 1) -> StructureReport:
    """Distinct conjugate copies of ``H`` meet only inside the diagonal torsion group."""
    tag = "L" if m == 1 else "N_SU"
    gens = [x for x in enumerate_p_torsion(tag, p, m) if not x.is_diagonal()]
    copies = {}
    for g in gens:
        hc = h_copy(g)
        if len(hc) != p ** 3:
            raise AssertionError(f"H copy of {g!r} has {len(hc)} elements")
        copies.setdefault(hc, g)
    groups = list(copies)
    bad, kinds = [], {"centre": 0, "centre_and_conjugated_Z": 0, "other": 0}
    checked = 0
    for x, y in itertools.combinations(groups, 2):
        checked += 1
        inter = x & y
        if not all(mono.membership(e, mono.T_pm(1)) for e in inter):
            bad.append({"H1": copies[x].to_json(), "H2": copies[y].to_json(), "size": len(inter)})
        if len(inter) == p:
            kinds["centre"] += 1
        elif len(inter) == p * p:
            kinds["centre_and_conjugated_Z"] += 1
        else:
            kinds["other"] += 1
    details = {"copies": len(groups), "intersection_kinds": kinds}
    return StructureReport("h_intersections", p, m, checked, tuple(bad[:MAX_WITNESSES]), details)
