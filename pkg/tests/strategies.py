"""Hypothesis strategies for monomial operators and tensors."""

from hypothesis import strategies as st

from monolcs.monomial import MonomialOp
from monolcs.phases import Phase
from monolcs.tensorops import TensorOp

PRIMES = st.sampled_from([2, 3, 5, 7])
ODD_PRIMES = st.sampled_from([3, 5, 7])


@st.composite
def phases(draw, den=None):
    den = den or draw(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 25]))
    return Phase(draw(st.integers(-50, 50)), den)


@st.composite
def perms(draw, d):
    return tuple(draw(st.permutations(range(d))))


@st.composite
def monomials(draw, d=None, den=None):
    d = d or draw(st.integers(1, 6))
    ph = [draw(phases(den)) for _ in range(d)]
    return MonomialOp(draw(perms(d)), ph)


@st.composite
def same_d_pair(draw, count=2, d=None, den=None):
    d = d or draw(st.integers(1, 6))
    return tuple(draw(monomials(d, den)) for _ in range(count))


@st.composite
def tensors(draw, d, n, den=None):
    return TensorOp(tuple(draw(monomials(d, den)) for _ in range(n)), draw(phases(den)))
