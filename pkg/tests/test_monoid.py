import itertools
import math
from functools import reduce

import pytest

from fuzclose.builders import divisor_monoid, min_chain
from fuzclose.lattice import ForeignElement, chain, divisor_lattice, divisors
from fuzclose.monoid import (
    CQM,
    GL,
    RAW,
    TensorError,
    check_cqm,
    check_gl_monoid,
    check_residuation_law,
    divisibility_witness,
    meet_tensor,
    residuum,
    tensor_from_function,
    tensor_from_rows,
)


def lcm_tensor(n):
    L = divisor_lattice(n)
    ds = divisors(n)
    return tensor_from_function(L, lambda a, b: ds.index(math.lcm(ds[a], ds[b])), "lcm")


def residuum_oracle(n, a, b):
    """Join (lcm) of every divisor x of n with gcd(a, x) dividing b."""
    return reduce(math.lcm, [x for x in divisors(n) if b % math.gcd(a, x) == 0], 1)


def lab(T, x):
    return T.base.index(str(x))


def test_gcd_is_cqm_and_gl(d12, d36):
    assert check_cqm(d12).passed
    assert d12.classification == GL and d36.classification == GL
    for T in (d12, d36):
        rep = check_gl_monoid(T)
        assert rep.passed, rep.render()
        assert len(rep.verdicts) == 7


def test_lcm_is_cqm_but_not_gl():
    T = lcm_tensor(12)
    assert check_cqm(T).passed
    assert T.classification == CQM
    rep = check_gl_monoid(T)
    assert not rep["integral"].ok


def test_three_chain_with_bad_top():
    L = chain(3, ["0", "m", "1"])
    T = tensor_from_rows(L, [("m", "m", "1"), ("1", "1", "m")], default_meet=True)
    rep = check_cqm(T)
    assert not rep["top idempotent"].ok
    assert rep["top idempotent"].witness == {"top_tensor_top": "m"}
    assert T.classification == RAW
    with pytest.raises(TensorError):
        residuum(T, 0, 0)


def test_constant_top_fails_integral():
    L = chain(3)
    T = tensor_from_function(L, lambda a, b: L.top)
    rep = check_gl_monoid(T)
    assert rep["integral"].witness["alpha"] == L.labels[L.bottom]


def test_missing_rows_rejected():
    with pytest.raises(TensorError):
        tensor_from_rows(chain(2), [("0", "0", "0")])


def test_residuum_examples(d12):
    assert residuum(d12, lab(d12, 2), lab(d12, 1)) == lab(d12, residuum_oracle(12, 2, 1)) == lab(d12, 3)
    assert residuum(d12, lab(d12, 4), lab(d12, 2)) == lab(d12, residuum_oracle(12, 4, 2)) == lab(d12, 6)
    for a in d12.base.elements:
        assert residuum(d12, a, d12.base.top) == d12.base.top
    with pytest.raises(ForeignElement):
        residuum(d12, 99, 0)


@pytest.mark.parametrize("n", [12, 18, 36, 60])
def test_residuum_matches_arithmetic(n):
    T = divisor_monoid(n)
    ds = divisors(n)
    for i, a in enumerate(ds):
        for j, b in enumerate(ds):
            assert int(T.base.labels[T.residuum_table[i][j]]) == residuum_oracle(n, a, b)


@pytest.mark.parametrize("T", [divisor_monoid(12), divisor_monoid(36), meet_tensor(chain(2))],
                         ids=["div12", "div36", "chain2"])
def test_residuation_law(T):
    assert check_residuation_law(T).passed


def test_residuation_law_fails_for_lcm():
    rep = check_residuation_law(lcm_tensor(12))
    assert not rep.passed
    assert set(rep.failures[0].witness) >= {"a", "b", "c"}


@pytest.mark.parametrize("T", [divisor_monoid(12), divisor_monoid(36), min_chain(5)], ids=["div12", "div36", "chain5"])
def test_residuum_laws(T):
    L, t, r = T.base, T.table, T.residuum_table
    E = L.elements
    for a, b in itertools.product(E, E):
        assert L.leq(t[a][r[a][b]], b)
    for a1, a2, b in itertools.product(E, E, E):
        if L.leq(a1, a2):
            assert L.leq(r[a2][b], r[a1][b])
            assert L.leq(r[b][a1], r[b][a2])


@pytest.mark.parametrize("L", [chain(4), divisor_lattice(30)], ids=["chain4", "div30"])
def test_meet_residuum_is_heyting(L):
    T = meet_tensor(L)
    for x, a, b in itertools.product(L.elements, repeat=3):
        assert L.leq(L.meet_table[x][a], b) == L.leq(x, T.residuum_table[a][b])


def test_divisibility_witness_is_maximal(d12):
    L = d12.base
    g = divisibility_witness(d12, lab(d12, 2), lab(d12, 6))
    # gcd(6, g) = 2 holds for g in {2, 4}; 4 is the maximal one
    assert L.labels[g] == "4"
    assert divisibility_witness(d12, lab(d12, 4), lab(d12, 6)) is None
