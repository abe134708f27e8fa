import itertools

import pytest
from hypothesis import given, strategies as st

from fuzclose.builders import divisor_monoid, min_chain
from fuzclose.gen import all_functions, valid_comorphisms
from fuzclose.lattice import build_lattice, chain, divisor_lattice
from fuzclose.powerset import (
    BasisComorphism,
    CarrierMismatch,
    CarrierSet,
    ForeignPoint,
    SetFunction,
    Space,
    carrier,
    check_comorphism,
    check_star_adjunction,
    comorphism_lift,
    crisp_image,
    crisp_preimage,
    fuzzy_backward,
    fuzzy_forward,
    identity_comorphism,
    identity_function,
    pair_backward,
    pair_forward,
    pair_forward_bruteforce,
    star_phi,
    star_phi_lift,
)

D12 = divisor_lattice(12)
C2 = chain(2)
X2 = carrier(2, "X")
Y1 = CarrierSet(("y",), "Y")
CONST = SetFunction(X2, Y1, (0, 0), "const")
# 2-chain -> Div(12): bottom to 1, top to 12
EMBED = BasisComorphism(C2, D12, (D12.index("1"), D12.index("12")), "embed")


def d(*labels):
    return tuple(D12.index(str(l)) for l in labels)


def subsets(n):
    return [frozenset(s) for r in range(n + 1) for s in itertools.combinations(range(n), r)]


def test_crisp_examples():
    assert crisp_image(CONST, {0}) == {0}
    assert crisp_image(CONST, set()) == frozenset()
    idp = identity_function(CarrierSet(("p", "q")))
    assert crisp_image(idp, {1}) == {1}
    assert crisp_preimage(CONST, {0}) == {0, 1}
    assert crisp_preimage(CONST, set()) == frozenset()
    assert crisp_preimage(idp, {0}) == {0}
    with pytest.raises(ForeignPoint):
        crisp_image(CONST, {5})


def test_crisp_adjunction():
    X, Y = carrier(3), carrier(2, "Y")
    for f in all_functions(X, Y):
        for A in subsets(3):
            for B in subsets(2):
                assert (crisp_image(f, A) <= B) == (A <= crisp_preimage(f, B))


def test_fuzzy_forward_examples():
    assert fuzzy_forward(CONST, D12, d(2, 3)) == d(6)
    assert fuzzy_forward(CONST, D12, d(1, 1)) == d(1)
    inj = SetFunction(X2, carrier(3, "Z"), (2, 0), "inj")
    assert fuzzy_forward(inj, D12, d(4, 3)) == d(3, 1, 4)
    with pytest.raises(CarrierMismatch):
        fuzzy_forward(CONST, D12, d(1))


def test_fuzzy_backward_examples():
    assert fuzzy_backward(CONST, d(6)) == d(6, 6)
    assert fuzzy_backward(CONST, d(12)) == d(12, 12)
    idx = identity_function(X2)
    assert fuzzy_backward(idx, d(4, 3)) == d(4, 3)
    with pytest.raises(CarrierMismatch):
        fuzzy_backward(CONST, d(1, 2))


def test_star_phi_examples():
    ident = identity_comorphism(D12)
    for a in D12.elements:
        assert star_phi(ident, a) == a
    assert star_phi(EMBED, D12.bottom) == C2.bottom
    # the betas whose image lies above 6: only top
    assert star_phi(EMBED, D12.index("6")) == C2.top
    assert star_phi_lift(ident, d(4, 3)) == d(4, 3)
    assert star_phi_lift(EMBED, d(1, 1)) == (0, 0)
    assert star_phi_lift(EMBED, d(1, 6)) == (0, 1)


def test_comorphism_lift_examples():
    assert comorphism_lift(identity_comorphism(D12), d(4, 3)) == d(4, 3)
    assert comorphism_lift(EMBED, (1,)) == d(12)
    assert comorphism_lift(EMBED, (1, 1)) == d(12, 12)


def test_pair_forward_examples():
    ident = identity_comorphism(D12)
    X, Y = CarrierSet(("x",)), CarrierSet(("y",))
    f = SetFunction(X, Y, (0,))
    assert pair_forward(f, EMBED, d(6)) == (C2.top,)
    assert pair_forward_bruteforce(f, EMBED, d(6)) == (C2.top,)
    assert pair_forward(CONST, ident, d(2, 3)) == fuzzy_forward(CONST, D12, d(2, 3))
    assert pair_forward(CONST, EMBED, d(1, 1)) == (C2.bottom,)


def test_pair_backward_examples():
    ident = identity_comorphism(D12)
    assert pair_backward(CONST, ident, d(6)) == fuzzy_backward(CONST, d(6))
    assert pair_backward(CONST, EMBED, (1,)) == d(12, 12)
    # roundtrip from the pair_forward example: phi(b(f(x))) by direct composition
    X, Y = CarrierSet(("x",)), CarrierSet(("y",))
    f = SetFunction(X, Y, (0,))
    b = pair_forward(f, EMBED, d(6))
    assert pair_backward(f, EMBED, b) == (EMBED.mapping[b[f.mapping[0]]],) == d(12)


def test_comorphism_validation():
    assert check_comorphism(EMBED, min_chain(2), divisor_monoid(12)).passed
    assert check_comorphism(identity_comorphism(D12)).passed
    bad = BasisComorphism(C2, D12, (D12.index("2"), D12.index("12")), "bad")
    rep = check_comorphism(bad)
    assert not rep["preserves joins"].ok
    assert rep["preserves joins"].witness["family"] == "{}"
    no_top = BasisComorphism(C2, D12, (D12.index("1"), D12.index("6")))
    assert not check_comorphism(no_top)["preserves top"].ok


def test_star_adjunction_reported_for_join_only_comorphism():
    # joins and top are preserved, the meet a /\ b is not
    M = build_lattice(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], name="B2")
    L = chain(3, ["0", "m", "1"])
    phi = BasisComorphism(M, L, (0, 1, 2, 2), "join_only")
    assert check_comorphism(phi).passed
    rep = check_star_adjunction(phi)
    assert not rep.passed
    assert check_star_adjunction(EMBED).passed


def test_empty_carrier():
    E = CarrierSet((), "E")
    S = Space(E, D12)
    assert list(S.elements()) == [()]
    f = SetFunction(E, Y1, ())
    assert fuzzy_forward(f, D12, ()) == d(1)
    assert fuzzy_backward(f, d(6)) == ()


BASES = [divisor_monoid(12), min_chain(2), min_chain(4)]
CARRIERS = [carrier(n, "X") for n in (1, 2, 3)]


def _fuzzy_adjunction(T, X, Y):
    L = T.base
    SX, SY = Space(X, L), Space(Y, L)
    if SX.size * SY.size > 50000:
        return 0
    count = 0
    for f in all_functions(X, Y):
        for a in SX.elements():
            fa = fuzzy_forward(f, L, a)
            for b in SY.elements():
                assert SY.leq(fa, b) == SX.leq(a, fuzzy_backward(f, b))
                count += 1
    return count


@pytest.mark.parametrize("T", BASES[1:], ids=["chain2", "chain4"])
def test_fuzzy_adjunction_small(T):
    assert _fuzzy_adjunction(T, carrier(2, "X"), carrier(2, "Y")) > 0


@pytest.mark.parametrize("T", BASES, ids=["div12", "chain2", "chain4"])
def test_operators_preserve_joins_and_meets(T):
    L = T.base
    X, Y = carrier(2, "X"), carrier(2, "Y")
    SX, SY = Space(X, L), Space(Y, L)
    xs, ys = list(SX.elements()), list(SY.elements())
    for f in all_functions(X, Y):
        for a1, a2 in itertools.product(xs, xs):
            assert fuzzy_forward(f, L, SX.join2(a1, a2)) == SY.join2(fuzzy_forward(f, L, a1), fuzzy_forward(f, L, a2))
        for b1, b2 in itertools.product(ys, ys):
            assert fuzzy_backward(f, SY.join2(b1, b2)) == SX.join2(fuzzy_backward(f, b1), fuzzy_backward(f, b2))
            assert fuzzy_backward(f, SY.meet2(b1, b2)) == SX.meet2(fuzzy_backward(f, b1), fuzzy_backward(f, b2))
        assert fuzzy_forward(f, L, SX.bottom) == SY.bottom
        assert fuzzy_backward(f, SY.top) == SX.top


@given(st.data())
def test_pair_forward_matches_bruteforce(data):
    source = data.draw(st.sampled_from([min_chain(2), min_chain(3), divisor_monoid(12), min_chain(4)]))
    target = data.draw(st.sampled_from([min_chain(3), divisor_monoid(12), min_chain(4)]))
    phis = valid_comorphisms(source, target)
    if not phis:
        return
    phi = data.draw(st.sampled_from(phis))
    X = carrier(data.draw(st.integers(1, 3)), "X")
    Y = carrier(data.draw(st.integers(1, 3)), "Y")
    f = SetFunction(X, Y, tuple(data.draw(st.integers(0, len(Y) - 1)) for _ in X.points))
    a = tuple(data.draw(st.integers(0, len(target.base) - 1)) for _ in X.points)
    assert pair_forward(f, phi, a) == pair_forward_bruteforce(f, phi, a)
