import itertools
import random

import pytest
from hypothesis import given, strategies as st

from fuzclose.builders import divisor_monoid, example3_closure, min_chain
from fuzclose.closure import (
    PropertyPreconditionFailed,
    SpaceMismatch,
    check_c_continuity,
    check_closure_axioms,
    discrete_operator,
    initial_closure,
    trivial_operator,
)
from fuzclose.gen import all_functions, random_closure, random_function, random_moore_closure, valid_comorphisms
from fuzclose.lattice import chain, divisor_lattice
from fuzclose.powerset import (
    BasisComorphism,
    SetFunction,
    Space,
    carrier,
    fuzzy_forward,
    identity_comorphism,
    identity_function,
)
from fuzclose.variable import (
    CompositionMismatch,
    GroundMorphism,
    GroundObject,
    PreconditionFailed,
    check_c_closed_morphism,
    check_closed_preimage,
    check_dense_image,
    check_vb_continuity,
    check_vb_finest,
    check_vb_preservation,
    closed_sets,
    compose_ground,
    identity_ground,
    initial_vb_closure,
    is_c_closed,
    is_c_dense,
    is_epi,
    is_vb_continuous,
    vb_compose_continuity,
)

D12T = divisor_monoid(12)
D12 = D12T.base
C3T, C4T = min_chain(3), min_chain(4)
PHIS_D12 = valid_comorphisms(D12T, D12T)
PHIS_34 = valid_comorphisms(C3T, C4T)  # chain3 -> chain4, morphisms (X,chain4) -> (Y,chain3)


def ground(rng, phis, nx=2, ny=2):
    phi = rng.choice(phis)
    X, Y = carrier(rng.randint(1, nx), "X"), carrier(rng.randint(1, ny), "Y")
    return GroundMorphism(random_function(X, Y, rng), phi, "m")


def same_map(a, b, S):
    return all(a(u) == b(u) for u in S.elements())


def test_comorphism_pools():
    assert len(PHIS_D12) >= 3 and len(PHIS_34) >= 3
    assert identity_comorphism(D12).mapping in {p.mapping for p in PHIS_D12}


def test_identity_and_associativity():
    rng = random.Random(0)
    m = ground(rng, PHIS_D12)
    S = m.source.space
    for side in (compose_ground(identity_ground(m.source), m), compose_ground(m, identity_ground(m.target))):
        assert same_map(side.forward, m.forward, S)
        assert all(side.backward(v) == m.backward(v) for v in m.target.space.elements())
    Y = m.f.codomain
    n = GroundMorphism(random_function(Y, carrier(2, "Z"), rng, "n"), rng.choice(PHIS_D12), "n")
    Z = n.f.codomain
    k = GroundMorphism(random_function(Z, carrier(1, "W"), rng, "k"), rng.choice(PHIS_D12), "k")
    left = compose_ground(compose_ground(m, n), k)
    right = compose_ground(m, compose_ground(n, k))
    assert left.f.mapping == right.f.mapping and left.phi.mapping == right.phi.mapping


def test_compose_mismatch():
    rng = random.Random(1)
    m = ground(rng, PHIS_D12)
    other = GroundMorphism(identity_function(carrier(5, "Q")), identity_comorphism(D12))
    with pytest.raises(CompositionMismatch):
        compose_ground(m, other)


def test_reduction_to_fixed_basis():
    rng = random.Random(2)
    for _ in range(20):
        X, Y = carrier(2, "X"), carrier(2, "Y")
        f = random_function(X, Y, rng)
        m = GroundMorphism(f, identity_comorphism(D12))
        cX, cY = random_closure(Space(X, D12), rng), random_closure(Space(Y, D12), rng)
        assert same_map(m.forward, lambda u: fuzzy_forward(f, D12, u), cX.space)
        a, b = check_vb_continuity(m, cX, cY), check_c_continuity(f, cX, cY)
        assert a.data == b.data
        assert initial_vb_closure(m, cY).equals(initial_closure(f, cY))


def test_vb_continuity_example():
    obj = GroundObject(carrier(1, "X"), chain(3))
    S = obj.space
    idm = identity_ground(obj)
    assert is_vb_continuous(idm, discrete_operator(S), discrete_operator(S))
    rep = check_vb_continuity(idm, trivial_operator(S), discrete_operator(S))
    assert not rep.data["continuous"] and rep["criteria agree"].ok
    with pytest.raises(CompositionMismatch):
        check_vb_continuity(idm, discrete_operator(Space(carrier(2), chain(3))), discrete_operator(S))


def test_vb_composition():
    rng = random.Random(3)
    for _ in range(15):
        m = ground(rng, PHIS_34)
        n = GroundMorphism(random_function(m.f.codomain, carrier(1, "Z"), rng, "n"),
                           identity_comorphism(chain(3)), "n")
        cXL = random_moore_closure(m.source.space, rng)
        cYM = random_moore_closure(m.target.space, rng)
        cZN = random_moore_closure(n.target.space, rng)
        assert vb_compose_continuity(m, n, cXL, cYM, cZN).passed


def test_initial_vb_contract():
    rng = random.Random(4)
    for _ in range(20):
        m = ground(rng, PHIS_34)
        cYM = random_closure(m.target.space, rng)
        c = initial_vb_closure(m, cYM)
        assert check_closure_axioms(c).passed
        assert is_vb_continuous(m, c, cYM)
        Z = carrier(rng.randint(1, 2), "Z")
        for g in itertools.islice(all_functions(Z, m.f.domain), 4):
            n = GroundMorphism(g, identity_comorphism(chain(4)), "n")
            cZN = random_closure(n.source.space, rng)
            rep = check_vb_finest(m, cYM, n, cZN)
            assert rep.passed, rep.render()


def test_initial_vb_needs_meet_preservation():
    B2, C3 = divisor_lattice(6), chain(3)
    phi = BasisComorphism(B2, C3, (0, 1, 2, 2), "phi_join_only")
    m = GroundMorphism(SetFunction(carrier(1, "X"), carrier(1, "Y"), (0,)), phi)
    rep = check_closure_axioms(initial_vb_closure(m, discrete_operator(m.target.space)))
    assert not rep["C1 extension"].ok
    assert rep["C1 extension"].witness["u"] == "[x1=1]"


def test_closed_and_dense_sets():
    c3, _ = example3_closure()
    D36 = c3.space.basis
    assert is_c_closed((D36.index("4"),), c3)
    assert not is_c_closed((D36.index("3"),), c3)
    assert is_c_dense((D36.index("12"),), c3)
    assert not is_c_dense((D36.index("9"),), c3)
    with pytest.raises(SpaceMismatch):
        is_c_closed((0, 0), c3)
    S = Space(carrier(2), chain(3))
    assert len(closed_sets(discrete_operator(S))) == 9
    assert closed_sets(trivial_operator(S)) == [S.bottom, S.top]


def test_closed_preimage_and_c_closed_morphisms():
    rng = random.Random(5)
    for _ in range(20):
        m = ground(rng, PHIS_D12)
        cYM = random_moore_closure(m.target.space, rng)
        cXL = initial_vb_closure(m, cYM)
        for v in closed_sets(cYM):
            assert check_closed_preimage(m, cXL, cYM, v).passed
        assert check_c_closed_morphism(m, discrete_operator(m.source.space), discrete_operator(m.target.space)).passed

    obj = GroundObject(carrier(1, "X"), chain(3))
    idm, S = identity_ground(obj), obj.space
    rep = check_c_closed_morphism(idm, discrete_operator(S), trivial_operator(S))
    assert not rep.data["closed"]
    assert rep["closed morphism"].witness == {"u": "[x1=1]", "lhs": "[x1=2]", "rhs": "[x1=1]"}
    with pytest.raises(PreconditionFailed):
        check_closed_preimage(idm, trivial_operator(S), discrete_operator(S), (1,))
    with pytest.raises(PreconditionFailed):
        check_closed_preimage(idm, discrete_operator(S), trivial_operator(S), (1,))


def test_dense_image():
    rng = random.Random(6)
    X, Y = carrier(3, "X"), carrier(2, "Y")
    f = SetFunction(X, Y, (0, 1, 1))
    m = GroundMorphism(f, identity_comorphism(D12))
    assert is_epi(m) and is_epi(m, relaxed=True)
    for _ in range(10):
        cYM = random_closure(m.target.space, rng)
        cXL = initial_vb_closure(m, cYM)
        for u in cXL.space.elements():
            if is_c_dense(u, cXL):
                assert check_dense_image(m, cXL, cYM, u).passed
    narrow = GroundMorphism(SetFunction(carrier(1, "X"), Y, (0,)), identity_comorphism(D12))
    assert not is_epi(narrow)
    S = narrow.source.space
    with pytest.raises(PreconditionFailed):
        check_dense_image(narrow, discrete_operator(S), discrete_operator(narrow.target.space), S.top)
    with pytest.raises(PreconditionFailed):
        check_dense_image(m, discrete_operator(m.source.space), discrete_operator(Space(Y, D12)), (0, 0, 0))


def test_vb_preservation():
    rng = random.Random(7)
    for _ in range(15):
        m = ground(rng, PHIS_D12)
        cYM = random_moore_closure(m.target.space, rng)
        assert check_vb_preservation("idempotent", m, cYM).passed
    c3, _ = example3_closure()
    m = identity_ground(GroundObject(c3.space.carrier, c3.space.basis))
    with pytest.raises(PropertyPreconditionFailed):
        check_vb_preservation("idempotent", m, c3)


@given(st.integers(0, 10_000))
def test_unit_and_counit(seed):
    rng = random.Random(seed)
    m = ground(rng, rng.choice([PHIS_D12, PHIS_34]), 3, 3)
    SX, SY = m.source.space, m.target.space
    for _ in range(10):
        a = tuple(rng.randrange(len(SX.basis)) for _ in range(len(SX.carrier)))
        b = tuple(rng.randrange(len(SY.basis)) for _ in range(len(SY.carrier)))
        assert SX.leq(a, m.backward(m.forward(a)))
        assert SY.leq(m.forward(m.backward(b)), b)


@given(st.integers(0, 10_000))
def test_vb_reduction_property(seed):
    rng = random.Random(seed)
    L = rng.choice([D12, chain(3)])
    X, Y = carrier(rng.randint(1, 2), "X"), carrier(rng.randint(1, 2), "Y")
    f = random_function(X, Y, rng)
    m = GroundMorphism(f, identity_comorphism(L))
    cX, cY = random_closure(Space(X, L), rng), random_closure(Space(Y, L), rng)
    assert check_vb_continuity(m, cX, cY).data["continuous"] == check_c_continuity(f, cX, cY).data["continuous"]
    assert check_c_closed_morphism(m, cX, cY).data["closed"] == all(
        Space(Y, L).leq(cY(fuzzy_forward(f, L, u)), fuzzy_forward(f, L, cX(u))) for u in cX.space.elements())
