"""Variable-basis closure maps: ground morphisms (f, phi) between objects (X, L).

A ground morphism (X, L) -> (Y, M) pairs a function f: X -> Y with a basis
comorphism M -> L. Its image operator L^X -> M^Y and preimage operator
M^Y -> L^X are :func:`pair_forward` and :func:`pair_backward`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .closure import (
    ClosureMap,
    PropertyPreconditionFailed,
    SpaceMismatch,
    _composition_report,
    _factorization_report,
    continuity_report,
    domain,
    preservation_report,
)
from .config import Config
from .lattice import FiniteLattice
from .monoid import TensorStructure
from .powerset import (
    BasisComorphism,
    CarrierSet,
    FuzzySet,
    SetFunction,
    Space,
    identity_comorphism,
    identity_function,
    pair_backward,
    pair_forward,
)
from .report import Report


class CompositionMismatch(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


@dataclass(frozen=True)
class GroundObject:
    carrier: CarrierSet
    basis: FiniteLattice
    tensor: TensorStructure | None = None

    @property
    def space(self) -> Space:
        return Space(self.carrier, self.basis)


@dataclass(frozen=True)
class GroundMorphism:
    f: SetFunction
    phi: BasisComorphism
    name: str = "m"

    @property
    def source(self) -> GroundObject:
        return GroundObject(self.f.domain, self.phi.target)

    @property
    def target(self) -> GroundObject:
        return GroundObject(self.f.codomain, self.phi.source)

    def forward(self, a: FuzzySet) -> FuzzySet:
        return pair_forward(self.f, self.phi, a)

    def backward(self, b: FuzzySet) -> FuzzySet:
        return pair_backward(self.f, self.phi, b)


def identity_ground(obj: GroundObject) -> GroundMorphism:
    return GroundMorphism(identity_function(obj.carrier), identity_comorphism(obj.basis),
                          f"id_({obj.carrier.name},{obj.basis.name})")


def compose_ground(m1: GroundMorphism, m2: GroundMorphism) -> GroundMorphism:
    """m2 after m1, for m1: (X,L)->(Y,M) and m2: (Y,M)->(Z,N)."""
    if m1.f.codomain != m2.f.domain or m1.phi.source != m2.phi.target:
        raise CompositionMismatch(f"{m1.name} does not end where {m2.name} starts")
    # N -> M -> L
    return GroundMorphism(m1.f.then(m2.f), m2.phi.then(m1.phi), f"{m2.name}.{m1.name}")


def _check_ends(m: GroundMorphism, cXL: ClosureMap, cYM: ClosureMap) -> None:
    if cXL.space != m.source.space:
        raise CompositionMismatch(f"{cXL.name} does not live on the source of {m.name}")
    if cYM.space != m.target.space:
        raise CompositionMismatch(f"{cYM.name} does not live on the target of {m.name}")


def check_vb_continuity(m: GroundMorphism, cXL: ClosureMap, cYM: ClosureMap,
                        cfg: Config | None = None, samples: int | None = None) -> Report:
    _check_ends(m, cXL, cYM)
    return continuity_report(f"fuzzy continuity of {m.name}", cXL, cYM, m.forward, m.backward, cfg, samples)


def is_vb_continuous(m, cXL, cYM, cfg=None) -> bool:
    return check_vb_continuity(m, cXL, cYM, cfg).data["continuous"]


def vb_compose_continuity(m1: GroundMorphism, m2: GroundMorphism, cXL: ClosureMap, cYM: ClosureMap,
                          cZN: ClosureMap, cfg: Config | None = None) -> Report:
    m = compose_ground(m1, m2)
    return _composition_report(
        f"composition {m.name}",
        check_vb_continuity(m1, cXL, cYM, cfg),
        check_vb_continuity(m2, cYM, cZN, cfg),
        check_vb_continuity(m, cXL, cZN, cfg),
    )


def initial_vb_closure(m: GroundMorphism, cYM: ClosureMap, cfg: Config | None = None) -> ClosureMap:
    """Pair preimage after closure after pair image, on L^X."""
    if cYM.space != m.target.space:
        raise CompositionMismatch(f"{cYM.name} does not live on the target of {m.name}")
    return ClosureMap(m.source.space, lambda u: m.backward(cYM(m.forward(u))),
                      name=f"initial({m.name},{cYM.name})", kind="initial", cfg=cfg)


def check_vb_finest(m: GroundMorphism, cYM: ClosureMap, n: GroundMorphism, cZN: ClosureMap,
                    cfg: Config | None = None) -> Report:
    """n: (Z,N)->(X,L) is continuous into the initial structure iff m.n is."""
    cXL = initial_vb_closure(m, cYM, cfg)
    return _factorization_report(
        f"factorization through initial({m.name})",
        check_vb_continuity(n, cZN, cXL, cfg),
        check_vb_continuity(compose_ground(n, m), cZN, cYM, cfg),
    )


def _in_space(u: FuzzySet, c: ClosureMap) -> FuzzySet:
    try:
        return c.space.validate(u)
    except ValueError as e:
        raise SpaceMismatch(str(e)) from None


def is_c_closed(u: FuzzySet, c: ClosureMap) -> bool:
    u = _in_space(u, c)
    return c(u) == u


def is_c_dense(u: FuzzySet, c: ClosureMap) -> bool:
    u = _in_space(u, c)
    return c(u) == c.space.top


def closed_sets(c: ClosureMap, cfg: Config | None = None) -> list[FuzzySet]:
    us, _ = domain(c.space, cfg)
    return [u for u in us if c(u) == u]


def check_closed_preimage(m: GroundMorphism, cXL: ClosureMap, cYM: ClosureMap, v: FuzzySet,
                          cfg: Config | None = None) -> Report:
    """Preimages of closed sets under a continuous morphism are closed."""
    if not is_vb_continuous(m, cXL, cYM, cfg):
        raise PreconditionFailed(f"{m.name} is not fuzzy continuous")
    if not is_c_closed(v, cYM):
        raise PreconditionFailed(f"{cYM.space.format(v)} is not closed under {cYM.name}")
    u = m.backward(v)
    cu = cXL(u)
    rep = Report(f"closed preimage of {cYM.space.format(v)}")
    rep.add("preimage closed", cu == u,
            None if cu == u else {"v": cYM.space.format(v), "preimage": cXL.space.format(u),
                                  "closure": cXL.space.format(cu)}, finding=True)
    return rep


def is_epi(m: GroundMorphism, relaxed: bool = False) -> bool:
    """Surjective f and injective comorphism, or only pair image of top is top when relaxed."""
    if relaxed:
        return m.forward(m.source.space.top) == m.target.space.top
    return m.f.is_surjective() and len(set(m.phi.mapping)) == len(m.phi.mapping)


def check_dense_image(m: GroundMorphism, cXL: ClosureMap, cYM: ClosureMap, u: FuzzySet,
                      relaxed: bool = False, cfg: Config | None = None) -> Report:
    """Images of dense sets under a continuous epimorphism are dense."""
    _check_ends(m, cXL, cYM)
    if not is_c_dense(u, cXL):
        raise PreconditionFailed(f"{cXL.space.format(u)} is not dense under {cXL.name}")
    if not is_epi(m, relaxed):
        raise PreconditionFailed(f"{m.name} does not meet the epimorphism criterion")
    if not is_vb_continuous(m, cXL, cYM, cfg):
        raise PreconditionFailed(f"{m.name} is not fuzzy continuous")
    SY = cYM.space
    img = m.forward(u)
    cimg = cYM(img)
    rep = Report(f"dense image of {cXL.space.format(u)}")
    top_ok = m.forward(cXL.space.top) == SY.top
    rep.add("image of top is top", top_ok, None if top_ok else {"image": SY.format(m.forward(cXL.space.top))})
    rep.add("image dense", cimg == SY.top,
            None if cimg == SY.top else {"image": SY.format(img), "closure": SY.format(cimg)}, finding=True)
    return rep


def check_c_closed_morphism(m: GroundMorphism, cXL: ClosureMap, cYM: ClosureMap,
                            cfg: Config | None = None, samples: int | None = None) -> Report:
    """cYM(image(u)) <= image(cXL(u)) for all u."""
    _check_ends(m, cXL, cYM)
    SX, SY = cXL.space, cYM.space
    us, exhaustive = domain(SX, cfg, samples)
    w = None
    for u in us:
        lhs = cYM(m.forward(u))
        rhs = m.forward(cXL(u))
        if not SY.leq(lhs, rhs):
            w = {"u": SX.format(u), "lhs": SY.format(lhs), "rhs": SY.format(rhs)}
            break
    rep = Report(f"c-closedness of {m.name}")
    rep.add("closed morphism", w is None, w, note="" if exhaustive else "sampled")
    rep.data["closed"] = w is None
    return rep


def check_vb_preservation(prop: str, m: GroundMorphism, cYM: ClosureMap, cfg: Config | None = None) -> Report:
    """The initial operator along m inherits ``prop`` from cYM; a failure is a finding."""
    return preservation_report(prop, cYM, initial_vb_closure(m, cYM, cfg), cfg)

