"""Random small instances for sweeps and property tests."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .closure import ClosureMap, composite, discrete_operator, join_maps, meet_maps, trivial_operator
from .config import Config
from .lattice import FiniteLattice
from .monoid import TensorStructure
from .powerset import BasisComorphism, CarrierSet, FuzzySet, SetFunction, Space, carrier, check_comorphism


def random_carrier(rng: random.Random, lo: int = 1, hi: int = 3, name: str = "X") -> CarrierSet:
    n = rng.randint(lo, hi)
    return CarrierSet(tuple(f"{name.lower()}{i + 1}" for i in range(n)), name)


def random_function(X: CarrierSet, Y: CarrierSet, rng: random.Random, name: str = "f") -> SetFunction:
    return SetFunction(X, Y, tuple(rng.randrange(len(Y)) for _ in X.points), name)


def all_functions(X: CarrierSet, Y: CarrierSet) -> Iterator[SetFunction]:
    for i, m in enumerate(itertools.product(range(len(Y)), repeat=len(X))):
        yield SetFunction(X, Y, m, f"f{i}")


def join_irreducibles(L: FiniteLattice) -> list[int]:
    lower = {a: 0 for a in L.elements}
    for a in L.elements:
        for b in L.upper_covers[a]:
            lower[b] += 1
    return [a for a in L.elements if lower[a] == 1]


def random_fuzzy_set(S: Space, rng: random.Random) -> FuzzySet:
    return tuple(rng.randrange(len(S.basis)) for _ in S.carrier.points)


def random_additive_closure(S: Space, rng: random.Random, density: float = 0.5,
                            cfg: Config | None = None, name: str = "c_add") -> ClosureMap:
    """u -> u join the images of the point atoms below u.

    Each (point, join-irreducible) atom gets a random image. Over a distributive
    basis an atom below u v v lies below u or below v, so the map is additive.
    """
    L = S.basis
    ji = join_irreducibles(L)
    img = {}
    for i in range(len(S.carrier)):
        for j in ji:
            img[i, j] = random_fuzzy_set(S, rng) if rng.random() < density else S.bottom
    le = L.leq_table

    def rule(u):
        acc = u
        for (i, j), w in img.items():
            if le[j][u[i]]:
                acc = S.join2(acc, w)
        return acc

    return ClosureMap(S, rule, name=name, kind="additive", cfg=cfg)


def random_moore_closure(S: Space, rng: random.Random, k: int | None = None,
                         cfg: Config | None = None, name: str = "c_moore") -> ClosureMap:
    """Meet of the members of a random closed family above u; idempotent."""
    k = rng.randint(0, 4) if k is None else k
    family = {S.bottom, S.top} | {random_fuzzy_set(S, rng) for _ in range(k)}
    family = sorted(family)
    return ClosureMap(S, lambda u: S.meet(w for w in family if S.leq(u, w)), name=name, kind="moore", cfg=cfg)


def random_closure(S: Space, rng: random.Random, cfg: Config | None = None, name: str = "c") -> ClosureMap:
    """A closure map drawn from a mix of constructions."""
    pick = rng.random()
    if pick < 0.05:
        c = discrete_operator(S, cfg)
    elif pick < 0.1:
        c = trivial_operator(S, cfg)
    elif pick < 0.35:
        c = random_additive_closure(S, rng, rng.choice([0.2, 0.5]), cfg)
    elif pick < 0.6:
        c = random_moore_closure(S, rng, cfg=cfg)
    elif pick < 0.75:
        c = join_maps([random_moore_closure(S, rng, cfg=cfg), random_moore_closure(S, rng, cfg=cfg)], cfg=cfg)
    elif pick < 0.9:
        c = meet_maps([random_additive_closure(S, rng, 0.3, cfg), random_moore_closure(S, rng, cfg=cfg)], cfg=cfg)
    else:
        c = composite(random_additive_closure(S, rng, 0.3, cfg), random_moore_closure(S, rng, cfg=cfg), cfg)
    c.name = name
    return c


def valid_comorphisms(source: TensorStructure, target: TensorStructure) -> list[BasisComorphism]:
    """Every map M -> L preserving joins, top and tensor (small lattices only)."""
    M, L = source.base, target.base
    inner = [b for b in M.elements if b not in (M.bottom, M.top)]
    found = []
    for vals in itertools.product(range(len(L)), repeat=len(inner)):
        m = [0] * len(M)
        m[M.bottom], m[M.top] = L.bottom, L.top
        for b, a in zip(inner, vals):
            m[b] = a
        if any(L.join_table[m[a]][m[b]] != m[M.join_table[a][b]] for a in M.elements for b in M.elements):
            continue
        phi = BasisComorphism(M, L, tuple(m), f"phi{len(found)}")
        if check_comorphism(phi, source, target).passed:
            found.append(phi)
    return found
