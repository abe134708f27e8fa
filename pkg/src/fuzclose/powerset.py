"""Fuzzy powersets L^X and the crisp, fuzzy and basis-changing powerset operators.

A fuzzy set is a tuple of element ids, one per point of its carrier, read
inside a :class:`Space` (carrier plus basis lattice).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .config import Config, default_config
from .lattice import FiniteLattice, ForeignElement
from .monoid import TensorStructure
from .report import Report

FuzzySet = tuple[int, ...]


class CarrierMismatch(ValueError):
    pass


class ForeignPoint(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class CarrierSet:
    points: tuple[str, ...]
    name: str = "X"

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(str(p) for p in self.points))
        if len(set(self.points)) != len(self.points):
            raise ValueError(f"carrier {self.name} has duplicate points")

    def __len__(self) -> int:
        return len(self.points)

    def index(self, point: str) -> int:
        try:
            return self.points.index(point)
        except ValueError:
            raise ForeignPoint(f"{point!r} is not a point of {self.name}") from None


def carrier(n_or_points: int | Sequence[str], name: str = "X") -> CarrierSet:
    if isinstance(n_or_points, int):
        return CarrierSet(tuple(f"x{i + 1}" for i in range(n_or_points)), name)
    return CarrierSet(tuple(n_or_points), name)


@dataclass(frozen=True)
class Space:
    """The fuzzy powerset L^X, ordered pointwise."""

    carrier: CarrierSet
    basis: FiniteLattice

    @property
    def size(self) -> int:
        return len(self.basis) ** len(self.carrier)

    @property
    def bottom(self) -> FuzzySet:
        return (self.basis.bottom,) * len(self.carrier)

    @property
    def top(self) -> FuzzySet:
        return (self.basis.top,) * len(self.carrier)

    def constant(self, e: int) -> FuzzySet:
        return (e,) * len(self.carrier)

    def elements(self) -> Iterator[FuzzySet]:
        """All of L^X, lexicographic in (point index, element index)."""
        return itertools.product(range(len(self.basis)), repeat=len(self.carrier))

    @cached_property
    def element_list(self) -> tuple[FuzzySet, ...]:
        return tuple(self.elements())

    def all_elements(self, cfg: Config | None = None) -> tuple[FuzzySet, ...]:
        cfg = cfg or default_config()
        if self.size > cfg.cap:
            raise CapExceeded(f"|L^X| = {self.size} exceeds the enumeration cap {cfg.cap}")
        return self.element_list

    def sample(self, k: int, seed: int = 0) -> list[FuzzySet]:
        rng = random.Random(seed)
        n, m = len(self.basis), len(self.carrier)
        return [tuple(rng.randrange(n) for _ in range(m)) for _ in range(k)]

    def validate(self, u: FuzzySet) -> FuzzySet:
        if len(u) != len(self.carrier):
            raise CarrierMismatch(f"fuzzy set has {len(u)} values, carrier {self.carrier.name} has {len(self.carrier)}")
        n = len(self.basis)
        for e in u:
            if not (isinstance(e, int) and 0 <= e < n):
                raise ForeignElement(f"{e!r} is not an element id of {self.basis.name}")
        return tuple(u)

    def leq(self, u: FuzzySet, v: FuzzySet) -> bool:
        le = self.basis.leq_table
        return all(le[a][b] for a, b in zip(u, v))

    def join2(self, u: FuzzySet, v: FuzzySet) -> FuzzySet:
        jt = self.basis.join_table
        return tuple(jt[a][b] for a, b in zip(u, v))

    def meet2(self, u: FuzzySet, v: FuzzySet) -> FuzzySet:
        mt = self.basis.meet_table
        return tuple(mt[a][b] for a, b in zip(u, v))

    def join(self, us: Iterable[FuzzySet]) -> FuzzySet:
        acc = self.bottom
        for u in us:
            acc = self.join2(acc, u)
        return acc

    def meet(self, us: Iterable[FuzzySet]) -> FuzzySet:
        acc = self.top
        for u in us:
            acc = self.meet2(acc, u)
        return acc

    def upper_covers(self, u: FuzzySet) -> Iterator[FuzzySet]:
        covers = self.basis.upper_covers
        for i, e in enumerate(u):
            for c in covers[e]:
                yield u[:i] + (c,) + u[i + 1:]

    def format(self, u: FuzzySet) -> str:
        """Literal syntax ``[p1=e1,p2=e2,...]``."""
        labels = self.basis.labels
        return "[" + ",".join(f"{p}={labels[e]}" for p, e in zip(self.carrier.points, u)) + "]"

    def parse(self, text: str) -> FuzzySet:
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise FormatError(f"fuzzy-set literal must be bracketed: {text!r}")
        body = text[1:-1].strip()
        values: dict[int, int] = {}
        if body:
            for item in body.split(","):
                if "=" not in item:
                    raise FormatError(f"expected point=element in {item!r}")
                p, e = (s.strip() for s in item.split("=", 1))
                i = self.carrier.index(p)
                if i in values:
                    raise FormatError(f"point {p} given twice in {text!r}")
                values[i] = self.basis.index(e)
        if len(values) != len(self.carrier):
            missing = [p for i, p in enumerate(self.carrier.points) if i not in values]
            raise FormatError(f"literal {text!r} misses points {missing}")
        return tuple(values[i] for i in range(len(self.carrier)))


@dataclass(frozen=True)
class SetFunction:
    domain: CarrierSet
    codomain: CarrierSet
    mapping: tuple[int, ...]
    name: str = "f"

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if len(self.mapping) != len(self.domain):
            raise CarrierMismatch(f"{self.name} must assign every point of {self.domain.name}")
        for y in self.mapping:
            if not (isinstance(y, int) and 0 <= y < len(self.codomain)):
                raise ForeignPoint(f"{self.name} maps outside {self.codomain.name}")
        if len(self.codomain) == 0 and len(self.domain) > 0:
            raise CarrierMismatch("no function from a nonempty set into the empty set")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def then(self, g: "SetFunction") -> "SetFunction":
        """``g . self``."""
        if g.domain != self.codomain:
            raise CarrierMismatch(f"cannot compose {self.name}: ->{self.codomain.name} with {g.name}: {g.domain.name}->")
        return SetFunction(self.domain, g.codomain, tuple(g.mapping[y] for y in self.mapping),
                           f"{g.name}.{self.name}")

    def is_surjective(self) -> bool:
        return set(self.mapping) == set(range(len(self.codomain)))

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @cached_property
    def fibers(self) -> tuple[tuple[int, ...], ...]:
        fib: list[list[int]] = [[] for _ in self.codomain.points]
        for x, y in enumerate(self.mapping):
            fib[y].append(x)
        return tuple(tuple(f) for f in fib)


def identity_function(X: CarrierSet) -> SetFunction:
    return SetFunction(X, X, tuple(range(len(X))), f"id_{X.name}")


def function_from_pairs(X: CarrierSet, Y: CarrierSet, pairs: Iterable[tuple[str, str]], name="f") -> SetFunction:
    m: dict[int, int] = {}
    for x, y in pairs:
        ix, iy = X.index(x), Y.index(y)
        if ix in m and m[ix] != iy:
            raise FormatError(f"{name} assigns two images to {x}")
        m[ix] = iy
    missing = [p for i, p in enumerate(X.points) if i not in m]
    if missing:
        raise FormatError(f"{name} leaves {missing} unassigned")
    return SetFunction(X, Y, tuple(m[i] for i in range(len(X))), name)


@dataclass(frozen=True)
class BasisComorphism:
    """The concrete map M -> L underlying a basis change from L to M."""

    source: FiniteLattice
    target: FiniteLattice
    mapping: tuple[int, ...]
    name: str = "phi"

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if len(self.mapping) != len(self.source):
            raise ValueError(f"{self.name} must assign every element of {self.source.name}")
        for a in self.mapping:
            if not (isinstance(a, int) and 0 <= a < len(self.target)):
                raise ForeignElement(f"{self.name} maps outside {self.target.name}")

    def __call__(self, b: int) -> int:
        return self.mapping[b]

    def then(self, other: "BasisComorphism") -> "BasisComorphism":
        """``other . self``: source of self -> target of other."""
        if self.target != other.source:
            raise ValueError(f"cannot compose {self.name} with {other.name}")
        return BasisComorphism(self.source, other.target, tuple(other.mapping[a] for a in self.mapping),
                               f"{other.name}.{self.name}")

    @cached_property
    def star_table(self) -> tuple[int, ...]:
        """star_phi for every element of the target."""
        M, L = self.source, self.target
        return tuple(
            M.meet(b for b in M.elements if L.leq_table[a][self.mapping[b]])
            for a in L.elements
        )


def identity_comorphism(L: FiniteLattice) -> BasisComorphism:
    return BasisComorphism(L, L, tuple(L.elements), f"id_{L.name}")


def comorphism_from_pairs(M: FiniteLattice, L: FiniteLattice, pairs, name="phi") -> BasisComorphism:
    m: dict[int, int] = {}
    for b, a in pairs:
        ib, ia = M.index(b), L.index(a)
        if ib in m and m[ib] != ia:
            raise FormatError(f"{name} assigns two images to {b}")
        m[ib] = ia
    missing = [M.labels[i] for i in M.elements if i not in m]
    if missing:
        raise FormatError(f"{name} leaves {missing} unassigned")
    return BasisComorphism(M, L, tuple(m[i] for i in M.elements), name)


def check_comorphism(
    phi: BasisComorphism,
    source_tensor: TensorStructure | None = None,
    target_tensor: TensorStructure | None = None,
    cfg: Config | None = None,
) -> Report:
    """Join, top and (when tensors are given) tensor preservation."""
    cfg = cfg or default_config()
    M, L, p = phi.source, phi.target, phi.mapping
    rep = Report(f"comorphism {phi.name}: {M.name} -> {L.name}")
    n = len(M)
    if n <= cfg.subset_cap:
        fams = itertools.chain.from_iterable(itertools.combinations(M.elements, r) for r in range(n + 1))
        note = ""
    else:
        fams = itertools.chain([()], itertools.combinations(M.elements, 2))
        note = "pairs and empty join only"
    w = None
    for fam in fams:
        lhs = p[M.join(fam)]
        rhs = L.join(p[b] for b in fam)
        if lhs != rhs:
            w = {"family": "{" + ",".join(M.labels[b] for b in fam) + "}",
                 "image_of_join": L.labels[lhs], "join_of_images": L.labels[rhs]}
            break
    rep.add("preserves joins", w is None, w, note=note)
    rep.add("preserves top", p[M.top] == L.top,
            None if p[M.top] == L.top else {"image_of_top": L.labels[p[M.top]]})
    if source_tensor is not None and target_tensor is not None:
        if source_tensor.base != M or target_tensor.base != L:
            raise CarrierMismatch("tensors do not live on the comorphism's lattices")
        ts, tt = source_tensor.table, target_tensor.table
        w = next(({"b1": M.labels[a], "b2": M.labels[b]}
                  for a in M.elements for b in M.elements if p[ts[a][b]] != tt[p[a]][p[b]]), None)
        rep.add("preserves tensor", w is None, w)
    return rep


def check_star_adjunction(phi: BasisComorphism) -> Report:
    """Report where  a <= phi(b)  iff  star_phi(a) <= b  fails (not asserted)."""
    M, L = phi.source, phi.target
    rep = Report(f"star adjunction of {phi.name}")
    w = next(({"alpha": L.labels[a], "beta": M.labels[b]}
              for a in L.elements for b in M.elements
              if L.leq(a, phi.mapping[b]) != M.leq(phi.star_table[a], b)), None)
    rep.add("Galois law", w is None, w)
    return rep


# -- crisp operators ---------------------------------------------------------

def _points(f_side: CarrierSet, A: Iterable[int]) -> frozenset[int]:
    A = frozenset(A)
    for a in A:
        if not (isinstance(a, int) and 0 <= a < len(f_side)):
            raise ForeignPoint(f"{a!r} is not a point of {f_side.name}")
    return A


def crisp_image(f: SetFunction, A: Iterable[int]) -> frozenset[int]:
    return frozenset(f.mapping[x] for x in _points(f.domain, A))


def crisp_preimage(f: SetFunction, B: Iterable[int]) -> frozenset[int]:
    B = _points(f.codomain, B)
    return frozenset(x for x, y in enumerate(f.mapping) if y in B)


# -- fuzzy operators ---------------------------------------------------------

def _require(u: FuzzySet, X: CarrierSet) -> None:
    if len(u) != len(X):
        raise CarrierMismatch(f"fuzzy set has {len(u)} values, carrier {X.name} has {len(X)}")


def fuzzy_forward(f: SetFunction, L: FiniteLattice, a: FuzzySet) -> FuzzySet:
    """Image: join of ``a`` over each fiber; empty fibers give bottom."""
    _require(a, f.domain)
    jt = L.join_table
    out = []
    for fib in f.fibers:
        acc = L.bottom
        for x in fib:
            acc = jt[acc][a[x]]
        out.append(acc)
    return tuple(out)


def fuzzy_backward(f: SetFunction, b: FuzzySet) -> FuzzySet:
    """Preimage: ``b . f``."""
    _require(b, f.codomain)
    return tuple(b[y] for y in f.mapping)


def star_phi(phi: BasisComorphism, alpha: int) -> int:
    """Meet in M of all beta whose image dominates alpha."""
    if not (isinstance(alpha, int) and 0 <= alpha < len(phi.target)):
        raise ForeignElement(f"{alpha!r} is not an element id of {phi.target.name}")
    return phi.star_table[alpha]


def star_phi_lift(phi: BasisComorphism, a: FuzzySet) -> FuzzySet:
    st = phi.star_table
    return tuple(st[e] for e in a)


def comorphism_lift(phi: BasisComorphism, b: FuzzySet) -> FuzzySet:
    p = phi.mapping
    return tuple(p[e] for e in b)


def pair_forward(f: SetFunction, phi: BasisComorphism, a: FuzzySet) -> FuzzySet:
    """L^X -> M^Y, computed pointwise as star_phi after the fuzzy image."""
    return star_phi_lift(phi, fuzzy_forward(f, phi.target, a))


def pair_forward_bruteforce(f: SetFunction, phi: BasisComorphism, a: FuzzySet, cap: int = 4096) -> FuzzySet:
    """Meet over every b in M^Y with f->(a) <= phi(b); exponential, for testing."""
    M, L = phi.source, phi.target
    SY = Space(f.codomain, M)
    if SY.size > cap:
        raise CapExceeded(f"|M^Y| = {SY.size} exceeds {cap}")
    img = fuzzy_forward(f, L, a)
    target = Space(f.codomain, L)
    admissible = (b for b in SY.elements() if target.leq(img, comorphism_lift(phi, b)))
    return SY.meet(admissible)


def pair_backward(f: SetFunction, phi: BasisComorphism, b: FuzzySet) -> FuzzySet:
    """M^Y -> L^X: ``phi . b . f``."""
    _require(b, f.codomain)
    p = phi.mapping
    return tuple(p[b[y]] for y in f.mapping)
