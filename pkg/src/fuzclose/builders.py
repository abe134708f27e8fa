"""Closure maps from L-topologies, divisor monoids, discretized unit intervals,
and the worked single-point examples with their expected tables."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

from .closure import ClosureMap, table_closure, trivial_operator
from .config import Config
from .lattice import FiniteLattice, chain, divisor_lattice, divisors
from .monoid import NotGLMonoid, TensorStructure, meet_tensor, tensor_from_function
from .powerset import CarrierSet, FuzzySet, Space, carrier


class InvalidN(ValueError):
    pass


@dataclass(frozen=True)
class LTopology:
    space: Space
    tensor: TensorStructure
    opens: tuple[FuzzySet, ...]

    def __post_init__(self):
        if self.tensor.base != self.space.basis:
            raise ValueError("tensor and space use different lattices")
        object.__setattr__(self, "opens", tuple(self.space.validate(v) for v in self.opens))


def _require_gl(T: TensorStructure) -> None:
    if not T.is_gl:
        raise NotGLMonoid(f"{T.name} is classified {T.classification}, a GL-monoid is required")


def negation(T: TensorStructure, u: FuzzySet) -> FuzzySet:
    """Pointwise residuum into bottom: x -> (u(x) => bottom)."""
    r, bot = T.residuum_table, T.base.bottom
    return tuple(r[e][bot] for e in u)


def closure_from_topology(tau: LTopology, cfg: Config | None = None, name: str = "c_tau") -> ClosureMap:
    """c(u) = meet of the negated opens that lie above u.

    The negations of the opens play the role of closed sets; the empty topology
    yields the constant top map, which violates C3 and is left for the checker.
    """
    _require_gl(tau.tensor)
    S = tau.space
    closed = sorted({negation(tau.tensor, v) for v in tau.opens})
    return ClosureMap(S, lambda u: S.meet(w for w in closed if S.leq(u, w)), name=name, kind="topology", cfg=cfg)


def topology_from_closure(c: ClosureMap, tensor: TensorStructure, cfg: Config | None = None) -> LTopology:
    """Opens are the negations of the fixed points of c."""
    _require_gl(tensor)
    S = c.space
    fixed = [u for u in S.all_elements(cfg) if c(u) == u]
    opens = sorted({negation(tensor, u) for u in fixed})
    return LTopology(S, tensor, tuple(opens))


def divisor_monoid(n: int) -> TensorStructure:
    """Divisors of n under divisibility, with gcd as tensor."""
    if not isinstance(n, int) or n < 2:
        raise InvalidN(f"need an integer n >= 2, got {n!r}")
    L = divisor_lattice(n)
    ds = divisors(n)
    return tensor_from_function(L, lambda a, b: ds.index(math.gcd(ds[a], ds[b])), name=f"div{n}-gcd")


@dataclass(frozen=True)
class DiscretizedChain:
    """The grid {0, 1/m, ..., 1} as a chain with minimum as tensor."""

    resolution: int

    def __post_init__(self):
        if not isinstance(self.resolution, int) or self.resolution < 1:
            raise InvalidN(f"resolution must be a positive integer, got {self.resolution!r}")

    @cached_property
    def lattice(self) -> FiniteLattice:
        m = self.resolution
        return chain(m + 1, [str(Fraction(k, m)) for k in range(m + 1)], name=f"grid{m}")

    @cached_property
    def tensor(self) -> TensorStructure:
        return meet_tensor(self.lattice)

    def value(self, k: int) -> Fraction:
        return Fraction(k, self.resolution)


def min_chain(n: int) -> TensorStructure:
    """An n-element chain with minimum as tensor."""
    return meet_tensor(chain(n))


def root_up(k: int, m: int, n: int) -> int:
    """Smallest j with j/m >= (k/m)^(1/n), in exact integer arithmetic."""
    # j^n >= k * m^(n-1)
    target = k * m ** (n - 1)
    j = min(m, math.ceil(m * (k / m) ** (1 / n)))
    while j > 0 and (j - 1) ** n >= target:
        j -= 1
    while j ** n < target:
        j += 1
    return j


def root_closure(grid: DiscretizedChain, n: int | float, cfg: Config | None = None) -> ClosureMap:
    """t -> t^(1/n) rounded up to the grid on a one-point carrier; ``n=math.inf`` is the limit map."""
    S = Space(carrier(["x"]), grid.lattice)
    if n == math.inf:
        c = trivial_operator(S, cfg)
        c.name = "c_inf"
        return c
    if not isinstance(n, int) or n < 1:
        raise InvalidN(f"n must be a positive integer or infinity, got {n!r}")
    m = grid.resolution
    return ClosureMap(S, lambda u: (root_up(u[0], m, n),), name=f"c_{n}", kind="root", cfg=cfg)


# -- the worked examples ------------------------------------------------------

POINT = CarrierSet(("x",), "X")

# c(1)=1, c(2)=12, c(3)=3, c(4)=12, c(6)=12, c(12)=12
EXAMPLE2_TOPOLOGY = (1, 2, 12)
EXAMPLE2_TABLE = {1: 1, 2: 12, 3: 3, 4: 12, 6: 12, 12: 12}

EXAMPLE3_TABLE = {1: 1, 2: 2, 3: 6, 4: 4, 6: 18, 9: 9, 12: 36, 18: 36, 36: 36}
EXAMPLE3_TOPOLOGY = (1, 4, 9, 36)


def point_set(T: TensorStructure, label) -> FuzzySet:
    return (T.base.index(str(label)),)


def example2_topology() -> LTopology:
    T = divisor_monoid(12)
    return LTopology(Space(POINT, T.base), T, tuple(point_set(T, v) for v in EXAMPLE2_TOPOLOGY))


def example3_closure() -> tuple[ClosureMap, TensorStructure]:
    T = divisor_monoid(36)
    S = Space(POINT, T.base)
    rows = {point_set(T, a): point_set(T, b) for a, b in EXAMPLE3_TABLE.items()}
    return table_closure(S, rows, name="c_ex3"), T


def single_point_table(c: ClosureMap) -> dict[int, int]:
    """A one-point closure map as {int label: int label}."""
    labels = c.space.basis.labels
    return {int(labels[u[0]]): int(labels[v[0]]) for u, v in c.rows()}
