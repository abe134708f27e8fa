"""Finite complete lattices with tabulated order, join and meet.

Elements are identified by their position in ``labels``; labels exist for
input and output only.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .config import Config, default_config
from .report import Report


class LatticeError(ValueError):
    """Base class for invalid lattice input."""


class NotAPoset(LatticeError):
    pass


class NoJoin(LatticeError):
    def __init__(self, a: str, b: str):
        super().__init__(f"{a} and {b} have no least upper bound")
        self.pair = (a, b)


class NoMeet(LatticeError):
    def __init__(self, a: str, b: str):
        super().__init__(f"{a} and {b} have no greatest lower bound")
        self.pair = (a, b)


class NoBoundedElement(LatticeError):
    pass


class DuplicateLabel(LatticeError):
    pass


class ForeignElement(LatticeError, IndexError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    labels: tuple[str, ...]
    leq_table: tuple[tuple[bool, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    name: str = "L"
    _index: dict[str, int] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(self.labels)})

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.labels == other.labels and self.leq_table == other.leq_table

    def __hash__(self):
        return hash((self.labels, self.leq_table))

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ForeignElement(f"{label!r} is not an element of {self.name}") from None

    def label(self, i: int) -> str:
        self._check(i)
        return self.labels[i]

    def _check(self, i: int) -> None:
        if not (isinstance(i, int) and 0 <= i < len(self.labels)):
            raise ForeignElement(f"{i!r} is not an element id of {self.name}")

    def leq(self, a: int, b: int) -> bool:
        return self.leq_table[a][b]

    def join(self, subset: Iterable[int]) -> int:
        """Least upper bound; the empty join is bottom."""
        jt = self.join_table
        acc = self.bottom
        for x in subset:
            self._check(x)
            acc = jt[acc][x]
        return acc

    def meet(self, subset: Iterable[int]) -> int:
        """Greatest lower bound; the empty meet is top."""
        mt = self.meet_table
        acc = self.top
        for x in subset:
            self._check(x)
            acc = mt[acc][x]
        return acc

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        """For each element, the elements covering it."""
        n = len(self)
        le = self.leq_table
        covers = []
        for a in range(n):
            above = [b for b in range(n) if b != a and le[a][b]]
            covers.append(tuple(
                b for b in above
                if not any(c != b and le[c][b] for c in above)
            ))
        return tuple(covers)

    def is_chain(self) -> bool:
        le = self.leq_table
        return all(le[a][b] or le[b][a] for a in self.elements for b in self.elements)


def _closure(n: int, rel: set[tuple[int, int]]) -> list[list[bool]]:
    le = [[i == j for j in range(n)] for i in range(n)]
    for a, b in rel:
        le[a][b] = True
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                row_k = le[k]
                row_i = le[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return le


def build_lattice(
    labels: Sequence[str],
    pairs: Iterable[tuple[str, str]],
    kind: str = "covers",
    name: str = "L",
    bottom: str | None = None,
    top: str | None = None,
) -> FiniteLattice:
    """Build a lattice from labels and ``a <= b`` pairs.

    ``kind`` is ``"covers"`` (Hasse pairs, transitively closed here) or
    ``"full"`` (the whole relation, which must already be transitive).
    ``bottom``/``top`` are optional hints; they are validated, not trusted.
    """
    labels = tuple(str(l) for l in labels)
    seen = set()
    for l in labels:
        if l in seen:
            raise DuplicateLabel(f"label {l!r} appears twice")
        seen.add(l)
    if kind not in ("covers", "full"):
        raise ValueError(f"unknown order kind {kind!r}")
    idx = {l: i for i, l in enumerate(labels)}
    n = len(labels)
    rel = set()
    for a, b in pairs:
        for x in (a, b):
            if x not in idx:
                raise ForeignElement(f"order pair mentions unknown element {x!r}")
        rel.add((idx[a], idx[b]))

    if kind == "full":
        le = [[i == j for j in range(n)] for i in range(n)]
        for a, b in rel:
            le[a][b] = True
        closed = _closure(n, rel)
        if closed != le:
            for i in range(n):
                for j in range(n):
                    if closed[i][j] and not le[i][j]:
                        raise NotAPoset(
                            f"full relation is not transitive: missing {labels[i]} <= {labels[j]}"
                        )
    else:
        le = _closure(n, rel)
    for i in range(n):
        for j in range(i + 1, n):
            if le[i][j] and le[j][i]:
                raise NotAPoset(f"{labels[i]} and {labels[j]} are mutually below each other")

    up = [sum(r) for r in le]
    down = [sum(le[i][j] for i in range(n)) for j in range(n)]

    def bound(a, b, upper):
        # a least element of a candidate set has the largest up-set within it
        if upper:
            cands = [z for z in range(n) if le[a][z] and le[b][z]]
            if not cands:
                return None
            z = max(cands, key=lambda c: (up[c], -c))
            return z if all(le[z][w] for w in cands) else None
        cands = [z for z in range(n) if le[z][a] and le[z][b]]
        if not cands:
            return None
        z = max(cands, key=lambda c: (down[c], -c))
        return z if all(le[w][z] for w in cands) else None

    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            z = bound(a, b, True)
            if z is None:
                raise NoJoin(labels[a], labels[b])
            join[a][b] = join[b][a] = z
    meet = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            z = bound(a, b, False)
            if z is None:
                raise NoMeet(labels[a], labels[b])
            meet[a][b] = meet[b][a] = z

    if n == 0:
        raise NoBoundedElement("a lattice needs a bottom and a top element")
    bot = reduce(lambda x, y: meet[x][y], range(n))
    tp = reduce(lambda x, y: join[x][y], range(n))
    if bot == tp:
        raise NoBoundedElement("bottom and top coincide; at least two elements are required")
    for hint, actual, what in ((bottom, bot, "bottom"), (top, tp, "top")):
        if hint is not None and hint != labels[actual]:
            raise NoBoundedElement(f"declared {what} {hint!r} but the {what} is {labels[actual]!r}")

    return FiniteLattice(
        labels=labels,
        leq_table=tuple(tuple(r) for r in le),
        join_table=tuple(tuple(r) for r in join),
        meet_table=tuple(tuple(r) for r in meet),
        bottom=bot,
        top=tp,
        name=name,
    )


def chain(n: int, labels: Sequence[str] | None = None, name: str | None = None) -> FiniteLattice:
    """The n-element chain 0 < 1 < ... < n-1."""
    if n < 2:
        raise NoBoundedElement("a chain needs at least two elements")
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    pairs = [(labels[i], labels[i + 1]) for i in range(n - 1)]
    return build_lattice(labels, pairs, name=name or f"chain{n}")


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def divisor_lattice(n: int, name: str | None = None) -> FiniteLattice:
    """Positive divisors of ``n`` ordered by divisibility."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    ds = divisors(n)
    pairs = [
        (str(a), str(b)) for a in ds for b in ds
        if a != b and b % a == 0 and all(not (c % a == 0 and b % c == 0) for c in ds if c not in (a, b))
    ]
    return build_lattice([str(d) for d in ds], pairs, name=name or f"div{n}")


def diamond() -> FiniteLattice:
    """M3: bottom, three pairwise incomparable atoms, top."""
    return build_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        name="M3",
    )


def pentagon() -> FiniteLattice:
    """N5: 0 < a < b < 1 and 0 < c < 1."""
    return build_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        name="N5",
    )


def _subsets(L: FiniteLattice, cfg: Config):
    """Subsets used by the distributivity-style checks, plus whether exhaustive."""
    n = len(L)
    if n <= cfg.subset_cap:
        subs = (
            s for r in range(n + 1) for s in itertools.combinations(range(n), r)
        )
        return subs, True
    rng = random.Random(cfg.seed)
    pairs = [()] + [(a, b) for a in range(n) for b in range(a, n)]
    sampled = [
        tuple(sorted(rng.sample(range(n), rng.randint(3, n))))
        for _ in range(cfg.samples)
    ]
    return itertools.chain(pairs, sampled), False


def check_frame_distributivity(L: FiniteLattice, cfg: Config | None = None) -> Report:
    """Check both infinite distributive laws over all (or sampled) subsets."""
    cfg = cfg or default_config()
    rep = Report(f"distributivity of {L.name}")
    subs, exhaustive = _subsets(L, cfg)
    bad_join = bad_meet = None
    jt, mt = L.join_table, L.meet_table
    for A in subs:
        jA, mA = L.join(A), L.meet(A)
        for alpha in L.elements:
            if bad_join is None:
                lhs = mt[jA][alpha]
                rhs = L.join(mt[a][alpha] for a in A)
                if lhs != rhs:
                    bad_join = (A, alpha, lhs, rhs)
            if bad_meet is None:
                lhs = jt[mA][alpha]
                rhs = L.meet(jt[a][alpha] for a in A)
                if lhs != rhs:
                    bad_meet = (A, alpha, lhs, rhs)
        if bad_join and bad_meet:
            break

    def witness(bad):
        if bad is None:
            return None
        A, alpha, lhs, rhs = bad
        return {
            "A": "{" + ",".join(L.labels[a] for a in A) + "}",
            "alpha": L.labels[alpha],
            "lhs": L.labels[lhs],
            "rhs": L.labels[rhs],
        }

    note = "" if exhaustive else "sampled subsets"
    rep.add("meet distributes over joins", bad_join is None, witness(bad_join), note=note)
    rep.add("join distributes over meets", bad_meet is None, witness(bad_meet), note=note)
    rep.data["exhaustive"] = exhaustive
    return rep
