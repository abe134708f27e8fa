"""Tensors on finite lattices: cqm-lattices, GL-monoids and the residuum."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .config import Config, default_config
from .lattice import FiniteLattice, ForeignElement
from .report import Report

RAW, CQM, GL = "raw", "cqm", "gl-monoid"


class TensorError(ValueError):
    pass


class NotGLMonoid(TensorError):
    pass


@dataclass(frozen=True, eq=False)
class TensorStructure:
    """A binary operation table over a lattice.

    Classification and the residuum table are computed once at construction.
    The residuum is defined for any tensor (as a join of a finite set); whether
    it is an adjoint is what :func:`check_residuation_law` decides.
    """

    base: FiniteLattice
    table: tuple[tuple[int, ...], ...]
    name: str = "tensor"
    classification: str = field(default=RAW, init=False)
    residuum_table: tuple[tuple[int, ...], ...] = field(default=(), init=False, repr=False)

    def __post_init__(self):
        n = len(self.base)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise TensorError(f"tensor table of {self.name} is not {n}x{n}")
        for row in self.table:
            for v in row:
                if not (isinstance(v, int) and 0 <= v < n):
                    raise TensorError(f"tensor value {v!r} is not an element of {self.base.name}")
        L, t = self.base, self.table
        res = tuple(
            tuple(L.join(lam for lam in L.elements if L.leq(t[a][lam], b)) for b in L.elements)
            for a in L.elements
        )
        object.__setattr__(self, "residuum_table", res)
        if check_gl_monoid(self).passed:
            cls = GL
        elif check_cqm(self).passed:
            cls = CQM
        else:
            cls = RAW
        object.__setattr__(self, "classification", cls)

    def __call__(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def is_cqm(self) -> bool:
        return self.classification in (CQM, GL)

    @property
    def is_gl(self) -> bool:
        return self.classification == GL


def tensor_from_function(L: FiniteLattice, op: Callable[[int, int], int], name="tensor") -> TensorStructure:
    return TensorStructure(L, tuple(tuple(op(a, b) for b in L.elements) for a in L.elements), name)


def meet_tensor(L: FiniteLattice, name: str | None = None) -> TensorStructure:
    """The tensor a (x) b = a meet b."""
    return TensorStructure(L, L.meet_table, name or f"{L.name}-meet")


def tensor_from_rows(L: FiniteLattice, rows: Sequence[tuple[str, str, str]], default_meet=False, name="tensor"):
    """Build a tensor from labelled ``a (x) b = c`` rows."""
    n = len(L)
    table: list[list[int | None]] = [[None] * n for _ in range(n)]
    for a, b, c in rows:
        ia, ib, ic = L.index(a), L.index(b), L.index(c)
        if table[ia][ib] is not None and table[ia][ib] != ic:
            raise TensorError(f"conflicting entries for {a} (x) {b}")
        table[ia][ib] = ic
    for a in range(n):
        for b in range(n):
            if table[a][b] is None:
                if not default_meet:
                    raise TensorError(f"no entry for {L.labels[a]} (x) {L.labels[b]}")
                table[a][b] = L.meet_table[a][b]
    return TensorStructure(L, tuple(tuple(r) for r in table), name)


def _lab(L, *xs):
    return [L.labels[x] for x in xs]


def _isotone_witness(T: TensorStructure):
    L, t = T.base, T.table
    # checking covering steps in each argument suffices for isotonicity
    for a1 in L.elements:
        for a2 in L.upper_covers[a1]:
            for b in L.elements:
                if not L.leq(t[a1][b], t[a2][b]):
                    return {"a1": L.labels[a1], "a2": L.labels[a2], "b1": L.labels[b], "b2": L.labels[b]}
                if not L.leq(t[b][a1], t[b][a2]):
                    return {"a1": L.labels[b], "a2": L.labels[b], "b1": L.labels[a1], "b2": L.labels[a2]}
    return None


def check_cqm(T: TensorStructure) -> Report:
    """Isotonicity in both arguments and idempotency of top."""
    L, t = T.base, T.table
    rep = Report(f"cqm axioms of {T.name}")
    w = _isotone_witness(T)
    rep.add("isotone", w is None, w)
    tt = t[L.top][L.top]
    rep.add("top idempotent", tt == L.top, {"top_tensor_top": L.labels[tt]} if tt != L.top else None)
    return rep


def divisibility_witness(T: TensorStructure, a: int, b: int) -> int | None:
    """For a <= b, a maximal g with a = b (x) g, smallest index first; None if absent."""
    L, t = T.base, T.table
    ws = [g for g in L.elements if t[b][g] == a]
    maximal = [g for g in ws if not any(h != g and L.leq(g, h) for h in ws)]
    return min(maximal) if maximal else None


def check_gl_monoid(T: TensorStructure, cfg: Config | None = None) -> Report:
    """Per-axiom GL-monoid check with witnesses."""
    cfg = cfg or default_config()
    L, t = T.base, T.table
    E = L.elements
    rep = Report(f"GL-monoid axioms of {T.name}")

    w = _isotone_witness(T)
    rep.add("isotone", w is None, w)
    w = next(({"a": L.labels[a], "b": L.labels[b]} for a in E for b in E if t[a][b] != t[b][a]), None)
    rep.add("commutative", w is None, w)
    w = next(
        ({"a": L.labels[a], "b": L.labels[b], "c": L.labels[c]}
         for a in E for b in E for c in E if t[t[a][b]][c] != t[a][t[b][c]]),
        None,
    )
    rep.add("associative", w is None, w)
    w = next(({"alpha": L.labels[a], "alpha_tensor_top": L.labels[t[a][L.top]]}
              for a in E if t[a][L.top] != a), None)
    rep.add("integral", w is None, w)
    w = next(({"alpha": L.labels[a], "alpha_tensor_bottom": L.labels[t[a][L.bottom]]}
              for a in E if t[a][L.bottom] != L.bottom), None)
    rep.add("zero", w is None, w)

    n = len(L)
    if n <= cfg.subset_cap:
        families = itertools.chain.from_iterable(itertools.combinations(E, r) for r in range(n + 1))
        note = ""
    else:
        families = itertools.chain([()], itertools.combinations(E, 2))
        note = "pairs and empty family only"
    w = None
    for fam in families:
        j = L.join(fam)
        for a in E:
            lhs = t[a][j]
            rhs = L.join(t[a][b] for b in fam)
            if lhs != rhs:
                w = {"alpha": L.labels[a], "family": "{" + ",".join(_lab(L, *fam)) + "}",
                     "lhs": L.labels[lhs], "rhs": L.labels[rhs]}
                break
        if w:
            break
    rep.add("join-distributive", w is None, w, note=note)
    w = next(({"alpha": L.labels[a], "beta": L.labels[b]}
              for a in E for b in E if L.leq(a, b) and divisibility_witness(T, a, b) is None), None)
    rep.add("divisible", w is None, w)
    return rep


def residuum(T: TensorStructure, a: int, b: int) -> int:
    """The join of all x with a (x) x <= b."""
    n = len(T.base)
    for x in (a, b):
        if not (isinstance(x, int) and 0 <= x < n):
            raise ForeignElement(f"{x!r} is not an element id of {T.base.name}")
    if not T.is_cqm:
        raise TensorError(f"{T.name} is not a cqm tensor")
    return T.residuum_table[a][b]


def check_residuation_law(T: TensorStructure) -> Report:
    """a (x) b <= c  iff  a <= (b => c), over all triples."""
    L, t, r = T.base, T.table, T.residuum_table
    rep = Report(f"residuation law of {T.name}")
    w = None
    for a in L.elements:
        for b in L.elements:
            ab = t[a][b]
            for c in L.elements:
                if L.leq(ab, c) != L.leq(a, r[b][c]):
                    w = {"a": L.labels[a], "b": L.labels[b], "c": L.labels[c],
                         "a_tensor_b": L.labels[ab], "b_implies_c": L.labels[r[b][c]]}
                    break
            if w:
                break
        if w:
            break
    rep.add("residuation", w is None, w)
    return rep
