"""Fixed-basis closure maps on L^X and their checkers.

A closure map is extensive (C1), monotone (C2) and sends the empty fuzzy set
to itself (C3). Checks enumerate L^X in canonical order so that the first
witness reported is deterministic.
"""

from __future__ import annotations

import random
import warnings
from typing import Callable, Iterable, Sequence

from .config import Config, default_config
from .powerset import (
    CapExceeded,
    CarrierMismatch,
    FuzzySet,
    SetFunction,
    Space,
    fuzzy_backward,
    fuzzy_forward,
)
from .report import Report


class SpaceMismatch(ValueError):
    pass


class PropertyPreconditionFailed(ValueError):
    pass


class EmptySourceWarning(UserWarning):
    pass


Rule = Callable[[FuzzySet], FuzzySet]


class ClosureMap:
    """A self-map of L^X, tabulated at construction when |L^X| is within the cap.

    Validity (C1-C3) is not enforced here: invalid maps must be representable so
    that :func:`check_closure_axioms` can report on them.
    """

    def __init__(self, space: Space, rule: Rule | None = None, name: str = "c", kind: str = "rule",
                 table: dict[FuzzySet, FuzzySet] | None = None, cfg: Config | None = None):
        cfg = cfg or default_config()
        self.space = space
        self.name = name
        self.kind = kind
        self._rule = rule
        if table is not None:
            missing = [u for u in space.all_elements(cfg) if u not in table]
            if missing:
                raise ValueError(f"table for {name} has no row for {space.format(missing[0])}")
            self._table = {u: space.validate(table[u]) for u in space.element_list}
        elif rule is None:
            raise ValueError("a closure map needs a rule or a table")
        elif space.size <= cfg.cap:
            self._table = {u: tuple(rule(u)) for u in space.element_list}
        else:
            self._table = None

    def __call__(self, u: FuzzySet) -> FuzzySet:
        if self._table is not None:
            return self._table[u]
        return tuple(self._rule(u))

    @property
    def tabulated(self) -> bool:
        return self._table is not None

    def rows(self, cfg: Config | None = None):
        """(u, c(u)) in canonical enumeration order."""
        for u in self.space.all_elements(cfg):
            yield u, self(u)

    def equals(self, other: "ClosureMap", cfg: Config | None = None) -> bool:
        _same_space(self, other)
        return all(self(u) == other(u) for u in self.space.all_elements(cfg))

    def leq(self, other: "ClosureMap", cfg: Config | None = None) -> bool:
        """Pointwise order of maps."""
        _same_space(self, other)
        S = self.space
        return all(S.leq(self(u), other(u)) for u in S.all_elements(cfg))

    def __repr__(self):
        return f"ClosureMap({self.name!r}, kind={self.kind!r}, space={self.space.carrier.name}/{self.space.basis.name})"


def _same_space(*maps: ClosureMap) -> None:
    s = maps[0].space
    for c in maps[1:]:
        if c.space != s:
            raise SpaceMismatch(f"{c.name} and {maps[0].name} live on different spaces")


def domain(space: Space, cfg: Config | None = None, samples: int | None = None):
    """Fuzzy sets to quantify over, and whether the enumeration is exhaustive."""
    cfg = cfg or default_config()
    if space.size <= cfg.cap:
        return space.element_list, True
    if samples:
        return space.sample(samples, cfg.seed), False
    raise CapExceeded(f"|L^X| = {space.size} exceeds the enumeration cap {cfg.cap}")


def _w(space: Space, **kw) -> dict[str, str]:
    return {k: space.format(v) for k, v in kw.items()}


# -- construction ------------------------------------------------------------

def table_closure(space: Space, rows: dict[FuzzySet, FuzzySet], name="c", cfg=None) -> ClosureMap:
    return ClosureMap(space, table=rows, name=name, kind="table", cfg=cfg)


def discrete_operator(space: Space, cfg: Config | None = None) -> ClosureMap:
    """The identity map: the least closure map, since extension forces u <= c(u)."""
    return ClosureMap(space, lambda u: u, name="discrete", kind="identity", cfg=cfg)


def trivial_operator(space: Space, cfg: Config | None = None) -> ClosureMap:
    """Every nonempty fuzzy set goes to the top; the greatest closure map."""
    bot, top = space.bottom, space.top
    return ClosureMap(space, lambda u: bot if u == bot else top, name="trivial", kind="trivial", cfg=cfg)


def join_maps(maps: Sequence[ClosureMap], space: Space | None = None, cfg=None) -> ClosureMap:
    """Pointwise join; the empty family gives the discrete operator."""
    maps = list(maps)
    if not maps:
        if space is None:
            raise ValueError("the empty join needs an explicit space")
        return discrete_operator(space, cfg)
    _same_space(*maps)
    if len(maps) == 1:
        return maps[0]
    S = maps[0].space
    return ClosureMap(S, lambda u: S.join(c(u) for c in maps),
                      name="join(" + ",".join(c.name for c in maps) + ")", kind="join", cfg=cfg)


def meet_maps(maps: Sequence[ClosureMap], space: Space | None = None, cfg=None) -> ClosureMap:
    """Pointwise meet; the empty family gives the trivial operator."""
    maps = list(maps)
    if not maps:
        if space is None:
            raise ValueError("the empty meet needs an explicit space")
        return trivial_operator(space, cfg)
    _same_space(*maps)
    if len(maps) == 1:
        return maps[0]
    S = maps[0].space
    return ClosureMap(S, lambda u: S.meet(c(u) for c in maps),
                      name="meet(" + ",".join(c.name for c in maps) + ")", kind="meet", cfg=cfg)


def composite(outer: ClosureMap, inner: ClosureMap, cfg=None) -> ClosureMap:
    """``outer . inner``; a closure map whenever both are."""
    _same_space(outer, inner)
    return ClosureMap(outer.space, lambda u: outer(inner(u)), name=f"{outer.name}.{inner.name}",
                      kind="composite", cfg=cfg)


def initial_closure(f: SetFunction, cY: ClosureMap, cfg: Config | None = None) -> ClosureMap:
    """Preimage after closure after image: the initial structure on the domain of f."""
    if cY.space.carrier != f.codomain:
        raise CarrierMismatch(f"{cY.name} lives on {cY.space.carrier.name}, {f.name} maps into {f.codomain.name}")
    L = cY.space.basis
    SX = Space(f.domain, L)
    return ClosureMap(SX, lambda u: fuzzy_backward(f, cY(fuzzy_forward(f, L, u))),
                      name=f"initial({f.name},{cY.name})", kind="initial", cfg=cfg)


def initial_lift(legs: Sequence[tuple[SetFunction, ClosureMap]], space: Space | None = None, cfg=None,
                 mode: str = "meet") -> ClosureMap:
    """Combine the initial closures of every leg of a source out of one carrier.

    Each initial closure is the greatest map making its leg continuous, so the
    meet is the structure with the universal property. ``mode="join"`` gives the
    join instead, which in general breaks continuity of the legs.
    """
    if mode not in ("meet", "join"):
        raise ValueError(f"mode must be 'meet' or 'join', got {mode!r}")
    legs = list(legs)
    if not legs:
        if space is None:
            raise ValueError("an empty source needs an explicit space")
        warnings.warn("empty source: returning the discrete operator", EmptySourceWarning, stacklevel=2)
        return discrete_operator(space, cfg)
    X = legs[0][0].domain
    L = legs[0][1].space.basis
    for f, c in legs:
        if f.domain != X:
            raise CarrierMismatch("all legs of a source must share their domain")
        if c.space.basis != L:
            raise SpaceMismatch("all legs of a source must share their basis")
    combine = meet_maps if mode == "meet" else join_maps
    return combine([initial_closure(f, c, cfg) for f, c in legs], cfg=cfg)


# -- axiom checks ------------------------------------------------------------

def check_closure_axioms(c: ClosureMap, cfg: Config | None = None, samples: int | None = None) -> Report:
    """C1 extension, C2 monotonicity (on covering pairs), C3 bottom."""
    S = c.space
    us, exhaustive = domain(S, cfg, samples)
    rep = Report(f"closure axioms of {c.name}")
    note = "" if exhaustive else f"{len(us)} sampled fuzzy sets"

    w = None
    for u in us:
        cu = c(u)
        if not S.leq(u, cu):
            w = _w(S, u=u, c_u=cu)
            break
    rep.add("C1 extension", w is None, w, note=note)

    # monotonicity along every covering step gives it for the whole order
    w = None
    for u in us:
        cu = c(u)
        for v in S.upper_covers(u):
            cv = c(v)
            if not S.leq(cu, cv):
                w = _w(S, u=u, v=v, c_u=cu, c_v=cv)
                break
        if w:
            break
    rep.add("C2 monotonicity", w is None, w, note=note)

    cb = c(S.bottom)
    rep.add("C3 bottom", cb == S.bottom, None if cb == S.bottom else _w(S, c_bottom=cb))
    return rep


def is_closure_map(c: ClosureMap, cfg: Config | None = None) -> bool:
    return check_closure_axioms(c, cfg).passed


# -- continuity --------------------------------------------------------------

def continuity_report(title: str, cX: ClosureMap, cY: ClosureMap, forward: Rule, backward: Rule,
                      cfg: Config | None = None, samples: int | None = None) -> Report:
    """Both continuity inequalities for a pair of image/preimage operators.

    forward:  image(cX(u)) <= cY(image(u))        for u in the source space
    backward: cX(preimage(v)) <= preimage(cY(v))  for v in the target space
    The two are equivalent for adjoint operators; disagreement is a finding.
    """
    SX, SY = cX.space, cY.space
    us, ex1 = domain(SX, cfg, samples)
    vs, ex2 = domain(SY, cfg, samples)
    rep = Report(title)

    w = None
    for u in us:
        lhs = forward(cX(u))
        rhs = cY(forward(u))
        if not SY.leq(lhs, rhs):
            w = {"u": SX.format(u), "lhs": SY.format(lhs), "rhs": SY.format(rhs)}
            break
    fwd_ok = w is None
    rep.add("forward inequality", fwd_ok, w)

    w = None
    for v in vs:
        lhs = cX(backward(v))
        rhs = backward(cY(v))
        if not SX.leq(lhs, rhs):
            w = {"v": SY.format(v), "lhs": SX.format(lhs), "rhs": SX.format(rhs)}
            break
    bwd_ok = w is None
    rep.add("backward inequality", bwd_ok, w)

    rep.add("criteria agree", fwd_ok == bwd_ok, None if fwd_ok == bwd_ok else
            {"forward": str(fwd_ok).lower(), "backward": str(bwd_ok).lower()},
            finding=ex1 and ex2)
    rep.data.update(continuous=fwd_ok and bwd_ok, forward=fwd_ok, backward=bwd_ok,
                    exhaustive=ex1 and ex2)
    return rep


def _fixed_ops(f: SetFunction, cX: ClosureMap, cY: ClosureMap):
    if cX.space.carrier != f.domain or cY.space.carrier != f.codomain:
        raise CarrierMismatch(f"{f.name}: {f.domain.name}->{f.codomain.name} does not match the closure spaces")
    if cX.space.basis != cY.space.basis:
        raise SpaceMismatch("fixed-basis continuity needs one basis on both sides")
    L = cX.space.basis
    return (lambda u: fuzzy_forward(f, L, u)), (lambda v: fuzzy_backward(f, v))


def check_c_continuity(f: SetFunction, cX: ClosureMap, cY: ClosureMap,
                       cfg: Config | None = None, samples: int | None = None) -> Report:
    fwd, bwd = _fixed_ops(f, cX, cY)
    return continuity_report(f"continuity of {f.name}: ({f.domain.name},{cX.name}) -> ({f.codomain.name},{cY.name})",
                             cX, cY, fwd, bwd, cfg, samples)


def is_continuous(f: SetFunction, cX: ClosureMap, cY: ClosureMap, cfg=None) -> bool:
    return check_c_continuity(f, cX, cY, cfg).data["continuous"]


def compose_continuity(f: SetFunction, g: SetFunction, cX: ClosureMap, cY: ClosureMap, cZ: ClosureMap,
                       cfg: Config | None = None) -> Report:
    """If f: X->Y and g: Y->Z are continuous then so is g.f."""
    gf = f.then(g)
    rf = check_c_continuity(f, cX, cY, cfg)
    rg = check_c_continuity(g, cY, cZ, cfg)
    rgf = check_c_continuity(gf, cX, cZ, cfg)
    return _composition_report(f"composition {gf.name}", rf, rg, rgf)


def _composition_report(title, rf, rg, rgf) -> Report:
    rep = Report(title)
    first, second, both = rf.data["continuous"], rg.data["continuous"], rgf.data["continuous"]
    ok = not (first and second) or both
    w = None if ok else next(iter(rgf.failures)).witness
    rep.add("composite of continuous maps is continuous", ok, w, finding=True)
    for r in (rf, rg, rgf):
        if r.findings:
            rep.verdicts.extend(r.findings)
    rep.data.update(first=first, second=second, composite=both)
    return rep


# -- initial structures ------------------------------------------------------

def check_finest_property(f: SetFunction, cY: ClosureMap, g: SetFunction, cZ: ClosureMap,
                          cfg: Config | None = None) -> Report:
    """g: Z->X is continuous into the initial structure iff f.g is continuous."""
    cX = initial_closure(f, cY, cfg)
    lhs = check_c_continuity(g, cZ, cX, cfg)
    rhs = check_c_continuity(g.then(f), cZ, cY, cfg)
    return _factorization_report(f"factorization through initial({f.name})", lhs, rhs)


def _factorization_report(title, lhs: Report, rhs: Report) -> Report:
    rep = Report(title)
    a, b = lhs.data["continuous"], rhs.data["continuous"]
    rep.add("g continuous iff composite continuous", a == b,
            None if a == b else {"g_continuous": str(a).lower(), "composite_continuous": str(b).lower()},
            finding=True)
    for r in (lhs, rhs):
        rep.verdicts.extend(r.findings)
    rep.data.update(g_continuous=a, composite_continuous=b)
    return rep


def initial_minimality(f: SetFunction, cY: ClosureMap, cfg: Config | None = None, limit: int = 20000) -> dict:
    """Compare the initial closure with every closure map on X making f continuous.

    Only for tiny spaces. Returns whether it is pointwise least and whether it
    is pointwise greatest among them, or an empty dict when infeasible.
    """
    cX = initial_closure(f, cY, cfg)
    S = cX.space
    if S.size > 16:
        return {}
    candidates = []
    for tbl in enumerate_closure_tables(S, limit=limit):
        d = ClosureMap(S, table=tbl, cfg=cfg)
        if is_continuous(f, d, cY, cfg):
            candidates.append(d)
    if len(candidates) >= limit:
        return {}
    return {
        "candidates": len(candidates),
        "least": all(cX.leq(d, cfg) for d in candidates),
        "greatest": all(d.leq(cX, cfg) for d in candidates),
    }


def check_initial_lift(legs: Sequence[tuple[SetFunction, ClosureMap]],
                       probes: Iterable[tuple[SetFunction, ClosureMap]], cfg: Config | None = None,
                       mode: str = "meet") -> Report:
    """Universal property of the lifted structure against supplied probes g: Z->X."""
    lifted = initial_lift(legs, cfg=cfg, mode=mode)
    rep = Report(f"initial lift of {len(legs)} legs")
    ax = check_closure_axioms(lifted, cfg)
    rep.add("lift is a closure map", ax.passed, ax.failures[0].witness if ax.failures else None, finding=True)
    for f, cY in legs:
        r = check_c_continuity(f, lifted, cY, cfg)
        rep.add(f"leg {f.name} continuous", r.data["continuous"],
                None if r.passed else r.failures[0].witness, finding=True)
    for i, (g, cZ) in enumerate(probes):
        a = is_continuous(g, cZ, lifted, cfg)
        b = all(is_continuous(g.then(f), cZ, cY, cfg) for f, cY in legs)
        rep.add(f"probe {i} ({g.name})", a == b,
                None if a == b else {"probe": g.name, "into_lift": str(a).lower(), "all_legs": str(b).lower()},
                finding=True)
    rep.data["lift"] = lifted
    return rep


# -- idempotency and additivity ----------------------------------------------

def check_idempotent(c: ClosureMap, cfg: Config | None = None, samples: int | None = None) -> Report:
    S = c.space
    us, exhaustive = domain(S, cfg, samples)
    w = None
    for u in us:
        cu = c(u)
        ccu = c(cu)
        if ccu != cu:
            w = _w(S, u=u, c_u=cu, c_c_u=ccu)
            break
    rep = Report(f"idempotency of {c.name}")
    rep.add("idempotent", w is None, w, note="" if exhaustive else "sampled")
    return rep


def check_additive(c: ClosureMap, fully: bool = False, cfg: Config | None = None) -> Report:
    """Binary additivity; with ``fully`` also the empty family.

    Over a finite lattice every join is a finite join, so arbitrary additivity
    is binary additivity plus c(0_X) = 0_X.
    """
    cfg = cfg or default_config()
    S = c.space
    us, exhaustive = domain(S, cfg)
    rep = Report(f"{'full ' if fully else ''}additivity of {c.name}")
    n = len(us)
    if n * (n + 1) // 2 <= cfg.pair_budget:
        pairs = ((us[i], us[j]) for i in range(n) for j in range(i, n))
        note = ""
    else:
        rng = random.Random(cfg.seed)
        pairs = ((rng.choice(us), rng.choice(us)) for _ in range(cfg.samples))
        exhaustive = False
        note = f"{cfg.samples} sampled pairs"
    cache = {}
    w = None
    for u, v in pairs:
        cu = cache.get(u)
        if cu is None:
            cu = cache[u] = c(u)
        cv = cache.get(v)
        if cv is None:
            cv = cache[v] = c(v)
        lhs = c(S.join2(u, v))
        rhs = S.join2(cu, cv)
        if lhs != rhs:
            w = _w(S, u=u, v=v, c_join=lhs, join_c=rhs)
            break
    rep.add("binary additive", w is None, w, note=note)
    if fully:
        cb = c(S.bottom)
        rep.add("empty family", cb == S.bottom, None if cb == S.bottom else _w(S, c_bottom=cb))
    rep.data["exhaustive"] = exhaustive
    return rep


def has_property(prop: str, c: ClosureMap, cfg: Config | None = None) -> Report:
    if prop == "idempotent":
        return check_idempotent(c, cfg)
    if prop == "additive":
        return check_additive(c, False, cfg)
    if prop == "fully-additive":
        return check_additive(c, True, cfg)
    raise ValueError(f"unknown property {prop!r}")


def preservation_report(prop: str, cY: ClosureMap, initial: ClosureMap, cfg: Config | None = None) -> Report:
    pre = has_property(prop, cY, cfg)
    if not pre.passed:
        raise PropertyPreconditionFailed(f"{cY.name} is not {prop}: {pre.failures[0].witness}")
    post = has_property(prop, initial, cfg)
    rep = Report(f"{prop} preserved by {initial.name}")
    for v in post.verdicts:
        rep.add(v.name, v.ok, v.witness, finding=True, note=v.note)
    return rep


def check_preservation_under_initial(prop: str, f: SetFunction, cY: ClosureMap, cfg: Config | None = None) -> Report:
    """The initial closure along f inherits ``prop`` from cY; a failure is a finding."""
    return preservation_report(prop, cY, initial_closure(f, cY, cfg), cfg)


# -- the lattice of closure maps on one space ---------------------------------

def enumerate_closure_tables(space: Space, limit: int | None = None):
    """Yield every closure map on a (tiny) space as a table dict.

    Fuzzy sets are visited along a linear extension; each value must dominate
    the argument and the values at its lower covers, which gives C1 and C2.
    """
    L = space.basis
    rank = _ranks(L)
    order = sorted(space.element_list, key=lambda u: (sum(rank[e] for e in u), u))
    lower: dict[FuzzySet, list[FuzzySet]] = {u: [] for u in order}
    for u in order:
        for v in space.upper_covers(u):
            lower[v].append(u)
    elements = space.element_list
    table: dict[FuzzySet, FuzzySet] = {}
    count = 0

    def rec(i):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if i == len(order):
            count += 1
            yield dict(table)
            return
        u = order[i]
        if u == space.bottom:
            options = [u]
        else:
            floor = space.join([u] + [table[w] for w in lower[u]])
            options = [v for v in elements if space.leq(floor, v)]
        for v in options:
            table[u] = v
            yield from rec(i + 1)
        table.pop(u, None)

    yield from rec(0)


def _ranks(L) -> list[int]:
    rank = [0] * len(L)
    order = sorted(L.elements, key=lambda a: sum(L.leq(b, a) for b in L.elements))
    for a in order:
        for b in L.upper_covers[a]:
            rank[b] = max(rank[b], rank[a] + 1)
    return rank
