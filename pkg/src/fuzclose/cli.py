"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails (one
``WITNESS k=v ...`` line per counterexample on stdout), 2 for parse and
usage errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

from . import builders as B
from .closure import (
    CapExceeded,
    check_additive,
    check_c_continuity,
    check_closure_axioms,
    check_idempotent,
    check_initial_lift,
    initial_closure,
)
from .config import default_config
from .formats import Namespace, format_table_rows
from .lattice import LatticeError, NoJoin, NoMeet, check_frame_distributivity
from .monoid import TensorError, check_cqm, check_gl_monoid, check_residuation_law
from .powerset import FormatError, check_comorphism
from .report import Report
from .variable import check_vb_continuity, initial_vb_closure

OK, FAILED, USAGE = 0, 1, 2


class Run:
    """Collects reports for one invocation and derives the exit code."""

    def __init__(self, out=None):
        self.out = out or sys.stdout
        self.failed = False

    def print(self, *lines: str) -> None:
        for line in lines:
            print(line, file=self.out)

    def report(self, rep: Report) -> Report:
        self.print(rep.render(), *rep.witness_lines())
        if not rep.passed:
            self.failed = True
        return rep

    def fail(self, witness_line: str) -> None:
        self.print(witness_line)
        self.failed = True


def _ns(args, *refs: str) -> Namespace:
    ns = Namespace(args.cfg)
    seen = set()
    for ref in [*getattr(args, "lib", []), *refs]:
        path = ref.partition("#")[0]
        if path and path not in seen:
            seen.add(path)
            ns.load(path)
    return ns


def _emit(run: Run, c, args) -> None:
    if getattr(args, "emit", None):
        run.print(*format_table_rows(c, args.cfg))


# -- subcommands -------------------------------------------------------------

def cmd_check_lattice(args, run: Run):
    ns = _ns(args, *args.files)
    for path in args.files:
        for name in ns.names("lattice", path):
            try:
                L = ns.lattice(name)
            except (NoJoin, NoMeet) as e:
                a, b = e.pair
                run.fail(f"WITNESS check=lattice lattice={name} error={type(e).__name__} a={a} b={b}")
                continue
            except LatticeError as e:
                run.fail(f"WITNESS check=lattice lattice={name} error={type(e).__name__}")
                run.print(f"  {e}")
                continue
            run.print(f"lattice {name}: {len(L)} elements, bottom={L.labels[L.bottom]}, top={L.labels[L.top]}")
            rep = check_frame_distributivity(L, args.cfg)
            if args.distributive:
                run.report(rep)
            else:
                run.print(rep.render())


def _tensor_names(ns, args):
    names = [n for p in args.files for n in ns.names("tensor", p)]
    return [args.name] if args.name else names


def cmd_check_cqm(args, run: Run):
    ns = _ns(args, *args.files)
    for name in _tensor_names(ns, args):
        run.report(check_cqm(ns.tensor(name)))


def cmd_check_gl(args, run: Run):
    ns = _ns(args, *args.files)
    for name in _tensor_names(ns, args):
        T = ns.tensor(name)
        run.report(check_gl_monoid(T, args.cfg))
        run.report(check_residuation_law(T))


def cmd_residuum(args, run: Run):
    ns = _ns(args, *args.files)
    names = _tensor_names(ns, args)
    if len(names) != 1:
        raise FormatError(f"expected exactly one tensor, found {len(names)}; use --name")
    T = ns.tensor(names[0])
    if not T.is_cqm:
        raise TensorError(f"{T.name} is not a cqm tensor")
    L = T.base
    if args.pair:
        a, b = (L.index(x) for x in args.pair)
        run.print(L.labels[T.residuum_table[a][b]])
    if args.table or not args.pair:
        width = max(len(l) for l in L.labels)
        run.print("=>".rjust(width) + " | " + " ".join(l.rjust(width) for l in L.labels))
        for a in L.elements:
            run.print(L.labels[a].rjust(width) + " | " +
                      " ".join(L.labels[T.residuum_table[a][b]].rjust(width) for b in L.elements))


def cmd_closure_from_topology(args, run: Run):
    ns = _ns(args, args.lattice, args.tensor, args.space, args.topology)
    tau = ns.topology(ns.pick(args.topology, "topology"))
    c = B.closure_from_topology(tau, args.cfg)
    run.report(check_closure_axioms(c, args.cfg))
    _emit(run, c, args)


def cmd_topology_from_closure(args, run: Run):
    ns = _ns(args, args.closure, *args.files)
    c = ns.closure(ns.pick(args.closure, "closure"))
    tau = B.topology_from_closure(c, ns.tensor(args.tensor), args.cfg)
    run.print(*(f"open: {c.space.format(v)}" for v in tau.opens))


def _closures(ns, files, args):
    names = [n for p in files for n in ns.names("closure", p)]
    return [ns.closure(args.name)] if getattr(args, "name", None) else [ns.closure(n) for n in names]


def _property(run, c, prop, cfg):
    if prop == "idempotent":
        run.report(check_idempotent(c, cfg))
    elif prop == "additive":
        run.report(check_additive(c, False, cfg))
    elif prop == "fully-additive":
        run.report(check_additive(c, True, cfg))


def cmd_check_closure(args, run: Run):
    ns = _ns(args, *args.files)
    for c in _closures(ns, args.files, args):
        run.report(check_closure_axioms(c, args.cfg))
        for prop in args.check or []:
            _property(run, c, prop, args.cfg)


def cmd_props(args, run: Run):
    ns = _ns(args, *args.files)
    for c in _closures(ns, args.files, args):
        for prop in args.check:
            _property(run, c, prop, args.cfg)


def cmd_check_continuity(args, run: Run):
    ns = _ns(args, args.fn, args.cx, args.cy)
    f = ns.function(ns.pick(args.fn, "fn"))
    cX = ns.closure(ns.pick(args.cx, "closure"))
    cY = ns.closure(ns.pick(args.cy, "closure"))
    run.report(check_c_continuity(f, cX, cY, args.cfg))


def _ground(ns, ref, run, cfg):
    m = ns.ground(ns.pick(ref, "ground"))
    tm, tl = ns.comorphism_tensors(m.phi.name)
    rep = check_comorphism(m.phi, tm, tl, cfg)
    if not rep.passed:
        run.report(rep)
    return m


def cmd_check_vb_continuity(args, run: Run):
    ns = _ns(args, args.ground, args.cxl, args.cym)
    m = _ground(ns, args.ground, run, args.cfg)
    cXL = ns.closure(ns.pick(args.cxl, "closure"))
    cYM = ns.closure(ns.pick(args.cym, "closure"))
    run.report(check_vb_continuity(m, cXL, cYM, args.cfg))


def cmd_initial(args, run: Run):
    ns = _ns(args, args.fn, args.cy)
    f = ns.function(ns.pick(args.fn, "fn"))
    cY = ns.closure(ns.pick(args.cy, "closure"))
    c = initial_closure(f, cY, args.cfg)
    run.report(check_closure_axioms(c, args.cfg))
    run.report(check_c_continuity(f, c, cY, args.cfg))
    _emit(run, c, args)


def cmd_initial_vb(args, run: Run):
    ns = _ns(args, args.ground, args.cym)
    m = _ground(ns, args.ground, run, args.cfg)
    cYM = ns.closure(ns.pick(args.cym, "closure"))
    c = initial_vb_closure(m, cYM, args.cfg)
    run.report(check_closure_axioms(c, args.cfg))
    run.report(check_vb_continuity(m, c, cYM, args.cfg))
    _emit(run, c, args)


def cmd_lift(args, run: Run):
    ns = _ns(args, *args.source)
    legs = [leg for p in args.source for n in ns.names("source", p) for leg in ns.source(n)]
    if not legs:
        raise FormatError("no source legs found")
    probes = []
    for spec in args.probe or []:
        fn, _, cl = spec.partition(":")
        if not cl:
            raise FormatError(f"probe must be FN:CLOSURE, got {spec!r}")
        probes.append((ns.function(fn), ns.closure(cl)))
    rep = run.report(check_initial_lift(legs, probes, args.cfg, mode=args.mode))
    _emit(run, rep.data["lift"], args)


# -- the worked examples -------------------------------------------------------

def run_paper_examples(run: Run, cfg=None) -> None:
    """Recompute the single-point examples and diff them against the stored tables."""
    run.print("Example 1: t -> t^(1/n) on grids of resolution m")
    for m in (4, 10, 100):
        grid = B.DiscretizedChain(m)
        for n, expect in ((1, True), (2, False), (math.inf, True)):
            c = B.root_closure(grid, n, cfg)
            ax = check_closure_axioms(c, cfg)
            idem = check_idempotent(c, cfg)
            label = "inf" if n == math.inf else str(n)
            status = "idempotent" if idem.passed else "not idempotent"
            run.print(f"  m={m} c_{label}: closure={'yes' if ax.passed else 'no'}, {status}")
            if not ax.passed:
                run.fail(f"WITNESS example=1 m={m} n={label} check=closure_axioms")
            if idem.passed != expect:
                run.fail(f"WITNESS example=1 m={m} n={label} check=idempotent expected={expect}")
            elif not idem.passed:
                run.print("    " + idem.witness_lines()[0])

    run.print("Example 2: closure induced by tau = {1, 2, 12} on Div(12)")
    c2 = B.closure_from_topology(B.example2_topology(), cfg)
    got = B.single_point_table(c2)
    for a, want in B.EXAMPLE2_TABLE.items():
        mark = "ok" if got[a] == want else "MISMATCH"
        run.print(f"  c({a}) = {got[a]}  expected {want}  [{mark}]")
        if got[a] != want:
            run.fail(f"WITNESS example=2 u={a} got={got[a]} expected={want}")
    run.print(f"  idempotent: {check_idempotent(c2, cfg).passed}")

    run.print("Example 3: topology of a closure map on Div(36)")
    c3, T = B.example3_closure()
    tau = B.topology_from_closure(c3, T, cfg)
    opens = sorted(int(T.base.labels[v[0]]) for v in tau.opens)
    want = sorted(B.EXAMPLE3_TOPOLOGY)
    run.print(f"  tau = {{{', '.join(map(str, opens))}}}  expected {{{', '.join(map(str, want))}}}"
              f"  [{'ok' if opens == want else 'MISMATCH'}]")
    if opens != want:
        run.fail(f"WITNESS example=3 tau={opens} expected={want}")
    idem = check_idempotent(c3, cfg)
    run.print(f"  idempotent: {idem.passed}")
    if idem.passed:
        run.fail("WITNESS example=3 check=idempotent expected=false")
    else:
        run.print("    " + idem.witness_lines()[0])
    ax = check_closure_axioms(c3, cfg)
    for v in ax.failures:
        run.print(f"  note: the stated map fails {v.name}: "
                  + " ".join(f"{k}={val}" for k, val in v.witness.items()))


def cmd_examples(args, run: Run):
    if args.action != "run-paper":
        raise FormatError(f"unknown examples action {args.action!r}")
    run_paper_examples(run, args.cfg)


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuzclose", description="Finite fuzzy closure operator toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--lib", action="append", default=[], metavar="FILE",
                        help="extra definition file (repeatable)")
        sp.set_defaults(func=func)
        return sp

    sp = cmd("check-lattice", cmd_check_lattice, "validate lattice blocks")
    sp.add_argument("files", nargs="+", metavar="FILE")
    sp.add_argument("--distributive", action="store_true", help="fail when a distributive law fails")

    for name, func, help in (("check-cqm", cmd_check_cqm, "check cqm axioms of tensor blocks"),
                             ("check-gl", cmd_check_gl, "check GL-monoid axioms and residuation")):
        sp = cmd(name, func, help)
        sp.add_argument("files", nargs="+", metavar="FILE")
        sp.add_argument("--name")

    sp = cmd("residuum", cmd_residuum, "print the residuum of a tensor")
    sp.add_argument("files", nargs="+", metavar="FILE")
    sp.add_argument("--name")
    sp.add_argument("--table", action="store_true")
    sp.add_argument("--pair", nargs=2, metavar=("A", "B"))

    sp = cmd("closure-from-topology", cmd_closure_from_topology, "closure map induced by an L-topology")
    for opt in ("--lattice", "--tensor", "--space", "--topology"):
        sp.add_argument(opt, required=True, metavar="F")
    sp.add_argument("--emit", choices=["table", "TABLE"])

    sp = cmd("topology-from-closure", cmd_topology_from_closure, "L-topology of the fixed points of a closure")
    sp.add_argument("files", nargs="*", metavar="FILE")
    sp.add_argument("--closure", required=True, metavar="F")
    sp.add_argument("--tensor", required=True, metavar="NAME")

    sp = cmd("check-closure", cmd_check_closure, "check closure axioms")
    sp.add_argument("files", nargs="+", metavar="FILE")
    sp.add_argument("--name")
    sp.add_argument("--check", action="append", choices=["idempotent", "additive", "fully-additive"])

    sp = cmd("props", cmd_props, "check idempotency or additivity")
    sp.add_argument("files", nargs="+", metavar="FILE")
    sp.add_argument("--name")
    sp.add_argument("--check", action="append", required=True, choices=["idempotent", "additive", "fully-additive"])

    sp = cmd("check-continuity", cmd_check_continuity, "fixed-basis continuity of a function")
    for opt in ("--fn", "--cx", "--cy"):
        sp.add_argument(opt, required=True, metavar="F")

    sp = cmd("check-vb-continuity", cmd_check_vb_continuity, "variable-basis continuity of a ground morphism")
    for opt in ("--ground", "--cxl", "--cym"):
        sp.add_argument(opt, required=True, metavar="F")

    sp = cmd("initial", cmd_initial, "initial closure along a function")
    sp.add_argument("--fn", required=True, metavar="F")
    sp.add_argument("--cy", required=True, metavar="F")
    sp.add_argument("--emit", choices=["table", "TABLE"])

    sp = cmd("initial-vb", cmd_initial_vb, "initial closure along a ground morphism")
    sp.add_argument("--ground", required=True, metavar="F")
    sp.add_argument("--cym", required=True, metavar="F")
    sp.add_argument("--emit", choices=["table", "TABLE"])

    sp = cmd("lift", cmd_lift, "initial lift of a source")
    sp.add_argument("--source", nargs="+", required=True, metavar="F")
    sp.add_argument("--probe", action="append", metavar="FN:CLOSURE")
    sp.add_argument("--mode", choices=["meet", "join"], default="meet",
                    help="how leg closures combine (join is the textbook formula and may break legs)")
    sp.add_argument("--emit", choices=["table", "TABLE"])

    sp = cmd("examples", cmd_examples, "reproduce the worked examples")
    sp.add_argument("action", choices=["run-paper"])
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    run = Run(out)
    try:
        args.cfg = default_config()
        args.func(args, run)
    except (FormatError, LatticeError, TensorError, CapExceeded, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    return FAILED if run.failed else OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
