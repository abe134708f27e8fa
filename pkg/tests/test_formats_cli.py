import io
from pathlib import Path

import pytest

from fuzclose.builders import EXAMPLE2_TABLE
from fuzclose.cli import main
from fuzclose.config import default_config
from fuzclose.formats import Namespace, format_closure_block, format_lattice_block
from fuzclose.closure import discrete_operator
from fuzclose.lattice import diamond, divisor_lattice
from fuzclose.powerset import FormatError, Space, carrier

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def d(name):
    return str(DATA / name)


# -- parsing ------------------------------------------------------------------

def test_lattice_block_roundtrip():
    ns = Namespace()
    ns.load_text(format_lattice_block(diamond()))
    L = ns.lattice(diamond().name)
    assert L == diamond()


def test_closure_block_roundtrip():
    S = Space(carrier(2, "X"), divisor_lattice(6))
    text = "carrier X\npoints: x1 x2\n\n" + format_closure_block(discrete_operator(S), "cid")
    ns = Namespace()
    ns.load_text(text)
    assert ns.closure("cid").equals(discrete_operator(S))


def test_builtins():
    ns = Namespace()
    assert len(ns.lattice("div36")) == 9
    assert len(ns.lattice("chain5")) == 5
    assert ns.tensor("div12-gcd").is_gl
    assert ns.tensor("chain4-min").is_gl


@pytest.mark.parametrize("text", [
    "v: 1 2\n",
    "lattice A\nnonsense line\n",
    "lattice\n",
    "carrier X\npoints: a\n\ncarrier X\npoints: b\n",
])
def test_malformed_text(text):
    with pytest.raises(FormatError):
        Namespace().load_text(text)


def test_unknown_reference():
    ns = Namespace()
    ns.load_text("carrier X\npoints: a\n")
    with pytest.raises(FormatError):
        ns.closure("nothing")


def test_fuzzy_set_literal():
    S = Space(carrier(2, "X"), divisor_lattice(12))
    u = S.parse("[x1=4,x2=6]")
    assert S.format(u) == "[x1=4,x2=6]"
    for bad in ("[x1=5,x2=1]", "[x1=4]", "x1=4,x2=6", "[x9=1,x2=1]"):
        with pytest.raises(ValueError):
            S.parse(bad)


# -- subcommands --------------------------------------------------------------

def test_check_lattice():
    assert run("check-lattice", d("div12.lattice"))[0] == 0
    code, out = run("check-lattice", d("nonlattice.lattice"))
    assert code == 1 and "WITNESS" in out and "NoJoin" in out


def test_tensor_commands():
    lib = ("--lib", d("div12.lattice"))
    assert run("check-cqm", d("div12_gcd.tensor"), *lib)[0] == 0
    assert run("check-gl", d("div12_gcd.tensor"), *lib)[0] == 0
    code, out = run("residuum", d("div12_gcd.tensor"), *lib, "--pair", "2", "6")
    assert (code, out.strip()) == (0, "12")
    code, out = run("residuum", d("div12_gcd.tensor"), *lib, "--table")
    assert code == 0 and len(out.strip().splitlines()) >= 6


def test_closure_from_topology_emits_example2():
    code, out = run("closure-from-topology", "--lattice", d("div12.lattice"), "--tensor", d("div12_gcd.tensor"),
                    "--space", d("point.space"), "--topology", d("example2.topology"), "--emit", "TABLE")
    assert code == 0
    rows = [l for l in out.splitlines() if l.startswith("c: ")]
    got = {int(l.split("=")[1].split("]")[0]): int(l.split("=")[2].split("]")[0]) for l in rows}
    assert got == EXAMPLE2_TABLE


def test_topology_from_closure():
    code, out = run("topology-from-closure", "--closure", d("example3.closure"), "--tensor", "div36-gcd")
    assert code == 0
    assert [l for l in out.splitlines() if l.startswith("open:")] == [
        "open: [x=1]", "open: [x=4]", "open: [x=9]", "open: [x=36]"]


def test_check_closure_and_props():
    code, out = run("check-closure", d("example3.closure"), "--check", "idempotent")
    assert code == 1
    assert "WITNESS check=idempotent u=[x=3] c_u=[x=6] c_c_u=[x=18]" in out
    assert run("check-closure", d("identity.closure"))[0] == 0
    code, out = run("props", "--check", "fully-additive", d("identity.closure"))
    assert code == 0


def test_continuity_commands():
    code, out = run("check-continuity", "--fn", d("continuity.fz") + "#idY",
                    "--cx", d("continuity.fz") + "#ctriv", "--cy", d("continuity.fz") + "#cid")
    assert code == 1 and "WITNESS check=forward_inequality" in out
    g = d("ground.fz")
    assert run("check-vb-continuity", "--ground", g + "#g", "--cxl", g + "#cXL", "--cym", g + "#cYM")[0] == 0
    code, out = run("initial-vb", "--ground", g + "#g", "--cym", g + "#cYM", "--emit", "TABLE")
    assert code == 0 and out.count("c: ") == 36
    code, out = run("initial", "--fn", d("source.fz") + "#f1", "--cy", d("source.fz") + "#cY", "--emit", "table")
    assert code == 0 and out.count("c: ") == 27


def test_lift(tmp_path):
    assert run("lift", "--source", d("source.fz"), "--probe", "g0:cX")[0] == 0
    rows = "\n".join(f"t: [a={a},b={b}] -> [a={a},b={max(a, b)}]" for a in range(3) for b in range(3))
    p = tmp_path / "swap.fz"
    p.write_text("carrier X\npoints: p q\n\ncarrier Y\npoints: a b\n\n"
                 "fn id: X -> Y\nm: p a\nm: q b\n\nfn swap: X -> Y\nm: p b\nm: q a\n\n"
                 f"closure cup over Y in chain3\nkind: table\n{rows}\n\n"
                 "source s\nleg: id cup\nleg: swap cup\n")
    assert run("lift", "--source", p)[0] == 0
    code, out = run("lift", "--source", p, "--mode", "join")
    assert code == 1 and "leg" in out


def test_examples_run_paper():
    code, out = run("examples", "run-paper")
    assert code == 0
    assert "C2" in out


def test_usage_errors(tmp_path):
    assert run("check-closure", tmp_path / "missing.closure")[0] == 2
    bad = tmp_path / "bad.lattice"
    bad.write_text("lattice B\nelements a b\n")
    assert run("check-lattice", bad)[0] == 2
    bad.write_text("lattice B\nelements: a b\nle: a c\n")
    code, out = run("check-lattice", bad)
    assert code == 1 and "error=ForeignElement" in out
    assert run("bogus")[0] == 2
    assert run("residuum")[0] == 2


def test_cap_override(monkeypatch):
    monkeypatch.setenv("FUZCLOSE_CAP", "3")
    assert default_config().cap == 3
    assert run("check-closure", d("example3.closure"))[0] == 2
    monkeypatch.setenv("FUZCLOSE_CAP", "lots")
    with pytest.raises(ValueError):
        default_config()
    monkeypatch.delenv("FUZCLOSE_CAP")
    assert default_config().cap == 4096
