"""Line-oriented text formats for lattices, tensors, spaces, maps and closures.

A document is a sequence of blocks. Each block starts with a header line
(``lattice NAME``, ``tensor NAME over LATTICE``, ...) followed by ``key: value``
lines. Names resolve across every document loaded into one :class:`Namespace`;
``divN`` and ``chainN`` lattices and ``divN-gcd`` / ``chainN-min`` tensors are
built in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .builders import LTopology, closure_from_topology, divisor_monoid
from .closure import ClosureMap, discrete_operator, table_closure, trivial_operator
from .config import Config
from .lattice import FiniteLattice, build_lattice, chain
from .monoid import TensorStructure, meet_tensor, tensor_from_rows
from .powerset import (
    BasisComorphism,
    CarrierSet,
    FormatError,
    FuzzySet,
    SetFunction,
    Space,
    comorphism_from_pairs,
    function_from_pairs,
)
from .variable import GroundMorphism

HEADERS = {
    "lattice": re.compile(r"^lattice\s+(?P<name>\S+)$"),
    "tensor": re.compile(r"^tensor\s+(?P<name>\S+)\s+over\s+(?P<lattice>\S+)$"),
    "carrier": re.compile(r"^carrier\s+(?P<name>\S+)$"),
    "fuzzyset": re.compile(r"^fuzzyset\s+(?P<name>\S+)\s+over\s+(?P<carrier>\S+)\s+in\s+(?P<lattice>\S+)$"),
    "fn": re.compile(r"^fn\s+(?P<name>[^\s:]+)\s*:\s*(?P<X>\S+)\s*->\s*(?P<Y>\S+)$"),
    "comorph": re.compile(r"^comorph\s+(?P<name>[^\s:]+)\s*:\s*(?P<M>\S+)\s*->\s*(?P<L>\S+)$"),
    "closure": re.compile(r"^closure\s+(?P<name>\S+)\s+over\s+(?P<carrier>\S+)\s+in\s+(?P<lattice>\S+)$"),
    "topology": re.compile(r"^topology\s+(?P<name>\S+)\s+over\s+(?P<carrier>\S+)\s+in\s+(?P<lattice>\S+)$"),
    "ground": re.compile(r"^ground\s+(?P<name>[^\s:]+)\s*:\s*fn=(?P<fn>\S+)\s+comorph=(?P<comorph>\S+)$"),
    "source": re.compile(r"^source\s+(?P<name>\S+)$"),
}


@dataclass
class Block:
    kind: str
    name: str
    head: dict[str, str]
    lines: list[tuple[int, str, str]] = field(default_factory=list)
    path: str = "<string>"
    lineno: int = 0

    def values(self, key: str) -> list[tuple[int, str]]:
        return [(n, v) for n, k, v in self.lines if k == key]

    def one(self, key: str, default: str | None = None) -> str | None:
        vals = self.values(key)
        if len(vals) > 1:
            raise self.error(f"{key!r} given more than once", vals[1][0])
        return vals[0][1] if vals else default

    def error(self, msg: str, lineno: int | None = None) -> FormatError:
        return FormatError(f"{self.path}:{lineno or self.lineno}: {self.kind} {self.name}: {msg}")


def parse_blocks(text: str, path: str = "<string>") -> list[Block]:
    blocks: list[Block] = []
    cur: Block | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word = line.split()[0]
        if word in HEADERS and not word.endswith(":"):
            m = HEADERS[word].match(line)
            if not m:
                raise FormatError(f"{path}:{lineno}: malformed {word} header: {line!r}")
            head = m.groupdict()
            cur = Block(word, head.pop("name"), head, path=path, lineno=lineno)
            blocks.append(cur)
            continue
        if cur is None:
            raise FormatError(f"{path}:{lineno}: content before any block header: {line!r}")
        if ":" not in line:
            raise FormatError(f"{path}:{lineno}: expected 'key: value', got {line!r}")
        key, value = line.split(":", 1)
        cur.lines.append((lineno, key.strip(), value.strip()))
    return blocks


class Namespace:
    """Named objects from any number of documents, built lazily and cached."""

    def __init__(self, cfg: Config | None = None):
        self.cfg = cfg
        self.blocks: dict[str, dict[str, Block]] = {k: {} for k in HEADERS}
        self.files: dict[str, list[Block]] = {}
        self._cache: dict[tuple[str, str], object] = {}

    def load_text(self, text: str, path: str = "<string>") -> list[Block]:
        blocks = parse_blocks(text, path)
        for b in blocks:
            if b.name in self.blocks[b.kind]:
                prev = self.blocks[b.kind][b.name]
                raise FormatError(f"{path}:{b.lineno}: {b.kind} {b.name} already defined at {prev.path}:{prev.lineno}")
            self.blocks[b.kind][b.name] = b
        self.files[path] = self.files.get(path, []) + blocks
        return blocks

    def load(self, path: str | Path) -> list[Block]:
        p = Path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as e:
            raise FormatError(f"cannot read {path}: {e.strerror}") from None
        return self.load_text(text, str(path))

    def pick(self, ref: str, kind: str) -> str:
        """Resolve ``PATH`` or ``PATH#NAME`` to the name of one block of ``kind``."""
        path, _, name = ref.partition("#")
        if name:
            if name not in self.blocks[kind]:
                raise FormatError(f"no {kind} named {name!r}")
            return name
        if path not in self.files:
            self.load(path)
        found = [b.name for b in self.files[path] if b.kind == kind]
        if len(found) != 1:
            raise FormatError(f"{path} defines {len(found)} {kind} blocks; use {path}#NAME")
        return found[0]

    def names(self, kind: str, path: str | None = None) -> list[str]:
        if path is None:
            return list(self.blocks[kind])
        return [b.name for b in self.files.get(path, []) if b.kind == kind]

    def _get(self, kind, name, build):
        key = (kind, name)
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def _block(self, kind: str, name: str) -> Block:
        try:
            return self.blocks[kind][name]
        except KeyError:
            raise FormatError(f"unknown {kind} {name!r}") from None

    # -- objects -------------------------------------------------------------

    def lattice(self, name: str) -> FiniteLattice:
        def build():
            if name not in self.blocks["lattice"]:
                m = re.fullmatch(r"(div|chain)(\d+)", name)
                if m:
                    n = int(m.group(2))
                    return divisor_monoid(n).base if m.group(1) == "div" else chain(n, name=name)
            b = self._block("lattice", name)
            elements = (b.one("elements") or "").split()
            pairs = []
            for n, v in b.values("le"):
                parts = v.split()
                if len(parts) != 2:
                    raise b.error(f"'le' needs two elements, got {v!r}", n)
                pairs.append(tuple(parts))
            kind = b.one("order-kind", "covers")
            return build_lattice(elements, pairs, kind=kind, name=name,
                                 bottom=b.one("bottom"), top=b.one("top"))
        return self._get("lattice", name, build)

    def tensor(self, name: str) -> TensorStructure:
        def build():
            if name not in self.blocks["tensor"]:
                m = re.fullmatch(r"(div|chain)(\d+)-(gcd|min)", name)
                if m:
                    n = int(m.group(2))
                    return divisor_monoid(n) if m.group(1) == "div" else meet_tensor(chain(n, name=f"chain{n}"), name)
            b = self._block("tensor", name)
            L = self.lattice(b.head["lattice"])
            rows = []
            for n, v in b.values("tx"):
                parts = v.split()
                if len(parts) != 3:
                    raise b.error(f"'tx' needs three elements, got {v!r}", n)
                rows.append(tuple(parts))
            default = b.one("default")
            if default not in (None, "meet"):
                raise b.error(f"unknown default {default!r}")
            return tensor_from_rows(L, rows, default_meet=default == "meet", name=name)
        return self._get("tensor", name, build)

    def carrier(self, name: str) -> CarrierSet:
        def build():
            b = self._block("carrier", name)
            pts = b.one("points")
            return CarrierSet(tuple(pts.split()) if pts else (), name)
        return self._get("carrier", name, build)

    def space(self, carrier: str, lattice: str) -> Space:
        return Space(self.carrier(carrier), self.lattice(lattice))

    def fuzzyset(self, name: str) -> tuple[Space, FuzzySet]:
        def build():
            b = self._block("fuzzyset", name)
            S = self.space(b.head["carrier"], b.head["lattice"])
            vals = {}
            for n, v in b.values("v"):
                parts = v.split()
                if len(parts) != 2:
                    raise b.error(f"'v' needs a point and an element, got {v!r}", n)
                vals[S.carrier.index(parts[0])] = S.basis.index(parts[1])
            if len(vals) != len(S.carrier):
                raise b.error("every point needs a value")
            return S, tuple(vals[i] for i in range(len(S.carrier)))
        return self._get("fuzzyset", name, build)

    def function(self, name: str) -> SetFunction:
        def build():
            b = self._block("fn", name)
            X, Y = self.carrier(b.head["X"]), self.carrier(b.head["Y"])
            pairs = [tuple(v.split()) for _, v in b.values("m")]
            if any(len(p) != 2 for p in pairs):
                raise b.error("'m' needs a point and its image")
            return function_from_pairs(X, Y, pairs, name)
        return self._get("fn", name, build)

    def comorphism(self, name: str) -> BasisComorphism:
        def build():
            b = self._block("comorph", name)
            M, L = self.lattice(b.head["M"]), self.lattice(b.head["L"])
            pairs = [tuple(v.split()) for _, v in b.values("m")]
            if any(len(p) != 2 for p in pairs):
                raise b.error("'m' needs an element and its image")
            return comorphism_from_pairs(M, L, pairs, name)
        return self._get("comorph", name, build)

    def comorphism_tensors(self, name: str):
        b = self._block("comorph", name)
        t = b.one("tensors")
        if not t:
            return None, None
        parts = t.split()
        if len(parts) != 2:
            raise b.error("'tensors' needs a tensor on M and a tensor on L")
        return self.tensor(parts[0]), self.tensor(parts[1])

    def topology(self, name: str) -> LTopology:
        def build():
            b = self._block("topology", name)
            S = self.space(b.head["carrier"], b.head["lattice"])
            tname = b.one("tensor")
            if not tname:
                raise b.error("a topology needs 'tensor: NAME'")
            T = self.tensor(tname)
            opens = []
            for n, v in b.values("open"):
                try:
                    opens.append(S.parse(v))
                except ValueError as e:
                    raise b.error(str(e), n) from None
            return LTopology(S, T, tuple(opens))
        return self._get("topology", name, build)

    def closure(self, name: str) -> ClosureMap:
        def build():
            b = self._block("closure", name)
            S = self.space(b.head["carrier"], b.head["lattice"])
            kind = (b.one("kind") or "").split()
            if not kind:
                raise b.error("missing 'kind'")
            if kind[0] == "identity":
                c = discrete_operator(S, self.cfg)
            elif kind[0] == "trivial":
                c = trivial_operator(S, self.cfg)
            elif kind[0] == "topology":
                if len(kind) != 2:
                    raise b.error("'kind: topology' needs a topology name")
                tau = self.topology(kind[1])
                if tau.space != S:
                    raise b.error(f"topology {kind[1]} lives on another space")
                c = closure_from_topology(tau, self.cfg)
            elif kind[0] == "table":
                rows = {}
                for n, v in b.values("t") + b.values("c"):
                    if "->" not in v:
                        raise b.error(f"table row needs '->': {v!r}", n)
                    lhs, rhs = v.split("->", 1)
                    try:
                        u, w = S.parse(lhs), S.parse(rhs)
                    except ValueError as e:
                        raise b.error(str(e), n) from None
                    if u in rows and rows[u] != w:
                        raise b.error(f"two rows for {lhs.strip()}", n)
                    rows[u] = w
                default = b.one("default")
                if default == "identity":
                    for u in S.all_elements(self.cfg):
                        rows.setdefault(u, u)
                elif default is not None:
                    raise b.error(f"unknown default {default!r}")
                try:
                    c = table_closure(S, rows, name, self.cfg)
                except ValueError as e:
                    raise b.error(str(e)) from None
            else:
                raise b.error(f"unknown kind {kind[0]!r}")
            c.name = name
            return c
        return self._get("closure", name, build)

    def ground(self, name: str) -> GroundMorphism:
        def build():
            b = self._block("ground", name)
            return GroundMorphism(self.function(b.head["fn"]), self.comorphism(b.head["comorph"]), name)
        return self._get("ground", name, build)

    def source(self, name: str) -> list[tuple[SetFunction, ClosureMap]]:
        def build():
            b = self._block("source", name)
            legs = []
            for n, v in b.values("leg"):
                parts = v.split()
                if len(parts) != 2:
                    raise b.error("'leg' needs a function and a closure name", n)
                legs.append((self.function(parts[0]), self.closure(parts[1])))
            return legs
        return self._get("source", name, build)


# -- writers -----------------------------------------------------------------

def format_table_rows(c: ClosureMap, cfg: Config | None = None, prefix: str = "c") -> list[str]:
    S = c.space
    return [f"{prefix}: {S.format(u)} -> {S.format(v)}" for u, v in c.rows(cfg)]


def format_closure_block(c: ClosureMap, name: str | None = None, cfg: Config | None = None) -> str:
    S = c.space
    lines = [f"closure {name or c.name} over {S.carrier.name} in {S.basis.name}", "kind: table"]
    lines += format_table_rows(c, cfg, prefix="t")
    return "\n".join(lines) + "\n"


def format_lattice_block(L: FiniteLattice) -> str:
    lines = [f"lattice {L.name}", "elements: " + " ".join(L.labels), "order-kind: covers"]
    for a in L.elements:
        for b in L.upper_covers[a]:
            lines.append(f"le: {L.labels[a]} {L.labels[b]}")
    return "\n".join(lines) + "\n"
