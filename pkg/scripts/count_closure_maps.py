"""Count closure maps on tiny spaces and check the operator lattice closes under join and meet.

    python scripts/count_closure_maps.py --space chain3:2 --space div12:1
"""

import argparse
import itertools
import time

from fuzclose.closure import enumerate_closure_tables, trivial_operator
from fuzclose.formats import Namespace
from fuzclose.powerset import Space, carrier

DEFAULT = ["chain2:2", "chain4:1", "div12:1", "chain2:3", "chain8:1", "chain3:2"]


def survey(S: Space, limit: int | None) -> dict:
    els = S.element_list
    keys = {tuple(t[u] for u in els) for t in enumerate_closure_tables(S, limit)}
    closed = all(
        tuple(S.join2(x, y) for x, y in zip(a, b)) in keys and tuple(S.meet2(x, y) for x, y in zip(a, b)) in keys
        for a, b in itertools.combinations(keys, 2)
    )
    triv = tuple(trivial_operator(S)(u) for u in els)
    return {"size": len(els), "maps": len(keys), "closed": closed, "bounds": tuple(els) in keys and triv in keys}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--space", action="append", metavar="LATTICE:N",
                   help="built-in lattice and carrier size (default: the spaces with |L^X| <= 9)")
    p.add_argument("--limit", type=int, default=20_000, help="stop enumerating after this many maps")
    args = p.parse_args()
    ns = Namespace()
    for spec in args.space or DEFAULT:
        name, _, n = spec.partition(":")
        S = Space(carrier(int(n or 1)), ns.lattice(name))
        t0 = time.perf_counter()
        r = survey(S, args.limit)
        print(f"{spec:10s} |L^X|={r['size']:<4d} closure maps={r['maps']:<6d} "
              f"join/meet closed={r['closed']} bounds={r['bounds']} ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
