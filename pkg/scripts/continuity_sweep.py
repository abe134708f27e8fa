"""Random sweep over small instances: continuity criteria, initial closures and lifts.

Prints counts of agreements and any counterexample found.
"""

import argparse
import random

from fuzclose.closure import (
    check_c_continuity,
    check_closure_axioms,
    check_initial_lift,
    initial_closure,
    is_continuous,
)
from fuzclose.gen import random_closure, random_function, valid_comorphisms
from fuzclose.builders import divisor_monoid, min_chain
from fuzclose.powerset import Space, carrier
from fuzclose.variable import GroundMorphism, check_vb_continuity, initial_vb_closure, is_vb_continuous


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("-n", type=int, default=500, help="instances per family")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = random.Random(args.seed)
    tensors = [divisor_monoid(12), min_chain(2), min_chain(3)]
    pool = [phi for s in tensors for t in tensors for phi in valid_comorphisms(s, t)]

    agree = initial_ok = 0
    for _ in range(args.n):
        L = rng.choice(tensors).base
        X, Y = carrier(rng.randint(1, 2), "X"), carrier(rng.randint(1, 2), "Y")
        f = random_function(X, Y, rng)
        cX, cY = random_closure(Space(X, L), rng), random_closure(Space(Y, L), rng)
        agree += check_c_continuity(f, cX, cY)["criteria agree"].ok
        c = initial_closure(f, cY)
        initial_ok += check_closure_axioms(c).passed and is_continuous(f, c, cY)
    print(f"fixed basis:    criteria agree {agree}/{args.n}, initial closure valid {initial_ok}/{args.n}")

    agree = initial_ok = 0
    for _ in range(args.n):
        m = GroundMorphism(random_function(carrier(rng.randint(1, 2), "X"), carrier(rng.randint(1, 2), "Y"), rng),
                           rng.choice(pool))
        cXL, cYM = random_closure(m.source.space, rng), random_closure(m.target.space, rng)
        agree += check_vb_continuity(m, cXL, cYM)["criteria agree"].ok
        c = initial_vb_closure(m, cYM)
        initial_ok += check_closure_axioms(c).passed and is_vb_continuous(m, c, cYM)
    print(f"variable basis: criteria agree {agree}/{args.n}, initial closure valid {initial_ok}/{args.n}")

    counts = {"meet": 0, "join": 0}
    for _ in range(args.n):
        L = rng.choice(tensors).base
        X = carrier(2, "X")
        legs = []
        for j in range(2):
            Y = carrier(rng.randint(1, 2), f"Y{j}")
            legs.append((random_function(X, Y, rng, f"f{j}"), random_closure(Space(Y, L), rng)))
        for mode in counts:
            counts[mode] += check_initial_lift(legs, [], mode=mode).passed
    print(f"two-leg sources: legs continuous under the meet lift {counts['meet']}/{args.n}, "
          f"under the join lift {counts['join']}/{args.n}")


if __name__ == "__main__":
    main()
