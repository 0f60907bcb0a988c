"""Census of involutions, fibers and genuine parameters at a given even rank.

Run with ``python demos/count_census.py 4``.
"""

import sys
from itertools import product

from spindual import RealForm, list_involutions
from spindual.params import canonical_rep, param_count, params_over
from spindual.weylb import class_size, conjugacy_invariants, num_conjugacy_classes


def main(n: int = 4):
    invs = list_involutions(n)
    print(f"rank {n}: {len(invs)} involutions in {num_conjugacy_classes(n)} classes")
    seen = sorted({conjugacy_invariants(t) for t in invs})
    for n_c, n_s in seen:
        print(f"  n_c={n_c} n_s={n_s}: {class_size(n, n_c, n_s)}")
    for p in range(n + 1, 2 * n + 2):
        form = RealForm(p, 2 * n + 1 - p)
        total = 0
        for pattern in product((0, 1), repeat=n):
            lam = canonical_rep(pattern)
            for th in invs:
                ps = params_over(th, form, lam)
                assert not ps or len(ps) == param_count(th, lam)
                total += len(ps)
        print(f"  {form}: {total} genuine parameters over all {2 ** n} families")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 4)
