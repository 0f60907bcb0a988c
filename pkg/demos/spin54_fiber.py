"""Fiber of orbits over the identity involution of Spin(5,4).

Run with ``python demos/spin54_fiber.py``.
"""

from collections import Counter

from spindual import Involution, enumerate_fiber, fiber_order, parse_grading
from spindual.korbits import mclass_label
from spindual.weylb import identity


def main():
    theta = Involution.of(identity(4))
    eps = parse_grading(theta, "+ + ⊕ ⊕")
    table = enumerate_fiber(theta, eps)
    print(f"orbits: {len(table)} (closed form {fiber_order(theta, eps)})")
    print("generators:", ["".join(f"{x:+d}" for x in a) for a in table.generators])
    for row in table.rows:
        print(f"  {row.index:>2}  {mclass_label(row.mclass):<24} {row.grading.render():<10} {list(row.images)}")
    counts = Counter(r.grading.render() for r in table.rows)
    print("grading multiplicities:", dict(sorted(counts.items())))


if __name__ == "__main__":
    main()
