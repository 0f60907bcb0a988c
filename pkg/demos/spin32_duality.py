"""Build the Spin(3,2) block at lambda = (3/2, 1), its dual block, and check duality.

Run with ``python demos/spin32_duality.py``.
"""

from spindual import (
    InfChar,
    build_block,
    dual_block_of,
    klv_matrices,
    psi,
    structure_table,
    verify_duality,
    verify_intertwining,
)


def show(block, name):
    print(f"{name}: Spin({block.p},{block.q}) lambda={block.lam} chi={block.chi:+d}")
    for row in structure_table(block):
        g = block.params[row.index]
        cross = " ".join(f"{row.cross[a]}" for a in block.cross_tables)
        cay = " ".join("*" if c is None else ",".join(map(str, c)) for c in row.cayley.values())
        print(f"  {row.index}  l={row.length}  {g.eps.render():<8} pc={g.pc}  cross: {cross:<6} cayley: {cay}")


def main():
    lam = InfChar.parse("3/2,1")
    block = build_block(3, 2, lam, 1)
    dual = dual_block_of(block)
    show(block, "B")
    show(dual, "B'")
    print("psi:", [dual.index(psi(g)) for g in block.params])

    mats, dmats = klv_matrices(block), klv_matrices(dual)
    for b, m in ((block, mats), (dual, dmats)):
        problems = m.check(b.lengths)
        print(f"matrix invariants on {b.chi:+d} block:", "ok" if not problems else problems)
    rep = verify_duality(block, dual, mats, dmats)
    print(f"duality identity: {rep.checks} entries, {len(rep.violations)} violations")
    rep = verify_intertwining(block, dual)
    print(f"intertwining: {rep.checks} checks, {len(rep.violations)} violations")


if __name__ == "__main__":
    main()
