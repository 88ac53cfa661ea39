#!/usr/bin/env python3
"""Regenerate presets/dm-5-4-1-1-1-6/subgroups/hirzebruch.words.

Independent oracle (pure Python, no dependency on the C++ library).

Searches all homomorphisms

    <b,u,v | b^3, u^3, v^6, br2(b,v), br3(b,u), br4(u,v), (buv)^3>  ->  SL(2,3) x C3

whose image has order 72 and which are injective on the finite vertex groups
<b,u> (order 24), <b,v> (order 18) and <buv> (order 3).  All of them share a
single kernel.  The kernel is emitted as its Schreier generators with respect
to a breadth-first transversal of the regular action, one word per line.

The repository re-verifies everything downstream (index, normality,
abelianization, class-2 quotient ranks); this script only produces words.
"""

import sys

P = 3
IDENTITY = ((1, 0), (0, 1))


def mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) % P for j in range(2))
        for i in range(2)
    )


SL23 = [
    ((a, b), (c, d))
    for a in range(P) for b in range(P) for c in range(P) for d in range(P)
    if (a * d - b * c) % P == 1
]

ONE = (IDENTITY, 0)


def mul(x, y):
    return (mat_mul(x[0], y[0]), (x[1] + y[1]) % 3)


def prod(*xs):
    r = ONE
    for x in xs:
        r = mul(r, x)
    return r


def power(x, n):
    return prod(*([x] * n))


def order(x):
    n, y = 1, x
    while y != ONE:
        y = mul(y, x)
        n += 1
    return n


def closure(gens):
    seen = {ONE}
    frontier = [ONE]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = mul(s, g)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def homomorphisms():
    for B in SL23:
        for U in SL23:
            for V in SL23:
                for alpha in range(3):
                    for beta in range(3):
                        b, u, v = (B, alpha), (U, alpha), (V, beta)
                        if power(b, 3) != ONE or power(u, 3) != ONE or power(v, 6) != ONE:
                            continue
                        if prod(b, v) != prod(v, b):
                            continue
                        if prod(b, u, b) != prod(u, b, u):
                            continue
                        if prod(u, v, u, v) != prod(v, u, v, u):
                            continue
                        if power(prod(b, u, v), 3) != ONE:
                            continue
                        if len(closure([b, u, v])) != 72:
                            continue
                        if len(closure([b, u])) != 24 or len(closure([b, v])) != 18:
                            continue
                        if order(prod(b, u, v)) != 3:
                            continue
                        yield (b, u, v)


def regular_table(gens):
    """Breadth-first labelled regular action; returns (table, tree_edges)."""
    label = {ONE: 0}
    elems = [ONE]
    table = []
    tree = {}
    i = 0
    while i < len(elems):
        x = elems[i]
        row = []
        for g_index, g in enumerate(gens):
            y = mul(x, g)
            if y not in label:
                label[y] = len(elems)
                elems.append(y)
                tree[label[y]] = (i, g_index)
            row.append(label[y])
        table.append(tuple(row))
        i += 1
    return tuple(table), tree


def main():
    names = ["b", "u", "v"]
    kernels = {}
    for hom in homomorphisms():
        table, tree = regular_table(hom)
        kernels.setdefault(table, tree)
    if len(kernels) != 1:
        sys.exit(f"expected a unique kernel, found {len(kernels)}")
    (table, tree), = kernels.items()

    def rep(c):
        word = []
        while c != 0:
            parent, g = tree[c]
            word.append(g)
            c = parent
        return list(reversed(word))

    def fmt(letters):
        return "*".join(
            names[g] if e > 0 else f"{names[g]}^-1" for g, e in letters
        )

    out = sys.stdout
    out.write("# Normal subgroup of index 72 in the (5,4,1,1,1)/6 lattice.\n")
    out.write("# Kernel of the unique-up-to-automorphism map onto SL(2,3) x C3 that is\n")
    out.write("# injective on <b,u>, <b,v> and <buv>.  Schreier generators, one per line.\n")
    out.write("# Generated by tools/oracles/find_hirzebruch_subgroup.py\n")
    for c, row in enumerate(table):
        for g, d in enumerate(row):
            if tree.get(d) == (c, g):
                continue
            letters = [(x, 1) for x in rep(c)] + [(g, 1)] + [(x, -1) for x in reversed(rep(d))]
            out.write(fmt(letters) + "\n")


if __name__ == "__main__":
    main()
