"""Independent brute-force oracles used to freeze expected test values.

Everything here is deliberately naive and self-contained: no imports from
the package under test beyond basic data types, no shared helpers.  If an
oracle and the package disagree, the oracle wins until proven otherwise.
"""

from itertools import permutations


def mat_mul(A, B, p):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) % p
                       for j in range(n)) for i in range(n))


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_order(A, p, cap=100000):
    I = mat_identity(len(A))
    B, k = A, 1
    while B != I:
        B = mat_mul(B, A, p)
        k += 1
        assert k <= cap
    return k


def mat_closure(gens, p, cap=1000000):
    """All elements of <gens> as a set of tuple matrices."""
    n = len(gens[0])
    I = mat_identity(n)
    seen = {I}
    frontier = [I]
    while frontier:
        nxt = []
        for M in frontier:
            for G in gens:
                N = mat_mul(M, G, p)
                if N not in seen:
                    assert len(seen) < cap
                    seen.add(N)
                    nxt.append(N)
        frontier = nxt
    return seen


def perm_mul(a, b):
    # left-to-right: apply a first, then b
    return tuple(b[x] for x in a)


def perm_closure(gens):
    deg = len(gens[0])
    ident = tuple(range(deg))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for q in frontier:
            for g in gens:
                r = perm_mul(q, g)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return seen


def group_mul_table(elements):
    """Multiplication table over a sorted element list (permutation tuples)."""
    elems = sorted(elements)
    index = {e: i for i, e in enumerate(elems)}
    return elems, [[index[perm_mul(a, b)] for b in elems] for a in elems]


def naive_automorphism_count(elements):
    """Count automorphisms of a permutation group by brute force.

    Picks a generating sequence, tries every order-compatible image tuple,
    extends each candidate along BFS words and verifies the homomorphism
    property on the full multiplication table.  Only usable for tiny
    groups (|G| <= 24 or so).
    """
    elems, table = group_mul_table(elements)
    n = len(elems)
    deg = len(elems[0])
    ident = elems.index(tuple(range(deg)))

    def elem_order(i):
        k, j = 1, i
        while j != ident:
            j = table[j][i]
            k += 1
        return k

    orders = [elem_order(i) for i in range(n)]

    # greedy generating sequence with BFS words over it
    gens = []
    words = {ident: ()}
    for cand in sorted(range(n), key=lambda i: (-orders[i], i)):
        if cand in words:
            continue
        gens.append(cand)
        frontier = list(words)
        while frontier:
            nxt = []
            for e in frontier:
                for gi, g in enumerate(gens):
                    f = table[e][g]
                    if f not in words:
                        words[f] = words[e] + (gi,)
                        nxt.append(f)
            frontier = nxt
        if len(words) == n:
            break
    assert len(words) == n

    def images_from(gen_images):
        img = [None] * n
        for e, w in words.items():
            x = ident
            for gi in w:
                x = table[x][gen_images[gi]]
            img[e] = x
        return img

    candidates = [[c for c in range(n) if orders[c] == orders[g]] for g in gens]

    def tuples(level, chosen):
        if level == len(gens):
            yield tuple(chosen)
            return
        for c in candidates[level]:
            chosen.append(c)
            yield from tuples(level + 1, chosen)
            chosen.pop()

    count = 0
    for t in tuples(0, []):
        img = images_from(t)
        if len(set(img)) != n:
            continue
        if all(img[table[x][y]] == table[img[x]][img[y]]
               for x in range(n) for y in range(n)):
            count += 1
    return count
