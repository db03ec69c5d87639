"""Matrix groups over prime fields and their permutation realizations.

Matrices are immutable row tuples reduced mod p.  A ``MatrixGroup`` is a
finite subgroup of GL(n, p) given by generators; it converts to a
permutation group acting on the p^n vectors of the natural module (the
zero vector is point 0 and stays fixed), which plugs the matrix world into
the element-table machinery.

The Sylow 2-subgroup builders follow the classical block pattern: for a
single 2-power block the group is quasidihedral (p = -1 mod 4) or a wreath
product C_{2^m} wr C2 (p = +1 mod 4), and for general n the binary digits
of n give a direct product of iterated wreath products, plus a scalar
factor for the odd digit.  Every construction is asserted against the
2-part of |GL(n,p)| when the closure is small enough to enumerate.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
import hashlib

import numpy as np

from .perm import Permutation, PermutationGroup
from .table import GroupTable
from . import modsolve

__all__ = [
    "MatGF",
    "MatrixGroup",
    "matrix_order",
    "matrix_group_to_perm",
    "gl_order",
    "two_part",
    "sylow2_gl2",
    "sylow2_gln",
    "subgroup_inventory",
    "class_order_structure",
    "format_class_structure",
]


@dataclass(frozen=True)
class MatGF:
    """A square matrix over GF(p)."""

    p: int
    rows: tuple

    @classmethod
    def make(cls, rows, p: int) -> "MatGF":
        return cls(p, tuple(tuple(int(x) % p for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int, p: int) -> "MatGF":
        return cls(p, tuple(tuple(1 if i == j else 0 for j in range(n))
                            for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __mul__(self, other: "MatGF") -> "MatGF":
        if self.p != other.p:
            raise ValueError("mixed characteristics")
        p, n = self.p, self.n
        b = other.rows
        return MatGF(p, tuple(
            tuple(sum(ra[k] * b[k][j] for k in range(n)) % p for j in range(n))
            for ra in self.rows))

    def __pow__(self, k: int) -> "MatGF":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = MatGF.identity(self.n, self.p)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def det(self) -> int:
        # Gaussian elimination mod p
        p = self.p
        m = [list(r) for r in self.rows]
        n = self.n
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] % p), None)
            if piv is None:
                return 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det = det * m[col][col] % p
            inv = pow(m[col][col], p - 2, p)
            for r in range(col + 1, n):
                f = m[r][col] * inv % p
                if f:
                    m[r] = [(x - f * y) % p for x, y in zip(m[r], m[col])]
        return det % p

    def inverse(self) -> "MatGF":
        p, n = self.p, self.n
        m = [list(r) + [1 if i == j else 0 for j in range(n)]
             for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] % p), None)
            if piv is None:
                raise ValueError("singular matrix")
            m[col], m[piv] = m[piv], m[col]
            inv = pow(m[col][col], p - 2, p)
            m[col] = [x * inv % p for x in m[col]]
            for r in range(n):
                if r != col and m[r][col]:
                    f = m[r][col]
                    m[r] = [(x - f * y) % p for x, y in zip(m[r], m[col])]
        return MatGF(p, tuple(tuple(r[n:]) for r in m))

    def is_identity(self) -> bool:
        return all(self.rows[i][j] == (1 if i == j else 0)
                   for i in range(self.n) for j in range(self.n))

    def order(self, cap: int = 1 << 20) -> int:
        k, m = 1, self
        while not m.is_identity():
            m = m * self
            k += 1
            if k > cap:
                raise RuntimeError("matrix order exceeds cap")
        return k

    def __repr__(self):
        return f"MatGF({list(map(list, self.rows))} mod {self.p})"


def matrix_order(m: MatGF) -> int:
    return m.order()


def _closure(gens, cap=None):
    seen = {MatGF.identity(gens[0].n, gens[0].p): 0}
    order_list = [MatGF.identity(gens[0].n, gens[0].p)]
    frontier = list(order_list)
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                h = m * g
                if h not in seen:
                    if cap is not None and len(seen) >= cap:
                        raise RuntimeError("matrix closure exceeds cap")
                    seen[h] = len(order_list)
                    order_list.append(h)
                    nxt.append(h)
        frontier = nxt
    return order_list


@dataclass
class MatrixGroup:
    """Finitely generated subgroup of GL(n, p)."""

    p: int
    generators: tuple
    gen_names: tuple | None = None
    label: str = ""
    _elements: list = field(default=None, repr=False, compare=False)

    @classmethod
    def from_rows(cls, gen_rows, p: int, names=None, label: str = "") -> "MatrixGroup":
        gens = tuple(MatGF.make(r, p) for r in gen_rows)
        return cls(p, gens, tuple(names) if names else None, label)

    @property
    def degree(self) -> int:
        return self.generators[0].n

    def elements(self, cap=None) -> list:
        if self._elements is None:
            self._elements = _closure(list(self.generators), cap)
        return self._elements

    def order(self, cap=None) -> int:
        return len(self.elements(cap))

    def to_perm_group(self) -> PermutationGroup:
        return matrix_group_to_perm(self)

    def table(self, cap=None, keep_elements=None) -> GroupTable:
        return GroupTable.from_perm_group(self.to_perm_group(), cap=cap,
                                          keep_elements=keep_elements)


def _vector_index_perm(m: MatGF) -> Permutation:
    """Permutation of the p^n row vectors induced by v -> v*M.

    Vectors are numbered little-endian in base p, so index 0 is the zero
    vector and stays fixed.
    """
    p, n = m.p, m.n
    count = p ** n
    digits = np.empty((count, n), dtype=np.int64)
    idx = np.arange(count)
    rem = idx.copy()
    for i in range(n):
        digits[:, i] = rem % p
        rem //= p
    mat = np.array(m.rows, dtype=np.int64)
    out = digits @ mat % p
    powers = p ** np.arange(n)
    images = out @ powers
    return Permutation._raw(tuple(int(x) for x in images))


def matrix_group_to_perm(group: MatrixGroup) -> PermutationGroup:
    """Faithful permutation action on the p^n vectors of the natural module."""
    perms = tuple(_vector_index_perm(m) for m in group.generators)
    deg = group.p ** group.degree
    return PermutationGroup(deg, perms, group.gen_names)


def gl_order(n: int, p: int) -> int:
    return reduce(lambda acc, i: acc * (p ** n - p ** i), range(n), 1)


def two_part(n: int) -> int:
    return n & -n


def _unit_of_order(p: int, t: int) -> int:
    """Smallest unit of multiplicative order exactly t mod p."""
    if (p - 1) % t:
        raise ValueError(f"no element of order {t} mod {p}")
    for x in range(1, p):
        if modsolve.element_order_mod(x, p) == t:
            return x
    raise RuntimeError("unreachable")


def sylow2_gl2(p: int) -> MatrixGroup:
    """A Sylow 2-subgroup of GL(2, p), with a structure label attached.

    p = 1 mod 4: C_{2^m} wr C2 with m = v2(p-1), generated by diag(1, x)
    for x of order 2^m plus the coordinate swap.  p = 3 mod 4: the
    quasidihedral group of order 2^(m+2) with m = v2(p+1), generated by
    the companion-style matrix [[0,1],[1,x]] (x from the nested radical
    congruence) and the involution [[1,0],[x,-1]].
    """
    if p == 2:
        g = MatrixGroup.from_rows([[[0, 1], [1, 0]]], 2, names=("a",), label="C2")
        assert g.order() == 2 == two_part(gl_order(2, 2))
        return g
    target = two_part(gl_order(2, p))
    if p % 4 == 1:
        m = (p - 1) & -(p - 1)
        x = _unit_of_order(p, m)
        g = MatrixGroup.from_rows(
            [[[1, 0], [0, x]], [[0, 1], [1, 0]]], p,
            names=("a", "b"), label=f"C{m}wrC2")
        assert g.order(cap=4 * target) == target == 2 * m * m
        return g
    m_exp = ((p + 1) & -(p + 1)).bit_length() - 1
    roots = modsolve.iterated_radical_roots(p, m_exp)
    if not roots.solutions:
        raise RuntimeError(f"radical solver found no parameter for p={p}")
    x = roots.canonical()
    a = MatGF.make([[0, 1], [1, x]], p)
    b = MatGF.make([[1, 0], [x, -1]], p)
    t = 1 << (m_exp + 1)
    assert a.order() == t and (b * b).is_identity()
    # quasidihedral law a^b = a^(t/2 - 1)
    assert b.inverse() * a * b == a ** (t // 2 - 1)
    g = MatrixGroup(p, (a, b), ("a", "b"), label=f"QD{t}")
    assert g.order(cap=4 * target) == target == 2 * t
    return g


def _embed_block(rows, offset, n, p):
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    k = len(rows)
    for i in range(k):
        for j in range(k):
            out[offset + i][offset + j] = rows[i][j]
    return MatGF.make(out, p)


def _sylow2_block(k_exp: int, p: int):
    """Generators (as row lists) and label for Syl2(GL(2^k_exp, p)), odd p."""
    base = sylow2_gl2(p)
    gens = [list(map(list, m.rows)) for m in base.generators]
    label = base.label
    size = 2
    for _ in range(k_exp - 1):
        newsize = 2 * size
        embedded = []
        for g in gens:
            out = [[1 if i == j else 0 for j in range(newsize)]
                   for i in range(newsize)]
            for i in range(size):
                for j in range(size):
                    out[i][j] = g[i][j]
            embedded.append(out)
        swap = [[0] * newsize for _ in range(newsize)]
        for i in range(size):
            swap[i][size + i] = 1
            swap[size + i][i] = 1
        embedded.append(swap)
        gens = embedded
        label = f"({label})wrC2" if "wr" in label else f"{label}wrC2"
        size = newsize
    return gens, label


def sylow2_gln(n: int, p: int) -> MatrixGroup:
    """A Sylow 2-subgroup of GL(n, p).

    For odd p the binary digits of n give a block-diagonal direct product:
    each digit 2^k contributes the iterated wreath power of Syl2(GL(2,p)),
    and the unit digit contributes the scalar C_{2^m} block (m = v2(p-1)).
    For p = 2 the group is the upper unitriangular group, generated by the
    superdiagonal transvections.
    """
    if n < 1:
        raise ValueError("n must be positive")
    target = two_part(gl_order(n, p))
    if p == 2:
        gens = []
        for i in range(n - 1):
            rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
            rows[i][i + 1] = 1
            gens.append(rows)
        if not gens:  # GL(1,2) is trivial
            gens = [[[1]]]
        g = MatrixGroup.from_rows(gens, 2, label=f"UT({n},2)")
        if target <= 1 << 13:
            assert g.order(cap=2 * target) == target
        return g
    labels = []
    gen_rows = []
    offset = 0
    bits = [i for i in range(n.bit_length()) if n >> i & 1]
    for bit in sorted(bits, reverse=True):
        if bit == 0:
            m = (p - 1) & -(p - 1)
            x = _unit_of_order(p, m)
            rows = [[x]]
            gen_rows.append((offset, [rows]))
            labels.append(f"C{m}")
            offset += 1
        else:
            block_gens, label = _sylow2_block(bit, p)
            gen_rows.append((offset, block_gens))
            labels.append(label)
            offset += 1 << bit
    assert offset == n
    final = []
    for off, rows_list in gen_rows:
        for rows in rows_list:
            final.append(_embed_block(rows, off, n, p))
    g = MatrixGroup(p, tuple(final), None, label=" x ".join(labels))
    if target <= 1 << 13:
        assert g.order(cap=2 * target) == target
    return g


# ---------------------------------------------------------------------------
# subgroup inventories and class structure


def _as_table(g, cap=None) -> GroupTable:
    if isinstance(g, GroupTable):
        return g
    if isinstance(g, MatrixGroup):
        return g.table(cap=cap, keep_elements=True)
    if isinstance(g, PermutationGroup):
        return GroupTable.from_perm_group(g, cap=cap, keep_elements=True)
    raise TypeError(f"cannot tabulate {type(g).__name__}")


def _small_generating_indices(table: GroupTable, members) -> list:
    members = sorted(members, key=lambda i: (-table.order_of(i), i))
    chosen = []
    have = {0}
    for x in members:
        if x in have:
            continue
        chosen.append(x)
        have = set(table.subgroup_closure(chosen).tolist())
        if len(have) == len(members):
            break
    return chosen


def all_subgroups(table: GroupTable, max_order: int) -> list:
    """Every subgroup of order <= max_order, as sorted index tuples.

    Breadth-first lattice walk: cyclic subgroups seed the pool, then each
    known subgroup is extended by one outside element at a time.  Subgroups
    whose closure overshoots max_order are discarded (their subgroups are
    still reached along other chains).
    """
    seen = {}
    queue = []
    for x in range(table.n):
        sub = tuple(int(i) for i in table.subgroup_closure([x]))
        if len(sub) <= max_order and sub not in seen:
            seen[sub] = [x]
            queue.append(sub)
    while queue:
        sub = queue.pop()
        gens = seen[sub]
        if len(sub) == max_order:
            continue
        inside = set(sub)
        for x in range(table.n):
            if x in inside:
                continue
            bigger = tuple(int(i)
                           for i in table.subgroup_closure(gens + [x]))
            if len(bigger) <= max_order and bigger not in seen:
                seen[bigger] = gens + [x]
                queue.append(bigger)
    return sorted(seen)


def _fingerprint_hash(fp) -> str:
    text = repr(sorted(fp.as_dict().items()))
    return hashlib.sha1(text.encode()).hexdigest()[:8]


def subgroup_inventory(g, k: int, catalog=None) -> Counter:
    """Multiset of isomorphism-type labels of the order-k subgroups of g.

    Labels come from the order-16/32 catalog (confirmed by isomorphism
    test, not just invariants); anything off-catalog is labelled
    ``order<k>-fp:<hash>`` with a stable fingerprint hash.
    """
    from . import aut as _aut
    table = _as_table(g)
    if table.n % k:
        return Counter()
    subs = [s for s in all_subgroups(table, k) if len(s) == k]
    if catalog is None:
        from . import constructors as _cons
        catalog = _cons.small_group_catalog(k)
    out = Counter()
    cache = {}
    for s in subs:
        gens = _small_generating_indices(table, s)
        sub_table = GroupTable.close([table.perm(i) for i in gens],
                                     keep_elements=True)
        fp = sub_table.fingerprint()
        key = fp
        label = cache.get(key)
        if label is None:
            label = ""
            for name, cand_table in catalog:
                if cand_table.fingerprint() != fp:
                    continue
                if _aut.is_isomorphic(sub_table, cand_table) is not None:
                    label = name
                    break
            if not label:
                label = f"order{k}-fp:{_fingerprint_hash(fp)}"
            cache[key] = label
        out[label] += 1
    return out


def class_order_structure(g) -> dict:
    """Conjugacy class sizes of g, grouped by element order.

    Returns {order: (size, size, ...)} with sizes ascending; the identity
    class appears under order 1.
    """
    table = _as_table(g)
    out = {}
    for members in table.conjugacy_classes():
        o = table.order_of(int(members[0]))
        out.setdefault(o, []).append(len(members))
    return {o: tuple(sorted(v)) for o, v in sorted(out.items())}


def format_class_structure(structure: dict) -> str:
    """Compact display: "2: 1,4 | 4: 2,4 | 8: 2^2" (exponents collapse runs)."""
    parts = []
    for o, sizes in sorted(structure.items()):
        if o == 1:
            continue
        counted = Counter(sizes)
        bits = []
        for size in sorted(counted):
            mult = counted[size]
            bits.append(f"{size}^{mult}" if mult > 1 else f"{size}")
        parts.append(f"{o}: {','.join(bits)}")
    return " | ".join(parts)
