"""Automorphism groups of finite groups given by multiplication tables.

The search fixes an ordered generating sequence of the group and looks for
images of each generator in turn.  Candidate images are restricted to
elements with the same conjugacy label, filtered in bulk against short
relators harvested from the multiplication table, and organised into orbits
of the partial stabilizer.  The automorphism group order is then the product
of the orbit lengths, and the discovered maps act on element indices, which
keeps everything in integer arrays regardless of the permutation degree of
the original group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import prod

import numpy as np

from .perm import Permutation, PermutationGroup
from .table import GroupTable

__all__ = [
    "AutGroupResult",
    "TowerStep",
    "TowerResult",
    "automorphism_group",
    "inner_automorphisms",
    "is_complete",
    "is_isomorphic",
    "find_generator_images",
    "aut_tower",
    "identify",
]


def _as_table(group) -> GroupTable:
    if isinstance(group, GroupTable):
        return group
    if isinstance(group, PermutationGroup):
        return GroupTable.from_perm_group(group)
    raise TypeError(f"expected a GroupTable or PermutationGroup, got {type(group).__name__}")


def _gen_names(k: int) -> tuple[str, ...]:
    return tuple(f"g{i}" for i in range(k))


# -- vectorized image-row arithmetic --------------------------------------

def _layer_groups(t: GroupTable) -> list[tuple[int, np.ndarray, np.ndarray]]:
    """Spanning-tree edges of the closure, grouped by (depth, generator).

    Returns triples ``(g, targets, parents)`` in breadth-first order so that
    ``value[targets] = action_of_g[value[parents]]`` fills any function that
    respects right multiplication by the generators.
    """
    depth = t.depth_array()
    parent, via = t.parent, t.via
    order = np.argsort(depth, kind="stable")
    d_sorted = depth[order]
    cuts = np.flatnonzero(np.diff(d_sorted)) + 1
    out = []
    start = 0
    for stop in list(cuts) + [t.n]:
        layer = order[start:stop]
        start = stop
        if d_sorted[stop - 1] == 0:
            continue
        v = via[layer]
        for g in np.unique(v):
            sel = layer[v == g]
            out.append((int(g), sel, parent[sel]))
    return out


def _rows_matrix(t: GroupTable) -> np.ndarray:
    """Image arrays of every element as an (n, degree) matrix."""
    dtype = np.int16 if t.degree <= 30000 else np.int32
    rows = np.empty((t.n, t.degree), dtype=dtype)
    rows[0] = np.arange(t.degree, dtype=dtype)
    gens = [np.asarray(g, dtype=dtype) for g in t.gens_arr]
    for g, targets, parents in _layer_groups(t):
        rows[targets] = gens[g][rows[parents]]
    return rows


def _inv_rows(rows: np.ndarray) -> np.ndarray:
    m, d = rows.shape
    out = np.empty_like(rows)
    np.put_along_axis(out, rows.astype(np.int64),
                      np.broadcast_to(np.arange(d, dtype=rows.dtype), (m, d)), axis=1)
    return out


def _pow_rows(rows: np.ndarray, e: int) -> np.ndarray:
    if e < 0:
        return _pow_rows(_inv_rows(rows), -e)
    m, d = rows.shape
    out = np.tile(np.arange(d, dtype=rows.dtype), (m, 1))
    base = rows
    while e:
        if e & 1:
            out = np.take_along_axis(base, out.astype(np.int64), axis=1)
        e >>= 1
        if e:
            base = np.take_along_axis(base, base.astype(np.int64), axis=1)
    return out


def _merge_letters(letters) -> tuple[tuple[int, int], ...]:
    merged: list[list[int]] = []
    for sym, e in letters:
        if merged and merged[-1][0] == sym:
            merged[-1][1] += e
            if merged[-1][1] == 0:
                merged.pop()
        else:
            merged.append([sym, e])
    return tuple((s, e) for s, e in merged)


def _structure_relators(t: GroupTable) -> list[tuple[tuple[int, int], ...]]:
    """Conjugation relators g_i^-1 g_j g_i = w for every generator pair.

    These pin the action of each generator on the others, which is exactly
    what tells images from different cosets apart; the harvested closure
    relators alone can miss it.  When the conjugate lands in the cyclic group
    of g_j the tail is a plain power, otherwise its spanning-tree word.
    """
    bg = t.generator_indices()
    k = t.k
    powers = []
    for j, gj in enumerate(bg):
        table: dict[int, int] = {}
        x, e = 0, 0
        while x not in table:
            table[x] = e
            x = t.mul(x, gj)
            e += 1
        powers.append(table)
    out = []
    for i, gi in enumerate(bg):
        inv_i = t.inverse(gi)
        for j, gj in enumerate(bg):
            if i == j:
                continue
            x = t.mul(t.mul(inv_i, gj), gi)
            head = [(i, -1), (j, 1), (i, 1)]
            m = powers[j].get(x)
            if m is not None:
                tail = [(j, -m)] if m else []
            else:
                tail = [(v, -1) for v in reversed(t.word(x))]
            letters = _merge_letters(head + tail)
            if letters:
                out.append(letters)
    return out


def _orbit(n: int, start: int, ops: list[np.ndarray]) -> np.ndarray:
    """Boolean mask of the orbit of ``start`` under the index maps ``ops``."""
    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    frontier = np.array([start], dtype=np.int64)
    while frontier.size:
        images = [op[frontier] for op in ops]
        if not images:
            break
        nxt = np.unique(np.concatenate(images))
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return seen


class _ImageSearch:
    """Backtracking search for generator images satisfying table relators.

    ``src`` supplies the generating sequence, its spanning tree and relators;
    ``dst`` supplies the candidate elements.  For automorphism searches both
    are the same table.
    """

    def __init__(self, src: GroupTable, dst: GroupTable,
                 cand: list[np.ndarray], relator_limit: int = 160,
                 max_level_relators: int = 48):
        self.src = src
        self.dst = dst
        self.k = src.k
        self.cand = cand
        self.rows = _rows_matrix(dst)
        self.id_row = np.arange(dst.degree, dtype=self.rows.dtype)
        self.level_rels: list[list] = [[] for _ in range(self.k)]
        for letters in _structure_relators(src):
            self.level_rels[max(s for s, _ in letters)].append(letters)
        for letters in src.cayley_relators(limit=relator_limit):
            lv = max(s for s, _ in letters)
            if len(self.level_rels[lv]) < max_level_relators:
                self.level_rels[lv].append(letters)
        self._layers = _layer_groups(src)
        self._pow: dict[tuple[int, int], np.ndarray] = {}
        # bounded cache of right-action columns keyed by dst element index
        self._ra_cache: dict[int, np.ndarray] = {}
        self._ra_limit = max(64, (1 << 25) // max(dst.n, 1))
        self._pow_idx: dict[tuple[int, int], int] = {}
        self._mul_idx: dict[tuple[int, int], int] = {}

    def _ra(self, idx: int) -> np.ndarray:
        got = self._ra_cache.get(idx)
        if got is None:
            got = self.dst.right_action(idx)
            if len(self._ra_cache) < self._ra_limit:
                self._ra_cache[idx] = got
        return got

    def _power(self, i: int, e: int) -> int:
        key = (i, e)
        got = self._pow_idx.get(key)
        if got is None:
            got = self.dst.power(i, e)
            if len(self._pow_idx) < (1 << 20):
                self._pow_idx[key] = got
        return got

    def _mul(self, a: int, b: int) -> int:
        key = (a, b)
        got = self._mul_idx.get(key)
        if got is None:
            got = self.dst.mul(a, b)
            if len(self._mul_idx) < (1 << 20):
                self._mul_idx[key] = got
        return got

    def cand_pow(self, level: int, e: int) -> np.ndarray:
        key = (level, int(e))
        got = self._pow.get(key)
        if got is None:
            base = self._pow.get((level, 1))
            if base is None:
                base = self.rows[self.cand[level]]
                self._pow[(level, 1)] = base
            got = base if e == 1 else _pow_rows(base, int(e))
            self._pow[key] = got
        return got

    def mask_for(self, level: int, fixed) -> np.ndarray:
        """Which candidates at ``level`` satisfy all relators of that level.

        ``fixed[j]`` must hold the chosen dst element index for every j below
        ``level``; relators are assigned to the level of their highest symbol,
        so no later symbols occur here.
        """
        m = len(self.cand[level])
        ok = np.ones(m, dtype=bool)
        if m == 0:
            return ok
        for letters in self.level_rels[level]:
            segs: list[tuple[str, int]] = []
            acc = None
            for sym, e in letters:
                if sym == level:
                    if acc is not None:
                        segs.append(("f", acc))
                        acc = None
                    segs.append(("c", int(e)))
                else:
                    x = self._power(int(fixed[sym]), int(e))
                    acc = x if acc is None else self._mul(acc, x)
            if acc is not None:
                segs.append(("f", acc))
            r = None
            for tag, val in segs:
                if tag == "c":
                    y = self.cand_pow(level, val)
                    r = y if r is None else np.take_along_axis(y, r.astype(np.int64), axis=1)
                else:
                    row = self.rows[val]
                    r = np.tile(row, (m, 1)) if r is None else row[r]
            if r is None:
                continue
            ok &= (r == self.id_row).all(axis=1)
            if not ok.any():
                break
        return ok

    def extend_verify(self, images) -> np.ndarray | None:
        """Grow generator images along the spanning tree and verify the map.

        Returns the full index map src -> dst when it is a bijective
        homomorphism, else None.  The Cayley-edge check makes correctness
        independent of whether the pruning relators were defining.
        """
        dst = self.dst
        n = self.src.n
        ra = [self._ra(int(img)) for img in images]
        phi = np.zeros(n, dtype=np.int32)
        for g, targets, parents in self._layers:
            phi[targets] = ra[g][phi[parents]]
        if n != dst.n or np.bincount(phi, minlength=dst.n).max() > 1:
            return None
        for g in range(self.k):
            if not np.array_equal(phi[self.src.gen_mult[g]], ra[g][phi]):
                return None
        return phi

    def complete(self, level: int, images) -> np.ndarray | None:
        """Depth-first completion of ``images`` below ``level``."""

        def dfs(lv: int):
            if lv == self.k:
                return self.extend_verify(images)
            for c in self.cand[lv][self.mask_for(lv, images)]:
                images[lv] = int(c)
                phi = dfs(lv + 1)
                if phi is not None:
                    return phi
            images[lv] = None
            return None

        return dfs(level + 1)


# -- generating sequences --------------------------------------------------

def _minimal_generating_indices(t: GroupTable) -> list[int]:
    """Generating set of element indices tuned for the image search.

    Prefers elements from small conjugacy-label classes: candidate sets for
    their images stay small, which matters far more for search cost than the
    number of generators.  Redundant generators are dropped afterwards,
    large-class ones first.
    """
    n = t.n
    if n == 1:
        return []
    orders = t.element_orders()
    labels = t.element_labels()
    freq = Counter(labels)
    ranked = sorted(range(1, n), key=lambda i: (freq[labels[i]], -orders[i], i))
    member = np.zeros(n, dtype=bool)
    member[0] = True
    chosen: list[int] = []
    size = 1
    for i in ranked:
        if member[i]:
            continue
        chosen.append(int(i))
        cl = t.subgroup_closure(chosen)
        member[:] = False
        member[cl] = True
        size = cl.size
        if size == n:
            break
    assert size == n
    for c in sorted(chosen, key=lambda i: (-freq[labels[i]], i)):
        if len(chosen) == 1:
            break
        rest = [x for x in chosen if x != c]
        if t.subgroup_closure(rest).size == n:
            chosen = rest
    return chosen


def _centralizer_gen_elems(t: GroupTable, prefix: list[int]) -> list[int]:
    """Generators (as element indices) of the centralizer of the prefix."""
    if not prefix:
        return t.generator_indices()
    mask = np.ones(t.n, dtype=bool)
    for e in prefix:
        mask &= t.left_action(e) == t.right_action(e)
    members = np.nonzero(mask)[0]
    if members.size == t.n:
        return t.generator_indices()
    orders = t.element_orders()
    ranked = members[np.lexsort((members, -orders[members]))]
    chosen: list[int] = []
    size = 1
    for m in ranked:
        m = int(m)
        if m == 0:
            continue
        if chosen and size > 1:
            if covered[m]:
                continue
        chosen.append(m)
        cl = t.subgroup_closure(chosen)
        covered = np.zeros(t.n, dtype=bool)
        covered[cl] = True
        size = cl.size
        if size == members.size:
            break
    return chosen


def _label_candidates(src: GroupTable, dst: GroupTable) -> list[np.ndarray] | None:
    """Per-generator candidate images in dst, matched by conjugacy label."""
    src_labels = src.element_labels()
    dst_labels = dst.element_labels()
    buckets: dict = {}
    for i, lab in enumerate(dst_labels):
        buckets.setdefault(lab, []).append(i)
    cand = []
    for b in src.generator_indices():
        hit = buckets.get(src_labels[b])
        if not hit:
            return None
        cand.append(np.asarray(hit, dtype=np.int32))
    return cand


# -- results ---------------------------------------------------------------

@dataclass
class AutGroupResult:
    """Automorphism group of a finite group, acting on element indices.

    ``group`` is the automorphism group as permutations of the ``table``
    element indices; ``base_gens`` is the generating sequence the search
    walked and ``orbit_sizes`` the image-orbit lengths whose product is the
    group order.
    """

    group: PermutationGroup
    table: GroupTable
    base_gens: tuple[int, ...]
    orbit_sizes: tuple[int, ...]
    inner_order: int
    identification: str | None = None
    _arrays: list = field(default_factory=list, repr=False)
    _realized: GroupTable | None = field(default=None, repr=False)

    def order(self) -> int:
        return prod(self.orbit_sizes) if self.orbit_sizes else 1

    @property
    def outer_order(self) -> int:
        return self.order() // self.inner_order

    @property
    def complete(self) -> bool:
        """True when the base group has trivial center and only inner maps."""
        return self.table.center_order() == 1 and self.order() == self.table.n

    def realize(self, cap: int | None = None) -> GroupTable:
        """Close the automorphism group as a small-degree permutation group.

        Acts on a union of whole orbits of element indices chosen so the
        underlying elements generate the group; any automorphism fixing all
        of them is the identity, so the restriction stays faithful.
        """
        if self._realized is not None:
            return self._realized
        t = self.table
        n = t.n
        total = self.order()
        if total == 1:
            self._realized = GroupTable.close([], cap=1)
            return self._realized
        arrays = self._arrays
        visited = np.zeros(n, dtype=bool)
        visited[0] = True
        orbits = []
        for s in range(1, n):
            if visited[s]:
                continue
            mask = _orbit(n, s, arrays)
            orbits.append(np.nonzero(mask)[0])
            visited |= mask
        orbits.sort(key=len)
        gen_pts: list[int] = []
        covered = np.zeros(n, dtype=bool)
        covered[0] = True
        chosen = []
        for orb in orbits:
            if covered[orb].all():
                continue
            chosen.append(orb)
            # each added point at least doubles the covered subgroup
            while True:
                missing = orb[~covered[orb]]
                if missing.size == 0:
                    break
                gen_pts.append(int(missing[0]))
                cl = t.subgroup_closure(gen_pts)
                covered[:] = False
                covered[cl] = True
            if covered.all():
                break
        assert covered.all()
        pts = np.sort(np.concatenate(chosen))
        pos = np.full(n, -1, dtype=np.int64)
        pos[pts] = np.arange(pts.size)
        perms = []
        seen_keys = set()
        for a in arrays:
            img = pos[np.asarray(a)[pts]]
            assert (img >= 0).all()
            key = img.tobytes()
            if key in seen_keys or np.array_equal(img, np.arange(pts.size)):
                continue
            seen_keys.add(key)
            perms.append(Permutation._raw(tuple(int(x) for x in img)))
        realized = GroupTable.close(perms, cap=cap if cap is not None else total)
        if realized.n != total:
            raise RuntimeError(
                f"realized automorphism group has order {realized.n}, expected {total}")
        self._realized = realized
        return realized

    def fingerprint(self, cap: int | None = None):
        return self.realize(cap).fingerprint()

    def as_dict(self) -> dict:
        return {
            "order": self.order(),
            "orbitSizes": list(self.orbit_sizes),
            "innerOrder": self.inner_order,
            "outerOrder": self.outer_order,
            "complete": self.complete,
            "identification": self.identification,
        }


# -- main entry points -----------------------------------------------------

def automorphism_group(group, gens=None, relator_limit: int = 160) -> AutGroupResult:
    """Compute the automorphism group of a finite group.

    ``group`` is a GroupTable or PermutationGroup.  ``gens`` may pin the
    generating sequence (element indices of the table, or permutations); by
    default a small generating set is chosen automatically.
    """
    t0 = _as_table(group)
    n = t0.n
    if n == 1:
        pg = PermutationGroup(1, (), (), cached_order=1)
        return AutGroupResult(pg, t0, (), (), 1)
    if gens is None:
        base_idx = _minimal_generating_indices(t0)
    else:
        base_idx = []
        for g in gens:
            if isinstance(g, Permutation):
                base_idx.append(t0.index_of(g))
            else:
                base_idx.append(int(g))
    labels0 = t0.element_labels()
    freq = Counter(labels0)
    if gens is None:
        # large image classes first: their candidate masks are computed once
        # per scan, while deep levels re-filter on every search branch
        base_idx.sort(key=lambda i: (-freq[labels0[i]], i))
    base_perms = [t0.perm(i) for i in base_idx]
    t = GroupTable.close(base_perms, names=_gen_names(len(base_perms)), cap=n)
    if t.n != n:
        raise ValueError("the given generators do not generate the group")

    cand = _label_candidates(t, t)
    assert cand is not None
    eng = _ImageSearch(t, t, cand, relator_limit=relator_limit)
    k = eng.k
    bg = t.generator_indices()
    inner_conj = [np.asarray(c) for c in t.generator_conj_arrays()]
    found: list[np.ndarray] = []
    orbit_sizes = [1] * k
    for i in reversed(range(k)):
        prefix = [bg[j] for j in range(i)]
        ops = [np.asarray(t.conj_array(z)) for z in _centralizer_gen_elems(t, prefix)]
        ops += found
        seen = _orbit(n, bg[i], ops)
        # failures propagate: if no automorphism fixing the prefix sends
        # bg[i] to c, none sends it anywhere in c's orbit either
        failed = np.zeros(n, dtype=bool)
        valid = eng.cand[i][eng.mask_for(i, prefix)]
        for c in valid:
            c = int(c)
            if seen[c] or failed[c]:
                continue
            images = prefix + [c] + [None] * (k - i - 1)
            phi = eng.complete(i, images)
            if phi is None:
                failed |= _orbit(n, c, ops)
                continue
            found.append(phi)
            ops.append(phi)
            seen = _orbit(n, bg[i], ops)
        orbit_sizes[i] = int(seen.sum())

    total = prod(orbit_sizes)
    inner_order = n // t.center_order()
    assert total % inner_order == 0

    arrays: list[np.ndarray] = []
    names: list[str] = []
    seen_keys = set()
    ident = np.arange(n)
    for tag, batch in (("c", inner_conj), ("s", found)):
        for a in batch:
            key = a.tobytes()
            if key in seen_keys or np.array_equal(a, ident):
                continue
            seen_keys.add(key)
            arrays.append(a)
            names.append(f"{tag}{len(names)}")
    perms = tuple(Permutation._raw(tuple(int(x) for x in a)) for a in arrays)
    pg = PermutationGroup(n, perms, tuple(names), cached_order=total)
    return AutGroupResult(pg, t, tuple(bg), tuple(orbit_sizes), inner_order,
                          _arrays=arrays)


def inner_automorphisms(group) -> PermutationGroup:
    """Inner automorphism group acting on element indices."""
    t = _as_table(group)
    arrays = []
    names = []
    ident = np.arange(t.n)
    for name, c in zip(t.gen_names, t.generator_conj_arrays()):
        a = np.asarray(c)
        if np.array_equal(a, ident):
            continue
        arrays.append(Permutation._raw(tuple(int(x) for x in a)))
        names.append(f"c_{name}")
    return PermutationGroup(t.n, tuple(arrays), tuple(names),
                            cached_order=t.n // t.center_order())


def is_complete(group) -> bool:
    """True when the group has trivial center and no outer automorphisms."""
    t = _as_table(group)
    if t.center_order() != 1:
        return False
    return automorphism_group(t).order() == t.n


def is_isomorphic(g, h, relator_limit: int = 160):
    """Isomorphism test with certificate.

    Returns a tuple of h-element indices, the images of g's generators in
    order, when the groups are isomorphic; otherwise None.
    """
    tg, th = _as_table(g), _as_table(h)
    if tg.n != th.n:
        return None
    n = tg.n
    if n == 1:
        return ()
    if tg.fingerprint().as_dict() != th.fingerprint().as_dict():
        return None
    mg = _minimal_generating_indices(tg)
    labels_h = th.element_labels()
    freq = Counter(labels_h)
    labels_g = tg.element_labels()
    mg.sort(key=lambda i: (-freq.get(labels_g[i], 0), i))
    t1 = GroupTable.close([tg.perm(i) for i in mg], names=_gen_names(len(mg)),
                          cap=n, keep_elements=True)
    cand = _label_candidates(t1, th)
    if cand is None:
        return None
    eng = _ImageSearch(t1, th, cand, relator_limit=relator_limit)
    phi = eng.complete(-1, [None] * eng.k)
    if phi is None:
        return None
    orig = [tg.perm(i) for i in tg.generator_indices()]
    return tuple(int(phi[t1.index_of(p)]) for p in orig)


def find_generator_images(pres, group):
    """Generator assignment in ``group`` satisfying and generating ``pres``.

    Returns a dict mapping presentation symbols to element indices of the
    group's table, or None when no satisfying generating assignment exists.
    """
    t = _as_table(group)
    n = t.n
    syms = list(pres.alphabet)
    k = len(syms)
    if k == 0:
        return {} if n == 1 else None
    pos = {s: i for i, s in enumerate(syms)}
    rels = [tuple((pos[s], e) for s, e in w.letters) for w in pres.relators()]
    orders = t.element_orders()
    bound: dict[int, int] = {}
    for letters in rels:
        if len(letters) == 1:
            sym, e = letters[0]
            e = abs(e)
            if e:
                from math import gcd
                bound[sym] = gcd(bound.get(sym, e), e)
    cand = []
    for i in range(k):
        b = bound.get(i)
        if b is None:
            sel = np.arange(n, dtype=np.int64)
        else:
            sel = np.nonzero(b % orders == 0)[0]
        # high-order elements first: likelier to generate
        sel = sel[np.lexsort((sel, -orders[sel]))]
        cand.append(sel.astype(np.int32))

    rows = _rows_matrix(t)
    id_row = np.arange(t.degree, dtype=rows.dtype)
    level_rels: list[list] = [[] for _ in range(k)]
    for letters in rels:
        level_rels[max(s for s, _ in letters)].append(letters)
    pow_cache: dict[tuple[int, int], np.ndarray] = {}

    def cand_pow(level, e):
        key = (level, e)
        got = pow_cache.get(key)
        if got is None:
            base = pow_cache.get((level, 1))
            if base is None:
                base = rows[cand[level]]
                pow_cache[(level, 1)] = base
            got = base if e == 1 else _pow_rows(base, e)
            pow_cache[key] = got
        return got

    def mask_for(level, images):
        m = len(cand[level])
        ok = np.ones(m, dtype=bool)
        for letters in level_rels[level]:
            segs = []
            acc = None
            for sym, e in letters:
                if sym == level:
                    if acc is not None:
                        segs.append(("f", acc))
                        acc = None
                    segs.append(("c", int(e)))
                else:
                    x = t.power(int(images[sym]), int(e))
                    acc = x if acc is None else t.mul(acc, x)
            if acc is not None:
                segs.append(("f", acc))
            r = None
            for tag, val in segs:
                if tag == "c":
                    y = cand_pow(level, val)
                    r = y if r is None else np.take_along_axis(y, r.astype(np.int64), axis=1)
                else:
                    row = rows[val]
                    r = np.tile(row, (m, 1)) if r is None else row[r]
            if r is None:
                continue
            ok &= (r == id_row).all(axis=1)
            if not ok.any():
                break
        return ok

    images: list = [None] * k

    def dfs(level):
        if level == k:
            if t.subgroup_closure([x for x in images]).size == n:
                return dict(zip(syms, [int(x) for x in images]))
            return None
        for c in cand[level][mask_for(level, images)]:
            images[level] = int(c)
            got = dfs(level + 1)
            if got is not None:
                return got
        images[level] = None
        return None

    return dfs(0)


# -- automorphism towers ---------------------------------------------------

@dataclass
class TowerStep:
    order: int
    fingerprint: dict | None
    complete: bool | None

    def as_dict(self) -> dict:
        return {"order": self.order, "fingerprint": self.fingerprint,
                "complete": self.complete}


@dataclass
class TowerResult:
    steps: list[TowerStep]
    truncated: bool
    terminated: bool

    def orders(self) -> list[int]:
        return [s.order for s in self.steps]

    def as_dict(self) -> dict:
        return {"steps": [s.as_dict() for s in self.steps],
                "orders": self.orders(),
                "truncated": self.truncated,
                "terminated": self.terminated}


def aut_tower(group, max_steps: int = 6, max_order: int = 200_000,
              cap: int | None = None) -> TowerResult:
    """Iterate the automorphism group until it stabilizes or grows too far.

    The first step records the starting group.  The tower terminates when a
    group with trivial center equals its own automorphism group; if the next
    order would exceed ``max_order`` an order-only step (no fingerprint, no
    completeness flag) is appended and the result is marked truncated.
    """
    if isinstance(group, (GroupTable, PermutationGroup)):
        t = _as_table(group)
    else:
        from . import constructors as _cons
        t = _cons.build(group)
        if not isinstance(t, GroupTable):
            t = _as_table(t)
    steps: list[TowerStep] = []
    truncated = False
    terminated = False
    for _ in range(max_steps):
        res = automorphism_group(t)
        comp = t.center_order() == 1 and res.order() == t.n
        steps.append(TowerStep(t.n, t.fingerprint().as_dict(), comp))
        if comp:
            terminated = True
            break
        if res.order() > max_order:
            steps.append(TowerStep(res.order(), None, None))
            truncated = True
            break
        t = res.realize(cap=cap)
    else:
        truncated = True
    return TowerResult(steps, truncated, terminated)


def identify(result, p: int | None = None) -> str | None:
    """Match an automorphism group against the catalog of known structures.

    ``result`` may be an AutGroupResult (its realized table is used) or any
    group.  Returns the catalog label, also stored on the result when one is
    given, or None when nothing matches.
    """
    from . import constructors as _cons
    if isinstance(result, AutGroupResult):
        target = result.realize()
    else:
        target = _as_table(result)
    label = None
    for name, build in _cons.identification_catalog(p):
        candidate = build()
        if candidate is None or candidate.n != target.n:
            continue
        if candidate.fingerprint().as_dict() != target.fingerprint().as_dict():
            continue
        if is_isomorphic(target, candidate) is not None:
            label = name
            break
    if isinstance(result, AutGroupResult):
        result.identification = label
    return label
