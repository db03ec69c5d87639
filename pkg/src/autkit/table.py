"""Multiplication tables for finite groups given by generating permutations.

The closure enumerates all elements breadth-first and afterwards works almost
entirely with integer indices: ``gen_mult[g][i]`` is the index of
``element[i] * generator[g]``.  Arbitrary products are evaluated by walking
the second factor's definition word through these arrays, so structural
computations (classes, center, derived series, quotients) never touch the
underlying permutations again.  Index 0 is always the identity.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .perm import Permutation, PermutationGroup

DEFAULT_CAP = 5000


class CapExceeded(RuntimeError):
    """Raised when a closure grows past the configured element cap."""


def default_cap() -> int:
    env = os.environ.get("AUTKIT_MAX_ELEMENTS")
    return int(env) if env else DEFAULT_CAP


def _as_image_array(gen, degree: int | None) -> np.ndarray:
    if isinstance(gen, Permutation):
        data = gen.images
    else:
        data = gen
    arr = np.asarray(data, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("generator must be a flat image sequence")
    if degree is not None and arr.shape[0] != degree:
        raise ValueError("generators act on different point sets")
    return arr


@dataclass(frozen=True)
class Fingerprint:
    """Cheap isomorphism invariants used to rule groups out quickly."""

    order: int
    num_classes: int
    center_order: int
    order_histogram: tuple[tuple[int, int], ...]
    class_size_histogram: tuple[tuple[int, int], ...]
    derived_orders: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "numClasses": self.num_classes,
            "centerOrder": self.center_order,
            "orderHistogram": {str(k): v for k, v in self.order_histogram},
            "classSizeHistogram": {str(k): v for k, v in self.class_size_histogram},
            "derivedOrders": list(self.derived_orders),
        }


class GroupTable:
    """Closed multiplication structure of a finite permutation group."""

    def __init__(self, degree: int, n: int, gens_arr: list[np.ndarray],
                 gen_names: tuple[str, ...], gen_mult: list[np.ndarray],
                 parent: np.ndarray, via: np.ndarray,
                 elem_bytes: list[bytes] | None, index: dict | None,
                 dtype) -> None:
        self.degree = degree
        self.n = n
        self.k = len(gens_arr)
        self.gens_arr = gens_arr
        self.gen_names = gen_names
        self.gen_mult = gen_mult
        self.parent = parent
        self.via = via
        self._elem_bytes = elem_bytes
        self._index = index
        self._dtype = dtype
        self._gm_lists: list[list[int]] | None = None
        self._inv: np.ndarray | None = None
        self._depth: np.ndarray | None = None
        self._classes: list[np.ndarray] | None = None
        self._class_of: np.ndarray | None = None
        self._conj_cache: dict[int, np.ndarray] = {}
        self._gen_conj: list[np.ndarray] | None = None
        self._order_cache: dict[int, int] = {}
        self._order_hist: dict[int, int] | None = None
        self._fingerprint: Fingerprint | None = None
        self._class_labels: list | None = None
        self._relators: list[tuple[tuple[int, int], ...]] | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def close(cls, generators: Sequence, names: Sequence[str] | None = None,
              cap: int | None = None, keep_elements: bool | None = None
              ) -> "GroupTable":
        """Enumerate the group generated by the given permutations.

        ``cap`` bounds the element count (``None`` uses the default, which can
        be overridden via the ``AUTKIT_MAX_ELEMENTS`` environment variable; a
        non-positive value disables the bound).  ``keep_elements`` controls
        whether the raw element images stay available for ``perm``/``index_of``
        lookups; by default they are dropped only for very large closures.
        """
        gens = [_as_image_array(g, None) for g in generators]
        if gens:
            degree = gens[0].shape[0]
            for g in gens:
                _as_image_array(g, degree)
        else:
            degree = 1
        capval = default_cap() if cap is None else (cap if cap > 0 else None)
        dt = np.uint16 if degree <= 0xFFFF else np.uint32
        gens_t = [g.astype(dt) for g in gens]
        ident = np.arange(degree, dtype=dt)
        elems: list[np.ndarray] = [ident]
        keys: list[bytes] = [ident.tobytes()]
        index: dict[bytes, int] = {keys[0]: 0}
        parent = [-1]
        via = [-1]
        gen_mult: list[list[int]] = [[] for _ in gens_t]
        i = 0
        while i < len(elems):
            ei = elems[i]
            for g, garr in enumerate(gens_t):
                prod = garr[ei]
                key = prod.tobytes()
                j = index.get(key)
                if j is None:
                    j = len(elems)
                    if capval is not None and j >= capval:
                        raise CapExceeded(
                            f"closure exceeded cap of {capval} elements")
                    index[key] = j
                    elems.append(prod)
                    keys.append(key)
                    parent.append(i)
                    via.append(g)
                gen_mult[g].append(j)
            i += 1
        n = len(elems)
        if keep_elements is None:
            keep_elements = n * degree * ident.itemsize <= 32_000_000
        if names is None:
            names = tuple(_default_names(len(gens)))
        else:
            names = tuple(names)
            if len(names) != len(gens):
                raise ValueError("one name per generator required")
        table = cls(
            degree=degree, n=n, gens_arr=gens_t, gen_names=names,
            gen_mult=[np.asarray(col, dtype=np.int32) for col in gen_mult],
            parent=np.asarray(parent, dtype=np.int32),
            via=np.asarray(via, dtype=np.int32),
            elem_bytes=keys if keep_elements else None,
            index=index if keep_elements else None,
            dtype=dt)
        return table

    @classmethod
    def from_perm_group(cls, group: PermutationGroup, cap: int | None = None,
                        keep_elements: bool | None = None) -> "GroupTable":
        t = cls.close(list(group.generators), names=group.gen_names,
                      cap=cap, keep_elements=keep_elements)
        if group.cached_order is not None and group.cached_order != t.n:
            raise ValueError(
                f"closure found {t.n} elements, expected {group.cached_order}")
        return t

    # -- basic index arithmetic -------------------------------------------

    def _lists(self) -> list[list[int]]:
        if self._gm_lists is None:
            self._gm_lists = [col.tolist() for col in self.gen_mult]
        return self._gm_lists

    def word(self, i: int) -> tuple[int, ...]:
        """Generator indices whose left-to-right product is element ``i``."""
        out = []
        via, parent = self.via, self.parent
        while i > 0:
            out.append(int(via[i]))
            i = int(parent[i])
        out.reverse()
        return tuple(out)

    def mul(self, i: int, j: int) -> int:
        gm = self._lists()
        x = i
        via, parent = self.via, self.parent
        w = []
        while j > 0:
            w.append(int(via[j]))
            j = int(parent[j])
        for v in reversed(w):
            x = gm[v][x]
        return x

    def inverse_array(self) -> np.ndarray:
        if self._inv is None:
            gm = self._lists()
            n = self.n
            gen_idx = [gm[g][0] for g in range(self.k)]
            ginv_idx = []
            for g in range(self.k):
                col = gm[g]
                x, prev = gen_idx[g], 0
                while x != 0:
                    prev = x
                    x = col[x]
                ginv_idx.append(prev)
            via = self.via.tolist()
            parent = self.parent.tolist()
            linv = []
            for g in range(self.k):
                arr = [0] * n
                arr[0] = ginv_idx[g]
                for j in range(1, n):
                    arr[j] = gm[via[j]][arr[parent[j]]]
                linv.append(arr)
            inv = [0] * n
            for j in range(1, n):
                inv[j] = linv[via[j]][inv[parent[j]]]
            self._inv = np.asarray(inv, dtype=np.int32)
        return self._inv

    def inverse(self, i: int) -> int:
        return int(self.inverse_array()[i])

    def power(self, i: int, m: int) -> int:
        if m < 0:
            return self.power(self.inverse(i), -m)
        result = 0
        base = i
        while m:
            if m & 1:
                result = self.mul(result, base)
            m >>= 1
            if m:
                base = self.mul(base, base)
        return result

    def order_of(self, i: int) -> int:
        cached = self._order_cache.get(i)
        if cached is not None:
            return cached
        gm = self._lists()
        w = self.word(i)
        x, m = i, 1
        while x != 0:
            for v in w:
                x = gm[v][x]
            m += 1
        order = 1 if i == 0 else m
        self._order_cache[i] = order
        return order

    def depth_array(self) -> np.ndarray:
        if self._depth is None:
            depth = np.zeros(self.n, dtype=np.int32)
            parent = self.parent
            for j in range(1, self.n):
                depth[j] = depth[parent[j]] + 1
            self._depth = depth
        return self._depth

    # -- whole-column actions ---------------------------------------------

    def right_action(self, j: int) -> np.ndarray:
        """Array ``R`` with ``R[i] = index(element[i] * element[j])``."""
        x = np.arange(self.n, dtype=np.int32)
        for v in self.word(j):
            x = self.gen_mult[v][x]
        return x

    def left_action(self, i: int) -> np.ndarray:
        """Array ``L`` with ``L[j] = index(element[i] * element[j])``."""
        gm = self._lists()
        via = self.via.tolist()
        parent = self.parent.tolist()
        arr = [0] * self.n
        arr[0] = i
        for j in range(1, self.n):
            arr[j] = gm[via[j]][arr[parent[j]]]
        return np.asarray(arr, dtype=np.int32)

    def conj_array(self, i: int) -> np.ndarray:
        """Array ``C`` with ``C[j] = index(element[i]^-1 * element[j] * element[i])``."""
        cached = self._conj_cache.get(i)
        if cached is None:
            left = self.left_action(self.inverse(i))
            cached = left[self.right_action(i)]
            self._conj_cache[i] = cached
        return cached

    def generator_conj_arrays(self) -> list[np.ndarray]:
        if self._gen_conj is None:
            gm = self._lists()
            self._gen_conj = [self.conj_array(gm[g][0]) for g in range(self.k)]
        return self._gen_conj

    # -- structure ---------------------------------------------------------

    def conjugacy_classes(self) -> list[np.ndarray]:
        if self._classes is None:
            conj = [c.tolist() for c in self.generator_conj_arrays()]
            class_of = [-1] * self.n
            classes = []
            for i in range(self.n):
                if class_of[i] >= 0:
                    continue
                cid = len(classes)
                members = [i]
                class_of[i] = cid
                stack = [i]
                while stack:
                    x = stack.pop()
                    for c in conj:
                        y = c[x]
                        if class_of[y] < 0:
                            class_of[y] = cid
                            members.append(y)
                            stack.append(y)
                classes.append(np.asarray(sorted(members), dtype=np.int32))
            self._classes = classes
            self._class_of = np.asarray(class_of, dtype=np.int32)
        return self._classes

    def class_of_array(self) -> np.ndarray:
        self.conjugacy_classes()
        return self._class_of

    def num_classes(self) -> int:
        return len(self.conjugacy_classes())

    def center(self) -> np.ndarray:
        mask = np.ones(self.n, dtype=bool)
        idx = np.arange(self.n, dtype=np.int32)
        for c in self.generator_conj_arrays():
            mask &= c == idx
        return np.nonzero(mask)[0].astype(np.int32)

    def center_order(self) -> int:
        return int(self.center().shape[0])

    def is_abelian(self) -> bool:
        return self.center_order() == self.n

    def order_histogram(self) -> dict[int, int]:
        if self._order_hist is None:
            hist: dict[int, int] = {}
            for members in self.conjugacy_classes():
                o = self.order_of(int(members[0]))
                hist[o] = hist.get(o, 0) + len(members)
            self._order_hist = hist
        return dict(self._order_hist)

    def exponent(self) -> int:
        exp = 1
        for o in self.order_histogram():
            exp = exp * o // gcd(exp, o)
        return exp

    def element_orders(self) -> np.ndarray:
        """Order of every element, via class representatives."""
        orders = np.zeros(self.n, dtype=np.int32)
        for members in self.conjugacy_classes():
            orders[members] = self.order_of(int(members[0]))
        return orders

    def subgroup_closure(self, gen_indices: Iterable[int]) -> np.ndarray:
        """Sorted indices of the subgroup generated by the given elements."""
        gm = self._lists()
        words = []
        for t in set(int(x) for x in gen_indices):
            if t != 0:
                words.append(self.word(t))
        member = bytearray(self.n)
        member[0] = 1
        queue = [0]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for w in words:
                y = x
                for v in w:
                    y = gm[v][y]
                if not member[y]:
                    member[y] = 1
                    queue.append(y)
        return np.asarray(sorted(queue), dtype=np.int32)

    def _conj_orbit(self, seed: Iterable[int],
                    conj_arrays: list[np.ndarray]) -> list[int]:
        conj = [c.tolist() for c in conj_arrays]
        seen = set(int(x) for x in seed)
        stack = list(seen)
        while stack:
            x = stack.pop()
            for c in conj:
                y = c[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return sorted(seen)

    def normal_closure(self, seed: Iterable[int]) -> np.ndarray:
        """Smallest normal subgroup containing the given elements."""
        closed_seed = self._conj_orbit(seed, self.generator_conj_arrays())
        # a conjugation-closed generating set generates a normal subgroup
        sub = {0}
        gens: list[int] = []
        for x in closed_seed:
            if x not in sub:
                gens.append(x)
                sub = set(int(v) for v in self.subgroup_closure(gens))
        return np.asarray(sorted(sub), dtype=np.int32)

    def commutator_index(self, i: int, j: int) -> int:
        inv = self.inverse_array()
        return self.mul(self.mul(int(inv[i]), int(inv[j])), self.mul(i, j))

    def derived_subgroup(self) -> np.ndarray:
        gm = self._lists()
        gen_idx = [gm[g][0] for g in range(self.k)]
        comms = [self.commutator_index(a, b)
                 for ai, a in enumerate(gen_idx) for b in gen_idx[ai + 1:]]
        return self.normal_closure(comms)

    def derived_series(self) -> list[np.ndarray]:
        """Subgroup index sets ``[G, G', G'', ...]`` until stabilization."""
        series = [np.arange(self.n, dtype=np.int32)]
        gm = self._lists()
        current_gens = [gm[g][0] for g in range(self.k)]
        while True:
            comms = [self.commutator_index(a, b)
                     for ai, a in enumerate(current_gens)
                     for b in current_gens[ai + 1:]]
            conj_arrays = [self.conj_array(g) for g in current_gens]
            closed = self._conj_orbit([c for c in comms if c != 0], conj_arrays)
            sub = {0}
            gens: list[int] = []
            for x in closed:
                if x not in sub:
                    gens.append(x)
                    sub = set(int(v) for v in self.subgroup_closure(gens))
            if len(sub) == len(series[-1]):
                break
            series.append(np.asarray(sorted(sub), dtype=np.int32))
            if len(sub) == 1:
                break
            current_gens = gens if gens else [0]
        return series

    def fingerprint(self) -> Fingerprint:
        if self._fingerprint is None:
            classes = self.conjugacy_classes()
            size_hist: dict[int, int] = {}
            for members in classes:
                size_hist[len(members)] = size_hist.get(len(members), 0) + 1
            self._fingerprint = Fingerprint(
                order=self.n,
                num_classes=len(classes),
                center_order=self.center_order(),
                order_histogram=tuple(sorted(self.order_histogram().items())),
                class_size_histogram=tuple(sorted(size_hist.items())),
                derived_orders=tuple(len(s) for s in self.derived_series()),
            )
        return self._fingerprint

    def class_labels(self):
        """Canonical per-class labels, comparable across groups.

        The label starts from (element order, class size) and is refined twice
        by the labels of power classes, which is enough to separate candidate
        images in every search this package performs.
        """
        if self._class_labels is None:
            classes = self.conjugacy_classes()
            class_of = self.class_of_array()
            reps = [int(members[0]) for members in classes]
            labels = [(self.order_of(r), len(classes[c]))
                      for c, r in enumerate(reps)]
            for _ in range(2):
                refined = []
                for c, r in enumerate(reps):
                    o = labels[c][0] if isinstance(labels[c][0], int) else \
                        self.order_of(r)
                    powers = tuple(
                        labels[int(class_of[self.power(r, d)])]
                        for d in range(2, o) if o % d == 0)
                    refined.append((labels[c], powers))
                labels = refined
            self._class_labels = labels
        return self._class_labels

    def element_labels(self) -> list:
        labels = self.class_labels()
        class_of = self.class_of_array()
        return [labels[int(class_of[i])] for i in range(self.n)]

    # -- relators from the closure tree -----------------------------------

    def cayley_relators(self, limit: int = 80) -> list[tuple[tuple[int, int], ...]]:
        """Short words over the generators that are trivial in the group.

        Letters are (generator index, exponent) pairs.  Includes generator
        order relators, pairwise product order relators and the shortest
        non-tree closure relators, sorted by length.  Relators are cyclically
        reduced and deduplicated up to rotation and inversion, so conjugated
        copies of one relation do not crowd out distinct ones.
        """
        if self._relators is not None and len(self._relators) >= min(limit, 1):
            return self._relators[:limit] if limit else self._relators
        gm = self._lists()
        gen_idx = [gm[g][0] for g in range(self.k)]
        rels: list[tuple[int, tuple[tuple[int, int], ...]]] = []
        seen = set()

        def push(letters):
            letters = _cyclic_reduce(letters)
            if not letters:
                return
            key = _cyclic_key(letters)
            if key not in seen:
                seen.add(key)
                rels.append((sum(abs(e) for _, e in letters), letters))

        for g, gi in enumerate(gen_idx):
            push(((g, self.order_of(gi)),))
        for a in range(self.k):
            for b in range(self.k):
                if a != b:
                    prod = gm[b][gen_idx[a]]
                    o = self.order_of(prod)
                    push(((a, 1), (b, 1)) * o)
        depth = self.depth_array()
        parent, via = self.parent, self.via
        candidates = []
        for g in range(self.k):
            col = self.gen_mult[g]
            for i in range(self.n):
                j = int(col[i])
                if j > 0 and int(parent[j]) == i and int(via[j]) == g:
                    continue
                candidates.append((int(depth[i]) + 1 + int(depth[j]), i, g, j))
        candidates.sort()
        for _, i, g, j in candidates[: 8 * limit]:
            letters = [(v, 1) for v in self.word(i)]
            letters.append((g, 1))
            letters.extend((v, -1) for v in reversed(self.word(j)))
            merged: list[list[int]] = []
            for sym, e in letters:
                if merged and merged[-1][0] == sym:
                    merged[-1][1] += e
                    if merged[-1][1] == 0:
                        merged.pop()
                else:
                    merged.append([sym, e])
            push(tuple((s, e) for s, e in merged))
        rels.sort(key=lambda t: t[0])
        self._relators = [letters for _, letters in rels[:limit]]
        return self._relators

    # -- conversions -------------------------------------------------------

    def perm(self, i: int) -> Permutation:
        if self._elem_bytes is not None:
            arr = np.frombuffer(self._elem_bytes[i], dtype=self._dtype)
            return Permutation._raw(tuple(int(x) for x in arr))
        arr = np.arange(self.degree, dtype=self._dtype)
        for v in self.word(i):
            arr = self.gens_arr[v][arr]
        return Permutation._raw(tuple(int(x) for x in arr))

    def index_of(self, perm: Permutation) -> int:
        if self._index is None:
            raise RuntimeError(
                "element images were dropped for this table; rebuild with "
                "keep_elements=True to look up permutations")
        key = np.asarray(perm.images, dtype=self._dtype).tobytes()
        try:
            return self._index[key]
        except KeyError:
            raise ValueError("permutation is not an element of this group") from None

    def to_perm_group(self) -> PermutationGroup:
        gens = tuple(Permutation._raw(tuple(int(x) for x in g))
                     for g in self.gens_arr)
        return PermutationGroup(self.degree, gens, self.gen_names,
                                cached_order=self.n)

    def generator_indices(self) -> list[int]:
        gm = self._lists()
        return [gm[g][0] for g in range(self.k)]

    # -- quotients ---------------------------------------------------------

    def is_normal(self, indices: Iterable[int]) -> bool:
        mask = np.zeros(self.n, dtype=bool)
        idx = np.asarray(sorted(int(x) for x in indices), dtype=np.int32)
        mask[idx] = True
        return all(bool(mask[c[idx]].all())
                   for c in self.generator_conj_arrays())

    def quotient(self, normal_indices: Iterable[int],
                 cap: int | None = None) -> "GroupTable":
        """Quotient by a normal subgroup, realized on its coset space."""
        nset = sorted(int(x) for x in normal_indices)
        if not nset or nset[0] != 0:
            raise ValueError("normal subgroup must contain the identity")
        if self.n % len(nset):
            raise ValueError("subgroup size does not divide group order")
        if not self.is_normal(nset):
            raise ValueError("subgroup is not normal")
        coset_of = [-1] * self.n
        reps = []
        nwords = [self.word(t) for t in nset if t != 0]
        gm = self._lists()
        for i in range(self.n):
            if coset_of[i] >= 0:
                continue
            c = len(reps)
            reps.append(i)
            coset_of[i] = c
            for w in nwords:
                y = i
                for v in w:
                    y = gm[v][y]
                coset_of[y] = c
        m = len(reps)
        qgens = []
        for g in range(self.k):
            col = gm[g]
            qgens.append(np.asarray([coset_of[col[r]] for r in reps],
                                    dtype=np.int64))
        return GroupTable.close(qgens, names=self.gen_names,
                                cap=cap if cap is not None else max(m, 1))

    def __repr__(self) -> str:
        return (f"GroupTable(order={self.n}, degree={self.degree}, "
                f"gens={list(self.gen_names)})")


def _default_names(k: int) -> list[str]:
    base = "abcdefghijklmnopqrstuvwxyz"
    if k <= len(base):
        return [base[i] for i in range(k)]
    return [f"g{i}" for i in range(k)]


def _cyclic_reduce(letters) -> tuple[tuple[int, int], ...]:
    """Strip matching outer letters; a conjugate of a relator is a relator."""
    w = list(letters)
    while len(w) > 1 and w[0][0] == w[-1][0]:
        sym = w[0][0]
        e = w[0][1] + w[-1][1]
        w = w[1:-1]
        if e:
            if w and w[0][0] == sym:
                e += w[0][1]
                w = w[1:]
                if not e:
                    continue
            w.insert(0, (sym, e))
            break
    return tuple(w)


def _cyclic_key(letters) -> tuple:
    """Canonical form of a cyclic word up to rotation and inversion."""
    variants = []
    for w in (tuple(letters),
              tuple((s, -e) for s, e in reversed(letters))):
        for r in range(len(w)):
            variants.append(w[r:] + w[:r])
    return min(variants)
