"""Permutations and permutation groups on 0-based points.

Composition is applied left to right everywhere: ``(a * b)(i) == b(a(i))``.
Conjugation ``a ** b`` therefore means ``b.inverse() * a * b``, which matches
the relator conventions used by the word evaluator in :mod:`autkit.fp`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class PermError(ValueError):
    pass


class Permutation:
    """Immutable bijection of {0, ..., n-1}, stored as its tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        t = tuple(images)
        seen = [False] * len(t)
        for x in t:
            if not isinstance(x, int) or x < 0 or x >= len(t) or seen[x]:
                raise PermError(f"not a permutation of 0..{len(t) - 1}: {t!r}")
            seen[x] = True
        self.images = t

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Permutation":
        # internal fast path: caller guarantees a valid image tuple
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for i, pt in enumerate(cyc):
                nxt = cyc[(i + 1) % len(cyc)]
                if pt >= degree or images[pt] != pt:
                    raise PermError(f"bad cycle list at point {pt}")
                images[pt] = nxt
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Left-to-right product: apply self first, then other."""
        o = other.images
        if len(o) != len(self.images):
            raise PermError("degree mismatch in product")
        return Permutation._raw(tuple(o[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._raw(tuple(inv))

    def __pow__(self, n) -> "Permutation":
        if isinstance(n, Permutation):
            return self.conj(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self, other: "Permutation") -> "Permutation":
        """self conjugated by other: other^-1 * self * other."""
        return other.inverse() * self * other

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        n = 1
        for cyc in self.cycles():
            n = math.lcm(n, len(cyc))
        return n

    def cycle_string(self, base: int = 0) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(pt + base) for pt in c) + ")" for c in cycs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


def parse_cycles(text: str, degree: int, base: int = 1) -> Permutation:
    """Parse cycle notation like ``(1,2,3)(4,5)`` (1-based by default)."""
    text = text.replace(" ", "")
    if text in ("", "()", "1"):
        return Permutation.identity(degree)
    if not (text.startswith("(") and text.endswith(")")):
        raise PermError(f"bad cycle text: {text!r}")
    cycles = []
    for part in text[1:-1].split(")("):
        pts = [int(tok) - base for tok in part.split(",")]
        cycles.append(pts)
    return Permutation.from_cycles(degree, cycles)


class _Level:
    __slots__ = ("point", "gens", "tree")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Permutation] = []
        # Schreier vector: orbit point -> (generator, previous point)
        self.tree: dict[int, tuple[Permutation, int] | None] = {point: None}


class StabilizerChain:
    """Deterministic Schreier-Sims base and strong generating set.

    Suitable for ordinary permutation groups of moderate degree.  The large
    automorphism searches in :mod:`autkit.aut` use their own orbit-stabilizer
    bookkeeping instead of this class.
    """

    def __init__(self, degree: int, base_hint: Sequence[int] = ()):
        self.degree = degree
        self.base_hint = tuple(base_hint)
        self.levels: list[_Level] = []

    @classmethod
    def build(
        cls,
        generators: Sequence[Permutation],
        degree: int | None = None,
        base_hint: Sequence[int] = (),
    ) -> "StabilizerChain":
        if degree is None:
            if not generators:
                raise PermError("need a degree for the trivial group")
            degree = generators[0].degree
        chain = cls(degree, base_hint)
        for g in generators:
            if g.degree != degree:
                raise PermError("mixed degrees in generating set")
            chain.add_generator(g)
        return chain

    def _first_moved(self, p: Permutation) -> int:
        for hint in self.base_hint:
            if p.images[hint] != hint:
                return hint
        for i, x in enumerate(p.images):
            if x != i:
                return i
        raise PermError("identity has no moved point")

    def _level_gens(self, idx: int) -> list[Permutation]:
        # strong generators valid at level idx: everything assigned at this
        # level or deeper fixes all earlier base points
        out: list[Permutation] = []
        for level in self.levels[idx:]:
            out.extend(level.gens)
        return out

    def _orbit_rebuild(self, idx: int) -> None:
        level = self.levels[idx]
        gens = self._level_gens(idx)
        tree: dict[int, tuple[Permutation, int] | None] = {level.point: None}
        frontier = [level.point]
        while frontier:
            nxt = []
            for pt in frontier:
                for g in gens:
                    img = g.images[pt]
                    if img not in tree:
                        tree[img] = (g, pt)
                        nxt.append(img)
            frontier = nxt
        level.tree = tree

    def transversal(self, idx: int, point: int) -> Permutation:
        """Element u of level idx's group with u(base point) == point."""
        level = self.levels[idx]
        word = []
        pt = point
        while True:
            entry = level.tree[pt]
            if entry is None:
                break
            g, prev = entry
            word.append(g)
            pt = prev
        # point = g1(g2(...gk(base))) walking the word back to the base, so
        # under left-to-right products u = gk * ... * g1
        u = Permutation.identity(self.degree)
        for g in reversed(word):
            u = u * g
        return u

    def _sift(self, p: Permutation, start: int = 0) -> Permutation:
        for idx in range(start, len(self.levels)):
            level = self.levels[idx]
            img = p.images[level.point]
            if img == level.point:
                continue
            if img not in level.tree:
                return p
            u = self.transversal(idx, img)
            p = p * u.inverse()
        return p

    def sift(self, p: Permutation) -> Permutation:
        return self._sift(p)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return self._sift(p).is_identity()

    def add_generator(self, g: Permutation) -> bool:
        residue = self._sift(g)
        if residue.is_identity():
            return False
        self._add_at_proper_level(residue)
        self._close(0)
        return True

    def _add_at_proper_level(self, residue: Permutation) -> None:
        for idx, level in enumerate(self.levels):
            if residue.images[level.point] != level.point:
                level.gens.append(residue)
                self._orbit_rebuild(idx)
                return
        level = _Level(self._first_moved(residue))
        level.gens.append(residue)
        self.levels.append(level)
        self._orbit_rebuild(len(self.levels) - 1)

    def _close(self, idx: int = 0) -> None:
        # fixpoint: every Schreier generator of every level must sift to
        # identity against the rest of the chain; a new strong generator
        # extends the generator sets of all earlier levels too, so restart
        # the scan from the top whenever one is added
        while True:
            changed = False
            for i in range(len(self.levels)):
                self._orbit_rebuild(i)
                level = self.levels[i]
                gens_i = self._level_gens(i)
                for pt in sorted(level.tree):
                    u = self.transversal(i, pt)
                    for g in gens_i:
                        img = g.images[pt]
                        v = self.transversal(i, img)
                        schreier = u * g * v.inverse()
                        residue = self._sift(schreier, i + 1)
                        if not residue.is_identity():
                            self._add_at_proper_level(residue)
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break
            if not changed:
                return

    def order(self) -> int:
        n = 1
        for level in self.levels:
            n *= len(level.tree)
        return n

    def base(self) -> tuple[int, ...]:
        return tuple(level.point for level in self.levels)


@dataclass
class PermutationGroup:
    """A finitely generated permutation group with an optional cached order."""

    degree: int
    generators: tuple[Permutation, ...]
    gen_names: tuple[str, ...] | None = None
    cached_order: int | None = None
    _chain: StabilizerChain | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.generators = tuple(self.generators)
        for g in self.generators:
            if g.degree != self.degree:
                raise PermError("generator degree mismatch")
        if self.gen_names is not None:
            self.gen_names = tuple(self.gen_names)
            if len(self.gen_names) != len(self.generators):
                raise PermError("gen_names length mismatch")

    @classmethod
    def from_gens(cls, generators: Sequence[Permutation], names: Sequence[str] | None = None,
                  order: int | None = None) -> "PermutationGroup":
        if not generators:
            raise PermError("empty generating set; give at least the identity")
        return cls(generators[0].degree, tuple(generators),
                   tuple(names) if names else None, order)

    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain.build(self.generators, self.degree)
        return self._chain

    def order(self) -> int:
        if self.cached_order is None:
            self.cached_order = self.chain().order()
        return self.cached_order

    def contains(self, p: Permutation) -> bool:
        return self.chain().contains(p)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def named_gens(self) -> dict[str, Permutation]:
        if self.gen_names is None:
            names = tuple(chr(ord("a") + i) for i in range(len(self.generators)))
        else:
            names = self.gen_names
        return dict(zip(names, self.generators))

    def __iter__(self) -> Iterator[Permutation]:
        raise TypeError("use GroupTable.close() to enumerate elements")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Left-to-right composition; result(i) == b(a(i))."""
    return a * b


def direct_sum_perm(parts: Sequence[Permutation]) -> Permutation:
    """Permutation acting block-diagonally on the disjoint union of the parts."""
    images: list[int] = []
    offset = 0
    for p in parts:
        images.extend(x + offset for x in p.images)
        offset += p.degree
    return Permutation._raw(tuple(images))
