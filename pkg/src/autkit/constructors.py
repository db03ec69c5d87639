"""Group constructors: the order-16 catalog, products, holomorphs, wreath
and central products, and the order 16p / 16p^2 semidirect families.

Naming conventions used throughout the toolkit (documented once here):
``D_n`` is the dihedral group of order 2n, ``Q_n`` the dicyclic group of
order 4n, ``QD_k`` the quasidihedral group of order 2k.  So ``D8``, ``QD8``
and ``Q4`` all have order 16.  Every constructor returns a
PermutationGroup with a deterministic generator order and, where cheap to
know, ``cached_order`` set.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from . import fp, modsolve
from .matgroups import MatGF, MatrixGroup, gl_order
from .perm import Permutation, PermutationGroup
from .table import GroupTable


class BuildError(ValueError):
    pass


# -- structural specs ------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    """Base class for structural group descriptions; see the subclasses."""


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    n: int


@dataclass(frozen=True)
class ElemAbelian(GroupSpec):
    p: int
    k: int


@dataclass(frozen=True)
class DirectProduct(GroupSpec):
    factors: tuple

    def __init__(self, factors):
        object.__setattr__(self, "factors", tuple(factors))


@dataclass(frozen=True)
class SemidirectByMatrices(GroupSpec):
    """Normal p-part acted on by a 2-group through matrices.

    p_rank selects the p-part: "CpxCp" (2x2 matrices mod p), "Cp" (1x1 mod
    p) or "Cp2" (cyclic of order p^2, 1x1 unit matrices mod p^2).  The
    action tuple carries one matrix per 2-group generator.
    """

    p: int
    p_rank: str
    two_group: GroupSpec
    action: tuple

    def __init__(self, p, p_rank, two_group, action):
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "p_rank", p_rank)
        object.__setattr__(self, "two_group", two_group)
        object.__setattr__(self, "action", tuple(action))


@dataclass(frozen=True)
class Wreath(GroupSpec):
    base: GroupSpec  # top group is C2


@dataclass(frozen=True)
class CentralProduct(GroupSpec):
    g: GroupSpec
    h: GroupSpec
    zg: str
    zh: str


@dataclass(frozen=True)
class Holomorph(GroupSpec):
    base: GroupSpec


@dataclass(frozen=True)
class AutGroup(GroupSpec):
    """The automorphism group of the base group, engine-realized."""
    base: GroupSpec


@dataclass(frozen=True)
class Order16(GroupSpec):
    name: str


@dataclass(frozen=True)
class Dihedral(GroupSpec):
    order: int


@dataclass(frozen=True)
class Quasidihedral(GroupSpec):
    order: int


@dataclass(frozen=True)
class Dicyclic(GroupSpec):
    order: int


@dataclass(frozen=True)
class FromPresentation(GroupSpec):
    pres: fp.Presentation


# -- the order-16 catalog --------------------------------------------------

ORDER16_NAMES = (
    "C16", "C8xC2", "C4xC4", "C4xC2xC2", "E16", "D4xC2", "Q2xC2",
    "C4YQ2", "G44_22", "C4sC4", "M16", "D8", "QD8", "Q4",
)

ORDER16_PRESENTATIONS = {
    "C16": "a | a^16=1",
    "C8xC2": "a,b | a^8=b^2=(a,b)=1",
    "C4xC4": "a,b | a^4=b^4=(a,b)=1",
    "C4xC2xC2": "a,b,c | a^4=b^2=c^2=(a,b)=(a,c)=(b,c)=1",
    "E16": "a,b,c,d | a^2=b^2=c^2=d^2=(a,b)=(a,c)=(a,d)=(b,c)=(b,d)=(c,d)=1",
    "D4xC2": "a,b,c | a^4=b^2=a^b*a=c^2=(a,c)=(b,c)=1",
    "Q2xC2": "a,b,c | a^4=b^4=a^2*b^2=a^b*a=c^2=(a,c)=(b,c)=1",
    "C4YQ2": "a,b,c | a^2=b^2=c^4=a^b*c^2*a=a^c*a=b^c*b=1",
    "G44_22": "a,b,c | a^4=b^2=c^2=(a,b)=(b,c)=a^c*a^-1*b=1",
    "C4sC4": "a,b | a^4=b^4=a^b*a=1",
    "M16": "a,b | a^8=b^2=a^b*a^-5=1",
    "D8": "a,b | a^8=b^2=a^b*a=1",
    "QD8": "a,b | a^8=b^2=a^b*a^-3=1",
    "Q4": "a,b | a^8=b^4=a^4*b^-2=a^b*a=1",
}


def order16_presentation(name: str) -> fp.Presentation:
    try:
        text = ORDER16_PRESENTATIONS[name]
    except KeyError:
        raise BuildError(f"unknown order-16 group name {name!r}") from None
    return fp.Presentation.parse(text)


# -- elementary builders ---------------------------------------------------

def _cyclic(n: int) -> PermutationGroup:
    if n < 1:
        raise BuildError("cyclic order must be positive")
    if n == 1:
        return PermutationGroup(1, (Permutation.identity(1),), ("a",),
                                cached_order=1)
    images = [(i + 1) % n for i in range(n)]
    return PermutationGroup(n, (Permutation(images),), ("a",), cached_order=n)


def _elemab(p: int, k: int) -> PermutationGroup:
    if k < 1:
        raise BuildError("rank must be positive")
    gens = []
    for block in range(k):
        images = list(range(p * k))
        for i in range(p):
            images[block * p + i] = block * p + (i + 1) % p
        gens.append(Permutation(images))
    names = tuple(string.ascii_lowercase[:k])
    return PermutationGroup(p * k, tuple(gens), names, cached_order=p ** k)


def _shift(perm: Permutation, offset: int, degree: int) -> Permutation:
    images = list(range(degree))
    for i, img in enumerate(perm.images):
        images[offset + i] = offset + img
    return Permutation(images)


def _direct_product(specs) -> PermutationGroup:
    parts = [build(s) for s in specs]
    if not parts:
        raise BuildError("empty direct product")
    degree = sum(g.degree for g in parts)
    gens, offset = [], 0
    order = 1
    for g in parts:
        for perm in g.generators:
            gens.append(_shift(perm, offset, degree))
        offset += g.degree
        order *= group_order(g)
    names = tuple(string.ascii_lowercase[i] for i in range(len(gens)))
    return PermutationGroup(degree, tuple(gens), names, cached_order=order)


def _dihedral(order: int) -> PermutationGroup:
    if order < 2 or order % 2:
        raise BuildError("dihedral order must be even and at least 2")
    n = order // 2
    if n == 1:
        return _cyclic(2)
    if n == 2:
        return _elemab(2, 2)
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(n - i) % n for i in range(n)])
    return PermutationGroup(n, (rot, ref), ("a", "b"), cached_order=order)


def _quasidihedral(order: int) -> PermutationGroup:
    # order 2^k with k >= 4; a^x = b^2 = a^b * a^{-y} = 1, y = x/2 - 1
    if order < 16 or order & (order - 1):
        raise BuildError("quasidihedral order must be a power of two >= 16")
    x = order // 2
    y = x // 2 - 1
    a = Permutation([(i + 1) % x for i in range(x)])
    b = Permutation([(y * i) % x for i in range(x)])
    return PermutationGroup(x, (a, b), ("a", "b"), cached_order=order)


def _dicyclic(order: int) -> PermutationGroup:
    # order 4n: a^{2n} = 1, b^2 = a^n, a^b = a^{-1}
    if order < 4 or order % 4:
        raise BuildError("dicyclic order must be a multiple of 4")
    n = order // 4
    pres = fp.Presentation.parse(
        f"a,b | a^{2 * n} ; b^2*a^-{n} ; a^b*a")
    return fp.regular_rep(pres)


def _order16(name: str) -> PermutationGroup:
    return fp.regular_rep(order16_presentation(name))


def _from_presentation(pres: fp.Presentation) -> PermutationGroup:
    return fp.regular_rep(pres)


def _wreath(base_spec: GroupSpec) -> PermutationGroup:
    base = build(base_spec)
    d = base.degree
    degree = 2 * d
    gens = [_shift(perm, 0, degree) for perm in base.generators]
    swap = Permutation([(i + d) % degree for i in range(degree)])
    gens.append(swap)
    names = list(base.gen_names)
    swap_name = next(c for c in ("t", "u", "v", "w") if c not in names)
    order = 2 * group_order(base) ** 2
    return PermutationGroup(degree, tuple(gens), tuple(names) + (swap_name,),
                            cached_order=order)


def _central_product(spec: CentralProduct) -> PermutationGroup:
    g, h = build(spec.g), build(spec.h)
    zg = fp.evaluate_word(spec.zg, dict(zip(g.gen_names, g.generators)))
    zh = fp.evaluate_word(spec.zh, dict(zip(h.gen_names, h.generators)))
    degree = g.degree + h.degree
    prod_gens = [_shift(p, 0, degree) for p in g.generators]
    prod_gens += [_shift(p, g.degree, degree) for p in h.generators]
    total = group_order(g) * group_order(h)
    table = GroupTable.close(prod_gens, cap=total, keep_elements=True)
    # identify zg with zh: kill the diagonal element (zg, zh^{-1})
    diag = Permutation(tuple(zg.images) +
                       tuple(_shift(zh.inverse(), 0, h.degree).images[i] + g.degree
                             for i in range(h.degree)))
    kernel = table.subgroup_closure([table.index_of(diag)])
    central = set(int(i) for i in table.center())
    if not set(int(i) for i in kernel) <= central:
        raise BuildError("identified subgroup is not central")
    og = GroupTable.close([zg]).n
    oh = GroupTable.close([zh]).n
    if og != oh or kernel.size != og:
        raise BuildError("identified subgroups are not isomorphic")
    quot = table.quotient(kernel)
    out = quot.to_perm_group()
    out.cached_order = total // og
    return out


def _holomorph(base_spec: GroupSpec) -> PermutationGroup:
    from . import aut

    base = build(base_spec)
    tb = GroupTable.from_perm_group(base, cap=0, keep_elements=True)
    if tb.n == 1:
        return PermutationGroup(1, (Permutation.identity(1),), ("a",),
                                cached_order=1)
    res = aut.automorphism_group(tb)
    gens = [Permutation(tb.right_action(i).tolist())
            for i in tb.generator_indices()]
    names = list(tb.gen_names)
    for i, perm in enumerate(res.group.generators):
        gens.append(perm)
        names.append(f"A{i}")
    return PermutationGroup(tb.n, tuple(gens), tuple(names),
                            cached_order=tb.n * res.order())


def _aut_group(base_spec: GroupSpec) -> PermutationGroup:
    from . import aut

    tb = build_table(base_spec, cap=0, keep_elements=True)
    res = aut.automorphism_group(tb)
    names = tuple(f"A{i}" for i in range(len(res.group.generators)))
    return PermutationGroup(tb.n, tuple(res.group.generators), names,
                            cached_order=res.order())


# -- semidirect products by matrices ---------------------------------------

def _element_matrices(t: GroupTable, gen_mats: list) -> list:
    """Matrix image of every element, or raise when not a homomorphism."""
    mats = [None] * t.n
    mats[0] = _identity_like(gen_mats[0])
    order = np.argsort(t.depth_array(), kind="stable")
    lists = [t.gen_mult[g] for g in range(t.k)]
    for i in order:
        i = int(i)
        if mats[i] is None:
            continue
        for g in range(t.k):
            j = int(lists[g][i])
            m = mats[i] * gen_mats[g]
            if mats[j] is None:
                mats[j] = m
            elif mats[j] != m:
                raise BuildError(
                    "action does not respect the 2-group relations")
    return mats


def _identity_like(m: MatGF) -> MatGF:
    return MatGF.identity(m.n, m.p)


def _matrix_perm(m: MatGF, p: int) -> Permutation:
    """Permutation of the p^2 pairs (i, j) -> (i, j) * M, row-vector action."""
    a, b = m.rows[0]
    c, d = m.rows[1]
    idx = np.arange(p * p)
    i, j = idx // p, idx % p
    return Permutation((((i * a + j * c) % p) * p + (i * b + j * d) % p).tolist())


def _semidirect(spec: SemidirectByMatrices) -> PermutationGroup:
    p = spec.p
    if p < 3 or p % 2 == 0 or any(p % q == 0 for q in range(3, int(p ** .5) + 1, 2)):
        raise BuildError("p must be an odd prime")
    two = build(spec.two_group)
    t2 = GroupTable.from_perm_group(two, cap=0, keep_elements=True)
    mats = [m if isinstance(m, MatGF) else MatGF.make(m, p)
            for m in spec.action]
    if len(mats) != len(two.generators):
        raise BuildError("one action matrix per 2-group generator required")

    if spec.p_rank == "CpxCp":
        modulus, dim, m_points = p, 2, p * p
    elif spec.p_rank == "Cp":
        modulus, dim, m_points = p, 1, p
    elif spec.p_rank == "Cp2":
        modulus, dim, m_points = p * p, 1, p * p
    else:
        raise BuildError(f"unknown p-rank mode {spec.p_rank!r}")
    for m in mats:
        if m.n != dim or m.p != modulus:
            raise BuildError("action matrix has the wrong shape or modulus")
        if dim == 1:
            if gcd(m.rows[0][0], modulus) != 1:
                raise BuildError("action matrix is not invertible")
        elif m.det() == 0:
            raise BuildError("action matrix is not invertible")
    _element_matrices(t2, mats)  # homomorphism check

    d2 = two.degree
    degree = m_points + d2
    gens, names = [], []
    tail = np.arange(d2) + m_points
    pts = np.arange(m_points)
    if spec.p_rank == "CpxCp":
        gens.append(Permutation(np.concatenate(
            [((pts // p + 1) % p) * p + pts % p, tail]).tolist()))
        gens.append(Permutation(np.concatenate(
            [(pts // p) * p + (pts + 1) % p, tail]).tolist()))
        names += ["x", "y"]
        action_perms = [_matrix_perm(m, p) for m in mats]
    else:
        gens.append(Permutation(np.concatenate(
            [(pts + 1) % m_points, tail]).tolist()))
        names.append("x")
        action_perms = [Permutation(((pts * m.rows[0][0]) % m_points).tolist())
                        for m in mats]
    for name, act, perm in zip(two.gen_names, action_perms, two.generators):
        images = np.concatenate(
            [np.asarray(act.images), np.asarray(perm.images) + m_points])
        gens.append(Permutation(images.tolist()))
        names.append(name)
    order = group_order(two) * m_points
    return PermutationGroup(degree, tuple(gens), tuple(names),
                            cached_order=order)


# -- public build dispatch -------------------------------------------------

def group_order(g: PermutationGroup) -> int:
    if g.cached_order is None:
        g.cached_order = GroupTable.from_perm_group(g, cap=0).n
    return g.cached_order


def build(spec: GroupSpec) -> PermutationGroup:
    """Build any GroupSpec as a PermutationGroup (deterministic generators)."""
    if isinstance(spec, Cyclic):
        return _cyclic(spec.n)
    if isinstance(spec, ElemAbelian):
        return _elemab(spec.p, spec.k)
    if isinstance(spec, DirectProduct):
        return _direct_product(spec.factors)
    if isinstance(spec, SemidirectByMatrices):
        return _semidirect(spec)
    if isinstance(spec, Wreath):
        return _wreath(spec.base)
    if isinstance(spec, CentralProduct):
        return _central_product(spec)
    if isinstance(spec, Holomorph):
        return _holomorph(spec.base)
    if isinstance(spec, AutGroup):
        return _aut_group(spec.base)
    if isinstance(spec, Order16):
        return _order16(spec.name)
    if isinstance(spec, Dihedral):
        return _dihedral(spec.order)
    if isinstance(spec, Quasidihedral):
        return _quasidihedral(spec.order)
    if isinstance(spec, Dicyclic):
        return _dicyclic(spec.order)
    if isinstance(spec, FromPresentation):
        return _from_presentation(spec.pres)
    raise BuildError(f"unknown spec {spec!r}")


def build_table(spec: GroupSpec, cap: int | None = None,
                keep_elements: bool | None = None) -> GroupTable:
    g = build(spec)
    return GroupTable.from_perm_group(g, cap=cap, keep_elements=keep_elements)


def order16(name: str) -> PermutationGroup:
    """The order-16 group with the given catalog name (regular, degree 16)."""
    return _order16(name)


def holomorph(base: GroupSpec) -> PermutationGroup:
    return _holomorph(base)


def wreath(base: GroupSpec) -> PermutationGroup:
    return _wreath(base)


def central_product(g: GroupSpec, h: GroupSpec, zg: str, zh: str) -> PermutationGroup:
    return _central_product(CentralProduct(g, h, zg, zh))


def semidirect_by_matrices(p: int, rank_mode: str, two_group,
                           action) -> PermutationGroup:
    """Normal p-part of the given rank, acted on by the 2-group via matrices.

    ``two_group`` may be a GroupSpec or an order-16 catalog name; ``action``
    an ActionSpec, or a list with one matrix (MatGF or row lists) per
    2-group generator.
    """
    if isinstance(two_group, str):
        two_group = Order16(two_group)
    if isinstance(action, ActionSpec):
        action = action.matrices
    mats = tuple(m if isinstance(m, MatGF) else
                 MatGF.make(m, p * p if rank_mode == "Cp2" else p)
                 for m in action)
    return _semidirect(SemidirectByMatrices(p, rank_mode, two_group, mats))


def affine_by_matrices(p: int, mats, names=None) -> PermutationGroup:
    """(Cp x Cp) extended by the matrix group the given 2x2 matrices
    generate, acting on the p^2 translation points.

    Unlike :func:`semidirect_by_matrices` the acting group is taken as the
    matrix group itself, so non-faithful presets and abstract relators do
    not come into it.  Useful for automorphism-group models of the form
    (Cp x Cp) @ M with M a subgroup of GL(2, p).
    """
    mg = MatrixGroup.from_rows(
        [m.rows if isinstance(m, MatGF) else m for m in mats], p,
        names=names)
    pts = np.arange(p * p)
    gens = [Permutation(((pts // p + 1) % p * p + pts % p).tolist()),
            Permutation((pts // p * p + (pts + 1) % p).tolist())]
    gnames = ["x", "y"]
    for i, m in enumerate(mg.generators):
        gens.append(_matrix_perm(m, p))
        gnames.append(mg.gen_names[i] if mg.gen_names else f"m{i}")
    return PermutationGroup(p * p, tuple(gens), tuple(gnames),
                            cached_order=p * p * mg.order())


def recovered_action(g: PermutationGroup, p: int,
                     rank_mode: str = "CpxCp") -> tuple:
    """Read the action matrices back off a semidirect-product group.

    Conjugating the translation generator for basis vector v by a 2-group
    generator gives the translation by v times that generator's matrix, so
    the matrix rows fall out of where the conjugates send point 0.
    """
    if rank_mode == "CpxCp":
        n_trans, modulus = 2, p
    elif rank_mode in ("Cp", "Cp2"):
        n_trans, modulus = 1, p if rank_mode == "Cp" else p * p
    else:
        raise BuildError(f"unknown p-rank mode {rank_mode!r}")
    trans, rest = g.generators[:n_trans], g.generators[n_trans:]
    out = []
    for h in rest:
        hinv = h.inverse()
        rows = []
        for t in trans:
            conj = hinv * t * h
            v = conj.images[0]
            rows.append([v // p % p, v % p] if n_trans == 2 else [v % modulus])
        out.append(MatGF.make(rows, modulus))
    return tuple(out)


# -- actions on Cp x Cp ----------------------------------------------------

IMAGE_ORDERS = {
    "C2": 2, "C2xC2": 4, "C4": 4, "C8": 8, "C16": 16,
    "D4": 8, "Q2": 8, "D8": 16, "QD8": 16, "Q4": 16, "full": 16,
}


@dataclass(frozen=True)
class ActionSpec:
    """A matrix action of a 2-group on the p-part.

    ``matrices`` holds one MatGF per 2-group generator; ``image_name``
    labels the isomorphism type of the matrix group they generate.
    """

    p: int
    matrices: tuple
    image_name: str

    def __init__(self, p, matrices, image_name):
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "matrices", tuple(matrices))
        object.__setattr__(self, "image_name", image_name)

    def image_order(self) -> int:
        seen = {_identity_like(self.matrices[0])}
        frontier = list(seen)
        while frontier:
            nxt = []
            for m in frontier:
                for g in self.matrices:
                    r = m * g
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        return len(seen)

    def verify_image(self, two_group: str | None = None) -> bool:
        want = IMAGE_ORDERS.get(self.image_name)
        if want is None:
            raise BuildError(f"unknown image name {self.image_name!r}")
        return self.image_order() == want


def _unit_of_order(p: int, m: int) -> int:
    sols = modsolve.roots_of_unity(p, m).solutions
    for z in sols:
        if modsolve.element_order_mod(z, p) == m:
            return z
    raise BuildError(f"no residue of multiplicative order {m} mod {p}")


# Sign targets for the two words of a rank-two label "w1_w2": w1 inverts
# only the second translation generator, w2 inverts both.  This is the
# assignment that separates the label from its sibling cases; the variant
# where both words act as single-axis reflections is a different group
# (for C8xC2 it drops the automorphism count from 576 to 288).
_C2C2_WORD_TARGETS = ((0, 1), (1, 1))


def _words_to_gf2_action(gen_names, words: list) -> dict:
    """Assign each generator a sign vector in GF(2)^2 so that each listed
    word acts as its target diagonal sign matrix.

    Underdetermined systems take the first solution in lexicographic bit
    order, which pins unconstrained generators to the trivial action."""
    k = len(gen_names)
    rows = []  # each row: exponent parity per generator
    for word in words:
        counts = [0] * k
        for ch in word:
            if ch not in gen_names:
                raise BuildError(f"unknown generator {ch!r} in action label")
        for i, name in enumerate(gen_names):
            counts[i] = word.count(name) % 2
        rows.append(counts)
    constrained = sorted({i for r in rows for i in range(k) if r[i]})
    # earliest generators take the most significant bits, so the first hit
    # of the counter leaves them trivial when the system is underdetermined
    for bits in range(1 << (2 * len(constrained))):
        vec = [[0, 0] for _ in range(k)]
        for pos, gi in enumerate(reversed(constrained)):
            vec[gi][0] = (bits >> (2 * pos)) & 1
            vec[gi][1] = (bits >> (2 * pos + 1)) & 1
        ok = True
        for axis, r in enumerate(rows):
            for coord in range(2):
                want = _C2C2_WORD_TARGETS[axis][coord]
                if sum(r[i] * vec[i][coord] for i in range(k)) % 2 != want:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return {name: tuple(vec[i]) for i, name in enumerate(gen_names)}
    raise BuildError("action label has no consistent sign assignment")


def _c2c2_action(p: int, gen_names, label: str) -> ActionSpec:
    words = label.split("_")
    if len(words) != 2:
        raise BuildError(f"expected two underscore-separated words in {label!r}")
    assign = _words_to_gf2_action(list(gen_names), words)
    mats = []
    for name in gen_names:
        u, v = assign[name]
        mats.append(MatGF.make([[(-1) ** u, 0], [0, (-1) ** v]], p))
    return ActionSpec(p, mats, "C2xC2")


def _scalar_inversion_action(p: int, gen_names, word: str) -> ActionSpec:
    mats = []
    letters = set(word)
    unknown = letters - set(gen_names)
    if unknown:
        raise BuildError(f"unknown generators {sorted(unknown)} in action label")
    counts = {name: word.count(name) % 2 for name in gen_names}
    for name in gen_names:
        s = -1 if counts[name] else 1
        mats.append(MatGF.make([[s, 0], [0, s]], p))
    return ActionSpec(p, mats, "C2")


def _order8_matrix(p: int) -> MatGF:
    if p == 3:
        return MatGF.make([[1, 1], [2, 1]], 3)
    if p % 8 == 1:
        z = _unit_of_order(p, 8)
        return MatGF.make([[z, 0], [0, pow(z, -1, p)]], p)
    for t in range(p):
        for d in (p - 1, 1):
            m = MatGF.make([[0, 1], [d, t]], p)
            if m.det() and m.order(cap=64) == 8:
                return m
    raise BuildError(f"no order-8 matrix found mod {p}")


def _c16_companion(p: int) -> MatGF:
    params = modsolve.c16_action_params(p)
    if params.solutions:
        x, y = params.solutions[0]
        return MatGF.make([[0, 1], [x % p, y % p]], p)
    if p % 16 == 1:
        # order-16 elements are diagonalizable here; canonical diagonal
        return MatGF.make([[_unit_of_order(p, 16), 0], [0, 1]], p)
    raise BuildError(f"no faithful C16 action on CpxCp for p={p}: {params.note}")


def _full_action(name: str, p: int) -> ActionSpec:
    """Faithful 2x2 action of the named 2-group (C16, D8, QD8, Q4, Q2)."""
    if name == "C16":
        return ActionSpec(p, [_c16_companion(p)], "full")
    if name in ("D8", "Q4"):
        xs = modsolve.action_params(p, "D8")
        if not xs.solutions:
            raise BuildError(xs.note)
        x = xs.solutions[0]
        c = MatGF.make([[x, x], [p - x, x]], p)
        if name == "D8":
            return ActionSpec(p, [c, MatGF.make([[1, 0], [0, p - 1]], p)], "full")
        pairs = modsolve.action_params(p, "Q4pair")
        u, v = pairs.solutions[0]
        return ActionSpec(p, [c, MatGF.make([[u, v], [v, p - u]], p)], "full")
    if name == "QD8":
        xs = modsolve.action_params(p, "QD8")
        if not xs.solutions:
            raise BuildError(xs.note)
        x = xs.solutions[0]
        c = MatGF.make([[x, x], [p - x, x]], p)
        return ActionSpec(p, [c, MatGF.make([[1, 0], [0, p - 1]], p)], "full")
    if name == "Q2":
        pairs = modsolve.action_params(p, "Q4pair")
        u, v = pairs.solutions[0]
        a = MatGF.make([[u, v], [v, p - u]], p)
        b = MatGF.make([[0, 1], [p - 1, 0]], p)
        return ActionSpec(p, [a, b], "full")
    raise BuildError(f"no full-action recipe for {name}")


def preset_action(two_group: str, preset: str, p: int) -> ActionSpec:
    """Resolve a named action preset for the given 2-group and prime."""
    gen_names = tuple(order16_presentation(two_group).alphabet)
    if preset == f"{two_group}full" or preset == "full":
        return _full_action(two_group, p)
    if preset.startswith("table8x"):
        if two_group != "C16":
            raise BuildError(f"preset {preset!r} needs the C16 two-group")
        x = int(preset[len("table8x"):])
        z = _unit_of_order(p, 16)
        return ActionSpec(p, [MatGF.make([[z, 0], [0, (-x) % p]], p)], "C16")
    if preset == "C4":
        mats = [MatGF.make([[0, 1], [p - 1, 0]], p)] + \
            [MatGF.identity(2, p) for _ in gen_names[1:]]
        return ActionSpec(p, mats, "C4")
    if preset == "C8":
        mats = [_order8_matrix(p)] + \
            [MatGF.identity(2, p) for _ in gen_names[1:]]
        return ActionSpec(p, mats, "C8")
    if "_" in preset:
        return _c2c2_action(p, gen_names, preset)
    if preset and set(preset) <= set(gen_names):
        return _scalar_inversion_action(p, gen_names, preset)
    raise BuildError(f"unknown action preset {preset!r} for {two_group}")


def family_16p2_spec(two_group: str, p: int, action) -> SemidirectByMatrices:
    """GroupSpec for the order 16 p^2 group with the given action preset."""
    if isinstance(action, str):
        action = preset_action(two_group, action, p)
    if isinstance(action, ActionSpec):
        action = action.matrices
    mats = tuple(m if isinstance(m, MatGF) else MatGF.make(m, p)
                 for m in action)
    return SemidirectByMatrices(p, "CpxCp", Order16(two_group), mats)


def family_16p2(two_group: str, p: int, action) -> PermutationGroup:
    """Group of order 16 p^2 with normal Cp x Cp and the given action."""
    return _semidirect(family_16p2_spec(two_group, p, action))


# -- the 16p family and its expected automorphism groups -------------------

_S4 = Holomorph(ElemAbelian(2, 2))
_D4C2 = DirectProduct((Dihedral(8), Cyclic(2)))
_W22 = Wreath(ElemAbelian(2, 2))

# (two-group, image, acting generators) -> invariant factor of Aut
TABLE2A_FACTORS = {
    ("C16", "C2", "a"): DirectProduct((Cyclic(4), Cyclic(2))),
    ("C8xC2", "C2", "a"): _D4C2,
    ("C8xC2", "C2", "b"): ElemAbelian(2, 3),
    ("C4xC4", "C2", "a"): _W22,
    ("C4xC2xC2", "C2", "a"): AutGroup(Order16("C4xC2xC2")),
    ("C4xC2xC2", "C2", "b"): _W22,
    ("E16", "C2", "a"): Holomorph(ElemAbelian(2, 3)),
    ("D4xC2", "C2", "b"): Holomorph(DirectProduct((Cyclic(4), Cyclic(2)))),
    ("D4xC2", "C2", "a"): _W22,
    ("D4xC2", "C2", "c"): _D4C2,
    # the direct-factor action c gives Q2 x D_p; its catalog letter is a
    # misprint in the source data (a and b actions are equivalent)
    ("Q2xC2", "C2", "c"): DirectProduct((_S4, Cyclic(2))),
    ("Q2xC2", "C2", "b"): Holomorph(DirectProduct((Cyclic(4), Cyclic(2)))),
    ("C4YQ2", "C2", "a,b,c"): DirectProduct((_S4, Cyclic(2))),
    ("C4YQ2", "C2", "b,c"): _D4C2,
    ("C4YQ2", "C2", "a,c"): _D4C2,
    # catalog letter corrected: b lies in the derived subgroup here, so it
    # cannot invert Cp; the wreath-factor action is generated by a
    ("G44_22", "C2", "a"): _W22,
    ("G44_22", "C2", "c"): ElemAbelian(2, 4),
    ("C4sC4", "C2", "b"): _W22,
    ("C4sC4", "C2", "a"): ElemAbelian(2, 4),
    # the a-action factor is D4 x C2 (engine-verified, center 4), not the
    # wreath group the catalog's neighboring rows carry
    ("M16", "C2", "a"): _D4C2,
    ("M16", "C2", "b"): ElemAbelian(2, 3),
    ("D8", "C2", "b"): Holomorph(Cyclic(8)),
    ("D8", "C2", "a"): _D4C2,
    ("QD8", "C2", "a"): _D4C2,
    ("QD8", "C2", "b"): _D4C2,
    ("QD8", "C2", "a,b"): _D4C2,
    ("Q4", "C2", "b"): Holomorph(Cyclic(8)),
    ("Q4", "C2", "a"): _D4C2,
    ("C16", "C4", "a"): Cyclic(4),
    ("C8xC2", "C4", "a"): Dihedral(8),
    ("C8xC2", "C4", "a,b"): Dihedral(8),
    ("C4xC4", "C4", "a"): Dihedral(8),
    ("C4xC2xC2", "C4", "a"): _S4,
    ("G44_22", "C4", "a"): Dihedral(8),
    ("C4sC4", "C4", "b"): Dihedral(8),
    ("M16", "C4", "a"): Dihedral(8),
    ("M16", "C4", "a,b"): Dihedral(8),
    ("C16", "C8", "a"): Cyclic(2),
    ("C8xC2", "C8", "a"): Cyclic(2),
    ("C16", "C16", "a"): Cyclic(1),
}

_IMAGE_MOD = {"C2": 2, "C4": 4, "C8": 8, "C16": 16}


def family_16p(two_group: str, p: int, image: str, acting: str):
    """Group of order 16p with normal Cp, plus a spec for its Aut group.

    ``acting`` lists the 2-group generators with nontrivial image,
    comma-separated as in the reference data.  For the C2 image every
    listed generator inverts Cp; for larger cyclic images the first listed
    generator acts by a residue of that multiplicative order and any later
    ones invert.  Returns (group, expected_aut_spec).
    """
    key = (two_group, image, acting)
    if key not in TABLE2A_FACTORS:
        raise BuildError(f"no such 16p family row: {key}")
    m = _IMAGE_MOD[image]
    if (p - 1) % m:
        raise BuildError(f"image {image} needs p = 1 mod {m}, got p={p}")
    pres = order16_presentation(two_group)
    gen_names = tuple(pres.alphabet)
    listed = acting.split(",")
    mats = []
    first = listed[0]
    z = p - 1 if m == 2 else _unit_of_order(p, m)
    for name in gen_names:
        if name == first:
            u = z
        elif name in listed:
            u = p - 1
        else:
            u = 1
        mats.append(MatGF.make([[u]], p))
    group = semidirect_by_matrices(p, "Cp", Order16(two_group), mats)
    factor = TABLE2A_FACTORS[key]
    if isinstance(factor, Cyclic) and factor.n == 1:
        expected = Holomorph(Cyclic(p))
    else:
        expected = DirectProduct((Holomorph(Cyclic(p)), factor))
    return group, expected


def family_16p_rows():
    """All (two_group, image, acting) triples in catalog order."""
    return sorted(TABLE2A_FACTORS,
                  key=lambda k: (ORDER16_NAMES.index(k[0]),
                                 _IMAGE_MOD[k[1]], k[2]))


# -- identification and small-group catalogs -------------------------------

_CATALOG_TABLE_LIMIT = 30000


@lru_cache(maxsize=None)
def _catalog_table(spec: GroupSpec, expected: int):
    if expected > _CATALOG_TABLE_LIMIT:
        return None
    return build_table(spec, cap=expected)


@lru_cache(maxsize=None)
def _identification_entries(p: int | None):
    entries = []
    if p == 3:
        g144 = family_16p2_spec("QD8", 3, "full")
        entries += [
            ("[576](54,4)", AutGroup(family_16p2_spec("C8xC2", 3, "ab_b")), 576),
            ("D4x[144]", DirectProduct((Dihedral(8), g144)), 1152),
            ("C4x[144]", DirectProduct((Cyclic(4), g144)), 576),
            ("C2x[144]", DirectProduct((Cyclic(2), g144)), 288),
            ("[144]", g144, 144),
        ]
    if p is not None:
        q = p - 1
        entries += [
            ("Hol(Cp)xC16",
             DirectProduct((Holomorph(Cyclic(p)), Cyclic(16))), 16 * p * q),
            ("Hol(Cp)xC4xC2",
             DirectProduct((Holomorph(Cyclic(p)), Cyclic(4), Cyclic(2))),
             8 * p * q),
            ("Hol(Cp)xHol(Cp)",
             DirectProduct((Holomorph(Cyclic(p)), Holomorph(Cyclic(p)))),
             (p * q) ** 2),
            ("Hol(Cp) wr C2", Wreath(Holomorph(Cyclic(p))), 2 * (p * q) ** 2),
            ("Hol(CpxCp)", Holomorph(ElemAbelian(p, 2)), p * p * gl_order(2, p)),
            ("Hol(Cp2)", Holomorph(Cyclic(p * p)), p ** 3 * q),
            ("Hol(Cp)", Holomorph(Cyclic(p)), p * q),
        ]
    entries += [
        ("S4xC2", DirectProduct((_S4, Cyclic(2))), 48),
        ("S4xS3", DirectProduct((_S4, Dihedral(6))), 144),
    ]
    return tuple(entries)


def identification_catalog(p: int | None = None):
    """(label, builder) pairs for aut.identify; builders may return None
    when the target is too large to realize as a table."""
    out = []
    for label, spec, expected in _identification_entries(p):
        out.append((label, (lambda s=spec, e=expected: _catalog_table(s, e))))
    return out


_ORDER32_CATALOG_SPECS = (
    ("C32", Cyclic(32)),
    ("C16xC2", DirectProduct((Cyclic(16), Cyclic(2)))),
    ("C8xC4", DirectProduct((Cyclic(8), Cyclic(4)))),
    ("C8YQ2", CentralProduct(Cyclic(8), Dicyclic(8), "a^4", "a^2")),
    ("C4wrC2", Wreath(Cyclic(4))),
    ("D16", Dihedral(32)),
    ("QD16", Quasidihedral(32)),
    ("Q8", Dicyclic(32)),
)


@lru_cache(maxsize=None)
def small_group_catalog(k: int):
    """(name, GroupTable) pairs used to label subgroups of order k."""
    if k == 16:
        return tuple((name, build_table(Order16(name), cap=16))
                     for name in ORDER16_NAMES)
    if k == 32:
        return tuple((name, build_table(spec, cap=32))
                     for name, spec in _ORDER32_CATALOG_SPECS)
    return ()


# -- expected orders for the build invariant -------------------------------

def expected_order(spec: GroupSpec) -> int:
    """Closed-form order implied by the spec (engine used for holomorphs)."""
    from . import aut

    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, ElemAbelian):
        return spec.p ** spec.k
    if isinstance(spec, DirectProduct):
        out = 1
        for f in spec.factors:
            out *= expected_order(f)
        return out
    if isinstance(spec, SemidirectByMatrices):
        part = {"CpxCp": spec.p ** 2, "Cp2": spec.p ** 2, "Cp": spec.p}
        return expected_order(spec.two_group) * part[spec.p_rank]
    if isinstance(spec, Wreath):
        return 2 * expected_order(spec.base) ** 2
    if isinstance(spec, CentralProduct):
        g = build(spec.g)
        zg = fp.evaluate_word(spec.zg, dict(zip(g.gen_names, g.generators)))
        return (expected_order(spec.g) * expected_order(spec.h)
                // GroupTable.close([zg]).n)
    if isinstance(spec, Holomorph):
        base = build_table(spec.base, cap=0)
        return base.n * aut.automorphism_group(base).order()
    if isinstance(spec, AutGroup):
        return aut.automorphism_group(build_table(spec.base, cap=0)).order()
    if isinstance(spec, Order16):
        return 16
    if isinstance(spec, (Dihedral, Quasidihedral, Dicyclic)):
        return spec.order
    if isinstance(spec, FromPresentation):
        return fp.presentation_order(spec.pres)
    raise BuildError(f"unknown spec {spec!r}")
