"""Modular arithmetic solvers for two-generator matrix actions.

The 2x2 action matrices used by the semidirect-product constructors are
parametrized by residues mod p (an off-diagonal entry, a trace, a pair of
squares summing to -1, ...).  The functions here enumerate the admissible
parameter values exhaustively, audit each candidate against the matrix
property it is supposed to deliver (element order, closure order, relator
checks), and return the surviving values as a ``ModularSolutionSet``.

Primes in scope are small (p < 300 throughout the reference tables), so
every solver is a plain exhaustive sweep over residues.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

__all__ = [
    "ModularSolutionSet",
    "primitive_root",
    "primitive_roots",
    "roots_of_unity",
    "holomorph_exponents",
    "action_params",
    "c16_action_params",
    "iterated_radical_roots",
    "coxeter234_search",
]


def _check_prime(p: int) -> None:
    if p < 2:
        raise ValueError(f"p must be a prime, got {p}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"p must be a prime, got {p}")
        d += 1


def _factorize(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def element_order_mod(x: int, p: int) -> int:
    """Multiplicative order of x mod p (x must be a unit)."""
    x %= p
    if x == 0:
        raise ValueError("0 has no multiplicative order")
    k, y = 1, x
    while y != 1:
        y = y * x % p
        k += 1
    return k


def primitive_root(p: int) -> int:
    """Smallest primitive root mod p."""
    _check_prime(p)
    if p == 2:
        return 1
    prime_divs = list(_factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in prime_divs):
            return g
    raise RuntimeError("unreachable for prime p")


def primitive_roots(p: int) -> list:
    """All primitive roots mod p, ascending."""
    _check_prime(p)
    prime_divs = list(_factorize(p - 1))
    return [g for g in range(2, p)
            if all(pow(g, (p - 1) // q, p) != 1 for q in prime_divs)]


# ---------------------------------------------------------------------------
# 2x2 matrices mod p, kept as flat 4-tuples (row major).  This is deliberately
# independent of the heavier matgroups module: the solvers only ever need
# products, powers and small closures.

def _m2mul(A, B, p):
    a, b, c, d = A
    e, f, g, h = B
    return ((a * e + b * g) % p, (a * f + b * h) % p,
            (c * e + d * g) % p, (c * f + d * h) % p)


def _m2pow(A, k, p):
    R = (1, 0, 0, 1)
    if k < 0:
        A = _m2inv(A, p)
        k = -k
    while k:
        if k & 1:
            R = _m2mul(R, A, p)
        A = _m2mul(A, A, p)
        k >>= 1
    return R


def _m2inv(A, p):
    a, b, c, d = A
    det = (a * d - b * c) % p
    di = pow(det, p - 2, p)
    return (d * di % p, (-b) * di % p, (-c) * di % p, a * di % p)


_ID2 = (1, 0, 0, 1)


def _m2order(A, p, cap=4096):
    R = A
    k = 1
    while R != _ID2:
        R = _m2mul(R, A, p)
        k += 1
        if k > cap:
            raise RuntimeError("matrix order exceeds cap (singular input?)")
    return k


def _m2closure_order(gens, p, cap):
    """Size of the group generated by gens, or None once cap is passed."""
    seen = {_ID2}
    frontier = [_ID2]
    while frontier:
        nxt = []
        for M in frontier:
            for G in gens:
                N = _m2mul(M, G, p)
                if N not in seen:
                    seen.add(N)
                    if len(seen) > cap:
                        return None
                    nxt.append(N)
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModularSolutionSet:
    """Admissible parameter values for one solver query.

    solutions are residues (or residue tuples) sorted ascending.  An empty
    set is an answer, not an error: ``note`` then records the diagnostic,
    typically a congruence the prime fails.
    """

    p: int
    kind: str
    solutions: tuple = ()
    note: str = ""

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __contains__(self, item):
        return item in self.solutions

    def canonical(self):
        """Smallest solution, or None when the set is empty."""
        return self.solutions[0] if self.solutions else None

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "kind": self.kind,
            "solutions": [list(s) if isinstance(s, tuple) else s
                          for s in self.solutions],
            "note": self.note,
        }


def roots_of_unity(p: int, t: int) -> ModularSolutionSet:
    """The t-th roots of unity mod p.  There are gcd(t, p-1) of them."""
    _check_prime(p)
    if t < 1:
        raise ValueError("t must be positive")
    sols = tuple(x for x in range(1, p) if pow(x, t, p) == 1)
    assert len(sols) == gcd(t, p - 1)
    return ModularSolutionSet(p, f"roots-of-unity:{t}", sols)


def holomorph_exponents(p: int, convention: str = "negated") -> ModularSolutionSet:
    """Exponents x admissible in the relator a^b*a^x of Hol(Cp) = Cp @ C(p-1).

    The relator a^b*a^x = 1 says a^b = a^(-x), so the faithful actions are
    exactly those with -x a primitive root ("negated" convention).  The
    "plain" convention reads the exponent directly: x itself primitive.
    Published presentations mix both; exposing the two readings side by side
    lets table verification audit either form.
    """
    _check_prime(p)
    if convention == "negated":
        sols = tuple(sorted((p - g) % p for g in primitive_roots(p)))
    elif convention == "plain":
        sols = tuple(primitive_roots(p))
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return ModularSolutionSet(p, f"holomorph-exponent:{convention}", sols)


# ---------------------------------------------------------------------------
# action parameter solvers


def action_params(p: int, kind: str) -> ModularSolutionSet:
    """Parameters for the standard faithful 2x2 actions of D8, QD8 and Q4.

    kind "D8":     x with 2*x^2 = 1 (mod p); the order-8 rotation is then
                   [[x,x],[-x,x]].  Needs 2 to be a square: p = +-1 mod 8.
    kind "QD8":    x with 2*x^2 = -1 (mod p); same matrix shape, now of
                   order 8 with quasidihedral twist.  Needs p = 1 or 3 mod 8.
    kind "Q4pair": pairs (a,b) with a^2 + b^2 = -1 (mod p); the order-4
                   generator is [[a,b],[b,-a]].  Solvable for every odd p.

    An incompatible prime yields an empty set with a diagnostic note.
    """
    _check_prime(p)
    if kind == "D8":
        sols = tuple(x for x in range(1, p) if 2 * x * x % p == 1)
        note = ""
        if not sols:
            note = (f"2*x^2 = 1 has no solution mod {p}: "
                    "2 must be a quadratic residue (p = +-1 mod 8)")
        else:
            for x in sols:
                assert _m2order((x, x, -x % p, x), p) == 8
        return ModularSolutionSet(p, "D8", sols, note)
    if kind == "QD8":
        sols = tuple(x for x in range(1, p) if 2 * x * x % p == p - 1)
        note = ""
        if not sols:
            note = (f"2*x^2 = -1 has no solution mod {p}: "
                    "-2 must be a quadratic residue (p = 1 or 3 mod 8)")
        else:
            for x in sols:
                assert _m2order((x, x, -x % p, x), p) == 8
        return ModularSolutionSet(p, "QD8", sols, note)
    if kind == "Q4pair":
        if p == 2:
            return ModularSolutionSet(p, "Q4pair", (), "p must be odd")
        sols = []
        for a in range(p):
            for b in range(p):
                if (a * a + b * b) % p == p - 1:
                    sols.append((a, b))
        for a, b in sols:
            assert _m2order((a, b, b, -a % p), p) == 4
        return ModularSolutionSet(p, "Q4pair", tuple(sols))
    raise ValueError(f"unknown action kind {kind!r}")


def c16_action_params(p: int) -> ModularSolutionSet:
    """Parameters (x, y) making the companion matrix [[0,1],[x,y]] of order 16.

    Faithful irreducible C16 actions on Cp x Cp exist in two regimes:

    * p = 7 mod 8: x is +-1 and y satisfies a radical congruence, the
      plus branch (x = 1, (y^2+2)^2 = 2) or the minus branch
      (x = -1, (y^2-2)^2 = 2).  Exactly one branch is ever populated;
      when the plus branch is empty the note records its rejection.
    * p = 9 mod 16: y = 0 and x is a primitive 8th root of unity.

    For p = 1 mod 16 the order-16 elements are diagonalizable, so the
    companion form is not needed (use roots_of_unity(p, 16) and a diagonal
    action); for the remaining classes GL(2,p) has no order-16 element.
    Every returned pair is audited by computing the matrix order.
    """
    _check_prime(p)
    kind = "C16-companion"
    if p % 16 == 1:
        return ModularSolutionSet(
            p, kind, (),
            "order-16 elements are diagonalizable when p = 1 mod 16; "
            "use a diagonal action from roots_of_unity(p, 16)")
    if p % 16 == 9:
        sols = tuple((x, 0) for x in range(1, p)
                     if element_order_mod(x, p) == 8
                     and _m2order((0, 1, x, 0), p) == 16)
        return ModularSolutionSet(p, kind, sols,
                                  "diagonal-free family: y = 0, x of order 8")
    if p % 8 == 7:
        plus = tuple((1, y) for y in range(p)
                     if (y * y + 2) ** 2 % p == 2
                     and _m2order((0, 1, 1, y), p) == 16)
        if plus:
            return ModularSolutionSet(p, kind, plus, "plus branch (x = 1)")
        minus = tuple((p - 1, y) for y in range(p)
                      if (y * y - 2) ** 2 % p == 2
                      and _m2order((0, 1, p - 1, y), p) == 16)
        note = ("plus branch (x = 1) rejected: (y^2+2)^2 = 2 has no "
                "admissible solution; minus branch (x = -1) used")
        if not minus:
            note = "no companion order-16 action found (unexpected for p = 7 mod 8)"
        return ModularSolutionSet(p, kind, minus, note)
    return ModularSolutionSet(
        p, kind, (),
        f"GL(2,{p}) has no element of order 16 (p = {p % 16} mod 16)")


def iterated_radical_roots(p: int, n: int) -> ModularSolutionSet:
    """Solutions of the depth-n nested radical congruence mod p.

    The congruence is e = 0 where e is built by e0 = x^2 + 2 followed by
    n-2 steps of e -> e^2 - 2 (for n = 3 this is the familiar
    (x^2+2)^2 = 2).  These are the admissible off-corner entries for the
    order-2^(n+1) quasidihedral generator [[0,1],[1,x]] over GF(p), which
    exists exactly when p = -1 mod 2^n.  The solution set is closed under
    x -> p - x.
    """
    _check_prime(p)
    if n < 2:
        raise ValueError("n must be at least 2")
    kind = f"radical-depth:{n}"
    if (p + 1) % (1 << n) != 0:
        return ModularSolutionSet(
            p, kind, (), f"requires p = -1 mod 2^{n}; {p} is not")
    sols = []
    for x in range(1, p):
        e = (x * x + 2) % p
        for _ in range(n - 2):
            e = (e * e - 2) % p
        if e == 0:
            sols.append(x)
    for x in sols:
        assert (p - x) in sols, "solution set should be symmetric"
        assert _m2order((0, 1, 1, x), p) == 1 << (n + 1)
    return ModularSolutionSet(p, kind, tuple(sols))


# ---------------------------------------------------------------------------
# searches for 2x2 representations of the (2,3,4) triangle group


def _cox_a(p):
    return ((-1) % p, 1, (-1) % p, 0)


def _cox234_relators_hold(a, b, p) -> bool:
    # a^3 = b^4 = (a,b^2) = a*b*(a*b^-1)^3 = 1
    if _m2pow(b, 4, p) != _ID2:
        return False
    b2 = _m2mul(b, b, p)
    if _m2mul(_m2mul(a, b2, p), _m2inv(_m2mul(b2, a, p), p), p) != _ID2:
        return False
    abinv3 = _m2pow(_m2mul(a, _m2inv(b, p), p), 3, p)
    return _m2mul(_m2mul(a, b, p), abinv3, p) == _ID2


def _cox234cq_last_relator(a, b, p) -> bool:
    # (a*b)^2 * a^-1 * b^-1 * (a*b^-1)^2 * a^-1 * b = 1
    ab2 = _m2pow(_m2mul(a, b, p), 2, p)
    ai = _m2inv(a, p)
    bi = _m2inv(b, p)
    abi2 = _m2pow(_m2mul(a, bi, p), 2, p)
    M = _m2mul(ab2, ai, p)
    M = _m2mul(M, bi, p)
    M = _m2mul(M, abi2, p)
    M = _m2mul(M, ai, p)
    return _m2mul(M, b, p) == _ID2


def coxeter234_search(p: int, form: str = "offdiag-pair") -> ModularSolutionSet:
    """Search GL(2,p) for generators of the (2,3,4) triangle group of order 48
    (or its direct product with C_(p-1)/2 in the third form).

    The order-3 generator is always a = [[-1,1],[-1,0]].  The second
    generator depends on ``form``:

    * "offdiag-pair": b = [[1,x],[y,-1]] with x*y = -2 (so b^2 = -1);
      solutions are (x, y) pairs.
    * "general-quadruple": b = [[v,x],[y,w]] with trace 0 and det 1;
      solutions are (v, x, y, w) quadruples.  This form covers primes
      where the off-diagonal shape has no solution.
    * "times-cq-pair": b = [[1,x],[y,-1]] with 1+x*y a primitive root, so
      b has order 2(p-1) and <a,b> is the order-48 group times C_(p-1)/2.

    Every candidate is verified end to end: the defining relators are
    evaluated on the matrices and the closure order of <a,b> is computed.
    """
    _check_prime(p)
    if p < 5:
        return ModularSolutionSet(p, form, (), "p too small for these actions")
    a = _cox_a(p)
    assert _m2pow(a, 3, p) == _ID2
    sols = []
    if form == "offdiag-pair":
        for x in range(1, p):
            y = (p - 2) * pow(x, p - 2, p) % p  # x*y = -2
            b = (1, x, y, p - 1)
            if not _cox234_relators_hold(a, b, p):
                continue
            if _m2closure_order([a, b], p, cap=48) != 48:
                continue
            sols.append((x, y))
        note = "" if sols else "no off-diagonal pair yields the order-48 group"
        return ModularSolutionSet(p, form, tuple(sols), note)
    if form == "general-quadruple":
        for v in range(p):
            w = (p - v) % p  # trace 0
            for x in range(1, p):
                # det v*w - x*y = 1
                y = (v * w - 1) * pow(x, p - 2, p) % p
                b = (v, x, y, w)
                if not _cox234_relators_hold(a, b, p):
                    continue
                if _m2closure_order([a, b], p, cap=48) != 48:
                    continue
                sols.append((v, x, y, w))
        note = "" if sols else "no trace-0/det-1 matrix yields the order-48 group"
        return ModularSolutionSet(p, form, tuple(sols), note)
    if form == "times-cq-pair":
        target = 24 * (p - 1)
        prims = set(primitive_roots(p))
        for x in range(1, p):
            xinv = pow(x, p - 2, p)
            for g in prims:
                y = (g - 1) * xinv % p
                b = (1, x, y, p - 1)
                if not _cox234cq_last_relator(a, b, p):
                    continue
                if p == 7:
                    ab4 = _m2pow(_m2mul(a, b, p), 4, p)
                    if _m2mul(ab4, _m2pow(b, 2, p), p) != _ID2:
                        continue
                    abi4 = _m2pow(_m2mul(a, _m2inv(b, p), p), 4, p)
                    if _m2mul(abi4, _m2pow(b, -2, p), p) != _ID2:
                        continue
                else:
                    # (a*b^-1)^4 must land in <b>
                    C = _m2pow(_m2mul(a, _m2inv(b, p), p), 4, p)
                    if C != _ID2:
                        B, k = b, 1
                        while B != C and k <= 2 * (p - 1):
                            B = _m2mul(B, b, p)
                            k += 1
                        if B != C:
                            continue
                if _m2closure_order([a, b], p, cap=target) != target:
                    continue
                sols.append((x, y))
        note = "" if sols else "no pair yields the order-48 group times C_(p-1)/2"
        return ModularSolutionSet(p, form, tuple(sorted(sols)), note)
    raise ValueError(f"unknown search form {form!r}")
