"""Words, group presentations and Todd-Coxeter coset enumeration.

Relator syntax follows the conventions used throughout the reference tables:
``*`` is concatenation, ``^`` is integer power when the exponent is a number
or parameter and conjugation (``a^b = b^-1*a*b``) when the exponent is a
generator, and ``(u,v)`` is the commutator ``u^-1*v^-1*u*v``.  A chain
``w1=w2=...=1`` asserts every segment equal to the identity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .perm import Permutation, PermutationGroup


class WordError(ValueError):
    pass


class EnumerationError(RuntimeError):
    pass


_TOKEN = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*|\d+|\*\*|[][(){}^*,+\-;|=])")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordError(f"bad character in word at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


@dataclass(frozen=True)
class Word:
    """A flat word: sequence of (generator symbol, nonzero exponent)."""

    letters: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for sym, exp in self.letters:
            if exp == 0:
                raise WordError("zero exponent in word")

    @classmethod
    def from_letters(cls, letters: Sequence[tuple[str, int]]) -> "Word":
        # merge adjacent letters on the same symbol, drop cancellations
        merged: list[list] = []
        for sym, exp in letters:
            if exp == 0:
                continue
            if merged and merged[-1][0] == sym:
                merged[-1][1] += exp
                if merged[-1][1] == 0:
                    merged.pop()
            else:
                merged.append([sym, exp])
        return cls(tuple((s, e) for s, e in merged))

    def inverse(self) -> "Word":
        return Word.from_letters([(s, -e) for s, e in reversed(self.letters)])

    def __mul__(self, other: "Word") -> "Word":
        return Word.from_letters(self.letters + other.letters)

    def symbols(self) -> frozenset[str]:
        return frozenset(s for s, _ in self.letters)

    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def evaluate(self, images: Mapping[str, Permutation]) -> Permutation:
        degree = next(iter(images.values())).degree
        result = Permutation.identity(degree)
        for sym, exp in self.letters:
            if sym not in images:
                raise WordError(f"no image for generator {sym!r}")
            result = result * images[sym] ** exp
        return result

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for sym, exp in self.letters:
            parts.append(sym if exp == 1 else f"{sym}^{exp}")
        return "*".join(parts)


class _Parser:
    """Recursive descent parser for relator words and integer expressions."""

    def __init__(self, tokens: list[str], alphabet: Sequence[str],
                 params: Mapping[str, int]):
        self.toks = tokens
        self.pos = 0
        self.alphabet = set(alphabet)
        self.params = dict(params)
        overlap = self.alphabet & set(self.params)
        if overlap:
            raise WordError(f"symbols both generator and parameter: {sorted(overlap)}")

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expect: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise WordError(f"expected {expect!r}, got {tok!r}")
        self.pos += 1
        return tok

    def parse_word(self) -> list[tuple[str, int]]:
        letters = self.parse_factor()
        while self.peek() == "*":
            self.take()
            letters = letters + self.parse_factor()
        return letters

    def parse_factor(self) -> list[tuple[str, int]]:
        letters = self.parse_atom()
        while self.peek() == "^":
            self.take()
            letters = self.apply_exponent(letters)
        return letters

    def parse_atom(self) -> list[tuple[str, int]]:
        tok = self.peek()
        if tok == "(":
            self.take()
            first = self.parse_word()
            if self.peek() == ",":
                self.take()
                second = self.parse_word()
                self.take(")")
                return (_inv(first) + _inv(second) + first + second)
            self.take(")")
            return first
        if tok is not None and tok[0].isalpha() and tok in self.alphabet:
            self.take()
            return [(tok, 1)]
        if tok == "1":
            self.take()
            return []
        raise WordError(f"unexpected token {tok!r} in word")

    def apply_exponent(self, letters: list[tuple[str, int]]) -> list[tuple[str, int]]:
        tok = self.peek()
        # conjugation: exponent is a generator symbol (possibly inverted / powered)
        if tok is not None and tok[0].isalpha() and tok in self.alphabet:
            conj = self.parse_factor_conjugator()
            return _inv(conj) + letters + conj
        if tok == "(" and self._lookahead_is_conjugator():
            self.take()
            conj = self.parse_word()
            self.take(")")
            return _inv(conj) + letters + conj
        n = self.parse_int_exponent()
        return _power(letters, n)

    def _lookahead_is_conjugator(self) -> bool:
        # '(' ... ')' used as an exponent is a conjugator iff it mentions a generator
        depth = 0
        for tok in self.toks[self.pos:]:
            if tok == "(":
                depth += 1
            elif tok == ")":
                depth -= 1
                if depth == 0:
                    return False
            elif tok in self.alphabet:
                return True
        return False

    def parse_factor_conjugator(self) -> list[tuple[str, int]]:
        sym = self.take()
        letters = [(sym, 1)]
        while self.peek() == "^":
            self.take()
            n = self.parse_int_exponent()
            letters = _power(letters, n)
        return letters

    def parse_int_exponent(self) -> int:
        tok = self.peek()
        if tok == "{":
            self.take()
            val = self.parse_int_expr()
            self.take("}")
            return val
        if tok == "(":
            self.take()
            val = self.parse_int_expr()
            self.take(")")
            return val
        return self.parse_int_signed()

    def parse_int_signed(self) -> int:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        tok = self.take()
        if tok.isdigit():
            val = int(tok)
        elif tok in self.params:
            val = self.params[tok]
        else:
            raise WordError(f"unknown integer token {tok!r}")
        while self.peek() == "^":
            self.take()
            val = val ** self.parse_int_signed()
        return sign * val

    def parse_int_expr(self) -> int:
        val = self.parse_int_term()
        while self.peek() in ("+", "-"):
            if self.take() == "+":
                val += self.parse_int_term()
            else:
                val -= self.parse_int_term()
        return val

    def parse_int_term(self) -> int:
        val = self.parse_int_unary()
        while self.peek() == "*":
            self.take()
            val *= self.parse_int_unary()
        return val

    def parse_int_unary(self) -> int:
        if self.peek() == "-":
            self.take()
            return -self.parse_int_unary()
        tok = self.peek()
        if tok == "(":
            self.take()
            val = self.parse_int_expr()
            self.take(")")
        else:
            tok = self.take()
            if tok.isdigit():
                val = int(tok)
            elif tok in self.params:
                val = self.params[tok]
            else:
                raise WordError(f"unknown integer token {tok!r}")
        while self.peek() == "^":
            self.take()
            val = val ** self.parse_int_unary()
        return val


def _inv(letters: list[tuple[str, int]]) -> list[tuple[str, int]]:
    return [(s, -e) for s, e in reversed(letters)]


def _power(letters: list[tuple[str, int]], n: int) -> list[tuple[str, int]]:
    if n == 0:
        return []
    if n < 0:
        return _power(_inv(letters), -n)
    return letters * n


def parse_word(text: str, alphabet: Sequence[str],
               params: Mapping[str, int] | None = None) -> Word:
    """Parse one word in the relator syntax into flat form."""
    parser = _Parser(_tokenize(text), alphabet, params or {})
    letters = parser.parse_word()
    if parser.peek() is not None:
        raise WordError(f"trailing tokens in word {text!r}")
    return Word.from_letters(letters)


def parse_relator_chain(text: str, alphabet: Sequence[str],
                        params: Mapping[str, int] | None = None) -> list[Word]:
    """Split ``w1=w2=...=1`` into the words asserted trivial."""
    out = []
    for segment in text.split("="):
        segment = segment.strip()
        if segment in ("", "1"):
            continue
        out.append(parse_word(segment, alphabet, params))
    return out


@dataclass(frozen=True)
class Presentation:
    """Generators, relator texts and named integer parameters."""

    alphabet: tuple[str, ...]
    relator_texts: tuple[str, ...]
    params: tuple[tuple[str, int], ...] = ()

    @classmethod
    def make(cls, alphabet: Sequence[str], relators: Sequence[str],
             params: Mapping[str, int] | None = None) -> "Presentation":
        return cls(tuple(alphabet), tuple(relators),
                   tuple(sorted((params or {}).items())))

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        """Parse ``a,b | a^8=b^2=a^b*a^{-3}=1 ; ... | p=3, x=2``."""
        pieces = [p.strip() for p in text.split("|")]
        if len(pieces) not in (2, 3):
            raise WordError("presentation text needs 'gens | relators [| params]'")
        alphabet = tuple(s.strip() for s in pieces[0].split(",") if s.strip())
        relators = tuple(r.strip() for r in pieces[1].split(";") if r.strip())
        params: dict[str, int] = {}
        if len(pieces) == 3 and pieces[2]:
            for item in pieces[2].split(","):
                key, _, val = item.partition("=")
                params[key.strip()] = int(val.strip())
        return cls.make(alphabet, relators, params)

    def param_dict(self) -> dict[str, int]:
        return dict(self.params)

    def with_params(self, **params: int) -> "Presentation":
        merged = self.param_dict()
        merged.update(params)
        return Presentation.make(self.alphabet, self.relator_texts, merged)

    def relators(self) -> list[Word]:
        words: list[Word] = []
        for text in self.relator_texts:
            words.extend(parse_relator_chain(text, self.alphabet, self.param_dict()))
        return words

    def text(self) -> str:
        body = " ; ".join(self.relator_texts)
        if self.params:
            ptext = ", ".join(f"{k}={v}" for k, v in self.params)
            return f"{', '.join(self.alphabet)} | {body} | {ptext}"
        return f"{', '.join(self.alphabet)} | {body}"


def evaluate_word(word: Word | str, images: Mapping[str, Permutation],
                  params: Mapping[str, int] | None = None) -> Permutation:
    if isinstance(word, str):
        word = parse_word(word, list(images.keys()), params)
    return word.evaluate(images)


def check_relators(pres: Presentation, images: Mapping[str, Permutation]) -> bool:
    """True iff every relator evaluates to the identity under the images."""
    missing = set(pres.alphabet) - set(images)
    if missing:
        raise WordError(f"missing images for {sorted(missing)}")
    return all(w.evaluate(images).is_identity() for w in pres.relators())


# ---------------------------------------------------------------------------
# Todd-Coxeter (HLT strategy with immediate deductions and coincidences)
# ---------------------------------------------------------------------------


class CosetTable:
    """Coset table produced by HLT enumeration.

    Columns alternate generator and inverse: column ``2*i`` is generator ``i``
    and column ``2*i + 1`` its inverse.  Coset numbering is deterministic:
    cosets are numbered in order of first definition and compressed at the
    end by a final renumbering pass.
    """

    def __init__(self, pres: Presentation, subgroup: Sequence[str] = (),
                 max_cosets: int = 200_000):
        self.pres = pres
        self.ngens = len(pres.alphabet)
        self.ncols = 2 * self.ngens
        self.max_cosets = max_cosets
        self.relator_seqs = [self._word_to_cols(w) for w in pres.relators()]
        sub_words = [parse_word(t, pres.alphabet, pres.param_dict())
                     for t in subgroup]
        self.subgroup_seqs = [self._word_to_cols(w) for w in sub_words]
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.p: list[int] = [0]
        self.n_defined = 1
        self._queue: list[int] = []
        self.live_count: int | None = None

    def _word_to_cols(self, word: Word) -> tuple[int, ...]:
        cols = []
        index = {sym: i for i, sym in enumerate(self.pres.alphabet)}
        for sym, exp in word.letters:
            col = 2 * index[sym] + (0 if exp > 0 else 1)
            cols.extend([col] * abs(exp))
        return tuple(cols)

    @staticmethod
    def _invcol(col: int) -> int:
        return col ^ 1

    def _rep(self, c: int) -> int:
        # union-find with path compression toward the minimum representative
        root = c
        while self.p[root] != root:
            root = self.p[root]
        while self.p[c] != root:
            self.p[c], c = root, self.p[c]
        return root

    def _define(self, alpha: int, col: int) -> int:
        if self.n_defined >= self.max_cosets:
            raise EnumerationError(
                f"coset enumeration exceeded max_cosets={self.max_cosets}")
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(beta)
        self.n_defined += 1
        self.table[alpha][col] = beta
        self.table[beta][self._invcol(col)] = alpha
        return beta

    def _merge(self, a: int, b: int) -> None:
        a, b = self._rep(a), self._rep(b)
        if a == b:
            return
        lo, hi = (a, b) if a < b else (b, a)
        self.p[hi] = lo
        self._queue.append(hi)

    def _coincidence(self, a: int, b: int) -> None:
        self._merge(a, b)
        while self._queue:
            dead = self._queue.pop()
            row = self.table[dead]
            for col in range(self.ncols):
                delta = row[col]
                if delta is None:
                    continue
                # undefine the reverse pointer, then transfer the edge
                self.table[delta][self._invcol(col)] = None
                row[col] = None
                mu = self._rep(dead)
                nu = self._rep(delta)
                existing = self.table[mu][col]
                if existing is not None:
                    self._merge(nu, self._rep(existing))
                else:
                    back = self.table[nu][self._invcol(col)]
                    if back is not None:
                        self._merge(mu, self._rep(back))
                    else:
                        self.table[mu][col] = nu
                        self.table[nu][self._invcol(col)] = mu

    def _scan_and_fill(self, alpha: int, seq: tuple[int, ...]) -> None:
        if not seq:
            return
        f, i = alpha, 0
        b, j = alpha, len(seq) - 1
        while True:
            while i <= j:
                nxt = self.table[f][seq[i]]
                if nxt is None:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i:
                nxt = self.table[b][self._invcol(seq[j])]
                if nxt is None:
                    break
                b = nxt
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if j == i:
                # deduction closes the gap
                self.table[f][seq[i]] = b
                self.table[b][self._invcol(seq[i])] = f
                return
            self._define(f, seq[i])

    def run(self) -> "CosetTable":
        for seq in self.subgroup_seqs:
            self._scan_and_fill(0, seq)
        alpha = 0
        while alpha < len(self.table):
            if self._rep(alpha) != alpha:
                alpha += 1
                continue
            for seq in self.relator_seqs:
                self._scan_and_fill(alpha, seq)
                if self._rep(alpha) != alpha:
                    break
            if self._rep(alpha) == alpha:
                for col in range(self.ncols):
                    if self.table[alpha][col] is None:
                        self._define(alpha, col)
            alpha += 1
        self._compress()
        return self

    def _compress(self) -> None:
        live = [c for c in range(len(self.table)) if self._rep(c) == c]
        renumber = {old: new for new, old in enumerate(live)}
        new_table = []
        for old in live:
            row = self.table[old]
            new_row = []
            for col in range(self.ncols):
                val = row[col]
                if val is None:
                    raise EnumerationError("incomplete coset table after run")
                new_row.append(renumber[self._rep(val)])
            new_table.append(new_row)
        self.table = new_table
        self.p = list(range(len(live)))
        self.live_count = len(live)

    def index(self) -> int:
        if self.live_count is None:
            raise EnumerationError("enumeration has not been run")
        return self.live_count

    def perm_group(self) -> PermutationGroup:
        n = self.index()
        gens = []
        for i in range(self.ngens):
            images = [self.table[c][2 * i] for c in range(n)]
            gens.append(Permutation(images))
        return PermutationGroup(n, tuple(gens), tuple(self.pres.alphabet),
                                cached_order=None)


def todd_coxeter(pres: Presentation, subgroup: Sequence[str] = (),
                 max_cosets: int = 200_000) -> CosetTable:
    """Enumerate cosets of the named subgroup (trivial by default)."""
    return CosetTable(pres, subgroup, max_cosets).run()


def presentation_order(pres: Presentation, max_cosets: int = 200_000) -> int:
    """Order of the presented group via trivial-subgroup enumeration."""
    return todd_coxeter(pres, (), max_cosets).index()


def regular_rep(pres: Presentation, max_cosets: int = 200_000) -> PermutationGroup:
    """Faithful regular permutation representation of the presented group."""
    ct = todd_coxeter(pres, (), max_cosets)
    g = ct.perm_group()
    g.cached_order = ct.index()
    return g


def validate_presentation(pres: Presentation, group, max_cosets: int = 200_000) -> bool:
    """Check that ``pres`` presents ``group``.

    Requires the enumerated order to equal the group order and a generator
    assignment in the group satisfying all relators and generating it.
    """
    from . import aut as _aut
    from .table import GroupTable

    if isinstance(group, GroupTable):
        table = group
    else:
        table = GroupTable.close(list(group.generators), cap=None)
    if presentation_order(pres, max_cosets) != table.n:
        return False
    return _aut.find_generator_images(pres, table) is not None
