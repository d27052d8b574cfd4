"""Finite presentations: the chain family P_k and the filler family.

Generators carry a weight; compound (weight >= 2) filler generators also
carry their defining pair, so every letter expands to a word over the
weight-1 alphabet for oracle evaluation.

The filler presentation for class c is built on top of the one for class
c-1: every lower relator is lifted to a true class-c relator by appending
the inverse of its weight-c value (computed by the oracle on the Lyndon
basis).  Deleting all weight-c letters from the class-c relator set then
yields a working presentation of the class-(c-1) quotient, which is what
lets the filling recursion run on the literal projection.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from . import oracle
from .errors import NilfillError, OutOfRange, UnsupportedIndex
from .words import (
    Word,
    commutator,
    format_word,
    free_reduce,
    inverse_word,
    nested_commutator,
    parse_word,
)


class Presentation:
    """Immutable generators + relators + class, with derived lookups."""

    def __init__(self, names, weights, relators, nclass, parents=None):
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.relators = tuple(tuple(r) for r in relators)
        self.nclass = nclass
        self.parents = tuple(parents) if parents else (None,) * len(self.names)
        if len(self.weights) != len(self.names) or len(self.parents) != len(self.names):
            raise NilfillError("generator annotation lengths disagree")
        for r in self.relators:
            for a in r:
                if not 1 <= abs(a) <= len(self.names):
                    raise NilfillError(f"relator letter {a} names no generator")
        self.name_to_index = {n: i + 1 for i, n in enumerate(self.names)}
        if len(self.name_to_index) != len(self.names):
            raise NilfillError("duplicate generator names")
        self.C = max((len(r) for r in self.relators), default=0)
        self._relator_index = None
        self._expansion = {}
        self._quotient = None
        self._basis = None

    # -- basic views --------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def weight1_count(self) -> int:
        return sum(1 for w in self.weights if w == 1)

    def weight_of(self, letter: int) -> int:
        return self.weights[abs(letter) - 1]

    def letters_of_weight(self, w: int) -> list:
        return [i + 1 for i, wt in enumerate(self.weights) if wt == w]

    @property
    def relator_index(self) -> dict:
        """Exact relator word -> relator id."""
        if self._relator_index is None:
            idx = {}
            for rid, r in enumerate(self.relators):
                idx.setdefault(r, rid)
            self._relator_index = idx
        return self._relator_index

    @property
    def max_weight_c_per_relator(self) -> int:
        """M: most weight-c letters (either sign) in any single relator."""
        c = self.nclass
        return max(
            (sum(1 for a in r if self.weight_of(a) == c) for r in self.relators),
            default=0,
        )

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self.name_to_index)

    def format_word(self, w: Word) -> str:
        return format_word(w, self.names)

    # -- oracle plumbing -----------------------------------------------------

    def expand_letter(self, letter: int) -> Word:
        """Expansion of one signed letter to weight-1 letters via definitions."""
        i = abs(letter)
        cached = self._expansion.get(i)
        if cached is None:
            pair = self.parents[i - 1]
            if pair is None:
                if self.weights[i - 1] != 1:
                    raise NilfillError(
                        f"generator {self.names[i - 1]} has weight "
                        f"{self.weights[i - 1]} but no defining pair "
                        "(presentation files carry no definition data)"
                    )
                cached = (i,)
            else:
                x, y = pair
                cached = commutator(self.expand_letter(x), self.expand_letter(y))
            self._expansion[i] = cached
        return cached if letter > 0 else inverse_word(cached)

    def expand_word(self, w: Word) -> Word:
        out = []
        for a in w:
            out.extend(self.expand_letter(a))
        return tuple(out)

    def defining_chain(self, letter: int) -> tuple:
        """Weight-1 letters whose nested commutator defines this letter."""
        return _defining_chain(self.parents, abs(letter))

    def eval_series(self, w: Word, degree=None):
        return oracle.eval_word(self.expand_word(w), self.weight1_count,
                                degree if degree is not None else self.nclass)

    def is_identity(self, w: Word) -> bool:
        return oracle.is_unit(self.eval_series(w))

    # -- quotient by the top weight ------------------------------------------

    def project_word(self, w: Word) -> Word:
        c = self.nclass
        wt = self.weights
        return tuple(a for a in w if wt[abs(a) - 1] < c)

    def project(self) -> "Presentation":
        """Presentation of the class-(c-1) quotient: drop weight-c generators,
        delete their letters from every relator, prune and dedupe.

        The result keeps, for every surviving relator, the source relator id
        and the positions of the surviving letters (``lift_table``), which is
        what the filling recursion uses to re-expand quotient moves.
        """
        if self._quotient is not None:
            return self._quotient
        c = self.nclass
        if c < 2:
            raise NilfillError("cannot project a class-1 presentation")
        keep = [i + 1 for i, w in enumerate(self.weights) if w < c]
        if keep != list(range(1, len(keep) + 1)):
            raise NilfillError("weight-c generators must come last")
        relators = []
        lift_table = []
        seen = {}
        for rid, r in enumerate(self.relators):
            surviving = tuple(p for p, a in enumerate(r) if self.weight_of(a) < c)
            wbar = tuple(r[p] for p in surviving)
            if not free_reduce(wbar) or wbar in seen:
                continue
            seen[wbar] = True
            relators.append(wbar)
            lift_table.append((rid, surviving))
        quot = Presentation(
            self.names[: len(keep)],
            self.weights[: len(keep)],
            relators,
            c - 1,
            self.parents[: len(keep)],
        )
        quot.lift_table = tuple(lift_table)
        quot.parent = self
        self._quotient = quot
        return quot


# --- chain presentations ---------------------------------------------------


def _signed(letters) -> list:
    out = []
    for i in letters:
        out.append(i)
        out.append(-i)
    return out


def _nested_relators(letter_pool, entries: int):
    """All nested commutators with ``entries`` entries over the signed pool,
    pruned of freely trivial words and exact duplicates, in enumeration order."""
    out = []
    seen = set()
    for combo in itertools.product(letter_pool, repeat=entries):
        r = nested_commutator(combo)
        if r in seen or not free_reduce(r):
            continue
        seen.add(r)
        out.append(r)
    return out


@lru_cache(maxsize=None)
def build_chain_presentation(c: int, k: int) -> Presentation:
    """P_k: generators x_k..x_c, relators all nested commutators of
    c+2-k entries over the signed generators.  Presents the free
    nilpotent group of class c+1-k."""
    if not 1 <= k <= c:
        raise OutOfRange(f"need 1 <= k <= c, got k={k}, c={c}")
    names = [f"x{j}" for j in range(k, c + 1)]
    pool = _signed(range(1, len(names) + 1))
    relators = _nested_relators(pool, c + 2 - k)
    return Presentation(names, [1] * len(names), relators, c + 1 - k)


# --- filler presentations --------------------------------------------------


def _defining_chain(parents, i: int) -> tuple:
    pair = parents[i - 1]
    if pair is None:
        return (i,)
    x, y = pair
    return _defining_chain(parents, x) + _defining_chain(parents, y)


def _filler_generators(c: int, m: int):
    if m > 9:
        raise OutOfRange("generator naming supports at most 9 weight-1 letters")
    names = [f"x{i}" for i in range(1, m + 1)]
    weights = [1] * m
    parents: list = [None] * m
    level = list(range(1, m + 1))
    for w in range(2, c + 1):
        nxt = []
        for x in range(1, m + 1):
            for y in level:
                idx = len(names) + 1
                names.append("g" + "".join(str(d) for d in
                                           _defining_chain(parents, x)
                                           + _defining_chain(parents, y)))
                weights.append(w)
                parents.append((x, y))
                nxt.append(idx)
        level = nxt
    return names, weights, parents


def weight_c_basis(pres: Presentation):
    """Greedy basis of the weight-c letters with independent Lie vectors,
    plus integer rewrite words for the remaining ones.

    Returns (basis_letters, rewrite, vectors) where rewrite maps each
    non-basis weight-c letter to a word over the basis letters and vectors
    maps every weight-c letter to its Lyndon coordinate tuple.
    """
    if pres._basis is not None:
        return pres._basis
    c = pres.nclass
    lbasis = oracle.lyndon_basis(pres.weight1_count, c)
    letters = pres.letters_of_weight(c)
    vectors = {i: oracle.weight_exponents(pres.expand_letter(i), lbasis)
               for i in letters}
    chosen: list[int] = []
    echelon: list[list] = []  # reduced rows spanning the chosen vectors

    def try_reduce(vec):
        from fractions import Fraction

        row = [Fraction(x) for x in vec]
        for er in echelon:
            p = next(i for i, x in enumerate(er) if x != 0)
            if row[p] != 0:
                f = row[p] / er[p]
                row = [a - f * b for a, b in zip(row, er)]
        return row

    for i in letters:
        row = try_reduce(vectors[i])
        if any(row):
            chosen.append(i)
            echelon.append(row)
            echelon.sort(key=lambda r: next(j for j, x in enumerate(r) if x != 0))
    basis_vecs = [vectors[i] for i in chosen]
    rewrite = {}
    for i in letters:
        if i in chosen:
            continue
        sol = oracle.solve_in_basis(vectors[i], basis_vecs)
        if sol is None:
            raise UnsupportedIndex(f"(letter {pres.names[i - 1]})")
        w: list[int] = []
        for z, e in zip(chosen, sol):
            w.extend([z if e > 0 else -z] * abs(e))
        rewrite[i] = tuple(w)
    pres._basis = (chosen, rewrite, vectors)
    return pres._basis


def _lift_to_class(pres: Presentation, r: Word, basis_letters, basis_vecs) -> Word:
    """Make a relator of the class-(c-1) quotient true at class c by
    appending the inverse of its weight-c value."""
    series = pres.eval_series(r)
    if oracle.is_unit(series):
        return r
    lbasis = oracle.lyndon_basis(pres.weight1_count, pres.nclass)
    coords = oracle.weight_exponents(pres.expand_word(r), lbasis)
    sol = oracle.solve_in_basis(coords, basis_vecs)
    if sol is None:
        raise UnsupportedIndex(f"(lift of relator of length {len(r)})")
    v: list[int] = []
    for z, e in zip(basis_letters, sol):
        v.extend([z if e > 0 else -z] * abs(e))
    return r + inverse_word(tuple(v))


@lru_cache(maxsize=None)
def build_filler_presentation(c: int, m: int) -> Presentation:
    """Presentation on A = A_1 u ... u A_c for the free nilpotent group of
    class c on m generators, arranged so that the top-weight projection is
    again a working filler presentation.

    Relator families: definitions of compound letters; class relators (all
    nested commutators of c+1 entries over the signed weight-1 letters);
    centrality of weight-c letters against everything; basis-change words
    for the dependent weight-c letters; and lifts of the entire class-(c-1)
    relator set, corrected by weight-c words so they hold at class c.
    """
    if c < 1 or m < 1:
        raise OutOfRange(f"need c >= 1 and m >= 1, got c={c}, m={m}")
    names, weights, parents = _filler_generators(c, m)
    skeleton = Presentation(names, weights, [], c, parents)
    pool1 = _signed(range(1, m + 1))

    relators: list[Word] = []
    seen: set = set()

    def add(r: Word):
        if r and free_reduce(r) and r not in seen:
            seen.add(r)
            relators.append(r)

    # (a) definition relators g^-1 [x, y]
    for i in range(m + 1, len(names) + 1):
        x, y = parents[i - 1]
        add((-i,) + commutator((x,), (y,)))

    # (b) class relators over the weight-1 alphabet
    for r in _nested_relators(pool1, c + 1):
        add(r)

    # (c) centrality of weight-c letters
    ac = [i + 1 for i, w in enumerate(weights) if w == c]
    for x in _signed(range(1, len(names) + 1)):
        for z in _signed(ac):
            add(commutator((x,), (z,)))

    # (d) basis-change relators for dependent weight-c letters
    basis_letters, rewrite, vectors = weight_c_basis(skeleton)
    for i, v in rewrite.items():
        add((i,) + inverse_word(v))

    # (e) lifts of the class-(c-1) relator set
    if c >= 2:
        prev = build_filler_presentation(c - 1, m)
        basis_vecs = [vectors[i] for i in basis_letters]
        for r in prev.relators:
            add(_lift_to_class(skeleton, r, basis_letters, basis_vecs))

    pres = Presentation(names, weights, relators, c, parents)
    pres._basis = skeleton._basis
    return pres


# --- file format -----------------------------------------------------------
#
# Line-oriented: `class C`, `gen NAME WEIGHT`, `rel WORD`; comments on `#`.


def save_presentation(pres: Presentation, path) -> None:
    lines = [f"class {pres.nclass}"]
    lines += [f"gen {n} {w}" for n, w in zip(pres.names, pres.weights)]
    lines += [f"rel {pres.format_word(r)}" for r in pres.relators]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_presentation(path) -> Presentation:
    names: list[str] = []
    weights: list[int] = []
    rel_texts: list[str] = []
    nclass = None
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            kind, _, rest = line.partition(" ")
            if kind == "class":
                nclass = int(rest)
            elif kind == "gen":
                name, wt = rest.split()
                names.append(name)
                weights.append(int(wt))
            elif kind == "rel":
                rel_texts.append(rest)
            else:
                raise NilfillError(f"bad presentation line {line!r}")
    if nclass is None:
        raise NilfillError("presentation file lacks a class line")
    table = {n: i + 1 for i, n in enumerate(names)}
    relators = [parse_word(t, table) for t in rel_texts]
    return Presentation(names, weights, relators, nclass)
