"""Words over signed generator letters.

A letter is a non-zero int: ``+k`` is generator number ``k`` (1-based),
``-k`` its inverse.  A word is a tuple of letters; the empty tuple is the
empty word.  Generator names live in the presentation, not in the word,
so every operation here is pure integer shuffling.
"""

from __future__ import annotations

import re

from .errors import NilfillError

Letter = int
Word = tuple  # tuple[int, ...]

EPSILON: Word = ()

NAME_RE = re.compile(r"[a-z][a-z0-9_]*$")
_TOKEN_RE = re.compile(r"([a-z][a-z0-9_]*)(?:\^([+-]?[0-9]+))?$")


def word(*letters: int) -> Word:
    return tuple(letters)


def length(w: Word) -> int:
    return len(w)


def inverse_word(w: Word) -> Word:
    """Reverse the word and flip every sign."""
    return tuple(-a for a in reversed(w))


def free_reduce(w: Word) -> Word:
    """Fully reduce ``w`` by removing adjacent inverse pairs.

    Single stack pass; the reduced word is unique regardless of the
    order cancellations are performed in.
    """
    out: list[int] = []
    push = out.append
    pop = out.pop
    for a in w:
        if out and out[-1] == -a:
            pop()
        else:
            push(a)
    return tuple(out)


def is_freely_trivial(w: Word) -> bool:
    return not free_reduce(w)


def power(w: Word, k: int) -> Word:
    """k-th power; negative exponents use the inverse word."""
    if k >= 0:
        return w * k
    return inverse_word(w) * (-k)


def commutator(u: Word, v: Word) -> Word:
    """The commutator word u^-1 v^-1 u v, not reduced."""
    return inverse_word(u) + inverse_word(v) + u + v


def nested_commutator(items) -> Word:
    """Right-nested commutator of words: [a1, ..., ak] = [a1, [a2, ...]].

    Each item may be a single letter (int) or a word; the one-item case
    is the word itself.  The expansion is returned without free reduction.
    """
    parts = [((it,) if isinstance(it, int) else tuple(it)) for it in items]
    if not parts:
        raise NilfillError("nested commutator of an empty list")
    acc = parts[-1]
    for u in reversed(parts[:-1]):
        acc = commutator(u, acc)
    return acc


def nested_commutator_length(k: int) -> int:
    """Length of [a1, ..., ak] over single letters: 3 * 2^(k-1) - 2."""
    return 3 * (1 << (k - 1)) - 2


# --- text grammar ---------------------------------------------------------
#
# A word is whitespace-separated tokens NAME or NAME^INT, INT a non-zero
# signed integer; NAME^-3 denotes three inverse letters.


def parse_word(text: str, name_to_index) -> Word:
    """Parse the text grammar against a name -> 1-based index mapping."""
    out: list[int] = []
    for tok in text.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise NilfillError(f"bad word token {tok!r}")
        name, exp = m.group(1), m.group(2)
        if name not in name_to_index:
            raise NilfillError(f"unknown generator {name!r}")
        idx = name_to_index[name]
        k = 1 if exp is None else int(exp)
        if k == 0:
            raise NilfillError(f"zero exponent in token {tok!r}")
        letter = idx if k > 0 else -idx
        out.extend([letter] * abs(k))
    return tuple(out)


def format_word(w: Word, names) -> str:
    """Canonical text form: maximal runs rendered as NAME or NAME^k."""
    toks: list[str] = []
    i, n = 0, len(w)
    while i < n:
        a = w[i]
        j = i
        while j < n and w[j] == a:
            j += 1
        run = j - i
        name = names[abs(a) - 1]
        k = run if a > 0 else -run
        toks.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(toks)


def format_letter(a: int, names) -> str:
    name = names[abs(a) - 1]
    return name if a > 0 else f"{name}^-1"
