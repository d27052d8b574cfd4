"""Shared test utilities."""

from nilfill.engine import SequenceBuilder
from nilfill.words import inverse_word


def random_valid_sequence(pres, rng, start=None, steps=12):
    """Random walk over applicable moves, biased to exercise every kind."""
    letters = [s for i in range(1, pres.rank + 1) for s in (i, -i)]
    if start is None:
        start = tuple(rng.choice(letters) for _ in range(rng.randrange(6)))
    b = SequenceBuilder(pres, start)
    for _ in range(steps):
        kind = rng.random()
        w = b.word
        if kind < 0.3:
            sites = [i for i in range(len(w) - 1) if w[i] == -w[i + 1]]
            if sites:
                b.fr(rng.choice(sites))
                continue
        if kind < 0.55:
            b.fe(rng.randrange(len(w) + 1), rng.choice(letters))
            continue
        rid = rng.randrange(len(pres.relators))
        r = pres.relators[rid]
        n = len(r)
        shift, inv = rng.randrange(n), rng.randrange(2)
        split = rng.randrange(n + 1)
        rv = inverse_word(r) if inv else r
        rot = rv[shift:] + rv[:shift]
        u = list(rot[:split])
        hits = [i for i in range(len(w) - split + 1) if w[i:i + split] == u]
        if hits:
            b.ar(rng.choice(hits), rid, shift, inv, split)
        else:
            b.ar(rng.randrange(len(w) + 1), rid, shift, inv, 0)
    return b.finish()
