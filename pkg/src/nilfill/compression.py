"""Compression words and the sequences that build them.

For a chain of weight-1 letters (a_1, ..., a_c) write z_k for the nested
commutator word [a_k, ..., a_c].  The compression word for an exponent
0 <= s <= n^c has length O(n) and equals z_1^s in the class-c group:

    ztilde^s     = z_1^{s_0} [a_1^n, z_2^{s_1} [a_2^n, ...]]
    ztilde^{n^c} = [a_1^n, a_2^n, ..., a_c^n]

with (s_0, ..., s_{c-1}) the base-n digits of s.  Increment sequences
transform z_1 ztilde^s into ztilde^{s+1}; concatenating all of them
compresses z_1^{n^c} with area O(n^{c+1}) and filling length O(n).

Every relator application emitted here is a transport: a central block
(a nested commutator word or its inverse) swaps with an adjacent letter.
Transports come in two shapes.  The split form replaces the block-letter
pair in one move.  The exact form inserts a whole unrotated relator (or
inverse) and reduces; sequences built this way can be lifted one chain
level down, where each insertion is re-created by free expansions and the
leftover inverse block is transported to its mirror position.
"""

from __future__ import annotations

from .engine import PSequence, SequenceBuilder, apply_move_inplace, invert_sequence
from .errors import NoTransportRelator, OutOfRange
from .presentations import Presentation
from .words import Word, inverse_word, nested_commutator


def digits(s: int, n: int, c: int):
    """Little-endian base-n digits of s, exactly c of them."""
    if n < 2:
        raise OutOfRange(f"base must be at least 2, got {n}")
    if not 0 <= s <= n**c - 1:
        raise OutOfRange(f"need 0 <= s <= n^c - 1, got s={s}")
    out = []
    for _ in range(c):
        out.append(s % n)
        s //= n
    return tuple(out)


class _ScratchPresentation:
    """Mutable relator pool for the inner chain levels.

    The level-k increment for k >= 2 is a sequence over the subchain
    presentation, whose relators are not relators of the ambient group.
    Those inner sequences are scaffolding: each of their applications is
    re-created in the ambient presentation by free expansions plus
    transports, so the pool only has to name the inserted words."""

    def __init__(self, base: Presentation):
        self.names = base.names
        self.weights = base.weights
        self.rank = base.rank
        self.relators: list = []
        self._index: dict = {}

    def ensure(self, word) -> int:
        rid = self._index.get(word)
        if rid is None:
            rid = len(self.relators)
            self.relators.append(word)
            self._index[word] = rid
        return rid


class ChainContext:
    """A commutator chain bound to a presentation holding its transport
    relators.  Letters are weight-1 generator indices and may repeat."""

    def __init__(self, pres: Presentation, chain):
        self.pres = pres
        self.chain = tuple(chain)
        if not self.chain:
            raise OutOfRange("empty commutator chain")
        for a in self.chain:
            if a < 1 or pres.weight_of(a) != 1:
                raise OutOfRange(f"chain letter {a} is not a weight-1 generator")
        self.c = len(self.chain)
        self.z_words = [nested_commutator(self.chain[k:]) for k in range(self.c)]
        self.scratch = _ScratchPresentation(pres)
        self._movers = {}
        self.rid_chain = {}

    def level_presentation(self, level: int):
        return self.pres if level == 0 else self.scratch

    def mover(self, block_chain, level: int) -> "BlockMover":
        block_chain = tuple(block_chain)
        key = (block_chain, level == 0)
        m = self._movers.get(key)
        if m is None:
            m = BlockMover(self.level_presentation(level), block_chain,
                           registry=self.rid_chain)
            self._movers[key] = m
        return m


def chain_context(pres: Presentation, chain) -> ChainContext:
    try:
        cache = pres._chain_ctxs
    except AttributeError:
        cache = pres._chain_ctxs = {}
    key = tuple(chain)
    ctx = cache.get(key)
    if ctx is None:
        ctx = ChainContext(pres, key)
        cache[key] = ctx
    return ctx


class BlockMover:
    """Transport of the central block W^s (W the nested commutator of
    ``block_chain``, s = +-1) past single letters, in both move shapes.

    Needs the presentation to contain the relator [t, chain] for every
    letter t that the block passes."""

    def __init__(self, pres: Presentation, block_chain, registry=None):
        self.pres = pres
        self.chain = tuple(block_chain)
        self.word = nested_commutator(self.chain)
        self.length = len(self.word)
        self.registry = registry
        self._rids = {}

    def _rid(self, t: int) -> int:
        """Relator id of the transport commutator [t, chain]."""
        rid = self._rids.get(t)
        if rid is None:
            rho = nested_commutator((t,) + self.chain)
            if isinstance(self.pres, _ScratchPresentation):
                rid = self.pres.ensure(rho)
            else:
                rid = self.pres.relator_index.get(rho)
                if rid is None:
                    raise NoTransportRelator(
                        f"presentation lacks [{t}, {self.chain}] transport relator"
                    )
            self._rids[t] = rid
            if self.registry is not None:
                self.registry[rid] = (t,) + self.chain
        return rid

    def _free_swap(self, b: SequenceBuilder, p: int, keep_first: int) -> bool:
        """A single-letter block meeting its own inverse swaps freely:
        cancel the pair and re-expand it the other way round."""
        w = b.word
        if self.length != 1 or w[p] != -w[p + 1]:
            return False
        b.fr(p)
        b.fe(p, keep_first)
        return True

    def step_left(self, b: SequenceBuilder, p: int, sign: int, exact: bool) -> None:
        """Swap letter at p with the block at [p+1, p+1+L) (block moves left)."""
        L = self.length
        t = b.word[p]
        if L == 1 and t == -b.word[p + 1] and self._free_swap(b, p, b.word[p + 1]):
            return
        if exact:
            if sign > 0:
                b.ar(p + 1 + L, self._rid(t), 0, 0, 0)  # insert [t,W]^-1 after
                b.reduce_adjacent_blocks(p + 1, L)
                b.fr(p)
            else:
                b.ar(p, self._rid(-t), 0, 0, 0)  # insert [t^-1,W]^-1 before
                b.fr(p + 2 * L + 1)
                b.reduce_adjacent_blocks(p + L + 1, L)
        else:
            if sign > 0:
                b.ar(p, self._rid(t), L + 1, 0, L + 1)
            else:
                b.ar(p, self._rid(-t), 0, 0, L + 1)

    def step_right(self, b: SequenceBuilder, p: int, sign: int, exact: bool) -> None:
        """Swap the block at [p, p+L) with the letter at p+L (block moves right)."""
        L = self.length
        t = b.word[p + L]
        if L == 1 and t == -b.word[p] and self._free_swap(b, p, t):
            return
        if exact:
            if sign > 0:
                b.ar(p + L + 1, self._rid(t), 0, 1, 0)  # insert [t,W] after
                b.fr(p + L)
                b.reduce_adjacent_blocks(p, L)
            else:
                b.ar(p, self._rid(-t), 0, 1, 0)  # insert [t^-1,W] before
                b.reduce_adjacent_blocks(p + L + 2, L)
                b.fr(p + L + 1)
        else:
            if sign > 0:
                b.ar(p, self._rid(t), L + 1, 1, L + 1)
            else:
                b.ar(p, self._rid(-t), 0, 1, L + 1)

    def move_left(self, b, start: int, target: int, sign: int, exact: bool) -> None:
        while start > target:
            self.step_left(b, start - 1, sign, exact)
            start -= 1

    def move_right(self, b, start: int, target: int, sign: int, exact: bool) -> None:
        while start < target:
            self.step_right(b, start, sign, exact)
            start += 1


def compression_word(pres: Presentation, chain, n: int, s: int) -> Word:
    """The compression word for z_1^s; s = n^c gives [a_1^n, ..., a_c^n]."""
    ctx = chain_context(pres, chain)
    return _cword(ctx, 0, n, s)


def _cword(ctx: ChainContext, level: int, n: int, s: int) -> Word:
    if n < 2:
        raise OutOfRange(f"base must be at least 2, got {n}")
    chain = ctx.chain[level:]
    c = len(chain)
    if not 0 <= s <= n**c:
        raise OutOfRange(f"need 0 <= s <= n^{c}, got {s}")
    if c == 1:
        return (chain[0],) * s
    a = chain[0]
    if s == n**c:
        return _commutator_block((a,) * n, _cword(ctx, level + 1, n, n ** (c - 1)))
    s0 = s % n
    tail = _commutator_block((a,) * n, _cword(ctx, level + 1, n, s // n))
    return ctx.z_words[level] * s0 + tail


def _commutator_block(u: Word, v: Word) -> Word:
    return inverse_word(u) + inverse_word(v) + u + v


def insert_trivial_word(b: SequenceBuilder, pos: int, w: Word) -> None:
    """Free-expand a freely trivial word at pos (len(w)/2 expansions)."""
    work = list(w)
    steps = []
    i = 0
    while i + 1 < len(work):
        if work[i] == -work[i + 1]:
            steps.append((i, work[i]))
            del work[i : i + 2]
            if i > 0:
                i -= 1
        else:
            i += 1
    if work:
        raise OutOfRange("word is not freely trivial")
    for p, a in reversed(steps):
        b.fe(pos + p, a)


def increment_sequence(pres: Presentation, chain, n: int, s: int) -> PSequence:
    """A valid sequence from z_1 ztilde^s to ztilde^{s+1}.

    Empty of relator applications when the low digit does not carry;
    otherwise it follows the carry construction: transport z_2 past a_1^n
    introducing and cancelling n copies of z_1, then run the level-2
    increment concurrently with its inverse on the two halves of the
    commutator, re-creating each inner insertion by free expansions and
    transporting the inverse block to the mirror position.
    """
    ctx = chain_context(pres, chain)
    return _increment(ctx, 0, n, s, exact=False)


def _increment(ctx: ChainContext, level: int, n: int, s: int, exact: bool) -> PSequence:
    chain = ctx.chain[level:]
    c = len(chain)
    if not 0 <= s <= n**c - 1:
        raise OutOfRange(f"need 0 <= s <= n^{c} - 1, got {s}")
    zw = ctx.z_words[level]
    initial = zw + _cword(ctx, level, n, s)
    b = SequenceBuilder(ctx.level_presentation(level), initial)
    s0 = s % n
    if c > 1 and s0 + 1 == n:
        _carry(ctx, b, level, n, s, exact)
    expected = _cword(ctx, level, n, s + 1)
    if b.word != list(expected):
        raise AssertionError(
            f"increment endpoint mismatch at level {level}, s={s}"
        )
    return b.finish()


def _carry(ctx: ChainContext, b: SequenceBuilder, level, n, s, exact) -> None:
    chain = ctx.chain[level:]
    a = chain[0]
    zw = ctx.z_words[level]
    z2w = ctx.z_words[level + 1]
    lz, lz2 = len(zw), len(z2w)
    t = s // n
    tword = _cword(ctx, level + 1, n, t)
    lt = len(tword)
    zmover = ctx.mover(chain, level)

    # word: zw^n a^-n tword^-1 a^n tword.  Insert z2^-1 z2 before a^n.
    b.insert_inverse_pair(n * lz + n + lt, z2w)

    for i in range(n):
        # z2 block before its i-th swap with the letter a
        p = (n - i) * lz + n + lt + lz2 + i
        b.fe(p, a)
        b.insert_pair_inverse(p + 1, z2w)
        # new z_level^-1 block starts right of the fresh z2 copy
        start = p + 1 + lz2
        boundary = (n - i) * lz
        zmover.move_left(b, start, boundary, -1, exact)
        b.reduce_adjacent_blocks(boundary - lz, lz)

    # word: a^-n tword^-1 z2^-1 a^n z2 tword; run the level-2 increment
    # and its inverse concurrently on the two halves.
    inner = _increment(ctx, level + 1, n, t, exact=True)
    rh = list(inner.initial)
    for mv in inner.moves:
        lcur = len(rh)
        off_lh = n
        off_rh = n + lcur + n
        op = mv[0]
        if op == "fr":
            b.fr(off_rh + mv[1])
            b.fr(off_lh + lcur - mv[1] - 2)
        elif op == "fe":
            b.fe(off_rh + mv[1], mv[2])
            b.fe(off_lh + lcur - mv[1], mv[2])
        else:
            _, pos, rid, shift, inv, split = mv
            if shift or split:
                raise AssertionError("liftable sequences must insert whole relators")
            block_chain = ctx.rid_chain[rid]
            relator = ctx.scratch.relators[rid]
            # inserted word is r^-1 (inv=0) or r (inv=1); the leftover
            # block transported to the mirror is its inverse
            inserted = relator if inv else inverse_word(relator)
            sign = -1 if inv else 1
            here = off_rh + pos
            b.insert_inverse_pair(here, inserted)
            target = off_lh + lcur - pos
            ctx.mover(block_chain, level).move_left(b, here, target, sign, exact)
        apply_move_inplace(rh, mv, ctx.scratch)


def transport_central(pres: Presentation, w: Word, chain, sign: int,
                      start: int, target: int) -> PSequence:
    """Move the block W^sign (W the nested commutator of ``chain``) occupying
    ``start`` in w to ``target``, one relator application per letter passed."""
    mover = BlockMover(pres, chain)
    b = SequenceBuilder(pres, w)
    if target <= start:
        mover.move_left(b, start, target, sign, exact=False)
    else:
        mover.move_right(b, start, target, sign, exact=False)
    return b.finish()


def power_compression_sequence(pres: Presentation, chain, n: int) -> PSequence:
    """From z_1^{n^c} to [a_1^n, ..., a_c^n] by folding all increments.

    Area is bounded by a constant times n^{c+1} and filling length by a
    constant times n; both are measured, not asserted, here.
    """
    if n < 2:
        raise OutOfRange(f"base must be at least 2, got {n}")
    ctx = chain_context(pres, chain)
    c = ctx.c
    zw = ctx.z_words[0]
    lz = len(zw)
    total = n**c
    b = SequenceBuilder(pres, zw * total)
    pad = _cword(ctx, 0, n, 0)
    if c > 1:
        insert_trivial_word(b, total * lz, pad)
    for s in range(total):
        offset = (total - s - 1) * lz
        inc = _increment(ctx, 0, n, s, exact=False)
        b.replay_embedded(inc.moves, offset)
    if b.word != list(_cword(ctx, 0, n, total)):
        raise AssertionError("power compression endpoint mismatch")
    return b.finish()


def extended_compression(pres: Presentation, chain, n: int, q: int):
    """Compression word for arbitrary q >= 0 (blocks of [a_1^n,...,a_c^n]
    beyond n^c) and a sequence reaching it from z_1^q."""
    if q < 0:
        raise OutOfRange(f"need q >= 0, got {q}")
    ctx = chain_context(pres, chain)
    c = ctx.c
    word = extended_word(ctx, n, q)
    zw = ctx.z_words[0]
    lz = len(zw)
    b = SequenceBuilder(pres, zw * q)
    reg = CompressedPower(pres, chain, n)
    for s in range(q):
        offset = (q - s - 1) * lz
        reg.emit_increment(b, offset)
    if b.word != list(word):
        raise AssertionError("extended compression endpoint mismatch")
    return word, b.finish()


def extended_word(ctx: ChainContext, n: int, q: int) -> Word:
    """ztilde^A (ztilde^{n^c})^B for q = A + B n^c; no padding when A = 0."""
    c = ctx.c
    cap = n**c
    a_part, blocks = q % cap, q // cap
    block = _cword(ctx, 0, n, cap)
    head = _cword(ctx, 0, n, a_part) if a_part else ()
    return head + block * blocks


class CompressedPower:
    """A register holding ztilde^q for a growing exponent q.

    ``emit_increment`` turns z_1 ztilde^q (the z_1 word sitting at
    ``offset`` in the builder, the register word right after it) into
    ztilde^{q+1}; the mirrored variant works on the inverse word, with the
    z_1^-1 word arriving on the right.  Crossing into a new block happens
    exactly when n^c divides q+1.
    """

    def __init__(self, pres: Presentation, chain, n: int):
        if n < 2:
            raise OutOfRange(f"base must be at least 2, got {n}")
        self.ctx = chain_context(pres, chain)
        self.n = n
        self.q = 0
        self._word_cache = (0, ())

    @property
    def word(self) -> Word:
        q, w = self._word_cache
        if q != self.q:
            w = extended_word(self.ctx, self.n, self.q)
            self._word_cache = (self.q, w)
        return w

    @property
    def z_word(self) -> Word:
        return self.ctx.z_words[0]

    def local_moves(self):
        """(initial, moves) on the subword z_1w . ztilde^{A-part}; blocks
        to the right are never touched."""
        ctx, n = self.ctx, self.n
        cap = n**ctx.c
        a_part = self.q % cap
        zw = ctx.z_words[0]
        b = SequenceBuilder(ctx.pres, zw + (_cword(ctx, 0, n, a_part) if a_part else ()))
        if a_part == 0 and ctx.c > 1:
            insert_trivial_word(b, len(zw), _cword(ctx, 0, n, 0))
        inc = _increment(ctx, 0, n, a_part, exact=False)
        b.replay_embedded(inc.moves, 0)
        return b.initial, b.moves

    def emit_increment(self, b: SequenceBuilder, offset: int) -> None:
        _, moves = self.local_moves()
        b.replay_embedded(moves, offset)
        self.q += 1

    def emit_increment_mirror(self, b: SequenceBuilder, end: int) -> None:
        """Mirrored absorption: ... (ztilde^q)^-1 z_1^-1 ... ending at ``end``."""
        initial, moves = self.local_moves()
        inv = invert_sequence(PSequence(self.ctx.pres, initial, moves))
        b.replay_embedded(inv.moves, end - len(inv.initial))
        self.q += 1
