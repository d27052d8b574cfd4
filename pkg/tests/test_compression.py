import pytest

from nilfill import oracle
from nilfill.compression import (
    CompressedPower,
    compression_word,
    digits,
    extended_compression,
    extended_word,
    chain_context,
    increment_sequence,
    power_compression_sequence,
    transport_central,
)
from nilfill.engine import replay, validate_null
from nilfill.errors import NoTransportRelator, OutOfRange
from nilfill.presentations import build_chain_presentation
from nilfill.words import free_reduce, inverse_word, nested_commutator, power


def chain_setup(c):
    pres = build_chain_presentation(c, 1)
    return pres, tuple(range(1, c + 1))


def oracle_equal(pres, u, v):
    return pres.is_identity(u + inverse_word(v))


# --- digits ----------------------------------------------------------------


def test_digits_examples():
    assert digits(0, 3, 2) == (0, 0)
    assert digits(3**2 - 1, 3, 2) == (2, 2)
    assert digits(5, 2, 3) == (1, 0, 1)


def test_digits_range_errors():
    with pytest.raises(OutOfRange):
        digits(8, 2, 3)
    with pytest.raises(OutOfRange):
        digits(-1, 2, 3)
    with pytest.raises(OutOfRange):
        digits(0, 1, 3)


# --- compression words ------------------------------------------------------


def test_compression_word_c1():
    pres, chain = chain_setup(1)
    for s in range(5):
        assert compression_word(pres, chain, 4, s) == (1,) * s


def test_compression_word_full_power():
    pres, chain = chain_setup(2)
    w = compression_word(pres, chain, 2, 4)
    assert w == (-1, -1, -2, -2, 1, 1, 2, 2)


def test_compression_word_c2_s3():
    pres, chain = chain_setup(2)
    w = compression_word(pres, chain, 2, 3)
    z1 = (-1, -2, 1, 2)
    assert w == z1 + (-1, -1, -2, 1, 1, 2)
    # oracle: same series as z1^3, namely 1 + 3(X1X2 - X2X1) at degree 2
    ctx = oracle.series_context(2, 2)
    vec = oracle.eval_word(w, 2, 2)
    expected = ctx.unit()
    expected[ctx.index[(1, 2)]] = 3
    expected[ctx.index[(2, 1)]] = -3
    assert vec == expected
    assert oracle_equal(pres, w, z1 * 3)


def test_compression_word_zero_reduces_to_empty():
    for c in (2, 3):
        pres, chain = chain_setup(c)
        assert free_reduce(compression_word(pres, chain, 2, 0)) == ()


@pytest.mark.parametrize("c,n", [(1, 2), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_compression_word_oracle_exhaustive(c, n):
    pres, chain = chain_setup(c)
    z1 = nested_commutator(chain)
    for s in range(n**c + 1):
        w = compression_word(pres, chain, n, s)
        assert oracle_equal(pres, w, z1 * s), (c, n, s)


def test_compression_word_length_linear():
    # length of ztilde^s is at most a class constant times n
    for c in (2, 3):
        pres, chain = chain_setup(c)
        for n in (2, 3, 4):
            for s in range(n**c + 1):
                w = compression_word(pres, chain, n, s)
                assert len(w) <= 30 * n


# --- increments -------------------------------------------------------------


def test_increment_c1_trivial():
    pres, chain = chain_setup(1)
    for s in range(3):
        seq = increment_sequence(pres, chain, 4, s)
        assert seq.moves == []
        assert seq.initial == (1,) * (s + 1)


def test_increment_no_carry_is_trivial():
    pres, chain = chain_setup(2)
    seq = increment_sequence(pres, chain, 2, 0)
    m, final = replay(seq)
    assert m.area == 0
    assert final == compression_word(pres, chain, 2, 1)


def test_increment_carry_c2():
    pres, chain = chain_setup(2)
    z1 = nested_commutator(chain)
    seq = increment_sequence(pres, chain, 2, 1)
    assert seq.initial == z1 + compression_word(pres, chain, 2, 1)
    m, final = replay(seq)
    assert final == compression_word(pres, chain, 2, 2)
    assert m.area > 0
    # k = 1 since 2 | s+1 = 2 but 4 does not
    assert m.area <= 20 * 2 ** 2
    assert oracle_equal(pres, seq.initial, final)


def grid_increments(c, n):
    pres, chain = chain_setup(c)
    for s in range(n**c):
        seq = increment_sequence(pres, chain, n, s)
        m, final = replay(seq)
        assert seq.initial == nested_commutator(chain) + compression_word(pres, chain, n, s)
        assert final == compression_word(pres, chain, n, s + 1)
        k = 0
        v = s + 1
        while v % n == 0:
            v //= n
            k += 1
        yield s, k, m


@pytest.mark.parametrize("c,n", [(2, 2), (2, 3), (3, 2)])
def test_increment_grid_valid_and_bounded(c, n):
    areas = {}
    for s, k, m in grid_increments(c, n):
        areas.setdefault(k, []).append(m.area)
        assert m.area <= m.height
    # valuation law: nontrivial area only on carries
    assert all(a == 0 for a in areas.get(0, []))


# --- block transport --------------------------------------------------------


def test_transport_block_costs_length():
    pres, chain = chain_setup(2)
    z1 = nested_commutator(chain)
    # move z1 left past x1^3: cost exactly 3 applications
    w = (1, 1, 1) + z1
    seq = transport_central(pres, w, chain, +1, 3, 0)
    m, final = replay(seq)
    assert final == z1 + (1, 1, 1)
    assert m.area == 3
    # and back to the right
    seq2 = transport_central(pres, final, chain, +1, 0, 3)
    m2, final2 = replay(seq2)
    assert final2 == w
    assert m2.area == 3


def test_transport_inverse_block():
    pres, chain = chain_setup(2)
    z1inv = inverse_word(nested_commutator(chain))
    w = (-2,) + z1inv
    seq = transport_central(pres, w, chain, -1, 1, 0)
    m, final = replay(seq)
    assert final == z1inv + (-2,)
    assert m.area == 1


def test_transport_level2_relator_past_x1():
    # moving a level-2 transport relator block past a level-1 letter
    pres, chain = chain_setup(3)
    r = nested_commutator((2, 2, 3))  # [x2, x2, x3], central at class 3
    w = (1,) + r
    seq = transport_central(pres, w, (2, 2, 3), +1, 1, 0)
    m, final = replay(seq)
    assert final == r + (1,)
    assert m.area == 1


def test_transport_missing_relator():
    pres, chain = chain_setup(2)
    with pytest.raises(NoTransportRelator):
        # a chain of c letters needs a (c+1)-entry relator, which P_1 has,
        # but a (c+1)-chain needs (c+2) entries, which it lacks
        transport_central(pres, (1,) + nested_commutator((1, 2, 2)), (1, 2, 2), +1, 1, 0)


# --- power compression ------------------------------------------------------


def test_power_compression_c1_zero_moves():
    pres, chain = chain_setup(1)
    seq = power_compression_sequence(pres, chain, 3)
    assert seq.moves == []
    assert seq.initial == (1, 1, 1)


def test_power_compression_c2_n2():
    pres, chain = chain_setup(2)
    z1 = nested_commutator(chain)
    seq = power_compression_sequence(pres, chain, 2)
    assert seq.initial == z1 * 4
    m, final = replay(seq)
    assert final == compression_word(pres, chain, 2, 4) == (-1, -1, -2, -2, 1, 1, 2, 2)
    assert oracle_equal(pres, seq.initial, final)
    assert m.area <= m.height


@pytest.mark.parametrize("c,n", [(2, 2), (2, 3), (2, 4), (3, 2)])
def test_power_compression_validates_and_scales(c, n):
    pres, chain = chain_setup(c)
    seq = power_compression_sequence(pres, chain, n)
    m, final = replay(seq)
    assert final == compression_word(pres, chain, n, n**c)
    # the untouched power prefix dominates every intermediate word, so the
    # linear filling-length bound applies to the surplus beyond it
    assert m.fl <= len(seq.initial) + 40 * n
    assert m.area <= 40 * n ** (c + 1)


# --- extended compression ----------------------------------------------------


def test_extended_word_conventions():
    pres, chain = chain_setup(2)
    ctx = chain_context(pres, chain)
    assert extended_word(ctx, 2, 0) == ()
    block = compression_word(pres, chain, 2, 4)
    assert extended_word(ctx, 2, 4) == block
    assert extended_word(ctx, 2, 6) == compression_word(pres, chain, 2, 2) + block


def test_extended_compression_oracle():
    pres, chain = chain_setup(2)
    z1 = nested_commutator(chain)
    for q in (0, 1, 4, 6, 9):
        word, seq = extended_compression(pres, chain, 2, q)
        m, final = replay(seq)
        assert final == word
        assert seq.initial == z1 * q
        assert oracle_equal(pres, word, z1 * q), q


def test_compressed_power_register():
    pres, chain = chain_setup(2)
    from nilfill.engine import SequenceBuilder

    reg = CompressedPower(pres, chain, 2)
    z1 = nested_commutator(chain)
    b = SequenceBuilder(pres, z1 * 6)
    for s in range(6):
        reg.emit_increment(b, (6 - s - 1) * len(z1))
    assert reg.q == 6
    assert b.word == list(reg.word)
    # mirrored register: (ztilde^q)^-1 built from the right
    regm = CompressedPower(pres, chain, 2)
    bm = SequenceBuilder(pres, inverse_word(z1 * 6))
    for s in range(6):
        regm.emit_increment_mirror(bm, len(bm.word) - s * 0 - (6 - s - 1) * len(z1))
    assert bm.word == list(inverse_word(regm.word))


# --- summation and counting checks -------------------------------------------


@pytest.mark.parametrize("c,n", [(2, 2), (2, 4), (3, 2), (3, 3)])
def test_counting_argument_and_total_area(c, n):
    # at most n^(c-k) exponents s in [0, n^c) have n^k dividing s+1, and the
    # increment areas sum to at most (c+1) * kappa * n^(c+1)
    kappa = {2: 16, 3: 48}[c]
    pres, chain = chain_setup(c)
    by_valuation = {}
    total_area = 0
    for s in range(n**c):
        k, v = 0, s + 1
        while v % n == 0:
            v //= n
            k += 1
        by_valuation[k] = by_valuation.get(k, 0) + 1
        m, _ = replay(increment_sequence(pres, chain, n, s))
        total_area += m.area
    for k, cnt in by_valuation.items():
        assert cnt <= n ** (c - k)
    assert total_area <= (c + 1) * kappa * n ** (c + 1)


def test_invert_increment_spec_example():
    # inverting a carry increment gives (ztilde^s)^-1 z1^-1 -> (ztilde^{s+1})^-1
    from nilfill.engine import invert_sequence

    pres, chain = chain_setup(2)
    seq = increment_sequence(pres, chain, 3, 2)  # s+1 = 3 = n, a carry
    inv = invert_sequence(seq)
    m0, _ = replay(seq)
    m1, final = replay(inv)
    assert inv.initial == inverse_word(seq.initial)
    assert final == inverse_word(compression_word(pres, chain, 3, 3))
    assert (m1.area, m1.fl, m1.height) == (m0.area, m0.fl, m0.height)


def test_fill_multi_register_m3():
    from nilfill.filler import fill_with_report
    from nilfill.presentations import build_filler_presentation
    from nilfill.engine import validate_null
    from nilfill.corpus import corpus_generate

    pres = build_filler_presentation(2, 3)
    for w in corpus_generate(pres, 18, 12, seed=13):
        seq, report = fill_with_report(w, pres)
        validate_null(seq)
        assert report.max_register <= report.register_bound


def test_power_compression_class4():
    # three levels of concurrent lifting; endpoints exact and oracle-confirmed
    pres, chain = chain_setup(4)
    seq = power_compression_sequence(pres, chain, 2)
    m, final = replay(seq)
    assert final == compression_word(pres, chain, 2, 16)
    assert oracle_equal(pres, seq.initial, final)
