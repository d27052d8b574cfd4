"""The recursive filling algorithm.

To fill a trivial word w in a filler presentation of class c: project away
the weight-c letters, fill the projection recursively in the materialized
quotient presentation, then replay that sequence upstairs.  Free moves
replay verbatim; every relator application is expanded to the lifted
relator, whose released weight-c letters are swept outward - positive
basis letters to compression registers on the right, their inverses to
mirrored registers on the left, dependent letters rewritten through the
basis on the spot.  When the projected word is gone the two register
banks mirror each other exactly and cancel freely.

The class-1 base case sorts letters generator by generator and cancels
each block: an (n^2, n) filling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .compression import BlockMover, CompressedPower
from .engine import PSequence, SequenceBuilder, normalize_insertions
from .errors import NotNullHomotopic
from .presentations import Presentation, weight_c_basis
from .words import Word, inverse_word


@dataclass(frozen=True)
class BasisSelection:
    """Weight-c letters split into a free-abelian basis and its complement."""

    basis: tuple
    complement: tuple
    rewrite_table: dict
    index: int = 1


def select_basis(pres: Presentation) -> BasisSelection:
    """Greedy basis of the weight-c letters (independent Lie vectors) with
    integer rewrite words for the rest; index 1 or UnsupportedIndex."""
    chosen, rewrite, _ = weight_c_basis(pres)
    complement = tuple(i for i in pres.letters_of_weight(pres.nclass)
                       if i not in chosen)
    return BasisSelection(tuple(chosen), complement, dict(rewrite))


def project_word(w: Word, pres: Presentation) -> Word:
    return pres.project_word(w)


@dataclass
class FillReport:
    """Runtime accounting of one fill: register growth versus its bound."""

    nclass: int
    length: int
    inner_area: int = 0
    initial_top: int = 0
    max_register: int = 0
    relator_bound_factor: int = 0
    register_base: int = 2
    inner: "FillReport | None" = None

    @property
    def register_bound(self) -> int:
        return 2 * self.relator_bound_factor * self.inner_area + 2 * self.initial_top


def fill(w: Word, pres: Presentation) -> PSequence:
    """A valid null-sequence for the trivial word w (oracle-vetoed first)."""
    seq, _ = fill_with_report(w, pres)
    return seq


def fill_with_report(w: Word, pres: Presentation):
    """fill() plus the per-level register accounting used by the bounds."""
    if not pres.is_identity(w):
        raise NotNullHomotopic(f"word of length {len(w)} is not trivial")
    return _fill_checked(w, pres)


def _fill_checked(w: Word, pres: Presentation):
    if pres.nclass == 1:
        return _abelian_fill(w, pres)
    run = _FillRun(pres, w)
    return run.execute()


def _abelian_fill(w: Word, pres: Presentation):
    """Collect each generator's letters at the front and cancel the block."""
    b = SequenceBuilder(pres, w)
    report = FillReport(nclass=1, length=len(w))
    movers = {}
    for g in range(1, pres.rank + 1):
        target = 0
        p = 0
        while p < len(b.word):
            a = b.word[p]
            if abs(a) == g:
                if p > target:
                    mover = movers.get(g)
                    if mover is None:
                        mover = movers[g] = BlockMover(pres, (g,))
                    mover.move_left(b, p, target, 1 if a > 0 else -1, exact=False)
                target += 1
            p += 1
        b.reduce_all(0)
    if b.word:
        raise AssertionError("abelian fill left a nonempty word")
    return b.finish(), report


def _iroot(value: int, k: int) -> int:
    """Integer ceiling of value**(1/k)."""
    if value <= 1:
        return value
    r = round(value ** (1.0 / k))
    while r**k < value:
        r += 1
    while (r - 1) ** k >= value:
        r -= 1
    return r


class _FillRun:
    def __init__(self, pres: Presentation, w: Word):
        self.pres = pres
        self.w = tuple(w)
        self.c = pres.nclass
        chosen, rewrite, _ = weight_c_basis(pres)
        self.basis = list(chosen)
        self.slot_of = {z: j for j, z in enumerate(chosen)}
        self.rewrite = rewrite
        self.quot = pres.project()

    def execute(self):
        pres, w, c = self.pres, self.w, self.c
        wbar = pres.project_word(w)
        inner_seq, inner_report = _fill_checked(wbar, self.quot)
        inner_norm = normalize_insertions(inner_seq)
        inner_area = sum(1 for mv in inner_norm.moves if mv[0] == "ar")

        m_factor = pres.max_weight_c_per_relator
        initial_top = sum(1 for a in w if pres.weight_of(a) == c)

        # Registers only ever increment, so the exact final exponent of each
        # register is the number of basis letters of that sign released by
        # the initial word plus all lifted relators.  Sizing the compression
        # base to that count keeps the register words short, and the busiest
        # register sits next to the working region.
        counts = self._count_releases(w, inner_norm)
        for z in self.basis:
            if counts[1][z] != counts[-1][z]:
                raise AssertionError(
                    f"unbalanced releases for basis letter {z}: "
                    f"{counts[1][z]} vs {counts[-1][z]}"
                )
        self.basis.sort(key=lambda z: (-counts[1][z] - counts[-1][z], z))
        self.slot_of = {z: j for j, z in enumerate(self.basis)}
        peak = max((counts[s][z] for s in (1, -1) for z in self.basis), default=0)
        n_base = max(2, _iroot(max(peak, 1), c))

        self.report = FillReport(
            nclass=c,
            length=len(w),
            inner_area=inner_area,
            initial_top=initial_top,
            relator_bound_factor=m_factor,
            register_base=n_base,
            inner=inner_report,
        )
        b = self.b = SequenceBuilder(pres, w)
        self.right = [CompressedPower(pres, pres.defining_chain(z), n_base)
                      for z in self.basis]
        self.left = [CompressedPower(pres, pres.defining_chain(z), n_base)
                     for z in self.basis]
        self.region_len = len(w)
        self._letter_movers: dict = {}
        self._rewrite_params: dict = {}
        self._counts = counts

        self.collect(0, len(w))

        lift_table = self.quot.lift_table
        for mv in inner_norm.moves:
            lo = self.lo
            op = mv[0]
            if op == "fr":
                b.fr(lo + mv[1])
                self.region_len -= 2
            elif op == "fe":
                b.fe(lo + mv[1], mv[2])
                self.region_len += 2
            else:
                _, pos, rid, shift, inv, split = mv
                assert split == 0, "inner sequence must be normalized"
                src_rid, surviving = lift_table[rid]
                src = pres.relators[src_rid]
                if inv:
                    mirror = sorted(len(src) - 1 - s for s in surviving)
                    shift_src = mirror[shift]
                else:
                    shift_src = surviving[shift]
                b.ar(lo + pos, src_rid, shift_src, inv, 0)
                span = len(src)
                self.region_len += span
                self.collect(lo + pos, lo + pos + span)
        if self.region_len:
            raise AssertionError("projected word did not empty")
        for j, (lreg, rreg) in enumerate(zip(self.left, self.right)):
            if lreg.q != rreg.q:
                raise AssertionError(
                    f"register asymmetry at basis slot {j}: {lreg.q} != {rreg.q}"
                )
            if rreg.q != self._counts[1][self.basis[j]]:
                raise AssertionError("register count disagrees with precount")
        b.reduce_all(0)
        if b.word:
            raise AssertionError("final mirror reduction left a nonempty word")
        if self.report.max_register > self.report.register_bound:
            raise AssertionError(
                f"register bound violated: {self.report.max_register} > "
                f"{self.report.register_bound}"
            )
        return b.finish(), self.report

    def _count_releases(self, w, inner_norm):
        """Exact number of absorptions per basis letter and side."""
        pres = self.pres
        weight_of = pres.weight_of
        c = self.c
        counts = {1: {z: 0 for z in self.basis}, -1: {z: 0 for z in self.basis}}

        def tally(word):
            for a in word:
                i = abs(a)
                if weight_of(i) != c:
                    continue
                v = self.rewrite.get(i)
                if v is None:
                    counts[1 if a > 0 else -1][i] += 1
                else:
                    vv = v if a > 0 else inverse_word(v)
                    for bl in vv:
                        counts[1 if bl > 0 else -1][abs(bl)] += 1

        tally(w)
        lift_table = self.quot.lift_table
        for mv in inner_norm.moves:
            if mv[0] == "ar":
                # a whole-word application inserts the inverse of the rotated
                # relator, so inv=0 releases the inverse letters
                src_rid, _ = lift_table[mv[2]]
                src = pres.relators[src_rid]
                tally(src if mv[4] else inverse_word(src))
        return counts

    # -- geometry -------------------------------------------------------------

    @property
    def lo(self) -> int:
        return sum(len(reg.word) for reg in self.left)

    @property
    def hi(self) -> int:
        return self.lo + self.region_len

    def _letter_mover(self, z: int) -> BlockMover:
        m = self._letter_movers.get(z)
        if m is None:
            m = self._letter_movers[z] = BlockMover(self.pres, (z,))
        return m

    # -- collection ------------------------------------------------------------

    def collect(self, scan_lo: int, scan_hi: int) -> None:
        """Sweep weight-c letters out of [scan_lo, scan_hi): rewrite dependent
        letters in place, then send basis letters rightmost-first to the right
        registers and their inverses leftmost-first to the left ones.

        Scan bounds are kept relative to the region start, since left-side
        absorptions grow the word in front of it."""
        word = self.b.word
        weight_of = self.pres.weight_of
        c, rewrite, slots = self.c, self.rewrite, self.slot_of
        off_lo, off_hi = scan_lo - self.lo, scan_hi - self.lo
        p = scan_lo
        hi_abs = scan_hi
        while p < hi_abs:
            i = abs(word[p])
            if weight_of(i) == c and i in rewrite:
                delta = self._apply_rewrite(p, word[p])
                hi_abs += delta
                off_hi += delta
                self.region_len += delta
            else:
                p += 1
        while True:
            lo = self.lo
            p = next((q for q in range(lo + off_hi - 1, lo + off_lo - 1, -1)
                      if word[q] > 0 and word[q] in slots), None)
            if p is None:
                break
            self._send_right(p)
            off_hi -= 1
        while True:
            lo = self.lo
            p = next((q for q in range(lo + off_lo, lo + off_hi)
                      if word[q] < 0 and -word[q] in slots), None)
            if p is None:
                break
            self._send_left(p)
            off_hi -= 1
        # shape invariant: registers, a weight-c-free region, registers
        if len(word) != self.hi + sum(len(r.word) for r in self.right):
            raise AssertionError("collected word lost its register shape")

    def _apply_rewrite(self, p: int, a: int) -> int:
        """Replace a dependent weight-c letter by its basis word; returns the
        length change."""
        params = self._rewrite_params.get(a)
        if params is None:
            i = abs(a)
            v = self.rewrite[i]
            relator = (i,) + inverse_word(v)
            rid = self.pres.relator_index[relator]
            if a > 0:
                params = (rid, 0, 0, len(v))
            else:
                params = (rid, len(v), 1, len(v))
            self._rewrite_params[a] = params
        rid, shift, inv, vlen = params
        self.b.ar(p, rid, shift, inv, 1)
        return vlen - 1

    def _send_right(self, p: int) -> None:
        b = self.b
        z = b.word[p]
        j = self.slot_of[z]
        target = self.hi - 1 + sum(len(self.right[i].word) for i in range(j))
        self._letter_mover(z).move_right(b, p, target, +1, exact=False)
        self.region_len -= 1
        self._absorb_right(j, target)

    def _send_left(self, p: int) -> None:
        b = self.b
        z = -b.word[p]
        j = self.slot_of[z]
        target = self.lo - sum(len(self.left[i].word) for i in range(j))
        self._letter_mover(z).move_left(b, p, target, -1, exact=False)
        self.region_len -= 1
        self._absorb_left(j, target)

    def _absorb_right(self, j: int, p: int) -> None:
        reg = self.right[j]
        self._expand_letter(p)
        reg.emit_increment(self.b, p)
        self.report.max_register = max(self.report.max_register, reg.q)

    def _absorb_left(self, j: int, p: int) -> None:
        reg = self.left[j]
        self._expand_letter(p)
        reg.emit_increment_mirror(self.b, p + len(reg.z_word))
        self.report.max_register = max(self.report.max_register, reg.q)

    def _expand_letter(self, p: int) -> None:
        """Expand the compound letter at p into its defining chain word,
        one definition relator per unfolding."""
        b, pres = self.b, self.pres
        a = b.word[p]
        pair = pres.parents[abs(a) - 1]
        if pair is None:
            return
        x, y = pair
        rid = pres.relator_index[(-abs(a), -x, -y, x, y)]
        if a > 0:
            b.ar(p, rid, 4, 1, 1)
            # word at p: x^-1 y^-1 x y; expand the two y occurrences
            self._expand_letter(p + 3)
            self._expand_letter(p + 1)
        else:
            b.ar(p, rid, 0, 0, 1)
            # word at p: y^-1 x^-1 y x
            self._expand_letter(p + 2)
            self._expand_letter(p)


# --- certification -----------------------------------------------------------


@dataclass
class AflCertificate:
    """Smallest single constant bounding Area by lam * len^(c+1) and FL by
    lam * len over a corpus of fill results."""

    nclass: int
    count: int
    lam: float
    lam_area: float
    lam_fl: float
    worst_area: tuple = ()
    worst_fl: tuple = ()


def certify_afl_pair(results, nclass: int) -> AflCertificate:
    """results: iterable of (length, Metrics) pairs from fill runs."""
    lam_area = 0.0
    lam_fl = 0.0
    worst_area = ()
    worst_fl = ()
    count = 0
    for length, metrics in results:
        count += 1
        if length == 0:
            continue
        ra = metrics.area / length ** (nclass + 1)
        rf = metrics.fl / length
        if ra > lam_area:
            lam_area, worst_area = ra, (length, metrics.area)
        if rf > lam_fl:
            lam_fl, worst_fl = rf, (length, metrics.fl)
    return AflCertificate(
        nclass, count, max(lam_area, lam_fl), lam_area, lam_fl, worst_area, worst_fl
    )
