"""Trace files: a bit-exact, line-oriented serialization of P-sequences.

    word: <WORD>
    presentation: <file>
    fr <pos>
    fe <pos> <letter>
    ar <pos> <relator_id> <shift> <inv:0|1> <split>
    qed

The validator's one-line verdict is `ok area=.. fl=.. height=..` or
`error line=<n> <reason>`; the line number points into the trace file.
"""

from __future__ import annotations

from .engine import Metrics, PSequence, replay, validate_null
from .errors import NilfillError, NotApplicable, NotNull
from .presentations import Presentation
from .words import format_letter, parse_word


def serialize_trace(seq: PSequence, presentation_path: str) -> str:
    pres = seq.presentation
    lines = [
        f"word: {pres.format_word(seq.initial)}".rstrip(),
        f"presentation: {presentation_path}",
    ]
    append = lines.append
    names = pres.names
    for move in seq.moves:
        op = move[0]
        if op == "fr":
            append(f"fr {move[1]}")
        elif op == "fe":
            append(f"fe {move[1]} {format_letter(move[2], names)}")
        else:
            append(f"ar {move[1]} {move[2]} {move[3]} {move[4]} {move[5]}")
    append("qed")
    return "\n".join(lines) + "\n"


def save_trace(seq: PSequence, path, presentation_path: str) -> None:
    with open(path, "w") as fh:
        fh.write(serialize_trace(seq, presentation_path))


def parse_trace(text: str, pres: Presentation):
    """Parse trace text against a presentation; returns (PSequence, pres path)."""
    lines = text.splitlines()
    if len(lines) < 3 or not lines[0].startswith("word:") \
            or not lines[1].startswith("presentation:") or lines[-1] != "qed":
        raise NilfillError("malformed trace file")
    initial = parse_word(lines[0][len("word:"):].strip(), pres.name_to_index)
    pres_path = lines[1][len("presentation:"):].strip()
    moves = []
    for line in lines[2:-1]:
        parts = line.split()
        if parts[0] == "fr" and len(parts) == 2:
            moves.append(("fr", int(parts[1])))
        elif parts[0] == "fe" and len(parts) == 3:
            letter_word = parse_word(parts[2], pres.name_to_index)
            if len(letter_word) != 1:
                raise NilfillError(f"bad fe letter token {parts[2]!r}")
            moves.append(("fe", int(parts[1]), letter_word[0]))
        elif parts[0] == "ar" and len(parts) == 6:
            moves.append(("ar",) + tuple(int(x) for x in parts[1:]))
        else:
            raise NilfillError(f"bad trace line {line!r}")
    return PSequence(pres, initial, moves), pres_path


def load_trace(path, pres: Presentation):
    with open(path) as fh:
        return parse_trace(fh.read(), pres)


def verdict_line(seq: PSequence, require_null: bool = True) -> tuple:
    """(exit_code, line) verdict for a parsed trace.

    With ``require_null`` the final word must be empty (a null-sequence
    certificate); otherwise any fully replayable trace is accepted."""
    try:
        if require_null:
            metrics = validate_null(seq)
        else:
            metrics, _ = replay(seq)
    except NotApplicable as exc:
        return 1, f"error line={exc.move_index + 3} {exc.reason}"
    except NotNull as exc:
        return 1, f"error line={len(seq.moves) + 3} final word nonempty ({exc.final_length} letters)"
    return 0, format_ok(metrics)


def format_ok(metrics: Metrics) -> str:
    return f"ok area={metrics.area} fl={metrics.fl} height={metrics.height}"
