"""Text format for noncommutative polynomials.

Grammar::

    poly   := term (('+' | '-') term)*
    term   := coeff ('*' word)? | word
    coeff  := signed decimal | '(' re ',' im ')'
    word   := factor+ | '1'
    factor := 'Y' index ('^' power)?

Factors within a word are separated by whitespace; indices run from 1 to
the declared number of variables; powers expand to repeated letters, and
'1' denotes the empty word.  Complex coefficients are written "(re,im)" so
that bare decimals are unambiguously real.  Examples::

    Y1^2 Y2^2 - Y1 Y2 Y1 Y2
    (0,1)*Y1 Y2 - (0,1)*Y2 Y1
    2*1 + Y2

This grammar is also the on-disk polynomial file format: one polynomial
per file, with lines starting with '#' treated as comments.
"""

from __future__ import annotations

import re

from .algebra import NCPoly, Word

MAX_WORD_LENGTH = 64

_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_INDEX = re.compile(r"\d+")


class PolyParseError(ValueError):
    """Malformed polynomial text; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str):
        if self.peek() != char:
            raise PolyParseError(f"expected '{char}'", self.pos)
        self.pos += 1

    def number(self) -> float:
        sign = 1.0
        if self.peek() in ("+", "-"):
            if self.peek() == "-":
                sign = -1.0
            self.pos += 1
            self.skip_ws()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            raise PolyParseError("malformed coefficient", self.pos)
        self.pos = m.end()
        return sign * float(m.group(0))


def parse_poly(text: str, nvars: int) -> NCPoly:
    """Parse polynomial text; raises :class:`PolyParseError` with an offset."""
    if nvars < 1:
        raise ValueError(f"nvars must be positive, got {nvars}")
    sc = _Scanner(text)
    sc.skip_ws()
    if sc.pos == len(text):
        raise PolyParseError("empty input", 0)
    terms: dict[Word, complex] = {}
    sign = 1.0
    if sc.peek() in ("+", "-"):
        if sc.peek() == "-":
            sign = -1.0
        sc.pos += 1
        sc.skip_ws()
    while True:
        word, coeff = _parse_term(sc, nvars)
        coeff = sign * coeff
        terms[word] = terms.get(word, 0.0) + coeff
        sc.skip_ws()
        if sc.pos == len(text):
            break
        ch = sc.peek()
        if ch == "+":
            sign = 1.0
        elif ch == "-":
            sign = -1.0
        else:
            raise PolyParseError(f"expected '+' or '-', found {ch!r}", sc.pos)
        sc.pos += 1
        sc.skip_ws()
        if sc.pos == len(text):
            raise PolyParseError("dangling sign", sc.pos - 1)
    return NCPoly(nvars, terms)


def _parse_term(sc: _Scanner, nvars: int) -> tuple[Word, complex]:
    ch = sc.peek()
    if ch == "(":
        coeff = _parse_complex(sc)
    elif ch.isdigit() or ch == ".":
        start = sc.pos
        value = sc.number()
        # A bare '1' immediately followed by a term boundary is the empty word.
        if value == 1.0 and sc.text[start : sc.pos] == "1":
            sc.skip_ws()
            if sc.peek() != "*":
                return (), 1.0
        coeff = complex(value)
    elif ch == "Y":
        return _parse_word(sc, nvars), 1.0
    else:
        raise PolyParseError(f"expected coefficient or word, found {ch!r}", sc.pos)
    sc.skip_ws()
    if sc.peek() == "*":
        sc.pos += 1
        sc.skip_ws()
        return _parse_word(sc, nvars), coeff
    return (), coeff


def _parse_complex(sc: _Scanner) -> complex:
    sc.expect("(")
    sc.skip_ws()
    re_part = sc.number()
    sc.skip_ws()
    sc.expect(",")
    sc.skip_ws()
    im_part = sc.number()
    sc.skip_ws()
    sc.expect(")")
    return complex(re_part, im_part)


def _parse_word(sc: _Scanner, nvars: int) -> Word:
    if sc.peek() == "1":
        sc.pos += 1
        return ()
    letters: list[int] = []
    while True:
        if sc.peek() != "Y":
            if not letters:
                raise PolyParseError("expected word", sc.pos)
            break
        y_pos = sc.pos
        sc.pos += 1
        m = _INDEX.match(sc.text, sc.pos)
        if not m:
            raise PolyParseError("expected variable index after 'Y'", sc.pos)
        index = int(m.group(0))
        sc.pos = m.end()
        if index < 1 or index > nvars:
            raise PolyParseError(f"index {index} exceeds nvars", y_pos)
        power = 1
        if sc.peek() == "^":
            sc.pos += 1
            m = _INDEX.match(sc.text, sc.pos)
            if not m:
                raise PolyParseError("expected power after '^'", sc.pos)
            power = int(m.group(0))
            sc.pos = m.end()
        letters.extend([index] * power)
        if len(letters) > MAX_WORD_LENGTH:
            raise PolyParseError(
                f"word longer than {MAX_WORD_LENGTH} letters", y_pos
            )
        here = sc.pos
        sc.skip_ws()
        if sc.peek() != "Y":
            sc.pos = here
            break
    return tuple(letters)


def format_poly(p: NCPoly) -> str:
    """Deterministic rendering that re-parses to the same polynomial.

    Terms are ordered by degree then lexicographically by word; real
    coefficients print as decimals, complex ones as "(re,im)", and a unit
    coefficient on a nonempty word is omitted.
    """
    if p.is_zero():
        return "0"
    pieces: list[str] = []
    for word in sorted(p.terms, key=lambda w: (len(w), w)):
        coeff = p.terms[word]
        negative = coeff.real < 0 or (coeff.real == 0 and coeff.imag < 0)
        if negative:
            coeff = -coeff
        body = _format_term(word, coeff)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def _fmt_real(x: float) -> str:
    # Integral values print without a trailing ".0"; both forms re-parse exactly.
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _format_term(word: Word, coeff: complex) -> str:
    if coeff.imag == 0:
        coeff_str = _fmt_real(coeff.real)
        unit = coeff.real == 1.0
    else:
        coeff_str = f"({_fmt_real(coeff.real)},{_fmt_real(coeff.imag)})"
        unit = False
    if not word:
        return coeff_str if not unit else "1"
    word_str = _format_word(word)
    if unit:
        return word_str
    return f"{coeff_str}*{word_str}"


def _format_word(word: Word) -> str:
    factors = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        factors.append(f"Y{word[i]}" if run == 1 else f"Y{word[i]}^{run}")
        i = j
    return " ".join(factors)


def strip_comments(text: str) -> str:
    """Drop comment lines ('#' first non-blank character) from file text."""
    kept = [
        line for line in text.splitlines() if not line.lstrip().startswith("#")
    ]
    return "\n".join(kept)


def load_poly_file(path, nvars: int) -> NCPoly:
    """Read one polynomial from a file in the grammar above."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_poly(strip_comments(fh.read()), nvars)
