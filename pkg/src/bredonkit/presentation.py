"""Finite group presentations: parsing, printing, derived presentations.

Grammar (ASCII, whitespace acts like '*'):

    presentation := '<' gens '|' relators '>'
    gens         := ident (',' ident)*
    relators     := word (',' word)*
    word         := term (('*' | WS) term)*
    term         := factor ('^' sint)?
    factor       := ident | '(' word ')' | '[' word ',' word ']'
    sint         := '-'? [0-9]+ ; ident := [A-Za-z][A-Za-z0-9_]*

'[a,b]' expands to a b a^-1 b^-1 and '^' binds tighter than '*'.  Declared
torsion for the NEC-style mode is supplied on sidecar lines of the form
"!torsion rel=<index> order=<n>" (relator indices are 0-based).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import (
    DeclaredTorsionFormError,
    DegenerateRelatorError,
    PresentationSyntaxError,
    TorsionDeclarationError,
    TorsionModeError,
    UnknownGeneratorError,
)
from .free_group import Alphabet, Word
from .int_linalg import IntMatrix

DERIVE_FROM_ROOTS = "DERIVE_FROM_ROOTS"
DECLARED = "DECLARED"

_TORSION_DIRECTIVE = re.compile(r"!torsion\s+rel=(\d+)\s+order=(\d+)\s*$")


class _Token(NamedTuple):
    kind: str  # one of < > | , * ^ ( ) [ ] - INT IDENT EOF
    text: str
    line: int
    col: int


_PUNCT = set("<>|,*^()[]-")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise PresentationSyntaxError(f"unexpected character {ch!r}", line, col)
    last_line = line
    tokens.append(_Token("EOF", "", last_line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise PresentationSyntaxError(
                f"expected {kind!r}, found {shown!r}", tok.line, tok.col
            )
        return self.take()

    # -- words ---------------------------------------------------------------

    def parse_word(self, alphabet: Alphabet) -> list[int]:
        code = self.parse_term(alphabet)
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.take()
                code += self.parse_term(alphabet)
            elif tok.kind in ("IDENT", "(", "["):
                code += self.parse_term(alphabet)
            else:
                return code

    def parse_term(self, alphabet: Alphabet) -> list[int]:
        code = self.parse_factor(alphabet)
        if self.peek().kind == "^":
            self.take()
            sign = 1
            if self.peek().kind == "-":
                self.take()
                sign = -1
            tok = self.expect("INT")
            exp = sign * int(tok.text)
            if exp == 0:
                return []
            if exp < 0:
                code = [-s for s in reversed(code)]
                exp = -exp
            code = code * exp
        return code

    def parse_factor(self, alphabet: Alphabet) -> list[int]:
        tok = self.peek()
        if tok.kind == "IDENT":
            self.take()
            try:
                gen = alphabet.resolve(tok.text)
            except UnknownGeneratorError:
                raise UnknownGeneratorError(
                    f"unknown generator {tok.text!r}", tok.line, tok.col
                ) from None
            return [gen.index + 1]
        if tok.kind == "(":
            self.take()
            code = self.parse_word(alphabet)
            self.expect(")")
            return code
        if tok.kind == "[":
            self.take()
            a = self.parse_word(alphabet)
            self.expect(",")
            b = self.parse_word(alphabet)
            self.expect("]")
            return a + b + [-s for s in reversed(a)] + [-s for s in reversed(b)]
        shown = tok.text or "end of input"
        raise PresentationSyntaxError(f"expected a word, found {shown!r}", tok.line, tok.col)

    # -- presentations ---------------------------------------------------------

    def parse_presentation(self) -> tuple[Alphabet, list[Word]]:
        self.expect("<")
        names = [self.expect("IDENT").text]
        while self.peek().kind == ",":
            self.take()
            names.append(self.expect("IDENT").text)
        alphabet = Alphabet(names)
        self.expect("|")
        relators: list[Word] = []
        positions: list[_Token] = []
        positions.append(self.peek())
        relators.append(Word(alphabet, self.parse_word(alphabet)))
        while self.peek().kind == ",":
            self.take()
            positions.append(self.peek())
            relators.append(Word(alphabet, self.parse_word(alphabet)))
        self.expect(">")
        self.expect("EOF")
        for i, (rel, tok) in enumerate(zip(relators, positions)):
            if rel.is_identity:
                raise DegenerateRelatorError(
                    f"relator {i} reduces to the identity"
                    f" (line {tok.line}, column {tok.col})"
                )
        return alphabet, relators


@dataclass(frozen=True)
class Presentation:
    """Generators, relators, and the torsion bookkeeping mode.

    DERIVE_FROM_ROOTS reads torsion orders off proper-power relators;
    DECLARED trusts user-supplied (relator index, order) pairs, as for the
    NEC-style presentations with cyclic torsion generators.
    """

    alphabet: Alphabet
    relators: tuple[Word, ...]
    torsion_mode: str = DERIVE_FROM_ROOTS
    declared_torsion: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        object.__setattr__(self, "declared_torsion", tuple(self.declared_torsion))
        for i, rel in enumerate(self.relators):
            if rel.alphabet != self.alphabet:
                raise UnknownGeneratorError(f"relator {i} is over a different alphabet")
            if rel.is_identity:
                raise DegenerateRelatorError(f"relator {i} reduces to the identity")
        if self.torsion_mode not in (DERIVE_FROM_ROOTS, DECLARED):
            raise TorsionModeError(f"unknown torsion mode {self.torsion_mode!r}")
        if self.torsion_mode == DERIVE_FROM_ROOTS and self.declared_torsion:
            raise TorsionModeError("declared torsion requires DECLARED mode")
        seen: set[int] = set()
        for idx, order in self.declared_torsion:
            if not 0 <= idx < len(self.relators):
                raise TorsionDeclarationError(f"torsion index {idx} out of range")
            if idx in seen:
                raise TorsionDeclarationError(f"torsion declared twice for relator {idx}")
            if order < 2:
                raise TorsionDeclarationError(f"declared order {order} must be >= 2")
            seen.add(idx)

    @property
    def declared_orders(self) -> dict[int, int]:
        return dict(self.declared_torsion)

    def __str__(self) -> str:
        return presentation_text(self)


def parse(text: str) -> Presentation:
    """Parse presentation text, including optional !torsion directive lines."""
    declared: list[tuple[int, int]] = []
    body_lines: list[str] = []
    for line in text.splitlines() or [""]:
        stripped = line.strip()
        if stripped.startswith("!"):
            m = _TORSION_DIRECTIVE.fullmatch(stripped)
            if not m:
                raise TorsionDeclarationError(f"malformed directive {stripped!r}")
            declared.append((int(m.group(1)), int(m.group(2))))
            body_lines.append("")  # keep line numbers stable for diagnostics
        else:
            body_lines.append(line)
    parser = _Parser(_tokenize("\n".join(body_lines)))
    alphabet, relators = parser.parse_presentation()
    mode = DECLARED if declared else DERIVE_FROM_ROOTS
    return Presentation(alphabet, tuple(relators), mode, tuple(declared))


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse a single word in the presentation grammar over a known alphabet."""
    parser = _Parser(_tokenize(text))
    code = parser.parse_word(alphabet)
    parser.expect("EOF")
    return Word(alphabet, code)


def presentation_text(p: Presentation) -> str:
    gens = ", ".join(p.alphabet.names)
    rels = ", ".join(str(r) for r in p.relators)
    return f"< {gens} | {rels} >"


def document_text(p: Presentation) -> str:
    """Canonical printing including declared-torsion directive lines."""
    lines = [presentation_text(p)]
    for idx, order in p.declared_torsion:
        lines.append(f"!torsion rel={idx} order={order}")
    return "\n".join(lines)


def exponent_matrix(p: Presentation) -> IntMatrix:
    """Rows are relators, columns generators; entries are exponent sums.

    This is the augmented image of the total Fox derivative, i.e. the matrix
    of the relation map after tensoring down to the integers.
    """
    rows = [[r.exponent_sum(g) for g in p.alphabet] for r in p.relators]
    return IntMatrix.from_rows(rows, cols=len(p.alphabet))


def root_presentation(p: Presentation) -> Presentation:
    """Replace every relator by its root; presents G/Tor(G) in DERIVE mode."""
    if p.torsion_mode != DERIVE_FROM_ROOTS:
        raise TorsionModeError("root_presentation applies in DERIVE_FROM_ROOTS mode")
    roots = tuple(r.root().root for r in p.relators)
    return Presentation(p.alphabet, roots, DERIVE_FROM_ROOTS, ())


def kill_torsion_presentation(p: Presentation) -> Presentation:
    """Replace each declared torsion relator c^g by c (DECLARED mode only)."""
    if p.torsion_mode != DECLARED:
        raise TorsionModeError("kill_torsion_presentation applies in DECLARED mode")
    new_relators = list(p.relators)
    for idx, _order in p.declared_torsion:
        rel = p.relators[idx]
        root = rel.root().root
        if len(root) != 1:
            raise DeclaredTorsionFormError(
                f"declared torsion relator {idx} is not a power of a single generator"
            )
        new_relators[idx] = root
    return Presentation(p.alphabet, tuple(new_relators), DECLARED, p.declared_torsion)
