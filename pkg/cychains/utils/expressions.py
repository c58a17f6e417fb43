"""Parse and evaluate the textual expression grammar used by `cychains eval-expr`.

An expression is an operation name followed by its arguments, e.g.
`div omega_std (d1)`, `schouten (t1*d1) (t2*d2)` or `B (t1 (x) t2)`.
See `docs/grammar.md` for the grammar.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

from cychains.cartan import (
    DiffForm,
    MultiVector,
    VolumeForm,
    VTop,
    contract,
    de_rham,
    divergence,
    integrate,
    lie_derivative,
    merge_indices,
    pair_vt_form,
    schouten,
    wedge,
)
from cychains.core import LaurentPoly
from cychains.exceptions import ArityMismatch, InputParserError, UnableToResolve
from cychains.hochschild import (
    HochChain,
    chain_boundary,
    connes_B,
    hkr_chains,
    hkr_cochain,
)

if TYPE_CHECKING:  # pragma: no cover
    from typing import Any, Callable

LOGGER = logging.getLogger(__name__)


TOKEN_PATTERN = re.compile(
    r"(?P<space>\s+)"
    r"|(?P<tensor>\(x\))"
    r"|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<name>(?:∂|[^\W\d])\w*)"
    r"|(?P<symbol>[()\[\],+\-*^])"
)
"""Tokens of the expression grammar. `(x)` is the tensor sign of chains."""

STANDARD_VOLUME_NAMES = ("omega_std", "ω_std")


@dataclass(frozen=True)
class Token:
    """A lexical token and its zero-based position in the source text."""

    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    """Split `text` into tokens, dropping white space."""
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            raise InputParserError(f"Unexpected character {text[position]!r}", position)
        kind = match.lastgroup
        assert kind is not None
        if kind != "space":
            tokens.append(Token(kind, match.group(), position))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


@dataclass
class Slot:
    """One tensor slot of a parsed term: a monomial with vector or form indices."""

    exponent: list[int]
    vectors: tuple[int, ...] = ()
    forms: tuple[int, ...] = ()


@dataclass
class Term:
    coefficient: Fraction
    slots: list[Slot] = field(default_factory=list)


class Value:
    """A parsed parenthesized argument, converted on demand to the kind an operation needs."""

    def __init__(self, terms: list[Term], dim: int, position: int) -> None:
        self.terms = terms
        self.dim = dim
        self.position = position

    @property
    def is_chain(self) -> bool:
        return any(len(term.slots) > 1 for term in self.terms)

    def _single_slots(self, kind: str) -> list[tuple[Fraction, Slot]]:
        if self.is_chain:
            raise ArityMismatch(f"Expected a {kind}, got a chain (at position {self.position})")
        return [(term.coefficient, term.slots[0]) for term in self.terms]

    def as_multivector(self) -> MultiVector:
        result = MultiVector.zero(self.dim)
        for coefficient, slot in self._single_slots("multivector"):
            if slot.forms:
                raise ArityMismatch(
                    f"Expected a multivector, got form factors (at position {self.position})"
                )
            result = result + MultiVector(
                {slot.vectors: LaurentPoly.monomial(slot.exponent, coefficient)}, self.dim
            )
        return result

    def as_form(self) -> DiffForm:
        result = DiffForm.zero(self.dim)
        for coefficient, slot in self._single_slots("form"):
            if slot.vectors:
                raise ArityMismatch(
                    f"Expected a form, got vector factors (at position {self.position})"
                )
            result = result + DiffForm(
                {slot.forms: LaurentPoly.monomial(slot.exponent, coefficient)}, self.dim
            )
        return result

    def as_chain(self) -> HochChain:
        terms: dict[tuple[tuple[int, ...], ...], Fraction] = {}
        for term in self.terms:
            if any(slot.vectors or slot.forms for slot in term.slots):
                raise ArityMismatch(
                    f"Chain slots must be monomials in t (at position {self.position})"
                )
            tensor = tuple(tuple(slot.exponent) for slot in term.slots)
            terms[tensor] = terms.get(tensor, Fraction(0)) + term.coefficient
        return HochChain(terms, self.dim)


class ExpressionParser:
    """Recursive descent parser over the token list of a single expression."""

    def __init__(self, text: str, dim: int) -> None:
        self.text = text
        self.dim = dim
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _expect(self, text: str) -> Token:
        if self.current.text != text:
            found = self.current.text or "end of input"
            raise InputParserError(f"Expected {text!r}, found {found!r}", self.current.position)
        return self._advance()

    def parse(self) -> tuple[str, list[Any]]:
        """Parse `operation argument*` into the operation name and its raw arguments."""
        token = self._advance()
        if token.kind != "name":
            raise InputParserError("An expression starts with an operation name", token.position)
        arguments: list[Any] = []
        while self.current.kind != "end":
            arguments.append(self._argument())
        return token.text, arguments

    def _argument(self) -> Value | VolumeForm:
        token = self.current
        if token.kind == "name":
            return self._volume()
        if token.text != "(":
            raise InputParserError(f"Unexpected token {token.text!r}", token.position)
        self._advance()
        value = self._sum(token.position)
        self._expect(")")
        return value

    def _volume(self) -> VolumeForm:
        token = self._advance()
        if token.text in STANDARD_VOLUME_NAMES:
            return VolumeForm.standard(self.dim)
        if token.text != "vol":
            raise InputParserError(f"Unknown volume form {token.text!r}", token.position)
        self._expect("(")
        unit = self._signed_number()
        self._expect(",")
        self._expect("[")
        exponent = [self._signed_integer()]
        while self.current.text == ",":
            self._advance()
            exponent.append(self._signed_integer())
        self._expect("]")
        self._expect(")")
        if len(exponent) != self.dim:
            raise InputParserError(
                f"Volume exponent has {len(exponent)} entries on a {self.dim}-torus",
                token.position,
            )
        return VolumeForm(unit, tuple(exponent))

    def _signed_number(self) -> Fraction:
        negative = False
        if self.current.text == "-":
            self._advance()
            negative = True
        token = self._advance()
        if token.kind != "number":
            raise InputParserError(f"Expected a number, found {token.text!r}", token.position)
        value = Fraction(token.text)
        return -value if negative else value

    def _signed_integer(self) -> int:
        position = self.current.position
        value = self._signed_number()
        if value.denominator != 1:
            raise InputParserError("Expected an integer", position)
        return int(value)

    def _sum(self, position: int) -> Value:
        terms = []
        negative = False
        if self.current.text in ("+", "-"):
            negative = self._advance().text == "-"
        while True:
            term = self._term()
            if negative:
                term.coefficient = -term.coefficient
            terms.append(term)
            if self.current.text not in ("+", "-"):
                break
            negative = self._advance().text == "-"
        return Value(terms, self.dim, position)

    def _term(self) -> Term:
        term = Term(Fraction(1), [Slot([0] * self.dim)])
        self._product(term)
        while self.current.kind == "tensor":
            self._advance()
            term.slots.append(Slot([0] * self.dim))
            self._product(term)
        return term

    def _product(self, term: Term) -> None:
        self._factor(term)
        while self.current.text in ("*", "^"):
            self._advance()
            self._factor(term)

    def _factor(self, term: Term) -> None:
        token = self._advance()
        slot = term.slots[-1]
        if token.kind == "number":
            term.coefficient *= Fraction(token.text)
            return
        if token.kind != "name":
            found = token.text or "end of input"
            raise InputParserError(f"Expected a factor, found {found!r}", token.position)
        kind, axis = self._classify(token)
        if kind == "t":
            power = 1
            if self.current.text == "^" and self._next_is_integer():
                self._advance()
                power = self._signed_integer()
            slot.exponent[axis - 1] += power
            return
        indices = slot.vectors if kind == "vector" else slot.forms
        factor, merged = merge_indices(indices, (axis,))
        term.coefficient *= factor
        if not factor:
            return
        if kind == "vector":
            slot.vectors = merged
        else:
            slot.forms = merged

    def _next_is_integer(self) -> bool:
        following = self.tokens[self.index + 1]
        if following.text == "-":
            following = self.tokens[self.index + 2]
        return following.kind == "number"

    def _classify(self, token: Token) -> tuple[str, int]:
        patterns = (("form", r"dt(\d+)"), ("vector", r"(?:d|∂)(\d+)"), ("t", r"t(\d+)"))
        for kind, pattern in patterns:
            match = re.fullmatch(pattern, token.text)
            if match:
                axis = int(match.group(1))
                if not 1 <= axis <= self.dim:
                    raise InputParserError(
                        f"Variable index {axis} outside 1..{self.dim}", token.position
                    )
                return kind, axis
        raise InputParserError(f"Unknown factor {token.text!r}", token.position)


@dataclass(frozen=True)
class Operation:
    """A named operation of the grammar with the kinds of its arguments."""

    name: str
    arguments: tuple[str, ...]
    function: Callable[..., Any]
    description: str


def _iota(gamma: MultiVector, alpha: DiffForm) -> DiffForm:
    return contract(gamma, alpha)


OPERATIONS: dict[str, Operation] = {
    operation.name: operation
    for operation in (
        Operation("div", ("volume", "multivector"), lambda v, g: divergence(v, g), "divergence"),
        Operation("schouten", ("multivector", "multivector"), schouten, "Schouten bracket"),
        Operation("wedge", ("multivector", "multivector"), wedge, "wedge product"),
        Operation("iota", ("multivector", "form"), _iota, "contraction"),
        Operation("lie", ("multivector", "form"), lie_derivative, "Lie derivative"),
        Operation("d", ("form",), de_rham, "de Rham differential"),
        Operation("integrate", ("form",), integrate, "residue integral"),
        Operation(
            "pair",
            ("volume", "multivector", "form"),
            lambda v, g, a: pair_vt_form(VTop(g, v), a),
            "pairing of VT with forms",
        ),
        Operation("b", ("chain",), chain_boundary, "Hochschild boundary"),
        Operation("B", ("chain",), connes_B, "Connes' B"),
        Operation("hkr", ("chain",), hkr_chains, "HKR map to forms"),
        Operation("hkr_cochain", ("multivector",), hkr_cochain, "HKR cochain"),
    )
}
"""The operations understood by `cychains eval-expr`."""


def _convert(argument: Value | VolumeForm, kind: str, number: int) -> Any:
    if kind == "volume":
        if not isinstance(argument, VolumeForm):
            raise ArityMismatch(f"Argument {number} must be a volume form")
        return argument
    if isinstance(argument, VolumeForm):
        raise ArityMismatch(f"Argument {number} must be a {kind}, got a volume form")
    converter = {
        "multivector": argument.as_multivector,
        "form": argument.as_form,
        "chain": argument.as_chain,
    }[kind]
    return converter()


def evaluate_expression(text: str, dim: int = 2) -> Any:
    """Parse `text` on the `dim`-torus and apply the named operation."""
    name, arguments = ExpressionParser(text, dim).parse()
    try:
        operation = OPERATIONS[name]
    except KeyError as exc:
        raise UnableToResolve(
            f"Unknown operation {name!r}. Known operations: {', '.join(sorted(OPERATIONS))}"
        ) from exc
    if len(arguments) != len(operation.arguments):
        raise ArityMismatch(
            f"{name} takes {len(operation.arguments)} argument(s), got {len(arguments)}"
        )
    converted = [
        _convert(argument, kind, index)
        for index, (argument, kind) in enumerate(zip(arguments, operation.arguments), start=1)
    ]
    LOGGER.debug("Evaluating %s on %d argument(s)", name, len(converted))
    return operation.function(*converted)
