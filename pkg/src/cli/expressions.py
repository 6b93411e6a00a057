"""
Polynomial expressions: parsing and canonical printing.

Grammar (no implicit multiplication, no unary minus):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := nat | variable | '(' expr ')'

Variables are x1 .. xn; x, y, z are accepted as aliases when n <= 3.
Integer literals are reduced mod p.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union

from config import get_config
from src.algebra.polymap import PolyMap
from src.algebra.polynomial import Polynomial, format_canonical
from src.cli.session import SessionConfig
from src.utils.errors import DimensionMismatchError, ExpressionParseError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

_TOKEN_PATTERN = re.compile(r"\s*(?:([0-9]+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_OPERATORS = frozenset("+-*^()")
_ALIASES = ("x", "y", "z")


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "name", "op" or "end"
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_PATTERN.match(text, position)
        if match is None or match.end() == position:
            # trailing whitespace
            break
        number, name, op = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(Token("number", number, start))
        elif name is not None:
            tokens.append(Token("name", name, start))
        elif op in _OPERATORS:
            tokens.append(Token("op", op, start))
        else:
            raise ExpressionParseError(f"unexpected character {op!r}", start)
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def _residue(digits: str, p: int) -> int:
    """A decimal literal of any length reduced mod p, digit by digit."""
    value = 0
    for digit in digits:
        value = (value * 10 + int(digit)) % p
    return value


def variable_names(n: int) -> Dict[str, int]:
    """Accepted spellings of each variable, mapped to its 0-based index."""
    names = {f"x{i + 1}": i for i in range(n)}
    if n <= len(_ALIASES):
        names.update({alias: i for i, alias in enumerate(_ALIASES[:n])})
    return names


class ExpressionParser:
    """Recursive-descent parser producing a canonical Polynomial."""

    def __init__(self, text: str, p: int, n: int, max_exponent: Optional[int] = None):
        self.text = text
        self.p = p
        self.n = n
        self.max_exponent = max_exponent if max_exponent is not None else get_config().limits.max_exponent
        self.names = variable_names(n)
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self.index += 1
            return True
        return False

    def _fail(self, expected: str) -> ExpressionParseError:
        token = self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        return ExpressionParseError(f"expected {expected}, found {found}", token.position)

    def parse(self) -> Polynomial:
        result = self._expr()
        if self.current.kind != "end":
            raise self._fail("an operator or end of input")
        return result

    def _expr(self) -> Polynomial:
        result = self._term()
        while True:
            if self._accept("+"):
                result = result + self._term()
            elif self._accept("-"):
                result = result - self._term()
            else:
                return result

    def _term(self) -> Polynomial:
        result = self._factor()
        while self._accept("*"):
            result = result * self._factor()
        return result

    def _factor(self) -> Polynomial:
        base = self._atom()
        if not self._accept("^"):
            return base
        token = self.current
        if token.kind != "number":
            raise self._fail("a natural exponent")
        self._advance()
        digits = token.text.lstrip("0") or "0"
        if len(digits) > len(str(self.max_exponent)) or int(digits) > self.max_exponent:
            shown = digits if len(digits) <= 20 else f"{digits[:8]}...({len(digits)} digits)"
            raise ExpressionParseError(
                f"exponent {shown} exceeds the limit {self.max_exponent}", token.position
            )
        return base ** int(digits)

    def _atom(self) -> Polynomial:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Polynomial.constant(_residue(token.text, self.p), self.p, self.n)
        if token.kind == "name":
            if token.text not in self.names:
                raise ExpressionParseError(f"unknown variable {token.text!r}", token.position)
            self._advance()
            return Polynomial.variable(self.names[token.text], self.p, self.n)
        if self._accept("("):
            inner = self._expr()
            if not self._accept(")"):
                raise self._fail("')'")
            return inner
        raise self._fail("a number, variable or '('")


def parse_polynomial(text: str, config: SessionConfig) -> Polynomial:
    """Parse text into a canonical polynomial over F_p in n variables."""
    return ExpressionParser(text, config.p, config.n).parse()


def print_canonical(f: Polynomial) -> str:
    return format_canonical(f)


def parse_poly_map(text: str, config: SessionConfig) -> PolyMap:
    """Components separated by ';'; parse positions refer to the whole text."""
    components = []
    offset = 0
    for segment in text.split(";"):
        try:
            components.append(parse_polynomial(segment, config))
        except ExpressionParseError as error:
            raise ExpressionParseError(error.message, offset + error.position) from error
        offset += len(segment) + 1
    return _as_map(components, config)


def read_poly_map(path: Union[str, Path], config: SessionConfig) -> PolyMap:
    """One polynomial per line; text after '#' and blank lines are ignored."""
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as error:
        line_number = data.count(b"\n", 0, error.start) + 1
        column = error.start - (data.rfind(b"\n", 0, error.start) + 1)
        logger.error(f"{path}:{line_number}: not valid UTF-8")
        raise ExpressionParseError(
            f"line {line_number}: byte {data[error.start]:#04x} is not valid UTF-8", column
        ) from error
    components = []
    for line_number, line in enumerate(text.splitlines(), 1):
        content = line.split("#", 1)[0]
        if not content.strip():
            continue
        try:
            components.append(parse_polynomial(content, config))
        except ExpressionParseError as error:
            logger.error(f"{path}:{line_number}: {error}")
            raise
    logger.debug(f"Read {len(components)} components from {path}")
    return _as_map(components, config)


def _as_map(components: List[Polynomial], config: SessionConfig) -> PolyMap:
    if len(components) != config.n:
        raise DimensionMismatchError(
            f"a map needs n = {config.n} components, got {len(components)}"
        )
    return PolyMap(tuple(components))
