"""Mini-grammars for the catalog: radical coefficients and linear forms.

Coefficients follow::

    expr     := ('-' | '+') expr | product
    product  := factor ('*' factor)*
    factor   := rational | 'sqrt(' rational ')' | '(' rational ')'
    rational := number ('/' number)*

so ``3``, ``-sqrt(35/136)``, ``2*sqrt(3)`` and ``0.625`` are all accepted.
Linear forms such as ``2a+b-c`` or ``(3a+b)/2`` describe the diagonal
families of abelian subalgebras.
"""

import math
import re
from fractions import Fraction

__all__ = [
    "ExpressionError",
    "evaluate_coefficient",
    "parse_linear_form",
]


class ExpressionError(ValueError):
    """Raised for malformed coefficient or linear-form strings."""


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<sqrt>sqrt)|(?P<op>[-+*/()]))"
)


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ExpressionError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ExpressionError(f"expected {value or 'token'} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.expr()
            return -inner if val == "-" else inner
        return self.product()

    def product(self):
        value = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            value *= self.factor()
        return value

    def factor(self):
        kind, val = self.peek()
        if kind == "sqrt":
            self.take()
            self.take("(")
            radicand = self.rational()
            self.take(")")
            if radicand < 0:
                raise ExpressionError(f"negative radicand in {self.text!r}")
            return math.sqrt(radicand.numerator) / math.sqrt(radicand.denominator)
        return float(self.rational())

    def rational(self):
        kind, val = self.peek()
        if (kind, val) == ("op", "("):
            self.take()
            value = self.rational()
            self.take(")")
        elif kind == "num":
            self.take()
            value = Fraction(val)
        else:
            raise ExpressionError(f"expected a number in {self.text!r}")
        while self.peek() == ("op", "/"):
            self.take()
            kind, val = self.peek()
            if (kind, val) == ("op", "("):
                self.take()
                den = self.rational()
                self.take(")")
            else:
                den = Fraction(self.take()[1]) if kind == "num" else None
                if den is None:
                    raise ExpressionError(f"bad denominator in {self.text!r}")
            if den == 0:
                raise ExpressionError(f"division by zero in {self.text!r}")
            value /= den
        return value


def evaluate_coefficient(text):
    """Evaluate a coefficient expression to a float.

    >>> evaluate_coefficient("sqrt(4/3)")  # doctest: +ELLIPSIS
    1.1547...
    """
    if not isinstance(text, str) or not text.strip():
        raise ExpressionError(f"empty coefficient {text!r}")
    parser = _Parser(text)
    value = parser.expr()
    if parser.i != len(parser.tokens):
        raise ExpressionError(f"trailing input in {text!r}")
    if not math.isfinite(value):
        raise ExpressionError(f"non-finite coefficient {text!r}")
    return value


_LIN_TERM = re.compile(r"([+-]?)(\d*)([a-z]\d*)|([+-]?)(\d+)")


def parse_linear_form(text, variables):
    """Coefficient vector of a linear form over ``variables``.

    ``parse_linear_form("2a+b-c", "abc")`` gives ``[2, 1, -1]``; an overall
    ``(...)/q`` is allowed, as in ``(3a+b)/2``.
    """
    variables = list(variables)
    s = text.replace(" ", "")
    scale = Fraction(1)
    m = re.fullmatch(r"\((.*)\)/(\d+)", s)
    if m:
        s, scale = m.group(1), Fraction(1, int(m.group(2)))
    coef = [Fraction(0)] * len(variables)
    pos = 0
    while pos < len(s):
        t = _LIN_TERM.match(s, pos)
        if t is None or t.end() == pos:
            raise ExpressionError(f"bad linear form {text!r}")
        if t.group(3) is not None:
            sign, k, var = t.group(1), t.group(2), t.group(3)
            if var not in variables:
                raise ExpressionError(f"unknown variable {var!r} in {text!r}")
            c = Fraction(int(k) if k else 1)
            coef[variables.index(var)] += -c if sign == "-" else c
        elif t.group(5) and t.group(5) != "0":
            raise ExpressionError(f"constant term in linear form {text!r}")
        pos = t.end()
    return [float(c * scale) for c in coef]
