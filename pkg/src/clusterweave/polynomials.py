"""Exact arithmetic for sparse multivariate polynomials and their quotients.

A :class:`Polynomial` stores a mapping from exponent tuples to nonzero
``Fraction`` coefficients together with the tuple of variable names the
exponents refer to.  Variable names sort naturally ("x2" before "x10"),
unused variables are pruned, and zero coefficients are dropped, so equal
polynomials always have identical representations.  Leading terms are taken
in graded lexicographic order.

A :class:`RationalFunction` is kept fully reduced: numerator and denominator
share no common factor, the denominator is primitive with integer
coefficients and positive leading coefficient, and in particular a monomial
denominator always has coefficient one.

GCDs are computed by the classical recursive content / primitive-part
construction with a primitive pseudo-remainder sequence in the innermost
variable, with fast paths when either argument is a single monomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Iterator, Mapping, Union

from .errors import NotPolynomial, ParseError

Exponents = tuple[int, ...]
Coeff = Union[int, Fraction]
_RawTerms = dict[Exponents, Fraction]

_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z_]*?)(\d*)$")


def variable_sort_key(name: str) -> tuple[str, int]:
    """Sort key that orders a trailing numeric suffix numerically.

    >>> sorted(["x10", "x2", "y", "x"], key=variable_sort_key)
    ['x', 'x2', 'x10', 'y']
    """
    m = _NAME_RE.match(name)
    if m is None or not name:
        raise ParseError(f"bad variable name: {name!r}")
    stem, digits = m.group(1), m.group(2)
    return (stem, int(digits) if digits else -1)


def _glex_key(e: Exponents) -> tuple[int, Exponents]:
    return (sum(e), e)


# ---------------------------------------------------------------------------
# Raw-dictionary arithmetic on a fixed variable width.  The gcd recursion
# works at this level so variable indices stay stable throughout.


def _radd(a: _RawTerms, b: _RawTerms) -> _RawTerms:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _rneg(a: _RawTerms) -> _RawTerms:
    return {e: -c for e, c in a.items()}


def _rscale(a: _RawTerms, c: Fraction) -> _RawTerms:
    if not c:
        return {}
    return {e: c * v for e, v in a.items()}


def _rmul(a: _RawTerms, b: _RawTerms) -> _RawTerms:
    out: _RawTerms = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _rmul_term(a: _RawTerms, e0: Exponents, c0: Fraction) -> _RawTerms:
    return {tuple(x + y for x, y in zip(e, e0)): c * c0 for e, c in a.items()}


def _rlead(a: _RawTerms) -> Exponents:
    return max(a, key=_glex_key)


def _rexact_div(a: _RawTerms, b: _RawTerms) -> _RawTerms:
    """Quotient a/b when the division is exact; ArithmeticError otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot: _RawTerms = {}
    rem = dict(a)
    eb = _rlead(b)
    cb = b[eb]
    while rem:
        ea = _rlead(rem)
        diff = tuple(x - y for x, y in zip(ea, eb))
        if any(d < 0 for d in diff):
            raise ArithmeticError("inexact polynomial division")
        c = rem[ea] / cb
        quot[diff] = c
        rem = _radd(rem, _rneg(_rmul_term(b, diff, c)))
    return quot


def _rmin_exponents(a: _RawTerms, width: int) -> Exponents:
    mins = [None] * width
    for e in a:
        for i, x in enumerate(e):
            if mins[i] is None or x < mins[i]:
                mins[i] = x
    return tuple(0 if m is None else m for m in mins)


def _rrational_content(a: _RawTerms) -> Fraction:
    """Signed rational c with a/c primitive and positive leading coefficient."""
    if not a:
        return Fraction(0)
    num = 0
    den = 1
    for c in a.values():
        num = int_gcd(num, c.numerator)
        den = den * c.denominator // int_gcd(den, c.denominator)
    content = Fraction(num, den)
    return content if a[_rlead(a)] > 0 else -content

def _rprimitive(a: _RawTerms) -> _RawTerms:
    if not a:
        return {}
    return _rscale(a, 1 / _rrational_content(a))


def _rdeg_in(a: _RawTerms, vi: int) -> int:
    return max(e[vi] for e in a) if a else -1


def _rsplit_by_power(a: _RawTerms, vi: int) -> dict[int, _RawTerms]:
    out: dict[int, _RawTerms] = {}
    for e, c in a.items():
        stripped = e[:vi] + (0,) + e[vi + 1 :]
        out.setdefault(e[vi], {})[stripped] = c
    return out


def _rshift(a: _RawTerms, vi: int, k: int) -> _RawTerms:
    return {e[:vi] + (e[vi] + k,) + e[vi + 1 :]: c for e, c in a.items()}


def _rcontent_in(a: _RawTerms, vi: int, width: int) -> _RawTerms:
    g: _RawTerms = {}
    for part in _rsplit_by_power(a, vi).values():
        g = _rgcd(g, part, width)
    return g


def _rprem(a: _RawTerms, b: _RawTerms, vi: int) -> _RawTerms:
    """Pseudo-remainder of a by b with respect to variable vi."""
    db = _rdeg_in(b, vi)
    lead_b = _rsplit_by_power(b, vi)[db]
    rem = dict(a)
    while rem:
        dr = _rdeg_in(rem, vi)
        if dr < db:
            break
        lead_r = _rsplit_by_power(rem, vi)[dr]
        rem = _radd(
            _rmul(rem, lead_b),
            _rneg(_rmul(_rshift(lead_r, vi, dr - db), b)),
        )
    return rem


def _rgcd(a: _RawTerms, b: _RawTerms, width: int) -> _RawTerms:
    """Primitive gcd with positive leading coefficient; gcd(0, 0) = 0."""
    if not a:
        return _rprimitive(b)
    if not b:
        return _rprimitive(a)
    if len(a) == 1 or len(b) == 1:
        mins = tuple(
            min(x, y)
            for x, y in zip(_rmin_exponents(a, width), _rmin_exponents(b, width))
        )
        return {mins: Fraction(1)}
    a = _rprimitive(a)
    b = _rprimitive(b)
    used = [
        vi
        for vi in range(width)
        if any(e[vi] for e in a) or any(e[vi] for e in b)
    ]
    if not used:
        return {(0,) * width: Fraction(1)}
    vi = used[0]
    da, db = _rdeg_in(a, vi), _rdeg_in(b, vi)
    if da == 0:
        return _rgcd(a, _rcontent_in(b, vi, width), width)
    if db == 0:
        return _rgcd(b, _rcontent_in(a, vi, width), width)
    ca = _rcontent_in(a, vi, width)
    cb = _rcontent_in(b, vi, width)
    cg = _rgcd(ca, cb, width)
    big = _rexact_div(a, ca)
    small = _rexact_div(b, cb)
    if _rdeg_in(big, vi) < _rdeg_in(small, vi):
        big, small = small, big
    while small:
        if _rdeg_in(small, vi) == 0:
            # Both sides are primitive in vi, so a nonzero remainder of
            # degree zero forces a trivial gcd in this variable.
            return _rprimitive(cg)
        rem = _rprem(big, small, vi)
        big, small = small, _rexact_div(rem, _rcontent_in(rem, vi, width)) if rem else {}
    return _rprimitive(_rmul(cg, big))


# ---------------------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    variables: tuple[str, ...]
    terms: dict[Exponents, Fraction]

    def __init__(
        self,
        variables: Iterable[str],
        terms: Mapping[Exponents, Coeff],
    ) -> None:
        names = tuple(variables)
        if len(set(names)) != len(names):
            raise ParseError(f"duplicate variable names: {names}")
        order = sorted(range(len(names)), key=lambda i: variable_sort_key(names[i]))
        sorted_names = tuple(names[i] for i in order)
        cleaned: dict[Exponents, Fraction] = {}
        for e, c in terms.items():
            if len(e) != len(names):
                raise ParseError("exponent tuple width does not match variables")
            if any(x < 0 for x in e):
                raise ParseError("negative exponent in polynomial")
            c = Fraction(c)
            if not c:
                continue
            key = tuple(e[i] for i in order)
            acc = cleaned.get(key, Fraction(0)) + c
            if acc:
                cleaned[key] = acc
            else:
                cleaned.pop(key, None)
        used = [
            i for i in range(len(sorted_names)) if any(e[i] for e in cleaned)
        ]
        if len(used) != len(sorted_names):
            sorted_names = tuple(sorted_names[i] for i in used)
            cleaned = {
                tuple(e[i] for i in used): c for e, c in cleaned.items()
            }
        object.__setattr__(self, "variables", sorted_names)
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "_hash", None)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> Polynomial:
        return cls((), {})

    @classmethod
    def constant(cls, c: Coeff) -> Polynomial:
        return cls((), {(): Fraction(c)} if c else {})

    @classmethod
    def variable(cls, name: str) -> Polynomial:
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff: Coeff = 1) -> Polynomial:
        names = tuple(powers)
        return cls(names, {tuple(powers[v] for v in names): Fraction(coeff)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.variables

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        if self.variables:
            raise NotPolynomial(f"not a constant: {self}")
        return self.terms.get((), Fraction(0))

    def total_degree(self) -> int:
        """Total degree, with the zero polynomial at -1."""
        return max((sum(e) for e in self.terms), default=-1)

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[_rlead(self.terms)]

    def sorted_terms(self) -> Iterator[tuple[Exponents, Fraction]]:
        """Terms in decreasing graded lexicographic order."""
        for e in sorted(self.terms, key=_glex_key, reverse=True):
            yield e, self.terms[e]

    def evaluate(self, assignment: Mapping[str, Coeff]) -> Fraction:
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise ParseError(f"unassigned variables: {missing}")
        total = Fraction(0)
        for e, c in self.terms.items():
            prod = c
            for v, k in zip(self.variables, e):
                if k:
                    prod *= Fraction(assignment[v]) ** k
            total += prod
        return total

    # -- alignment and arithmetic -------------------------------------------

    def _aligned_with(self, other: Polynomial) -> tuple[tuple[str, ...], _RawTerms, _RawTerms]:
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        merged = tuple(
            sorted(set(self.variables) | set(other.variables), key=variable_sort_key)
        )
        return merged, _reindex(self, merged), _reindex(other, merged)

    @staticmethod
    def _coerce(value: object) -> Polynomial | None:
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return Polynomial.constant(value)
        return None

    def __add__(self, other: object) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        names, a, b = self._aligned_with(rhs)
        return Polynomial(names, _radd(a, b))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.variables, _rneg(self.terms))

    def __sub__(self, other: object) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        names, a, b = self._aligned_with(rhs)
        return Polynomial(names, _rmul(a, b))

    __rmul__ = __mul__

    def __pow__(self, power: int) -> Polynomial:
        if not isinstance(power, int) or power < 0:
            raise ParseError(f"polynomial power must be a nonnegative int: {power}")
        result = Polynomial.constant(1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self.variables == rhs.variables and self.terms == rhs.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.variables, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Polynomial is immutable")

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def _reindex(p: Polynomial, names: tuple[str, ...]) -> _RawTerms:
    pos = {v: i for i, v in enumerate(names)}
    width = len(names)
    out: _RawTerms = {}
    for e, c in p.terms.items():
        row = [0] * width
        for v, k in zip(p.variables, e):
            row[pos[v]] = k
        out[tuple(row)] = c
    return out


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Primitive gcd with positive leading coefficient.

    >>> x, y = Polynomial.variable("x"), Polynomial.variable("y")
    >>> print(gcd((x + y) * (x - y), (x + y) * x))
    x + y
    """
    names, ra, rb = a._aligned_with(b)
    return Polynomial(names, _rgcd(ra, rb, len(names)))


def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient a/b when b divides a exactly; ArithmeticError otherwise."""
    names, ra, rb = a._aligned_with(b)
    return Polynomial(names, _rexact_div(ra, rb))


def split_monomial_content(p: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Write p = m * core with m a monomial and core monomial-free.

    The core is primitive with positive leading coefficient and has no
    variable or constant factor in common with any monomial.
    """
    if p.is_zero():
        raise ZeroDivisionError("cannot split the zero polynomial")
    width = len(p.variables)
    mins = _rmin_exponents(p.terms, width)
    content = _rrational_content(p.terms)
    mono = Polynomial(p.variables, {mins: content})
    core = Polynomial(
        p.variables,
        {
            tuple(x - y for x, y in zip(e, mins)): c / content
            for e, c in p.terms.items()
        },
    )
    return mono, core


# ---------------------------------------------------------------------------


class RationalFunction:
    """Quotient of two polynomials, stored fully reduced."""

    __slots__ = ("numerator", "denominator", "_hash")

    numerator: Polynomial
    denominator: Polynomial

    def __init__(self, numerator: Polynomial, denominator: Polynomial | None = None) -> None:
        num = Polynomial._coerce(numerator)
        den = Polynomial._coerce(1 if denominator is None else denominator)
        if num is None or den is None:
            raise ParseError("numerator and denominator must be polynomials")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial.zero(), Polynomial.constant(1)
        else:
            num, den = _reduce_fraction(num, den)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def variable(cls, name: str) -> RationalFunction:
        return cls(Polynomial.variable(name))

    @classmethod
    def constant(cls, c: Coeff) -> RationalFunction:
        return cls(Polynomial.constant(c))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return self.denominator == Polynomial.constant(1)

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise NotPolynomial(f"denominator is not 1: {self}")
        return self.numerator

    @staticmethod
    def _coerce(value: object) -> RationalFunction | None:
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, (int, Fraction, Polynomial)):
            return RationalFunction(Polynomial._coerce(value))
        return None

    def __add__(self, other: object) -> RationalFunction:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RationalFunction(
            self.numerator * rhs.denominator + rhs.numerator * self.denominator,
            self.denominator * rhs.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other: object) -> RationalFunction:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> RationalFunction:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> RationalFunction:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RationalFunction(
            self.numerator * rhs.numerator, self.denominator * rhs.denominator
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> RationalFunction:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(
            self.numerator * rhs.denominator, self.denominator * rhs.numerator
        )

    def __rtruediv__(self, other: object) -> RationalFunction:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs / self

    def __pow__(self, power: int) -> RationalFunction:
        if not isinstance(power, int):
            raise ParseError(f"rational power must be an int: {power}")
        if power < 0:
            return RationalFunction(
                self.denominator ** (-power), self.numerator ** (-power)
            )
        return RationalFunction(self.numerator**power, self.denominator**power)

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return (
            self.numerator == rhs.numerator
            and self.denominator == rhs.denominator
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.numerator, self.denominator))
            object.__setattr__(self, "_hash", h)
        return h

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("RationalFunction is immutable")

    def __repr__(self) -> str:
        return f"RationalFunction({format_rational(self)!r})"

    def __str__(self) -> str:
        return format_rational(self)


def _reduce_fraction(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    names, rn, rd = num._aligned_with(den)
    width = len(names)
    if len(rd) == 1:
        # Monomial denominator: cancel shared exponents directly.
        (ed,) = rd
        mins = tuple(min(x, y) for x, y in zip(_rmin_exponents(rn, width), ed))
        if any(mins):
            rn = {tuple(x - y for x, y in zip(e, mins)): c for e, c in rn.items()}
            rd = {tuple(x - y for x, y in zip(ed, mins)): rd[ed]}
    else:
        g = _rgcd(rn, rd, width)
        if len(g) > 1 or any(_rlead(g)):
            rn = _rexact_div(rn, g)
            rd = _rexact_div(rd, g)
    scale = _rrational_content(rd)
    if scale != 1:
        rn = _rscale(rn, 1 / scale)
        rd = _rscale(rd, 1 / scale)
    return Polynomial(names, rn), Polynomial(names, rd)


# ---------------------------------------------------------------------------


class LaurentExpansion:
    """Finite sum of monomials whose exponents may be negative."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponents, Coeff]) -> None:
        self.variables = tuple(variables)
        self.terms = {e: Fraction(c) for e, c in terms.items() if c}

    def is_positive(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentExpansion):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __repr__(self) -> str:
        return f"LaurentExpansion(variables={self.variables!r}, terms={self.terms!r})"


def laurent_expansion(f: RationalFunction) -> LaurentExpansion | None:
    """Expansion of f as a Laurent polynomial, or None when impossible.

    A reduced rational function is a Laurent polynomial exactly when its
    denominator is a single monomial.

    >>> x = RationalFunction.variable("x1")
    >>> laurent_expansion((x * x + 1) / x).terms
    {(1,): Fraction(1, 1), (-1,): Fraction(1, 1)}
    >>> laurent_expansion(1 / (x + 1)) is None
    True
    """
    den = f.denominator
    if not den.is_monomial():
        return None
    if den == Polynomial.constant(1):
        return LaurentExpansion(f.numerator.variables, f.numerator.terms)
    names, rn, rd = f.numerator._aligned_with(den)
    (ed,) = rd
    cd = rd[ed]
    terms = {
        tuple(x - y for x, y in zip(e, ed)): c / cd for e, c in rn.items()
    }
    return LaurentExpansion(names, terms)


def is_laurent(f: RationalFunction) -> bool:
    """Whether f is a Laurent polynomial in its variables."""
    return f.denominator.is_monomial()


def has_positive_coeffs(f: RationalFunction) -> bool:
    """Whether f expands as a Laurent polynomial with positive coefficients."""
    expansion = laurent_expansion(f)
    return expansion is not None and expansion.is_positive()


# ---------------------------------------------------------------------------
# Text format.  Terms print in decreasing graded lexicographic order, and a
# proper quotient prints as (numerator)/(denominator); the printer and parser
# round-trip exactly.


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form of a polynomial.

    >>> x1, x2 = Polynomial.variable("x1"), Polynomial.variable("x2")
    >>> format_polynomial(x2 * x2 * 3 - x1 + Polynomial.constant(Fraction(1, 2)))
    '3*x2^2 - x1 + 1/2'
    """
    if p.is_zero():
        return "0"
    pieces: list[str] = []
    for e, c in p.sorted_terms():
        factors = [
            v if k == 1 else f"{v}^{k}"
            for v, k in zip(p.variables, e)
            if k
        ]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(pieces)


def format_rational(f: RationalFunction) -> str:
    """Canonical text form of a rational function."""
    if f.is_polynomial():
        return format_polynomial(f.numerator)
    return f"({format_polynomial(f.numerator)})/({format_polynomial(f.denominator)})"


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character at position {pos}: {text[pos]!r}")
        tokens.append("^" if m.group("op") == "**" else m.group(0).strip())
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser producing a RationalFunction.

    Grammar: sums of products of powers, with / at the same precedence as *
    and juxtaposition ("2 x1") read as multiplication.
    """

    def __init__(self, tokens: list[str]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def parse(self) -> RationalFunction:
        value = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input from token {self.peek()!r}")
        return value

    def expr(self) -> RationalFunction:
        negate = False
        while self.peek() in ("+", "-"):
            negate ^= self.take() == "-"
        value = self.term()
        if negate:
            value = -value
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value - rhs if op == "-" else value + rhs
        return value

    def term(self) -> RationalFunction:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                op = self.take()
                rhs = self.factor()
                value = value / rhs if op == "/" else value * rhs
            elif tok is not None and (tok[0].isdigit() or tok[0].isalpha() or tok == "("):
                value = value * self.factor()
            else:
                return value

    def factor(self) -> RationalFunction:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be a nonnegative integer, got {tok!r}")
            base = base ** int(tok)
        return base

    def atom(self) -> RationalFunction:
        tok = self.take()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise ParseError("expected closing parenthesis")
            return value
        if tok.isdigit():
            return RationalFunction.constant(int(tok))
        if tok[0].isalpha() or tok[0] == "_":
            return RationalFunction.variable(tok)
        raise ParseError(f"unexpected token {tok!r}")


def parse_rational(text: str) -> RationalFunction:
    """Parse the text format back into a rational function.

    >>> parse_rational("(x2 + 1)/(x1)") == (
    ...     RationalFunction.variable("x2") + 1) / RationalFunction.variable("x1")
    True
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    return _Parser(tokens).parse()


def parse_polynomial(text: str) -> Polynomial:
    """Parse text that must denote a polynomial (denominator one)."""
    f = parse_rational(text)
    if not f.is_polynomial():
        raise NotPolynomial(f"not a polynomial: {text!r}")
    return f.numerator
