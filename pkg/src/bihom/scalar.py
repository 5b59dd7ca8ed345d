"""Elements of the rational-function field Q(p1, ..., pm).

A :class:`Scalar` is a reduced quotient ``numer / denom`` of polynomials with
``gcd(numer, denom) = 1`` and ``denom`` monic in graded-lex order, so equal
rational functions share one representation (for a fixed parameter order).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .poly import Polynomial, divexact, format_polynomial, poly_gcd

Number = Union[int, Fraction]


class InadmissibleSpecialization(ZeroDivisionError):
    """A denominator vanishes at the requested parameter values."""


class Scalar:
    __slots__ = ("numer", "denom", "_key")

    def __init__(self, numer: Polynomial, denom: Polynomial | None = None, *, _reduced: bool = False):
        if denom is None:
            denom = Polynomial.constant(1, numer.params)
        if not denom.terms:
            raise ZeroDivisionError("Scalar with zero denominator")
        numer, denom = numer._align(denom)
        if not _reduced:
            numer, denom = _reduce(numer, denom)
        self.numer = numer
        self.denom = denom
        self._key = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def of(cls, value: "Scalar | Number | str", params: Iterable[str] = ()) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            from .expr import parse_scalar

            return parse_scalar(value, list(params))
        return cls(Polynomial.constant(Fraction(value), tuple(params)), _reduced=True)

    @classmethod
    def param(cls, name: str, params: Iterable[str]) -> "Scalar":
        return cls(Polynomial.variable(name, params), _reduced=True)

    @property
    def params(self):
        return self.numer.params

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.numer.terms

    def is_constant(self) -> bool:
        return self.numer.is_constant() and self.denom.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.numer.constant_value()

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.numer.terms:
            return self
        if not self.numer.terms:
            return other
        a, b, c, d = self.numer, self.denom, other.numer, other.denom
        if b.is_one() and d.is_one():
            return Scalar(a + c, _reduced=True)
        if b == d:
            return Scalar(a + c, b)
        g = poly_gcd(b, d)
        bg = divexact(b, g)
        dg = divexact(d, g)
        return Scalar(a * dg + c * bg, bg * d)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.numer, self.denom, _reduced=True)

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.numer.terms or not other.numer.terms:
            return Scalar(self.numer.scale(0)._align(other.numer)[0], _reduced=True)
        a, b, c, d = self.numer, self.denom, other.numer, other.denom
        if b.is_one() and d.is_one():
            return Scalar(a * c, _reduced=True)
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if not g1.is_one():
            a, d = divexact(a, g1), divexact(d, g1)
        if not g2.is_one():
            c, b = divexact(c, g2), divexact(b, g2)
        return _normalized(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.numer.terms:
            raise ZeroDivisionError("division by zero Scalar")
        return _normalized(self.denom, self.numer)

    def __truediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.numer ** k, self.denom ** k, _reduced=True)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.params == other.params:
            return self.numer.terms == other.numer.terms and self.denom.terms == other.denom.terms
        return (self.numer * other.denom) == (other.numer * self.denom)

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def canonical_key(self):
        """Representation independent of parameter order and unused parameters."""
        if self._key is None:
            used = sorted(set(self.numer.used_params()) | set(self.denom.used_params()))
            n = self.numer.with_params(used)
            d = self.denom.with_params(used)
            lc = d.leading_coefficient()
            n, d = n.scale(1 / lc), d.scale(1 / lc)
            self._key = (tuple(used), frozenset(n.terms.items()), frozenset(d.terms.items()))
        return self._key

    def __bool__(self) -> bool:
        return bool(self.numer.terms)

    # -- specialization --------------------------------------------------

    def evaluate_at(self, assignment: Mapping[str, Number]) -> Fraction:
        """Exact value at a full assignment of the parameters that occur."""
        missing = [p for p in set(self.numer.used_params()) | set(self.denom.used_params())
                   if p not in assignment]
        if missing:
            raise KeyError(f"assignment does not cover parameter(s) {sorted(missing)}")
        den = self.denom.evaluate(assignment)
        if den == 0:
            raise InadmissibleSpecialization(f"denominator vanishes at {dict(assignment)}")
        return self.numer.evaluate(assignment) / den

    def substitute(self, assignment: Mapping[str, Number]) -> "Scalar":
        """Partial evaluation; parameters keep their slots."""
        d = self.denom.substitute(assignment)
        if not d.terms:
            raise InadmissibleSpecialization(f"denominator vanishes at {dict(assignment)}")
        return Scalar(self.numer.substitute(assignment), d)

    def with_params(self, params: Iterable[str]) -> "Scalar":
        return _normalized(self.numer.with_params(params), self.denom.with_params(params))

    # -- printing --------------------------------------------------------

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(Polynomial.constant(x), _reduced=True)
    return NotImplemented


def _normalized(n: Polynomial, d: Polynomial) -> Scalar:
    """Build from coprime n, d: only make the denominator monic."""
    if not d.terms:
        raise ZeroDivisionError("division by zero Scalar")
    lc = d.leading_coefficient()
    if lc != 1:
        n, d = n.scale(1 / lc), d.scale(1 / lc)
    return Scalar(n, d, _reduced=True)


def _reduce(n: Polynomial, d: Polynomial):
    if not n.terms:
        return n, Polynomial.constant(1, n.params)
    if not d.is_constant():
        g = poly_gcd(n, d)
        if not g.is_one():
            n, d = divexact(n, g), divexact(d, g)
    lc = d.leading_coefficient()
    if lc != 1:
        n, d = n.scale(1 / lc), d.scale(1 / lc)
    return n, d


ZERO = Scalar(Polynomial.constant(0), _reduced=True)
ONE = Scalar(Polynomial.constant(1), _reduced=True)


def _needs_parens(p: Polynomial) -> bool:
    return len(p.terms) > 1


def format_scalar(s: Scalar) -> str:
    """Canonical text: expanded numerator over monic denominator, grlex order."""
    num = format_polynomial(s.numer)
    if s.denom.is_one():
        return num
    if _needs_parens(s.numer):
        num = f"({num})"
    den = format_polynomial(s.denom)
    single_power = len(s.denom.terms) == 1 and sum(1 for k in next(iter(s.denom.terms)) if k) == 1
    if not single_power:
        den = f"({den})"
    return f"{num}/{den}"


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Dispatch by op-code: add, sub, mul, div, neg, inv."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown op-code {op!r}")


def evaluate_at(s: Scalar, assignment: Mapping[str, Number]) -> Fraction:
    return s.evaluate_at(assignment)
