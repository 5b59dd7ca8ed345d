"""Sparse multivariate polynomials with rational coefficients.

Terms are stored as ``{exponent_tuple: Fraction}`` over an ordered tuple of
parameter names. Polynomials over different parameter tuples are aligned to
the union (left operand's order first) before any binary operation.

The monomial order is graded lexicographic in the declared parameter order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping, Tuple

Exps = Tuple[int, ...]


def _grlex_key(e: Exps):
    return (sum(e), e)


class Polynomial:
    __slots__ = ("params", "terms", "_hash")

    def __init__(self, params: Iterable[str], terms: Mapping[Exps, Fraction] | None = None):
        self.params: Tuple[str, ...] = tuple(params)
        n = len(self.params)
        clean: Dict[Exps, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != n:
                        raise ValueError(f"exponent vector {e} does not match parameters {self.params}")
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, params, terms):
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.params = params
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, params: Iterable[str] = ()) -> "Polynomial":
        params = tuple(params)
        return cls._raw(params, {(0,) * len(params): Fraction(c)} if c else {})

    @classmethod
    def variable(cls, name: str, params: Iterable[str]) -> "Polynomial":
        params = tuple(params)
        if name not in params:
            raise ValueError(f"unknown parameter {name!r}")
        e = tuple(1 if p == name else 0 for p in params)
        return cls._raw(params, {e: Fraction(1)})

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def is_one(self) -> bool:
        return self.is_constant() and self.constant_value() == 1

    def leading(self) -> Tuple[Exps, Fraction]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading()[1]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def used_params(self) -> Tuple[str, ...]:
        used = [False] * len(self.params)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(p for p, u in zip(self.params, used) if u)

    def with_params(self, params: Iterable[str]) -> "Polynomial":
        """Re-express over ``params`` (must contain every used parameter)."""
        params = tuple(params)
        if params == self.params:
            return self
        idx = {p: i for i, p in enumerate(params)}
        for p in self.used_params():
            if p not in idx:
                raise ValueError(f"parameter {p!r} missing from {params}")
        where = [idx.get(p) for p in self.params]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(params)
            for i, k in enumerate(e):
                if k:
                    ne[where[i]] = k
            terms[tuple(ne)] = c
        return Polynomial._raw(params, terms)

    # -- arithmetic ------------------------------------------------------

    def _align(self, other: "Polynomial"):
        if self.params == other.params:
            return self, other
        if not other.params or (other.is_constant()):
            return self, Polynomial.constant(other.constant_value() if other.terms else 0, self.params)
        if not self.params or self.is_constant():
            return Polynomial.constant(self.constant_value() if self.terms else 0, other.params), other
        union = self.params + tuple(p for p in other.params if p not in self.params)
        return self.with_params(union), other.with_params(union)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(a.params, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.params, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        a, b = self._align(other)
        if not a.terms or not b.terms:
            return Polynomial._raw(a.params, {})
        terms: Dict[Exps, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Polynomial._raw(a.params, terms)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial._raw(self.params, {})
        return Polynomial._raw(self.params, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1, self.params)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        from math import gcd

        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            names = self.params
            self._hash = hash(frozenset(
                (tuple((names[i], k) for i, k in enumerate(e) if k), c) for e, c in self.terms.items()
            ))
        return self._hash

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        vals = []
        for p in self.params:
            vals.append(assignment.get(p))
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    if vals[i] is None:
                        raise KeyError(f"no value for parameter {self.params[i]!r}")
                    t *= Fraction(vals[i]) ** k
            total += t
        return total

    def substitute(self, assignment: Mapping[str, Fraction]) -> "Polynomial":
        """Partially evaluate; bound parameters keep their slot with exponent 0."""
        hit = [i for i, p in enumerate(self.params) if p in assignment]
        if not hit:
            return self
        terms: Dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            t = c
            ne = list(e)
            for i in hit:
                if e[i]:
                    t *= Fraction(assignment[self.params[i]]) ** e[i]
                    ne[i] = 0
            ne = tuple(ne)
            s = terms.get(ne, 0) + t
            if s:
                terms[ne] = s
            else:
                terms.pop(ne, None)
        return Polynomial._raw(self.params, terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, params={self.params})"


def format_monomial(params, e: Exps) -> str:
    parts = []
    for p, k in zip(params, e):
        if k == 1:
            parts.append(p)
        elif k:
            parts.append(f"{p}^{k}")
    return "*".join(parts)


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = format_monomial(p.params, e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_rational(a)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# division and gcd


def divexact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f / g; raises ValueError when g does not divide f."""
    f, g = f._align(g)
    if not g.terms:
        raise ZeroDivisionError("polynomial division by zero")
    if g.is_constant():
        return f.scale(1 / g.constant_value())
    params = f.params
    ge, gc = g.leading()
    r = dict(f.terms)
    q: Dict[Exps, Fraction] = {}
    gterms = list(g.terms.items())
    while r:
        re_ = max(r, key=_grlex_key)
        rc = r[re_]
        te = tuple(x - y for x, y in zip(re_, ge))
        if any(k < 0 for k in te):
            raise ValueError("inexact polynomial division")
        tc = rc / gc
        q[te] = q.get(te, 0) + tc
        for e2, c2 in gterms:
            e = tuple(x + y for x, y in zip(te, e2))
            s = r.get(e, 0) - tc * c2
            if s:
                r[e] = s
            else:
                r.pop(e, None)
    return Polynomial._raw(params, {e: c for e, c in q.items() if c})


def _monomial_gcd(mono: Polynomial, other: Polynomial) -> Polynomial:
    (e0,) = mono.terms
    low = list(e0)
    for e in other.terms:
        for i, k in enumerate(e):
            if k < low[i]:
                low[i] = k
    return Polynomial._raw(mono.params, {tuple(low): Fraction(1)})


def _split(f: Polynomial, v: int) -> Dict[int, Polynomial]:
    """View f as a univariate polynomial in variable v: {degree: coefficient}."""
    parts: Dict[int, Dict[Exps, Fraction]] = {}
    for e, c in f.terms.items():
        d = e[v]
        ne = e[:v] + (0,) + e[v + 1:]
        parts.setdefault(d, {})[ne] = c
    return {d: Polynomial._raw(f.params, t) for d, t in parts.items()}


def _join(parts: Dict[int, Polynomial], v: int, params) -> Polynomial:
    terms: Dict[Exps, Fraction] = {}
    for d, p in parts.items():
        for e, c in p.terms.items():
            terms[e[:v] + (d,) + e[v + 1:]] = c
    return Polynomial._raw(params, terms)


def _shift(p: Polynomial, v: int, k: int) -> Polynomial:
    if not k:
        return p
    return Polynomial._raw(
        p.params, {e[:v] + (e[v] + k,) + e[v + 1:]: c for e, c in p.terms.items()}
    )


def _content_in(f: Polynomial, v: int) -> Polynomial:
    g = None
    for c in _split(f, v).values():
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return Polynomial.constant(1, f.params)
    return g


def _degree_in(f: Polynomial, v: int) -> int:
    return max((e[v] for e in f.terms), default=-1)


def _prem(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    db = _degree_in(b, v)
    lcb = _split(b, v)[db]
    r = a
    while r.terms:
        dr = _degree_in(r, v)
        if dr < db:
            break
        lcr = _split(r, v)[dr]
        r = r * lcb - _shift(lcr * b, v, dr - db)
    return r



# -- heuristic integer gcd ---------------------------------------------------
#
# Evaluate the last active variable at a large integer xi, take the gcd of the
# images recursively, rebuild a candidate by xi-adic interpolation and accept
# it only if it divides both inputs exactly. With xi above twice the smaller
# coefficient norm an accepted candidate is the gcd; otherwise we give up and
# the caller falls back to the pseudo-remainder sequence.

IntPoly = Dict[Exps, int]


def _to_integer(f: Polynomial) -> IntPoly:
    m = 1
    for c in f.terms.values():
        m = m * c.denominator // gcd(m, c.denominator)
    return {e: int(c * m) for e, c in f.terms.items()}


def _int_content(f: IntPoly) -> int:
    g = 0
    for c in f.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _symmod(c: int, m: int) -> int:
    r = c % m
    return r - m if r > m // 2 else r


def _eval_at(f: IntPoly, v: int, xi: int) -> IntPoly:
    out: IntPoly = {}
    for e, c in f.items():
        ne = e[:v] + (0,) + e[v + 1:]
        out[ne] = out.get(ne, 0) + c * xi ** e[v]
    return {e: c for e, c in out.items() if c}


def _interpolate(h: IntPoly, v: int, xi: int) -> IntPoly:
    out: IntPoly = {}
    k = 0
    while h:
        digit = {e: _symmod(c, xi) for e, c in h.items()}
        digit = {e: c for e, c in digit.items() if c}
        for e, c in digit.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
        h = {e: (c - digit.get(e, 0)) // xi for e, c in h.items()}
        h = {e: c for e, c in h.items() if c}
        k += 1
    return out


def _int_divides(d: IntPoly, f: IntPoly, params) -> bool:
    try:
        divexact(Polynomial(params, f), Polynomial(params, d))
    except ValueError:
        return False
    return True


def _heuristic_gcd(f: IntPoly, g: IntPoly, params, active: Tuple[int, ...], depth: int = 0):
    """Integer gcd (content included) of nonzero f, g, or None if the heuristic fails."""
    cf, cg = _int_content(f), _int_content(g)
    c = gcd(cf, cg)
    if not active:
        zero = (0,) * len(params)
        return {zero: c}
    f = {e: x // cf for e, x in f.items()}
    g = {e: x // cg for e, x in g.items()}
    v = active[-1]
    rest = active[:-1]
    norm = min(max(abs(x) for x in f.values()), max(abs(x) for x in g.values()))
    xi = 2 * norm + 29
    for _ in range(6):
        fe, ge = _eval_at(f, v, xi), _eval_at(g, v, xi)
        if fe and ge:
            inner = [u for u in rest if any(e[u] for e in fe) or any(e[u] for e in ge)]
            h = _heuristic_gcd(fe, ge, params, tuple(inner), depth + 1)
            if h is not None:
                cand = _interpolate(h, v, xi)
                k = _int_content(cand)
                cand = {e: x // k for e, x in cand.items()}
                if _int_divides(cand, f, params) and _int_divides(cand, g, params):
                    return {e: x * c for e, x in cand.items()}
        xi = xi * 73794 // 27011
    return None


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor (recursive content / primitive PRS)."""
    f, g = f._align(g)
    if not f.terms:
        return g.monic()
    if not g.terms:
        return f.monic()
    one = Polynomial.constant(1, f.params)
    if f.is_constant() or g.is_constant():
        return one
    if len(f.terms) == 1:
        return _monomial_gcd(f.monic(), g)
    if len(g.terms) == 1:
        return _monomial_gcd(g.monic(), f)
    if f == g:
        return f.monic()
    n = len(f.params)
    active = tuple(i for i in range(n) if _degree_in(f, i) > 0 or _degree_in(g, i) > 0)
    h = _heuristic_gcd(_to_integer(f), _to_integer(g), f.params, active)
    if h is not None:
        return Polynomial(f.params, h).monic()
    return _prs_gcd(f, g)


def _prs_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    n = len(f.params)
    one = Polynomial.constant(1, f.params)
    v = next(i for i in range(n) if _degree_in(f, i) > 0 or _degree_in(g, i) > 0)
    cf = _content_in(f, v)
    cg = _content_in(g, v)
    c = poly_gcd(cf, cg)
    a = divexact(f, cf)
    b = divexact(g, cg)
    if _degree_in(a, v) < _degree_in(b, v):
        a, b = b, a
    while b.terms and _degree_in(b, v) > 0:
        r = _prem(a, b, v)
        a = b
        b = divexact(r, _content_in(r, v)) if r.terms else r
    if b.terms:
        # remainder chain hit a nonzero constant in v: primitive parts are coprime
        h = one
    else:
        h = divexact(a, _content_in(a, v)) if _degree_in(a, v) > 0 else one
    return (c * h).monic()
