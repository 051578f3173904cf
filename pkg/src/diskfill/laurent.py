"""Exact integer Laurent polynomials in one variable (t) and two (a, z).

``IntLaurent`` models Z[t, t^-1] and carries Alexander polynomials and
abelianized Fox derivatives.  ``BiLaurent`` models Z[a^±1, z^±1] for
skein computations; a finished knot polynomial has only z-exponents >= 0
but intermediate skein values may not.

Terms are stored sparsely as exponent -> coefficient maps with no zero
entries, so two values are equal exactly when their term maps agree.
Coefficients are Python ints: arithmetic is exact and arbitrary
precision, so overflow cannot occur.  Values are immutable and hashable;
operations return fresh values and are safe to share across threads.

The text format used by the CLI and golden files writes terms in
descending exponent order with ``^`` for exponents and ``*`` between
factors, e.g. ``4*t^2 - 4*t + 1`` and ``a + a^-2*z``.  ``parse`` accepts
the same grammar with arbitrary whitespace and optional ``*``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _int_gcd

from .errors import InputError

__all__ = [
    "IntLaurent",
    "BiLaurent",
    "normalize_unit",
    "unit_equivalent",
    "substitute_inverse",
    "laurent_gcd",
    "div_exact",
    "a_mirror",
    "min_deg_a",
]


def _clean(items):
    terms = {}
    for exp, coeff in items:
        terms[exp] = terms.get(exp, 0) + coeff
    return {exp: coeff for exp, coeff in terms.items() if coeff}


class IntLaurent:
    """An integer Laurent polynomial in the variable t."""

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        if isinstance(terms, dict):
            terms = terms.items()
        self._terms = _clean(terms)

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def t(cls, power=1):
        return cls({power: 1})

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, exp):
        return self._terms.get(exp, 0)

    def __bool__(self):
        return bool(self._terms)

    def min_exp(self):
        if not self._terms:
            raise ValueError("the zero polynomial has no minimal exponent")
        return min(self._terms)

    def max_exp(self):
        if not self._terms:
            raise ValueError("the zero polynomial has no maximal exponent")
        return max(self._terms)

    def shifted(self, k):
        """Multiply by t^k."""
        return IntLaurent({e + k: c for e, c in self._terms.items()})

    def evaluate(self, x):
        """Evaluate at a nonzero rational point (exactly)."""
        x = Fraction(x)
        return sum((c * x ** e for e, c in self._terms.items()), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntLaurent.constant(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self):
        return IntLaurent({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = IntLaurent.constant(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return IntLaurent(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntLaurent.constant(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = IntLaurent.constant(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        items = []
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                items.append((e1 + e2, c1 * c2))
        return IntLaurent(items)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = IntLaurent.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self):
        return _render(self._terms.items(), _one_var_key, _one_var_factors)

    def __repr__(self):
        return f"IntLaurent({self})"

    @classmethod
    def parse(cls, text):
        return cls(_parse_terms(text, ("t",), _one_var_unkey))


class BiLaurent:
    """An integer Laurent polynomial in the variables a and z."""

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        if isinstance(terms, dict):
            terms = terms.items()
        self._terms = _clean(terms)

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def a(cls, power=1):
        return cls({(power, 0): 1})

    @classmethod
    def z(cls, power=1):
        return cls({(0, power): 1})

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, key):
        return self._terms.get(key, 0)

    def __bool__(self):
        return bool(self._terms)

    def min_z_exp(self):
        if not self._terms:
            raise ValueError("the zero polynomial has no z-degree")
        return min(ez for (_, ez) in self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = BiLaurent.constant(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self):
        return BiLaurent({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = BiLaurent.constant(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return BiLaurent(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = BiLaurent.constant(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = BiLaurent.constant(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        items = []
        for (a1, z1), c1 in self._terms.items():
            for (a2, z2), c2 in other._terms.items():
                items.append(((a1 + a2, z1 + z2), c1 * c2))
        return BiLaurent(items)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = BiLaurent.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self):
        return _render(self._terms.items(), _two_var_key, _two_var_factors)

    def __repr__(self):
        return f"BiLaurent({self})"

    @classmethod
    def parse(cls, text):
        return cls(_parse_terms(text, ("a", "z"), _two_var_unkey))


# -- rendering and parsing ------------------------------------------------

def _one_var_key(exp):
    return (exp,)


def _one_var_unkey(exps):
    return exps[0]


def _one_var_factors(exp):
    return [("t", exp)] if exp else []


def _two_var_key(key):
    return key


def _two_var_unkey(exps):
    return exps


def _two_var_factors(key):
    ea, ez = key
    out = []
    if ea:
        out.append(("a", ea))
    if ez:
        out.append(("z", ez))
    return out


def _render(items, sort_key, factors_of):
    items = sorted(items, key=lambda item: sort_key(item[0]), reverse=True)
    if not items:
        return "0"
    pieces = []
    for key, coeff in items:
        factors = []
        for var, exp in factors_of(key):
            factors.append(var if exp == 1 else f"{var}^{exp}")
        mag = abs(coeff)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<int>\d+)|(?P<var>[A-Za-z])(?:\^(?P<exp>-?\d+))?|(?P<mul>\*))")


def _parse_terms(text, variables, unkey):
    """Parse a polynomial string into a term map keyed by exponent tuples."""
    text = text.strip()
    pos, n = 0, len(text)
    items = []
    sign, coeff, exps, in_term = 1, None, None, False

    def flush():
        nonlocal sign, coeff, exps, in_term
        if in_term:
            items.append((unkey(tuple(exps)), sign * (1 if coeff is None else coeff)))
        sign, coeff, exps, in_term = 1, None, None, False

    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse polynomial near {text[pos:pos + 12]!r}")
        pos = m.end()
        if m.group("sign"):
            if in_term:
                flush()
            sign = -sign if m.group("sign") == "-" else sign
        elif m.group("int"):
            if in_term and coeff is not None:
                raise InputError(f"two bare integers in one term of {text!r}")
            if exps is None:
                exps = [0] * len(variables)
            coeff = (coeff or 1) * int(m.group("int")) if coeff is not None else int(m.group("int"))
            in_term = True
        elif m.group("var"):
            var = m.group("var")
            if var not in variables:
                raise InputError(f"unknown variable {var!r} in {text!r}")
            if exps is None:
                exps = [0] * len(variables)
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
            exps[variables.index(var)] += exp
            in_term = True
        # '*' tokens just separate factors
    flush()
    if not items and text.strip() not in ("", "0"):
        raise InputError(f"cannot parse polynomial {text!r}")
    return items


# -- unit normalization and equivalence -----------------------------------

def normalize_unit(p):
    """Canonical representative of p up to multiplication by ±t^k.

    The minimal exponent is shifted to 0 and the sign is fixed so the
    constant coefficient is positive.  Rejects the zero polynomial.
    """
    if not p:
        raise ValueError("the zero polynomial has no unit normalization")
    q = p.shifted(-p.min_exp())
    if q.coefficient(0) < 0:
        q = -q
    return q


def substitute_inverse(p):
    """Apply t -> t^-1."""
    return IntLaurent({-e: c for e, c in p.terms.items()})


def unit_equivalent(p, q, allow_inversion=False):
    """True when p and q agree up to units ±t^k.

    With ``allow_inversion`` the comparison also quotients by the ring
    involution t -> t^-1.  Zero is equivalent only to zero.
    """
    if not p or not q:
        return not p and not q
    if normalize_unit(p) == normalize_unit(q):
        return True
    if allow_inversion:
        return normalize_unit(p) == normalize_unit(substitute_inverse(q))
    return False


# -- division and gcd ------------------------------------------------------

def _dense(p):
    """Return (min_exp, coefficient list low->high) for a nonzero p."""
    lo, hi = p.min_exp(), p.max_exp()
    return lo, [p.coefficient(e) for e in range(lo, hi + 1)]


def _from_dense(lo, coeffs):
    return IntLaurent({lo + i: c for i, c in enumerate(coeffs) if c})


def div_exact(p, q):
    """Return p / q when q divides p in Z[t, t^-1], else None."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return IntLaurent()
    plo, pc = _dense(p)
    qlo, qc = _dense(q)
    if len(pc) < len(qc):
        return None
    rem = [Fraction(c) for c in pc]
    lead = Fraction(qc[-1])
    quot = [Fraction(0)] * (len(pc) - len(qc) + 1)
    for k in range(len(quot) - 1, -1, -1):
        f = rem[k + len(qc) - 1] / lead
        quot[k] = f
        if f:
            for i, c in enumerate(qc):
                rem[k + i] -= f * c
    if any(rem):
        return None
    if any(f.denominator != 1 for f in quot):
        return None
    return _from_dense(plo - qlo, [int(f) for f in quot])


def _content(coeffs):
    g = 0
    for c in coeffs:
        g = _int_gcd(g, abs(c))
    return g


def _frac_rem(a, b):
    """Remainder of a by b over Q; dense Fraction lists, b nonzero."""
    rem = a[:]
    lead = b[-1]
    while len(rem) >= len(b):
        f = rem[-1] / lead
        for i in range(len(b)):
            rem[len(rem) - len(b) + i] -= f * b[i]
        while rem and not rem[-1]:
            rem.pop()
        if not rem:
            break
    return rem


def laurent_gcd(p, q):
    """A gcd of p and q in Z[t, t^-1], in normalize_unit canonical form.

    t is a unit, so powers of t never appear as factors; the integer
    content does matter and is the gcd of the two contents.
    """
    if not p and not q:
        raise ValueError("gcd of two zero polynomials is undefined")
    if not p:
        return normalize_unit(q)
    if not q:
        return normalize_unit(p)
    _, pc = _dense(p)
    _, qc = _dense(q)
    content = _int_gcd(_content(pc), _content(qc))
    a = [Fraction(c) for c in pc]
    b = [Fraction(c) for c in qc]
    while b:
        a, b = b, _frac_rem(a, b)
    # clear denominators and take the primitive part
    denom = 1
    for f in a:
        denom = denom * f.denominator // _int_gcd(denom, f.denominator)
    ints = [int(f * denom) for f in a]
    prim = _content(ints)
    ints = [c // prim for c in ints]
    return normalize_unit(IntLaurent({i: c * content for i, c in enumerate(ints) if c}))


# -- BiLaurent helpers ------------------------------------------------------

def a_mirror(f):
    """Apply a -> a^-1 (the mirror rule for Kauffman polynomials)."""
    return BiLaurent({(-ea, ez): c for (ea, ez), c in f.terms.items()})


def min_deg_a(f):
    """Least a-exponent carrying a nonzero coefficient."""
    if not f:
        raise ValueError("the zero polynomial has no a-degree")
    return min(ea for (ea, _) in f.terms)
