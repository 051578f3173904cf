"""Fox free differential calculus and Alexander polynomials.

A group-ring element is a dict mapping freely reduced words to nonzero
integer coefficients.  The free derivative d/dg satisfies

    d(g) = 1,   d(g^-1) = -g^-1,   d(h^±1) = 0 for h != g,
    d(uv) = d(u) + u d(v),

and abelianizing a derivative through a weight map (generator -> t^w)
turns each row of derivatives into a row of Laurent polynomials.  The
Alexander polynomial of a presentation on n generators is the gcd of all
(n-1)-minors of that matrix, taken in canonical unit form.

Determinants of Laurent-polynomial matrices use fraction-free Bareiss
elimination, which stays in the ring and is exact; plain cofactor
expansion is fine for the bundled 2x3 instances but becomes unusable for
the Wirtinger-sized matrices the test suite throws at this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InputError
from .groups import free_reduce, validate_abelianization, word_mul
from .laurent import IntLaurent, div_exact, laurent_gcd, normalize_unit

__all__ = [
    "ring_add",
    "ring_mul",
    "ring_scale",
    "fox_derivative",
    "abelianize_word",
    "abelianize_ring",
    "abelianized_fox",
    "AlexanderMatrix",
    "alexander_matrix",
    "alexander_polynomial",
    "laurent_det",
]


# -- group ring helpers -------------------------------------------------------

def ring_add(a, b):
    out = dict(a)
    for w, c in b.items():
        c2 = out.get(w, 0) + c
        if c2:
            out[w] = c2
        else:
            out.pop(w, None)
    return out


def ring_scale(a, k):
    if not k:
        return {}
    return {w: c * k for w, c in a.items()}


def ring_mul(a, b):
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = word_mul(w1, w2)
            c = out.get(w, 0) + c1 * c2
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


# -- Fox derivatives ----------------------------------------------------------

def fox_derivative(word, gen):
    """d(word)/d(x_gen) as a group-ring element; gen is 1-based."""
    if gen < 1:
        raise InputError("generator index must be 1-based and positive")
    out = {}
    prefix = ()
    for x in free_reduce(word):
        if x == gen:
            key, c = prefix, 1
        elif x == -gen:
            key, c = word_mul(prefix, (-gen,)), -1
        else:
            key = None
        if key is not None:
            c2 = out.get(key, 0) + c
            if c2:
                out[key] = c2
            else:
                out.pop(key, None)
        prefix = word_mul(prefix, (x,))
    return out


def abelianize_word(word, weights):
    """Total t-exponent of a word under a weight map."""
    return sum(weights[abs(x) - 1] * (1 if x > 0 else -1) for x in word)


def abelianize_ring(elem, weights):
    """Apply the weight map term-wise to a group-ring element."""
    return IntLaurent(
        [(abelianize_word(w, weights), c) for w, c in elem.items()]
    )


def abelianized_fox(word, gen, weights):
    return abelianize_ring(fox_derivative(word, gen), weights)


# -- Alexander matrices and polynomials ----------------------------------------

@dataclass(frozen=True)
class AlexanderMatrix:
    """Abelianized Fox derivatives: rows are relators, columns generators."""

    entries: tuple  # tuple of tuples of IntLaurent
    weights: tuple

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0]) if self.entries else 0


def alexander_matrix(pres, weights):
    if not validate_abelianization(pres, weights):
        raise InputError("weight map does not kill every relator")
    rows = tuple(
        tuple(abelianized_fox(r, g + 1, weights) for g in range(pres.rank))
        for r in pres.relators
    )
    return AlexanderMatrix(rows, tuple(weights))


def laurent_det(rows):
    """Determinant of a square matrix of IntLaurent, by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return IntLaurent.constant(1)
    m = [list(row) for row in rows]
    if any(len(row) != n for row in m):
        raise InputError("determinant needs a square matrix")
    sign = 1
    prev = IntLaurent.constant(1)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return IntLaurent()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q = div_exact(num, prev)
                assert q is not None, "Bareiss division must be exact"
                m[i][j] = q
            m[i][k] = IntLaurent()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def alexander_polynomial(pres, weights):
    """Gcd of all (n-1)-minors of the Alexander matrix, canonical unit form.

    Requires at least n-1 relators; when there are more, every row subset
    of size n-1 contributes its minors.  A zero ideal comes back as the
    zero polynomial.
    """
    n = pres.rank
    if n < 1:
        raise InputError("presentation needs at least one generator")
    k = n - 1
    matrix = alexander_matrix(pres, weights)
    if matrix.nrows < k:
        raise InputError(
            f"need at least {k} relators for {n} generators, have {matrix.nrows}"
        )
    if k == 0:
        return IntLaurent.constant(1)
    acc = IntLaurent()
    one = IntLaurent.constant(1)
    for rows in itertools.combinations(range(matrix.nrows), k):
        for cols in itertools.combinations(range(n), k):
            sub = [[matrix.entries[i][j] for j in cols] for i in rows]
            minor = laurent_det(sub)
            if not minor:
                continue
            acc = laurent_gcd(acc, minor) if acc else minor
            if normalize_unit(acc) == one:
                return one
    return normalize_unit(acc) if acc else IntLaurent()
