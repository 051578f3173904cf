"""Free-group words, finite presentations, and their computable invariants.

A word is a tuple of nonzero ints: letter ``k`` is the k-th generator
(1-based) and ``-k`` its inverse.  Words are kept freely reduced, and the
empty tuple is the identity.  A relator is a word set equal to the
identity; a relation u = v is stored as u v^-1.

The module computes the abelianization H1 through an exact integer Smith
normal form, checks and constructs weight maps onto Z (the exponent of t
assigned to each generator), and counts homomorphisms into small
symmetric groups by exhaustive enumeration.  Everything is pure and
immutable; ``count_homs`` is deterministic regardless of how the
assignment space is scanned.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from .errors import BudgetError, InputError

__all__ = [
    "free_reduce",
    "word_mul",
    "word_inv",
    "parse_word",
    "word_str",
    "Presentation",
    "PresentationFile",
    "parse_presentation",
    "parse_weights",
    "exponent_matrix",
    "smith_normal_form",
    "invariant_factors",
    "H1Summary",
    "h1",
    "validate_abelianization",
    "z_surjection",
    "identity_perm",
    "perm_mul",
    "perm_inv",
    "perm_from_cycles",
    "evaluate_word",
    "check_finite_hom",
    "is_image_abelian",
    "count_homs",
    "iter_homs",
]


# -- words -------------------------------------------------------------------

def free_reduce(letters):
    """Freely reduce a letter sequence; the normal form for words."""
    out = []
    for x in letters:
        if x == 0:
            raise InputError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def word_mul(u, v):
    return free_reduce(tuple(u) + tuple(v))


def word_inv(u):
    return tuple(-x for x in reversed(u))


_LETTER = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")


def parse_word(text, gens):
    """Parse ``x1 x2^-1 x1`` against an ordered generator list."""
    letters = []
    for tok in text.split():
        m = _LETTER.match(tok)
        if not m:
            raise InputError(f"bad word token {tok!r}")
        name, exp = m.group(1), int(m.group(2)) if m.group(2) else 1
        if name not in gens:
            raise InputError(f"unknown generator {name!r}")
        k = gens.index(name) + 1
        letters.extend([k if exp > 0 else -k] * abs(exp))
    return free_reduce(letters)


def word_str(word, gens):
    out = []
    for x in word:
        name = gens[abs(x) - 1]
        out.append(name if x > 0 else f"{name}^-1")
    return " ".join(out) if out else "1"


# -- presentations -----------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """A finite group presentation with named generators."""

    gens: tuple
    relators: tuple

    def __post_init__(self):
        if len(set(self.gens)) != len(self.gens):
            raise InputError("generator names must be distinct")
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(
            self, "relators", tuple(free_reduce(r) for r in self.relators)
        )
        n = len(self.gens)
        for r in self.relators:
            for x in r:
                if not 1 <= abs(x) <= n:
                    raise InputError(f"letter {x} outside generator range 1..{n}")

    @property
    def rank(self):
        return len(self.gens)


@dataclass(frozen=True)
class PresentationFile:
    """A parsed presentation file: the presentation plus any weight maps."""

    presentation: Presentation
    maps: tuple


def parse_presentation(text):
    """Parse the text format: ``gens:`` line, ``rel:`` and ``map:`` lines."""
    gens = None
    relators = []
    maps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            if gens is not None:
                raise InputError(f"line {lineno}: second gens: line")
            gens = tuple(line[len("gens:"):].split())
            if not gens:
                raise InputError(f"line {lineno}: empty generator list")
        elif line.startswith("rel:"):
            if gens is None:
                raise InputError(f"line {lineno}: rel: before gens:")
            relators.append(parse_word(line[len("rel:"):], gens))
        elif line.startswith("map:"):
            if gens is None:
                raise InputError(f"line {lineno}: map: before gens:")
            maps.append(parse_weights(line[len("map:"):], gens))
        else:
            raise InputError(f"line {lineno}: unrecognized line {line!r}")
    if gens is None:
        raise InputError("missing gens: line")
    return PresentationFile(Presentation(gens, tuple(relators)), tuple(maps))


def parse_weights(text, gens):
    """Parse ``x1=1 x2=-1`` (or comma separated) into a weight tuple."""
    weights = {}
    for tok in text.replace(",", " ").split():
        if "=" not in tok:
            raise InputError(f"bad map entry {tok!r}")
        name, value = tok.split("=", 1)
        if name not in gens:
            raise InputError(f"unknown generator {name!r} in map")
        if name in weights:
            raise InputError(f"generator {name!r} mapped twice")
        try:
            weights[name] = int(value)
        except ValueError:
            raise InputError(f"bad weight {value!r} for {name!r}") from None
    missing = [g for g in gens if g not in weights]
    if missing:
        raise InputError(f"map missing generators: {' '.join(missing)}")
    return tuple(weights[g] for g in gens)


def exponent_matrix(pres):
    """Signed exponent sums, one row per relator, one column per generator."""
    n = pres.rank
    rows = []
    for r in pres.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


# -- Smith normal form --------------------------------------------------------

def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (d, u, v) with u * matrix * v == d, u and v unimodular, and
    the diagonal of d nonnegative with d[0] | d[1] | ... .  All
    arithmetic is exact.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    d = [list(map(int, row)) for row in matrix]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        d[dst] = [a + q * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        d[i] = [-a for a in d[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while True:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # smallest pivots first keeps the entries small at this scale
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if d[t][t] < 0:
            negate_row(t)
        t += 1
        if t >= rows or t >= cols:
            break

    # enforce the divisibility chain d[k] | d[k+1]
    k = 0
    while True:
        changed = False
        for k in range(min(rows, cols) - 1):
            a, b = d[k][k], d[k + 1][k + 1]
            if a and b and b % a:
                add_col(k + 1, k, 1)
                # re-diagonalize the 2x2 block exactly
                while d[k + 1][k]:
                    if abs(d[k][k]) >= abs(d[k + 1][k]):
                        add_row(k + 1, k, -(d[k][k] // d[k + 1][k]))
                    swap_rows(k, k + 1)
                add_col(k, k + 1, -(d[k][k + 1] // d[k][k]))
                if d[k][k] < 0:
                    negate_row(k)
                if d[k + 1][k + 1] < 0:
                    negate_row(k + 1)
                changed = True
        if not changed:
            break

    return d, u, v


def invariant_factors(matrix):
    d, _, _ = smith_normal_form(matrix)
    out = []
    for k in range(min(len(d), len(d[0]) if d else 0)):
        if d[k][k]:
            out.append(d[k][k])
    return out


@dataclass(frozen=True)
class H1Summary:
    """An abelian group: free rank plus torsion coefficients > 1."""

    free_rank: int
    torsion: tuple

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def h1(pres):
    """Abelianization of the presented group, from Smith normal form."""
    m = exponent_matrix(pres)
    if not m:
        return H1Summary(pres.rank, ())
    factors = invariant_factors(m)
    torsion = tuple(f for f in factors if f > 1)
    return H1Summary(pres.rank - len(factors), torsion)


def validate_abelianization(pres, weights):
    """True when every relator's weighted exponent sum vanishes."""
    if len(weights) != pres.rank:
        raise InputError(
            f"map has {len(weights)} weights for {pres.rank} generators"
        )
    for row in exponent_matrix(pres):
        if sum(w * e for w, e in zip(weights, row)):
            return False
    return True


def z_surjection(pres):
    """A weight map inducing a surjection onto Z modulo torsion.

    Requires H1 of free rank exactly 1; the map is read off from the
    Smith normal form change of basis, so its weights are primitive.
    """
    summary = h1(pres)
    if summary.free_rank != 1:
        raise InputError(
            f"free rank is {summary.free_rank}, need exactly 1 for a map onto Z"
        )
    m = exponent_matrix(pres)
    if not m:
        weights = tuple([1] + [0] * (pres.rank - 1)) if pres.rank else ()
    else:
        _, _, v = smith_normal_form(m)
        weights = tuple(row[pres.rank - 1] for row in v)
    first = next(w for w in weights if w)
    if first < 0:
        weights = tuple(-w for w in weights)
    # columns of a unimodular matrix are primitive, so the map is onto
    assert math.gcd(*(abs(w) for w in weights)) == 1
    assert validate_abelianization(pres, weights)
    return weights


# -- finite permutation quotients ---------------------------------------------

def identity_perm(n):
    return tuple(range(n))


def perm_mul(p, q):
    """Compose left-to-right: (p * q)(i) = q(p(i))."""
    return tuple(q[p[i]] for i in range(len(p)))


def perm_inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_from_cycles(text, n):
    """Parse cycle notation like ``(1 2 3)(4 5)`` on symbols 1..n."""
    perm = list(range(n))
    for cycle in re.findall(r"\(([^()]*)\)", text):
        symbols = [int(s) for s in cycle.replace(",", " ").split()]
        if any(not 1 <= s <= n for s in symbols):
            raise InputError(f"cycle symbol outside 1..{n} in {text!r}")
        if len(set(symbols)) != len(symbols):
            raise InputError(f"repeated symbol in cycle {cycle!r}")
        for i, s in enumerate(symbols):
            perm[s - 1] = symbols[(i + 1) % len(symbols)] - 1
    return tuple(perm)


def evaluate_word(word, images):
    """Evaluate a word at a tuple of permutations (one per generator)."""
    n = len(images[0]) if images else 0
    acc = identity_perm(n)
    for x in word:
        p = images[abs(x) - 1]
        acc = perm_mul(acc, p if x > 0 else perm_inv(p))
    return acc


def check_finite_hom(pres, images):
    """True when the assignment kills every relator."""
    if len(images) != pres.rank:
        raise InputError(
            f"assignment has {len(images)} permutations for {pres.rank} generators"
        )
    sizes = {len(p) for p in images}
    if len(sizes) > 1:
        raise InputError(f"permutations act on different symbol counts {sorted(sizes)}")
    n = sizes.pop() if sizes else 0
    ident = identity_perm(n)
    return all(evaluate_word(r, images) == ident for r in pres.relators)


def is_image_abelian(images):
    """True when all image permutations pairwise commute."""
    for p, q in itertools.combinations(images, 2):
        if perm_mul(p, q) != perm_mul(q, p):
            return False
    return True


def iter_homs(pres, n, budget=1_000_000):
    """Yield all assignments into the symmetric group on n symbols.

    The full assignment space has size (n!)^rank and is refused up front
    when it exceeds the budget, never silently truncated.
    """
    if n < 1:
        raise InputError("symbol count must be positive")
    total = math.factorial(n) ** pres.rank
    if total > budget:
        raise BudgetError(
            f"(n!)^generators = {total} assignments exceeds budget {budget}"
        )
    perms = list(itertools.permutations(range(n)))
    for images in itertools.product(perms, repeat=pres.rank):
        if check_finite_hom(pres, images):
            yield images


def count_homs(pres, n, budget=1_000_000):
    """Exact number of homomorphisms into the symmetric group on n symbols."""
    return sum(1 for _ in iter_homs(pres, n, budget))
