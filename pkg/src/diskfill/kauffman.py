"""Kauffman two-variable polynomial of unoriented link diagrams.

A diagram is a PD code: one 4-tuple of edge labels per crossing, listed
counterclockwise starting from the incoming under-strand, so the under
strand occupies slots 0 and 2 and the over strand slots 1 and 3.
Crossingless unknot components are carried as a separate loop count.

The regular-isotopy polynomial here satisfies

    lam(L+) + lam(L-) = z * (lam(L0) + lam(Loo)),
    lam(kink of writhe s) = a^-s * lam(without it),
    lam(D u unknot) = delta * lam(D),     delta = (a + a^-1 - z) / z,
    lam(unknot) = 1,

and the normalized invariant is F = a^w * lam with w the writhe of an
orientation obtained by edge tracing.  For a knot F does not depend on
that choice and has only nonnegative z-exponents (checked); for links F
carries the usual z^-1 powers through delta.  The orientation of the a
variable is pinned by sharpness of the Thurston-Bennequin bound
tb <= min_deg_a(F) - 1 on maximal-tb fronts: the trefoil admitting tb=1
must have min_deg_a(F) = 2.

Evaluation recurses on the first crossing, in traversal order, whose
first visit passes under: switching it moves the diagram strictly closer
to a descending one, and a descending diagram is an unlink whose value
is a^writhe * delta^(components-1).  Kink and parallel-bigon reductions
run before branching and results are memoized on a relabel-invariant
canonical code, so evaluation is deterministic however the tree is
walked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import BudgetError, InputError
from .laurent import BiLaurent, min_deg_a

__all__ = [
    "LinkDiagram",
    "parse_pd",
    "render_pd",
    "DELTA_NUMERATOR",
    "delta_power",
    "trace_diagram",
    "writhe",
    "component_count",
    "mirror",
    "switch_crossing",
    "smooth_crossing",
    "simplify",
    "canonical_key",
    "regular_isotopy_polynomial",
    "kauffman_F",
    "tb_upper_bound",
]

DEFAULT_CROSSING_BUDGET = 16

# delta = (a + a^-1 - z) / z
DELTA_NUMERATOR = BiLaurent({(1, 0): 1, (-1, 0): 1, (0, 1): -1})


def delta_power(k):
    """delta^k for k >= -1 (delta^-1 never appears alone in results)."""
    if k < 0:
        raise ValueError("negative delta powers are not used")
    return DELTA_NUMERATOR ** k * BiLaurent.z(-k)


@dataclass(frozen=True)
class LinkDiagram:
    """An unoriented link diagram: PD crossings plus crossingless loops."""

    crossings: tuple  # of 4-tuples of edge labels, under strand at slots 0, 2
    loops: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "crossings", tuple(tuple(c) for c in self.crossings)
        )
        counts = {}
        for c in self.crossings:
            if len(c) != 4:
                raise InputError(f"crossing {c} is not a 4-tuple")
            for e in c:
                counts[e] = counts.get(e, 0) + 1
        bad = {e: k for e, k in counts.items() if k != 2}
        if bad:
            raise InputError(f"edge labels must occur exactly twice, got {bad}")
        if self.loops < 0:
            raise InputError("negative loop count")
        if not self.crossings and not self.loops:
            raise InputError("empty diagram (no crossings, no loops)")

    @property
    def n(self):
        return len(self.crossings)


_PD_LINE = re.compile(r"([XO])\(([^()]*)\)$")


def parse_pd(text):
    """Parse ``X(a,b,c,d)`` crossing lines and ``O(e)`` loop lines."""
    crossings = []
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _PD_LINE.match(line)
        if not m:
            raise InputError(f"line {lineno}: expected X(a,b,c,d) or O(e), got {line!r}")
        try:
            labels = [int(s) for s in m.group(2).replace(",", " ").split()]
        except ValueError:
            raise InputError(f"line {lineno}: bad edge label in {line!r}") from None
        if m.group(1) == "X":
            if len(labels) != 4:
                raise InputError(f"line {lineno}: crossing needs 4 edges, got {len(labels)}")
            crossings.append(tuple(labels))
        else:
            if len(labels) != 1:
                raise InputError(f"line {lineno}: loop marker needs 1 label")
            loops += 1
    return LinkDiagram(tuple(crossings), loops)


def render_pd(diagram, header=None):
    lines = [] if header is None else [f"# {line}" for line in header.splitlines()]
    lines += [f"X({a},{b},{c},{d})" for a, b, c, d in diagram.crossings]
    next_label = max((e for c in diagram.crossings for e in c), default=0)
    for i in range(diagram.loops):
        lines.append(f"O({next_label + 1 + i})")
    return "\n".join(lines) + "\n"


# -- tracing -----------------------------------------------------------------

def _incidences(crossings):
    """Map edge -> list of (crossing index, slot)."""
    inc = {}
    for ci, c in enumerate(crossings):
        for slot, e in enumerate(c):
            inc.setdefault(e, []).append((ci, slot))
    return inc


@dataclass(frozen=True)
class DiagramTrace:
    components: int
    writhe: int
    signs: tuple  # one per crossing
    first_under: tuple  # per crossing: True when the first visit goes under
    first_visit: tuple  # per crossing: traversal time of its earlier pass
    under_in: tuple  # per crossing: the slot (0 or 2) the under strand enters


def trace_diagram(diagram):
    """Orient the diagram by edge tracing; writhe and signs follow.

    Components are traversed starting from their least edge label, so the
    result is deterministic.  Crossing signs between different components
    depend on the traced orientations, as usual for unoriented input.
    """
    crossings = diagram.crossings
    inc = _incidences(crossings)
    entered = {}  # (crossing, slot) -> order in which traversal entered
    seen_edges = set()
    ncomp = diagram.loops
    counter = 0
    for start in sorted(inc):
        if start in seen_edges:
            continue
        ncomp += 1
        # walk the component; enter the start edge at its first incidence
        edge = start
        endpoint = inc[start][0]
        while True:
            seen_edges.add(edge)
            ci, slot = endpoint
            entered[(ci, slot)] = counter
            counter += 1
            out_slot = (slot + 2) % 4
            out_edge = crossings[ci][out_slot]
            both = inc[out_edge]
            nxt = both[1] if both[0] == (ci, out_slot) else both[0]
            edge, endpoint = out_edge, nxt
            if edge == start and endpoint == inc[start][0]:
                break
    signs = []
    first_under = []
    first_visit = []
    under_ins = []
    for ci, c in enumerate(crossings):
        under_in = 0 if (ci, 0) in entered else 2
        over_in = 1 if (ci, 1) in entered else 3
        signs.append(1 if over_in == (under_in + 3) % 4 else -1)
        first_under.append(entered[(ci, under_in)] < entered[(ci, over_in)])
        first_visit.append(min(entered[(ci, under_in)], entered[(ci, over_in)]))
        under_ins.append(under_in)
    return DiagramTrace(
        ncomp,
        sum(signs),
        tuple(signs),
        tuple(first_under),
        tuple(first_visit),
        tuple(under_ins),
    )


def writhe(diagram):
    return trace_diagram(diagram).writhe if diagram.crossings else 0


def component_count(diagram):
    if not diagram.crossings:
        return diagram.loops
    return trace_diagram(diagram).components


def mirror(diagram):
    """Swap over and under at every crossing."""
    return LinkDiagram(
        tuple((b, c, d, a) for a, b, c, d in diagram.crossings), diagram.loops
    )


# -- local surgery ------------------------------------------------------------

def _remove_and_join(crossings, loops, removed, joins):
    """Delete crossings by index and identify edge pairs.

    Edge classes that no longer touch any crossing closed up into loops.
    """
    keep = [c for i, c in enumerate(crossings) if i not in removed]
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched = set()
    for x, y in joins:
        touched.add(x)
        touched.add(y)
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
    new_crossings = tuple(tuple(find(e) for e in c) for c in keep)
    present = {find(e) for c in new_crossings for e in c}
    closed = {find(x) for x in touched} - present
    return LinkDiagram(new_crossings, loops + len(closed))


def switch_crossing(diagram, i):
    """Exchange over and under strands at crossing i."""
    c = diagram.crossings[i]
    switched = (c[1], c[2], c[3], c[0])
    return LinkDiagram(
        diagram.crossings[:i] + (switched,) + diagram.crossings[i + 1:],
        diagram.loops,
    )


def smooth_crossing(diagram, i, which):
    """Replace crossing i by a smoothing.

    ``which`` = 0 joins slots (0,1) and (2,3); ``which`` = 1 joins slots
    (0,3) and (1,2).  Together with the switch these are the four skein
    terms.
    """
    c = diagram.crossings[i]
    joins = [(c[0], c[1]), (c[2], c[3])] if which == 0 else [(c[0], c[3]), (c[1], c[2])]
    return _remove_and_join(diagram.crossings, diagram.loops, {i}, joins)


# Writhe contribution of a kink, by the slots its loop edge occupies;
# derived from the sign convention (over entering at under_in + 3 is
# positive).  A kink of writhe s carries a skein factor a^-s: that
# orientation of the a-variable is the one under which the bound
# tb <= min_deg_a(F) - 1 is sharp on maximal-tb fronts.
_KINK_SIGN = {(0, 1): 1, (2, 3): 1, (1, 2): -1, (3, 0): -1}


def _find_kink(crossings):
    for ci, c in enumerate(crossings):
        for s in range(4):
            if c[s] == c[(s + 1) % 4]:
                return ci, s
    return None


def _find_reducible_bigon(crossings):
    inc = _incidences(crossings)
    for ci, c in enumerate(crossings):
        for s in range(4):
            x, y = c[s], c[(s + 1) % 4]
            if x == y:
                continue  # kink, handled separately
            # both edges must run to one other crossing, adjacently there
            other_x = [(cj, t) for cj, t in inc[x] if cj != ci]
            other_y = [(cj, t) for cj, t in inc[y] if cj != ci]
            if len(other_x) != 1 or len(other_y) != 1:
                continue
            (cx, sx), (cy, sy) = other_x[0], other_y[0]
            if cx != cy or cx == ci:
                continue
            if (sx - sy) % 4 not in (1, 3):
                continue
            # over iff the slot is odd; the bigon pulls apart exactly when
            # the strand through x is on the same level at both crossings
            if (s % 2 == 1) != (sx % 2 == 1):
                continue
            return ci, cx, x, y, s
    return None


def simplify(diagram):
    """Remove kinks and cancellable bigons until none remain.

    Returns (reduced diagram, unit) with unit a power of a collecting the
    kink factors: lam(input) = unit * lam(reduced).  The reduction only
    ever shrinks the crossing count.
    """
    unit = BiLaurent.constant(1)
    current = diagram
    while True:
        kink = _find_kink(current.crossings)
        if kink is not None:
            ci, s = kink
            c = current.crossings[ci]
            sign = _KINK_SIGN[(s, (s + 1) % 4)]
            unit = unit * BiLaurent.a(-sign)
            out = _remove_and_join(
                current.crossings,
                current.loops,
                {ci},
                [(c[(s + 2) % 4], c[(s + 3) % 4])],
            )
            current = out
            continue
        bigon = _find_reducible_bigon(current.crossings)
        if bigon is not None:
            ci, cj, x, y, s = bigon
            a = current.crossings[ci]
            b = current.crossings[cj]
            # reconnect each strand's outer ends
            xa = a[(a.index(x) + 2) % 4]
            xb = b[(b.index(x) + 2) % 4]
            ya = a[(a.index(y) + 2) % 4]
            yb = b[(b.index(y) + 2) % 4]
            out = _remove_and_join(
                current.crossings, current.loops, {ci, cj}, [(xa, xb), (ya, yb)]
            )
            current = out
            continue
        return current, unit


# -- canonical codes and evaluation --------------------------------------------

def _connected_pieces(crossings):
    """Partition crossing indices into crossing-connected pieces."""
    n = len(crossings)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_edge = {}
    for ci, c in enumerate(crossings):
        for e in c:
            if e in by_edge:
                ri, rj = find(by_edge[e]), find(ci)
                if ri != rj:
                    parent[rj] = ri
            else:
                by_edge[e] = ci
    pieces = {}
    for ci in range(n):
        pieces.setdefault(find(ci), []).append(ci)
    return list(pieces.values())


def _piece_code(crossings, piece, start):
    """Relabel the piece's edges along a traversal from ``start``.

    ``start`` is an (edge, incidence) pair.  Later link components of the
    same piece start at the crossing holding the least relabeled edge that
    still has an unvisited slot, at its least such slot; that anchor makes
    the whole code independent of the input labels.
    """
    inc = _incidences(crossings)
    labels = {}
    entered = {}
    counter = 0
    edge, endpoint = start
    while True:
        # walk one closed component; the first repeated incidence closes it
        while endpoint not in entered:
            if edge not in labels:
                labels[edge] = counter
                counter += 1
            ci, slot = endpoint
            entered[(ci, slot)] = labels[edge]
            out_slot = (slot + 2) % 4
            out_edge = crossings[ci][out_slot]
            both = inc[out_edge]
            nxt = both[1] if both[0] == (ci, out_slot) else both[0]
            edge, endpoint = out_edge, nxt
        # anchor the next link component of this piece, if one remains
        anchor = None
        for cj in piece:
            c = crossings[cj]
            unlabeled = [s for s in range(4) if c[s] not in labels]
            labeled = sorted(
                (labels[c[s]], s) for s in range(4) if c[s] in labels
            )
            if not unlabeled or not labeled:
                continue
            key = (labeled[0][0], min(unlabeled), tuple(labeled))
            if anchor is None or key < anchor[0]:
                anchor = (key, cj, min(unlabeled))
        if anchor is None:
            break
        _, cj, slot = anchor
        edge, endpoint = crossings[cj][slot], (cj, slot)
    code = []
    for ci in piece:
        c = crossings[ci]
        under_in = 0 if (ci, 0) in entered else 2
        code.append(tuple(labels[c[(under_in + k) % 4]] for k in range(4)))
    code.sort()
    return tuple(code)


def canonical_key(diagram):
    """A relabel-invariant code for memoization.

    Each crossing-connected piece is renumbered along a traversal, taking
    the minimum over all starting incidences; the piece codes are then
    sorted.  Equal diagrams up to edge relabeling get equal keys, and the
    code still determines the diagram, so memo hits are always sound.
    """
    crossings = diagram.crossings
    if not crossings:
        return ("loops", diagram.loops)
    inc = _incidences(crossings)
    piece_codes = []
    for piece in _connected_pieces(crossings):
        edges = {e for ci in piece for e in crossings[ci]}
        best = None
        for e in edges:
            for endpoint in inc[e]:
                code = _piece_code(crossings, piece, (e, endpoint))
                if best is None or code < best:
                    best = code
        piece_codes.append(best)
    piece_codes.sort()
    return ("pd", tuple(piece_codes), diagram.loops)


def _first_ascending(diagram):
    """Index of the first crossing, in traversal order, met under first.

    Switching it strictly grows the descending prefix of the traversal
    (the traversal itself does not change), so the recursion terminates.
    """
    tr = trace_diagram(diagram)
    candidates = [ci for ci in range(diagram.n) if tr.first_under[ci]]
    if not candidates:
        return None
    return min(candidates, key=lambda ci: tr.first_visit[ci])


def regular_isotopy_polynomial(diagram, budget=DEFAULT_CROSSING_BUDGET, _memo=None):
    """The regular-isotopy skein polynomial lam (memoized evaluation)."""
    if diagram.n > budget:
        raise BudgetError(
            f"{diagram.n} crossings exceeds the budget of {budget}; "
            "raise it explicitly for larger diagrams"
        )
    memo = {} if _memo is None else _memo
    return _lam(diagram, memo)


def _lam(diagram, memo):
    if not diagram.crossings:
        return delta_power(diagram.loops - 1)
    key = canonical_key(diagram)
    hit = memo.get(key)
    if hit is not None:
        return hit
    reduced, unit = simplify(diagram)
    if reduced.crossings != diagram.crossings:
        value = unit * _lam(reduced, memo)
        memo[key] = value
        return value
    target = _first_ascending(diagram)
    if target is None:
        # descending diagrams are unlinks; their value is the writhe
        # normalization times the split-unlink value
        tr = trace_diagram(diagram)
        value = BiLaurent.a(-tr.writhe) * delta_power(tr.components - 1)
    else:
        z = BiLaurent.z(1)
        value = (
            z * (_lam(smooth_crossing(diagram, target, 0), memo)
                 + _lam(smooth_crossing(diagram, target, 1), memo))
            - _lam(switch_crossing(diagram, target), memo)
        )
    memo[key] = value
    return value


def kauffman_F(diagram, budget=DEFAULT_CROSSING_BUDGET):
    """The normalized, regular-isotopy-corrected Kauffman polynomial."""
    lam = regular_isotopy_polynomial(diagram, budget)
    w = writhe(diagram)
    value = BiLaurent.a(w) * lam
    if component_count(diagram) == 1 and value:
        assert value.min_z_exp() >= 0, "knot polynomial must have z-exponents >= 0"
    return value


def tb_upper_bound(diagram, budget=DEFAULT_CROSSING_BUDGET):
    """Upper bound for the Thurston-Bennequin number of any Legendrian
    representative: min a-degree of F, minus 1."""
    if component_count(diagram) != 1:
        raise InputError("the bound is stated for knots (one component)")
    return min_deg_a(kauffman_F(diagram, budget)) - 1
