"""Legendrian front diagrams as left-to-right event words.

A front is a sequence of events on horizontal strands numbered from the
top starting at 1:

    ("L", k)  left cusp: inserts two new strands at positions k, k+1
    ("R", k)  right cusp: merges the strands at positions k, k+1
    ("X", k)  crossing: transposes the strands at positions k, k+1

The strand count starts and ends at 0 and never goes negative.  Crossing
over/under is not stored: in a front the strand of more negative slope
(the one moving from position k down to k+1) is in front, and all signs
below use that convention.

With an orientation (a horizontal direction per strand, opposite at the
two branches of every cusp) the classical invariants are

    tb  = writhe - number of right cusps          (per component)
    rot = (down cusps - up cusps) / 2             (per component)

where a crossing's sign is the product of the two strand directions and
a cusp counts as "down" when the traversal passes through it moving
downward.  Orientations are canonical: the first-created upper strand of
each component points rightward.

The filling moves are the pinch (an oriented saddle: two adjacent
anti-parallel strands are replaced by a right-cusp/left-cusp pair), the
death of a standard two-event unknot, and Legendrian isotopy given by an
explicit table of local rewrites (see MOVE_TABLE).  A certificate is a
step sequence replayed to the empty front; the checker reports the
surface Euler characteristic deaths - pinches and cross-checks it
against tb.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CertificateError, InputError

__all__ = [
    "FrontWord",
    "parse_front",
    "render_front",
    "validate",
    "strand_profile",
    "components",
    "OrientedFront",
    "orient",
    "thurston_bennequin",
    "rotation",
    "classical_invariants",
    "MOVE_KINDS",
    "apply_move",
    "Move",
    "Pinch",
    "Death",
    "pinch",
    "death",
    "FillingCertificate",
    "FillingReport",
    "parse_certificate",
    "render_certificate",
    "check_certificate",
    "connected_sum",
    "compose_certificates",
]

_EVENT_KINDS = ("L", "R", "X")


@dataclass(frozen=True)
class FrontWord:
    """An immutable event word; ``events`` is a tuple of (kind, position)."""

    events: tuple

    def __post_init__(self):
        object.__setattr__(self, "events", tuple((k, int(p)) for k, p in self.events))

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)


def parse_front(text):
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in _EVENT_KINDS:
            raise InputError(f"line {lineno}: expected 'L k', 'R k' or 'X k', got {line!r}")
        try:
            k = int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: bad position {parts[1]!r}") from None
        events.append((parts[0], k))
    return FrontWord(tuple(events))


def render_front(front, header=None):
    lines = [] if header is None else [f"# {line}" for line in header.splitlines()]
    lines += [f"{k} {p}" for k, p in front.events]
    return "\n".join(lines) + "\n"


def validate(front):
    """Check all front invariants; errors carry the first offending index."""
    count = 0
    lefts = rights = 0
    for i, (kind, p) in enumerate(front.events):
        if kind == "L":
            if not 1 <= p <= count + 1:
                raise InputError(
                    f"event {i}: left cusp at {p} outside 1..{count + 1}"
                )
            count += 2
            lefts += 1
        elif kind == "R":
            if not 1 <= p <= count - 1:
                raise InputError(
                    f"event {i}: right cusp needs strands {p},{p + 1} but only {count} exist"
                )
            count -= 2
            rights += 1
        elif kind == "X":
            if not 1 <= p <= count - 1:
                raise InputError(
                    f"event {i}: crossing needs strands {p},{p + 1} but only {count} exist"
                )
        else:
            raise InputError(f"event {i}: unknown kind {kind!r}")
    if count != 0:
        raise InputError(f"event {len(front.events)}: final strand count {count}, expected 0")
    if lefts != rights:
        raise InputError(
            f"event {len(front.events)}: {lefts} left cusps vs {rights} right cusps"
        )
    _trace(front)  # closes every strand by construction; asserts consistency
    return True


def strand_profile(front):
    """Strand count after each event (prefix profile, starts implicit 0)."""
    out = []
    count = 0
    for kind, _ in front.events:
        count += 2 if kind == "L" else -2 if kind == "R" else 0
        out.append(count)
    return out


class _Trace:
    """Strand bookkeeping: components, directions, per-event strand ids."""

    __slots__ = ("n", "parent", "parity", "event_strands", "direction", "roots")

    def find(self, x):
        # returns (root, parity of x relative to root)
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        par = 0
        for y in reversed(path):
            par ^= self.parity[y]
            self.parent[y] = x
            self.parity[y] = par
        return x, self.parity[path[0]] if path else 0

    def union(self, x, y, rel):
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            assert (px ^ py) == rel, "front traversal direction conflict"
            return
        # keep the smaller root so component order follows creation order
        if ry < rx:
            rx, ry, px, py = ry, rx, py, px
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ rel


def _trace(front):
    tr = _Trace()
    tr.parent = []
    tr.parity = []
    tr.event_strands = []
    active = []

    def new_strand():
        sid = len(tr.parent)
        tr.parent.append(sid)
        tr.parity.append(0)
        return sid

    for i, (kind, p) in enumerate(front.events):
        if kind == "L":
            if not 1 <= p <= len(active) + 1:
                raise InputError(f"event {i}: left cusp position {p} out of range")
            u, v = new_strand(), new_strand()
            tr.union(u, v, 1)  # cusp branches run in opposite directions
            active[p - 1:p - 1] = [u, v]
            tr.event_strands.append((u, v))
        elif kind == "R":
            if not 1 <= p <= len(active) - 1:
                raise InputError(f"event {i}: right cusp position {p} out of range")
            u, v = active[p - 1], active[p]
            tr.union(u, v, 1)
            del active[p - 1:p + 1]
            tr.event_strands.append((u, v))
        elif kind == "X":
            if not 1 <= p <= len(active) - 1:
                raise InputError(f"event {i}: crossing position {p} out of range")
            u, v = active[p - 1], active[p]
            active[p - 1], active[p] = v, u
            tr.event_strands.append((u, v))
        else:
            raise InputError(f"event {i}: unknown kind {kind!r}")
    if active:
        raise InputError(f"event {len(front.events)}: {len(active)} strands left open")

    tr.n = len(tr.parent)
    roots = []
    root_index = {}
    direction = [0] * tr.n
    for s in range(tr.n):
        r, par = tr.find(s)
        if r not in root_index:
            root_index[r] = len(roots)
            roots.append(r)
        # first-created upper strand of the component is its root
        # (ids grow in creation order and the upper branch is created first)
        direction[s] = 1 if par == 0 else -1
    tr.direction = direction
    tr.roots = roots
    return tr


def components(front):
    """Number of link components, by strand tracing."""
    return len(_trace(front).roots)


@dataclass(frozen=True)
class OrientedFront:
    """A front together with its canonical component orientations."""

    front: FrontWord
    directions: tuple  # per strand id, +1 rightward / -1 leftward
    component_of: tuple  # per strand id, 0-based component index
    event_strands: tuple  # per event, the strand ids involved (pre-transposition)

    @property
    def n_components(self):
        return max(self.component_of) + 1 if self.component_of else 0


def orient(front):
    tr = _trace(front)
    root_index = {r: i for i, r in enumerate(tr.roots)}
    comp = tuple(root_index[tr.find(s)[0]] for s in range(tr.n))
    return OrientedFront(front, tuple(tr.direction), comp, tuple(tr.event_strands))


def classical_invariants(oriented):
    """Per-component (tb, rot); crossings between components are ignored."""
    ncomp = oriented.n_components
    writhe = [0] * ncomp
    right_cusps = [0] * ncomp
    down = [0] * ncomp
    up = [0] * ncomp
    dirs = oriented.directions
    comp = oriented.component_of
    for (kind, _), strands in zip(oriented.front.events, oriented.event_strands):
        if kind == "X":
            u, v = strands  # u above v before they transpose
            if comp[u] == comp[v]:
                writhe[comp[u]] += dirs[u] * dirs[v]
        elif kind == "L":
            u, v = strands  # u is the upper branch
            if dirs[u] > 0:
                up[comp[u]] += 1
            else:
                down[comp[u]] += 1
        elif kind == "R":
            u, v = strands
            right_cusps[comp[u]] += 1
            if dirs[u] > 0:
                down[comp[u]] += 1
            else:
                up[comp[u]] += 1
    out = []
    for c in range(ncomp):
        assert (down[c] - up[c]) % 2 == 0
        out.append((writhe[c] - right_cusps[c], (down[c] - up[c]) // 2))
    return out


def _knot_invariants(front):
    oriented = orient(front) if isinstance(front, FrontWord) else front
    invs = classical_invariants(oriented)
    if len(invs) != 1:
        raise InputError(f"front has {len(invs)} components, expected a knot")
    return invs[0]


def thurston_bennequin(front):
    """tb of a single-component front (or OrientedFront)."""
    return _knot_invariants(front)[0]


def rotation(front):
    """Rotation number of a single-component front, up to global sign."""
    return _knot_invariants(front)[1]


# -- Legendrian isotopy moves --------------------------------------------------

# Each table entry maps a kind to (lhs, rhs) event patterns relative to a
# base position p; "+" direction rewrites lhs -> rhs, "-" the reverse.
# r1a/r1b are the swallowtail kinks below/above a strand at p; r2a/r2b
# slide a strand through a right cusp from below/above; r2c/r2d the same
# through a left cusp.
MOVE_TABLE = {
    "r1a": ((), (("L", +2), ("X", +1), ("R", +2))),
    "r1b": ((), (("L", +1), ("X", +2), ("R", +1))),
    "r2a": ((("R", +1),), (("X", +2), ("X", +1), ("R", +2))),
    "r2b": ((("R", +2),), (("X", +1), ("X", +2), ("R", +1))),
    "r2c": ((("L", +1),), (("L", +2), ("X", +1), ("X", +2))),
    "r2d": ((("L", +2),), (("L", +1), ("X", +2), ("X", +1))),
}

MOVE_KINDS = tuple(
    [k + "+" for k in MOVE_TABLE] + [k + "-" for k in MOVE_TABLE] + ["r3", "slide"]
)


@dataclass(frozen=True)
class Move:
    kind: str
    index: int  # 0-based position in the event word
    pos: int  # strand position parameter p (unused by slide)


def _instantiate(pattern, p):
    return tuple((kind, p + off - 1) for kind, off in pattern)


def _match(events, index, pattern):
    got = events[index:index + len(pattern)]
    if got != pattern:
        raise InputError(
            f"pattern mismatch at index {index}: expected {list(pattern)}, found {list(got)}"
        )


def _slide(events, index):
    """Commute the events at index and index+1 when their supports are disjoint."""
    if index < 0 or index + 1 >= len(events):
        raise InputError(f"slide index {index} out of range")
    a_kind, a = events[index]
    b_kind, b = events[index + 1]
    # strand-count change caused by B, used to re-aim A when B moves above it
    db = 2 if b_kind == "L" else -2 if b_kind == "R" else 0
    overlap = InputError(
        f"slide at {index}: events overlap ({a_kind} {a} / {b_kind} {b})"
    )
    if a_kind == "L":
        # A inserted a pair at positions a, a+1
        if b >= a + 2:
            new = [(b_kind, b - 2), (a_kind, a)]  # B acts below the new pair
        elif (b_kind == "L" and b <= a) or (b_kind != "L" and b + 1 <= a - 1):
            new = [(b_kind, b), (a_kind, a + db)]  # B acts above the insertion
        else:
            raise overlap
    elif a_kind == "R":
        # A removed the pair at positions a, a+1
        if b >= a:
            new = [(b_kind, b + 2), (a_kind, a)]  # B acts below the removed pair
        elif b_kind == "L" and b <= a - 1:
            new = [(b_kind, b), (a_kind, a + db)]
        elif b_kind != "L" and b + 1 <= a - 1:
            new = [(b_kind, b), (a_kind, a + db)]
        else:
            raise overlap
    else:  # A = X, positions unchanged by A
        if b_kind == "L":
            if b >= a + 2:
                new = [(b_kind, b), (a_kind, a)]
            elif b <= a:
                new = [(b_kind, b), (a_kind, a + 2)]
            else:
                raise overlap
        else:
            if b >= a + 2:
                new = [(b_kind, b), (a_kind, a)]
            elif b + 1 <= a - 1:
                new = [(b_kind, b), (a_kind, a + db)]
            else:
                raise overlap
    return new


def apply_move(front, move):
    """Apply one isotopy move; the result is validated before returning."""
    events = list(front.events)
    kind = move.kind
    if kind == "slide":
        events[move.index:move.index + 2] = _slide(tuple(events), move.index)
    elif kind == "r3":
        p = move.pos
        lhs = (("X", p), ("X", p + 1), ("X", p))
        rhs = (("X", p + 1), ("X", p), ("X", p + 1))
        got = tuple(events[move.index:move.index + 3])
        if got == lhs:
            events[move.index:move.index + 3] = rhs
        elif got == rhs:
            events[move.index:move.index + 3] = lhs
        else:
            raise InputError(
                f"pattern mismatch at index {move.index}: expected a braid triple at {p}, found {list(got)}"
            )
    else:
        base, direction = kind[:-1], kind[-1]
        if base not in MOVE_TABLE or direction not in "+-":
            raise InputError(f"unknown move kind {kind!r}")
        lhs, rhs = MOVE_TABLE[base]
        if direction == "-":
            lhs, rhs = rhs, lhs
        lhs = _instantiate(lhs, move.pos)
        rhs = _instantiate(rhs, move.pos)
        _match(tuple(events), move.index, lhs)
        events[move.index:move.index + len(lhs)] = list(rhs)
    out = FrontWord(tuple(events))
    validate(out)
    return out


# -- filling moves -------------------------------------------------------------

def _active_strands(oriented, index):
    """Active strand ids (top to bottom) just before event ``index``."""
    active = []
    sid = 0
    for i, (kind, p) in enumerate(oriented.front.events):
        if i >= index:
            break
        if kind == "L":
            active[p - 1:p - 1] = [sid, sid + 1]
            sid += 2
        elif kind == "R":
            del active[p - 1:p + 1]
        else:
            active[p - 1], active[p] = active[p], active[p - 1]
    return active


def pinch(front, index, k, oriented_mode=True):
    """Insert an oriented saddle: a right cusp then a left cusp at position k.

    The two strands at positions k, k+1 of column ``index`` must exist;
    in oriented mode strands of one component must be anti-parallel
    (strands of different components can always be oriented to be).
    """
    if isinstance(front, OrientedFront):
        oriented = front
    else:
        oriented = orient(front)
    events = list(oriented.front.events)
    if not 0 <= index <= len(events):
        raise InputError(f"pinch column {index} out of range 0..{len(events)}")
    active = _active_strands(oriented, index)
    if k < 1 or k + 1 > len(active):
        raise InputError(
            f"pinch needs strands {k},{k + 1} at column {index}, only {len(active)} present"
        )
    u, v = active[k - 1], active[k]
    if oriented_mode and oriented.component_of[u] == oriented.component_of[v]:
        if oriented.directions[u] == oriented.directions[v]:
            raise InputError(
                f"pinch at column {index} position {k}: strands are parallel; "
                "an oriented saddle needs anti-parallel strands"
            )
    before = oriented.n_components
    events[index:index] = [("R", k), ("L", k)]
    out = FrontWord(tuple(events))
    validate(out)
    if oriented_mode:
        # an oriented saddle always splits or merges
        assert abs(components(out) - before) == 1
    return out


def death(front, component_index):
    """Remove a component that is literally the two-event word [L k, R k].

    ``component_index`` is 1-based in order of component creation.
    """
    oriented = orient(front)
    ncomp = oriented.n_components
    if not 1 <= component_index <= ncomp:
        raise InputError(f"component {component_index} out of range 1..{ncomp}")
    target = component_index - 1
    indices = [
        i
        for i, strands in enumerate(oriented.event_strands)
        if oriented.component_of[strands[0]] == target
    ]
    events = oriented.front.events
    if len(indices) != 2 or indices[1] != indices[0] + 1:
        raise InputError(
            f"component {component_index} is not a standard unknot: "
            f"its events sit at {indices}"
        )
    i = indices[0]
    (k1, p1), (k2, p2) = events[i], events[i + 1]
    if k1 != "L" or k2 != "R" or p1 != p2:
        raise InputError(
            f"component {component_index} is not the standard unknot "
            f"[L {p1}, R {p2}]"
        )
    out = FrontWord(events[:i] + events[i + 2:])
    validate(out)
    return out


# -- certificates ----------------------------------------------------------------

@dataclass(frozen=True)
class Pinch:
    index: int
    pos: int


@dataclass(frozen=True)
class Death:
    component: int


@dataclass(frozen=True)
class FillingCertificate:
    """A move sequence witnessing a decomposable Lagrangian filling."""

    steps: tuple
    declared_surface: tuple = None  # (pinches, deaths) or None


@dataclass(frozen=True)
class FillingReport:
    pinches: int
    deaths: int
    euler: int
    genus: int  # None when the Euler characteristic is even
    tb: int
    tb_matches: bool


def parse_certificate(text):
    steps = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "EXPECT" and len(parts) == 3:
                declared = (int(parts[1]), int(parts[2]))
            elif parts[0] == "MOVE" and parts[1] == "slide" and len(parts) == 3:
                steps.append(Move("slide", int(parts[2]), 0))
            elif parts[0] == "MOVE" and len(parts) == 4:
                if parts[1] not in MOVE_KINDS:
                    raise InputError(f"line {lineno}: unknown move kind {parts[1]!r}")
                steps.append(Move(parts[1], int(parts[2]), int(parts[3])))
            elif parts[0] == "PINCH" and len(parts) == 3:
                steps.append(Pinch(int(parts[1]), int(parts[2])))
            elif parts[0] == "DEATH" and len(parts) == 2:
                steps.append(Death(int(parts[1])))
            else:
                raise InputError(f"line {lineno}: unrecognized step {line!r}")
        except ValueError:
            raise InputError(f"line {lineno}: bad integer in {line!r}") from None
    return FillingCertificate(tuple(steps), declared)


def render_certificate(cert, header=None):
    lines = [] if header is None else [f"# {line}" for line in header.splitlines()]
    if cert.declared_surface is not None:
        lines.append(f"EXPECT {cert.declared_surface[0]} {cert.declared_surface[1]}")
    for step in cert.steps:
        if isinstance(step, Move):
            if step.kind == "slide":
                lines.append(f"MOVE slide {step.index}")
            else:
                lines.append(f"MOVE {step.kind} {step.index} {step.pos}")
        elif isinstance(step, Pinch):
            lines.append(f"PINCH {step.index} {step.pos}")
        else:
            lines.append(f"DEATH {step.component}")
    return "\n".join(lines) + "\n"


def check_certificate(front, cert):
    """Replay a certificate; raises CertificateError pinpointing failures.

    On success returns a FillingReport with the pinch/death counts, the
    surface Euler characteristic (deaths - pinches), the genus when that
    is defined, and the tb = -euler cross-check.
    """
    validate(front)
    if components(front) != 1:
        raise InputError("certificates are checked for knots (one component)")
    tb = thurston_bennequin(front)
    word = front
    pinches = deaths = 0
    for i, step in enumerate(cert.steps):
        try:
            if isinstance(step, Move):
                word = apply_move(word, step)
            elif isinstance(step, Pinch):
                word = pinch(word, step.index, step.pos)
                pinches += 1
            elif isinstance(step, Death):
                word = death(word, step.component)
                deaths += 1
            else:
                raise InputError(f"unknown step type {step!r}")
        except InputError as exc:
            raise CertificateError(f"step {i} ({step}): {exc}", step=i) from exc
    if word.events:
        raise CertificateError(
            f"non-empty final word: {len(word.events)} events remain", step=None
        )
    if cert.declared_surface is not None and cert.declared_surface != (pinches, deaths):
        raise CertificateError(
            f"declared surface {cert.declared_surface} but replay used "
            f"({pinches}, {deaths})",
            step=None,
        )
    euler = deaths - pinches
    genus = (1 - euler) // 2 if (1 - euler) % 2 == 0 else None
    return FillingReport(
        pinches=pinches,
        deaths=deaths,
        euler=euler,
        genus=genus,
        tb=tb,
        tb_matches=(tb == -euler),
    )


# -- connected sums ---------------------------------------------------------------

def connected_sum(f1, f2):
    """Splice f2 into f1 at f1's closing right cusp.

    Both fronts must be single-component.  A valid front always ends with
    R 1 acting on its last two strands and starts with L 1, so the splice
    removes f1's final cusp and f2's initial cusp and lets f1's two open
    strands run through f2's word.
    """
    for f in (f1, f2):
        validate(f)
        if components(f) != 1:
            raise InputError("connected sums need single-component fronts")
    events = f1.events[:-1] + f2.events[1:]
    out = FrontWord(events)
    validate(out)
    return out


def compose_certificates(f1, c1, c2):
    """Certificate for connected_sum(f1, f2) from certificates of the parts.

    Pinching the splice neck first recreates the two original knots side
    by side (the saddle of the boundary connected sum), after which c1
    runs entirely inside the first word and c2 inside the second.
    """
    validate(f1)
    neck = Pinch(len(f1.events) - 1, 1)
    steps = (neck,) + tuple(c1.steps) + tuple(c2.steps)
    declared = None
    if c1.declared_surface is not None and c2.declared_surface is not None:
        declared = (
            c1.declared_surface[0] + c2.declared_surface[0] + 1,
            c1.declared_surface[1] + c2.declared_surface[1],
        )
    return FillingCertificate(steps, declared)
