"""Shared test machinery.

Independent reconstructions used as oracles: a front-word to PD-code
converter, Wirtinger presentations of PD codes (so Alexander polynomials
of diagrams can be computed through the group pipeline), a pretzel/torus
PD generator, Tietze transformations, and a plain exponential skein
evaluator with no memoization and no simplification.
"""

import random

from diskfill.errors import InputError
from diskfill.front import FrontWord, orient
from diskfill.fox import alexander_polynomial
from diskfill.groups import Presentation, free_reduce
from diskfill.kauffman import LinkDiagram, delta_power, trace_diagram
from diskfill.laurent import BiLaurent


# -- front word -> PD code ------------------------------------------------------

def front_to_pd(front):
    """Convert a front to a PD diagram (edges cut at crossings only)."""
    oriented = orient(front)
    dirs = oriented.directions
    active = []  # list of [strand_id, current_edge]
    next_edge = [0]
    joins = []
    crossings = []
    all_edges = set()

    def fresh():
        next_edge[0] += 1
        all_edges.add(next_edge[0])
        return next_edge[0]

    sid = 0
    for kind, p in front.events:
        if kind == "L":
            e = fresh()
            active[p - 1:p - 1] = [[sid, e], [sid + 1, e]]
            sid += 2
        elif kind == "R":
            (u, eu), (v, ev) = active[p - 1], active[p]
            joins.append((eu, ev))
            del active[p - 1:p + 1]
        else:  # crossing: top strand descends and is in front
            top, bot = active[p - 1], active[p]
            nw, sw = top[1], bot[1]
            se, ne = fresh(), fresh()
            top[1], bot[1] = se, ne
            if dirs[bot[0]] > 0:  # under strand traversed rightward
                crossings.append((sw, se, ne, nw))
            else:
                crossings.append((ne, nw, sw, se))
            active[p - 1], active[p] = bot, top
    # glue edges through right cusps
    parent = {e: e for e in all_edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in joins:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
    tuples = tuple(tuple(find(e) for e in c) for c in crossings)
    present = {e for c in tuples for e in c}
    loops = len({find(e) for e in all_edges} - present)
    return LinkDiagram(tuples, loops)


# -- Wirtinger presentations ----------------------------------------------------

def wirtinger_presentation(diagram):
    """Arc generators and one conjugation relator per crossing."""
    if not diagram.crossings:
        raise InputError("crossingless diagrams have free Wirtinger groups")
    tr = trace_diagram(diagram)
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in diagram.crossings:
        rx, ry = find(c[1]), find(c[3])
        if rx != ry:
            parent[ry] = rx
    arcs = sorted({find(e) for c in diagram.crossings for e in c})
    index = {a: i + 1 for i, a in enumerate(arcs)}
    relators = []
    for ci, (c, s) in enumerate(zip(diagram.crossings, tr.signs)):
        into = tr.under_in[ci]
        a_in = index[find(c[into])]
        a_out = index[find(c[(into + 2) % 4])]
        o = index[find(c[1])]
        if s > 0:
            relators.append(free_reduce((o, a_in, -o, -a_out)))
        else:
            relators.append(free_reduce((-o, a_in, o, -a_out)))
    gens = tuple(f"a{i}" for i in range(1, len(arcs) + 1))
    return Presentation(gens, tuple(relators))


def pd_alexander(diagram):
    """Alexander polynomial of a knot diagram via its Wirtinger group.

    One Wirtinger relator is redundant, so it is dropped; all meridians
    share the weight 1.
    """
    pres = wirtinger_presentation(diagram)
    trimmed = Presentation(pres.gens, pres.relators[:-1])
    weights = (1,) * trimmed.rank
    return alexander_polynomial(trimmed, weights)


# -- pretzel and torus diagrams ---------------------------------------------------

def pretzel_pd(twists):
    """PD code of the pretzel link with the given twist counts.

    ``pretzel_pd([k])`` is the (2, k) torus diagram.  The sign of each
    twist count picks which strand of that region passes in front.
    """
    if not twists or any(k == 0 for k in twists):
        raise ValueError("twist counts must be nonzero")
    counter = [0]

    def fresh():
        counter[0] += 1
        return counter[0]

    crossings = []
    joins = []
    tops = []
    bottoms = []
    for k in twists:
        left, right = fresh(), fresh()
        tops.append((left, right))
        for _ in range(abs(k)):
            out_l, out_r = fresh(), fresh()
            if k > 0:  # left strand dips under toward the right
                crossings.append((left, out_l, out_r, right))
            else:
                crossings.append((right, left, out_l, out_r))
            left, right = out_l, out_r
        bottoms.append((left, right))
    n = len(twists)
    for i in range(n - 1):
        joins.append((tops[i][1], tops[i + 1][0]))
        joins.append((bottoms[i][1], bottoms[i + 1][0]))
    joins.append((tops[0][0], tops[n - 1][1]))
    joins.append((bottoms[0][0], bottoms[n - 1][1]))

    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in joins:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
    return LinkDiagram(tuple(tuple(find(e) for e in c) for c in crossings), 0)


# -- plain exponential skein oracle ------------------------------------------------

def naive_lambda(diagram):
    """The regular-isotopy polynomial with no memo and no reductions.

    Recurses on the first under-first crossing in traversal order exactly
    like the engine, but never simplifies and caches nothing.
    """
    if not diagram.crossings:
        return delta_power(diagram.loops - 1)
    tr = trace_diagram(diagram)
    target = None
    best = None
    for ci in range(diagram.n):
        if tr.first_under[ci] and (best is None or tr.first_visit[ci] < best):
            best = tr.first_visit[ci]
            target = ci
    if target is None:
        return BiLaurent.a(-tr.writhe) * delta_power(tr.components - 1)
    from diskfill.kauffman import smooth_crossing, switch_crossing

    z = BiLaurent.z(1)
    return (
        z * (naive_lambda(smooth_crossing(diagram, target, 0))
             + naive_lambda(smooth_crossing(diagram, target, 1)))
        - naive_lambda(switch_crossing(diagram, target))
    )


def naive_F(diagram):
    return BiLaurent.a(trace_diagram(diagram).writhe) * naive_lambda(diagram)


# -- Tietze transformations ---------------------------------------------------------

def conjugate_relator(pres, i, word):
    rels = list(pres.relators)
    rels[i] = free_reduce(tuple(word) + rels[i] + tuple(-x for x in reversed(word)))
    return Presentation(pres.gens, tuple(rels))


def invert_relator(pres, i):
    rels = list(pres.relators)
    rels[i] = tuple(-x for x in reversed(rels[i]))
    return Presentation(pres.gens, tuple(rels))


def permute_relators(pres, perm):
    rels = [pres.relators[j] for j in perm]
    return Presentation(pres.gens, tuple(rels))


def stabilize(pres, word, name="s"):
    """Add a generator equal to ``word``: new relator g * word^-1."""
    gens = pres.gens + (name,)
    g = len(gens)
    new_rel = free_reduce((g,) + tuple(-x for x in reversed(word)))
    return Presentation(gens, pres.relators + (new_rel,))


def stabilized_weights(pres, weights, word):
    from diskfill.fox import abelianize_word

    return tuple(weights) + (abelianize_word(word, weights),)


# -- randomized inputs ---------------------------------------------------------------

def random_laurent(rng, span=4, size=4, coeff=6):
    from diskfill.laurent import IntLaurent

    return IntLaurent(
        {rng.randint(-span, span): rng.randint(-coeff, coeff) for _ in range(size)}
    )


def random_bilaurent(rng, span=3, size=4, coeff=5):
    terms = {}
    for _ in range(size):
        terms[(rng.randint(-span, span), rng.randint(-span, span))] = rng.randint(
            -coeff, coeff
        )
    return BiLaurent(terms)


def random_word(rng, rank, length):
    letters = []
    for _ in range(length):
        g = rng.randint(1, rank)
        letters.append(g if rng.random() < 0.5 else -g)
    return free_reduce(letters)


def random_move(rng, front, max_events=48):
    """Pick one applicable isotopy move at random.

    Growing moves are suppressed once the word reaches ``max_events`` so
    long random walks stay fast.
    """
    from diskfill.front import Move, apply_move, strand_profile

    events = front.events
    profile = [0] + strand_profile(front)
    top = max(profile) + 1
    growing = ("r1a+", "r1b+", "r2a+", "r2b+", "r2c+", "r2d+")
    shrinking = ("r1a-", "r1b-", "r2a-", "r2b-", "r2c-", "r2d-")
    neutral = ("slide", "r3")
    for _ in range(400):
        bucket = rng.random()
        if len(events) >= max_events:
            kinds = shrinking if bucket < 0.6 else neutral
        else:
            kinds = growing if bucket < 0.35 else shrinking if bucket < 0.6 else neutral
        kind = rng.choice(kinds)
        i = rng.randrange(len(events) + 1 if kind in growing else max(len(events), 1))
        p = rng.randint(1, top)
        if kind == "slide":
            move = Move("slide", i, 0)
        else:
            move = Move(kind, i, p)
        try:
            return move, apply_move(front, move)
        except InputError:
            continue
    raise AssertionError("no applicable move found")
