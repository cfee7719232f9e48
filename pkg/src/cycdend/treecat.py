"""The tree categories: maps of trees, factorization systems, Reedy classes.

A map of trees S -> T is an involutive arc function such that the image of
each vertex-star boundary consists of distinct arcs bounding a subtree of T;
by freeness of the associated cyclic operads this datum is a complete
description of the morphism.  Rooted maps are the orientation-preserving
ones, taking rootward arcs to rootward arcs.
"""

from dataclasses import dataclass
from itertools import permutations

from . import trees as tr


class TreeMap:
    """A morphism of (unrooted) trees, stored as its involutive arc map."""

    __slots__ = ("source", "target", "arc_map", "_hash", "_vimages")

    def __init__(self, source, target, arc_map):
        self.source = source
        self.target = target
        self.arc_map = dict(arc_map)
        self._hash = hash(
            (source, target, frozenset(self.arc_map.items()))
        )
        self._vimages = None

    def __call__(self, a):
        return self.arc_map[a]

    def __eq__(self, other):
        if not isinstance(other, TreeMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.arc_map == other.arc_map
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "TreeMap(%r -> %r)" % (self.source, self.target)

    def validate(self):
        """List every violated map invariant; empty iff a genuine tree map."""
        problems = []
        s, t = self.source, self.target
        if set(self.arc_map) != set(s.arcs):
            return ["arc map not defined on exactly the source arcs"]
        for a, b in self.arc_map.items():
            if b not in t.arcs:
                problems.append("image %r is not an arc of the target" % (b,))
                return problems
            if self.arc_map[s.dagger(a)] != t.dagger(b):
                problems.append("arc map does not commute with dagger at %r" % (a,))
        if problems:
            return problems
        for v in s.vertices:
            prof = [self.arc_map[s.dagger(a)] for a in s.nb(v)]
            if len(set(prof)) != len(prof):
                problems.append("vertex %r maps to a non-distinct profile" % (v,))
                continue
            if tr.subtree_by_boundary(t, prof) is None:
                problems.append(
                    "vertex %r profile does not bound a subtree" % (v,)
                )
        return problems

    def vertex_image(self, v):
        """The subtree of the target bounded by the image of bd(star_v)."""
        if self._vimages is None:
            self._vimages = {}
        if v not in self._vimages:
            s = self.source
            prof = [self.arc_map[s.dagger(a)] for a in s.nb(v)]
            sub = tr.subtree_by_boundary(self.target, prof)
            assert sub is not None
            self._vimages[v] = sub
        return self._vimages[v]


def identity(t):
    return TreeMap(t, t, {a: a for a in t.arcs})


def is_identity(f):
    return f.source == f.target and all(f.arc_map[a] == a for a in f.source.arcs)


def compose(g, f):
    """g after f."""
    if f.target != g.source:
        raise ValueError("endpoints do not match")
    return TreeMap(f.source, g.target, {a: g.arc_map[b] for a, b in f.arc_map.items()})


def from_isomorphism(s, t, mapping):
    return TreeMap(s, t, mapping)


def hom(s, t):
    """All tree maps s -> t, complete and duplicate-free."""
    if not s.vertices:
        a = min(s.arcs, key=repr)
        ad = s.dagger(a)
        return [
            TreeMap(s, t, {a: x, ad: t.dagger(x)})
            for x in sorted(t.arcs, key=repr)
        ]
    by_size = {}
    for sub in tr.subtrees(t):
        by_size.setdefault(len(sub.boundary), []).append(sub)
    # BFS order on vertices so each one after the first shares an edge with
    # an earlier one; this lets partial assignments prune.
    verts = _bfs_vertices(s)
    star_bds = {
        v: sorted((s.dagger(a) for a in s.nb(v)), key=repr) for v in verts
    }
    results = []

    def rec(i, partial):
        if i == len(verts):
            results.append(TreeMap(s, t, dict(partial)))
            return
        v = verts[i]
        bdv = star_bds[v]
        known = {a: partial[a] for a in bdv if a in partial}
        free_s = [a for a in bdv if a not in known]
        for sub in by_size.get(len(bdv), ()):
            bd_t = sub.boundary
            if any(b not in bd_t for b in known.values()):
                continue
            free_t = sorted(bd_t - set(known.values()), key=repr)
            if len(free_t) != len(free_s):
                continue
            for perm in permutations(free_t):
                nxt = dict(partial)
                for a, b in zip(free_s, perm):
                    nxt[a] = b
                    nxt[s.dagger(a)] = t.dagger(b)
                rec(i + 1, nxt)

    rec(0, {})
    results.sort(key=lambda f: sorted(map(repr, f.arc_map.items())))
    return results


def _bfs_vertices(s):
    verts = sorted(s.vertices, key=repr)
    adj = {v: set() for v in verts}
    for e in s.inner_edges:
        a, b = tuple(e)
        adj[s.target[a]].add(s.target[b])
        adj[s.target[b]].add(s.target[a])
    order, seen = [], set()
    queue = [verts[0]]
    seen.add(verts[0])
    while queue:
        v = queue.pop(0)
        order.append(v)
        for w in sorted(adj[v], key=repr):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    assert len(order) == len(verts)
    return order


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class MapClass:
    active: bool
    inert: bool
    positive: bool
    negative: bool
    codimension: int


def classify(f):
    s, t = f.source, f.target
    bd_img = [f.arc_map[a] for a in s.boundary]
    active = len(set(bd_img)) == len(bd_img) and set(bd_img) == set(t.boundary)
    inert = all(len(f.vertex_image(v).verts) == 1 for v in s.vertices)
    positive = len(set(f.arc_map.values())) == len(f.arc_map)
    negative = active and set(f.arc_map.values()) == set(t.arcs)
    return MapClass(
        active=active,
        inert=inert,
        positive=positive,
        negative=negative,
        codimension=len(t.vertices) - len(s.vertices),
    )


def is_isomorphism(f):
    if len(set(f.arc_map.values())) != len(f.arc_map) or set(
        f.arc_map.values()
    ) != set(f.target.arcs):
        return False
    inv = TreeMap(f.target, f.source, {b: a for a, b in f.arc_map.items()})
    return not inv.validate()


def inverse(f):
    assert is_isomorphism(f)
    return TreeMap(f.target, f.source, {b: a for a, b in f.arc_map.items()})


# ---------------------------------------------------------------------------
# Factorizations


def factor_active_inert(f):
    """f = inert o active; the middle is the subtree bounded by f(bd source)."""
    s, t = f.source, f.target
    bd_img = [f.arc_map[a] for a in s.boundary]
    mid_sub = tr.subtree_by_boundary(t, bd_img)
    assert mid_sub is not None, "image boundary must bound a subtree"
    mid = mid_sub.as_tree()
    assert set(f.arc_map.values()) <= mid.arcs
    active = TreeMap(s, mid, dict(f.arc_map))
    inert = TreeMap(mid, t, {a: a for a in mid.arcs})
    assert not active.validate() and not inert.validate()
    return active, inert


def _collapse(s, collapsed):
    """Quotient tree obtained by merging the two edges at each collapsed
    (2-valent) vertex; returns (tree, arc quotient map)."""
    parent = {a: a for a in s.arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for v in collapsed:
        x, y = tuple(s.nb(v))
        union(x, s.dagger(y))
        union(s.dagger(x), y)
    cls = {a: find(a) for a in s.arcs}
    arcs = set(cls.values())
    dagger = {}
    for a in arcs:
        dagger[a] = cls[s.dagger(a)]
    target = {}
    kept = set(s.vertices) - set(collapsed)
    for a, v in s.target.items():
        if v in kept:
            assert cls[a] not in target or target[cls[a]] == v
            target[cls[a]] = v
    u = tr.Tree(arcs, dagger, target, kept)
    return u, cls


def factor_reedy(f):
    """f = positive o negative; the negative part collapses every vertex
    whose image subtree is a single edge."""
    s, t = f.source, f.target
    collapsed = [v for v in s.vertices if not f.vertex_image(v).verts]
    u, cls = _collapse(s, collapsed)
    neg = TreeMap(s, u, cls)
    pos_map = {}
    for a in s.arcs:
        c = cls[a]
        if c in pos_map:
            assert pos_map[c] == f.arc_map[a]
        else:
            pos_map[c] = f.arc_map[a]
    pos = TreeMap(u, t, pos_map)
    assert not neg.validate() and not pos.validate()
    assert classify(neg).negative and classify(pos).positive
    assert compose(pos, neg) == f
    return neg, pos


# ---------------------------------------------------------------------------
# Cofaces and codegeneracies


def _contract_edge(t, e):
    """Contract an inner edge, merging its two endpoint vertices."""
    a, b = tuple(e)
    u, w = t.target[a], t.target[b]
    assert u != w
    arcs = t.arcs - e
    dagger = {x: t.dagger(x) for x in arcs}
    merged = ("m", repr(u), repr(w))
    verts = (t.vertices - {u, w}) | {merged}
    target = {}
    for x in arcs:
        if x in t.target:
            v = t.target[x]
            target[x] = merged if v in (u, w) else v
    return tr.Tree(arcs, dagger, target, verts)


def cofaces(t):
    """Codimension-1 positive maps into t, one per isomorphism class over t.

    Returns a list of (TreeMap, kind) with kind 'inner' (contract an inner
    edge) or 'outer' (include a subtree with one fewer vertex).
    """
    out = []
    for e in sorted(t.inner_edges, key=lambda e: sorted(map(repr, e))):
        src = _contract_edge(t, e)
        delta = TreeMap(src, t, {a: a for a in src.arcs})
        assert not delta.validate()
        out.append((delta, "inner"))
    want = len(t.vertices) - 1
    if want >= 0:
        for sub in tr.subtrees(t):
            if len(sub.verts) != want:
                continue
            src = sub.as_tree()
            delta = TreeMap(src, t, {a: a for a in src.arcs})
            out.append((delta, "outer"))
    for delta, kind in out:
        c = classify(delta)
        assert c.positive and c.codimension == 1
        assert (kind == "inner") == c.active
    return out


def codegeneracies(t):
    """Codimension -1 negative maps out of t, one per isomorphism class."""
    out = []
    for v in sorted(t.vertices, key=repr):
        if t.valence(v) != 2:
            continue
        u, cls = _collapse(t, [v])
        sigma = TreeMap(t, u, cls)
        assert not sigma.validate()
        c = classify(sigma)
        assert c.negative and c.codimension == -1
        out.append(sigma)
    return out


def same_coface_class(d1, d2):
    """Whether two cofaces into the same tree differ by an iso of sources."""
    if d1.target != d2.target:
        return False
    for m in tr.isomorphisms(d1.source, d2.source):
        if compose(d2, TreeMap(d1.source, d2.source, m)) == d1:
            return True
    return False


# ---------------------------------------------------------------------------
# Root elision: the discrete fibration to unrooted trees


class RootedTreeMap:
    """A tree map together with compatible roots (orientation-preserving)."""

    __slots__ = ("map", "source_root", "target_root", "_hash")

    def __init__(self, tree_map, source_root, target_root):
        self.map = tree_map
        self.source_root = source_root
        self.target_root = target_root
        self._hash = hash((tree_map, source_root, target_root))

    def __eq__(self, other):
        if not isinstance(other, RootedTreeMap):
            return NotImplemented
        return (
            self.map == other.map
            and self.source_root == other.source_root
            and self.target_root == other.target_root
        )

    def __hash__(self):
        return self._hash

    def validate(self):
        problems = list(self.map.validate())
        s, t = self.map.source, self.map.target
        if self.source_root not in s.boundary:
            problems.append("source root is not a boundary arc")
        if self.target_root not in t.boundary:
            problems.append("target root is not a boundary arc")
        if problems:
            return problems
        if not preserves_orientation(self.map, self.source_root, self.target_root):
            problems.append("map does not preserve rootward orientation")
        return problems


def preserves_orientation(f, source_root, target_root):
    rw_s = tr.rootward(f.source, source_root)
    rw_t = tr.rootward(f.target, target_root)
    return all(rw_t[f.arc_map[a]] == rw_s[a] for a in f.source.arcs)


def root_elision(rf):
    return rf.map


def lift(f, target_root):
    """The unique rooted map over f with the given codomain root."""
    cands = [
        s
        for s in sorted(f.source.boundary, key=repr)
        if preserves_orientation(f, s, target_root)
    ]
    assert len(cands) == 1, "discrete fibration violated: %d lifts" % len(cands)
    return RootedTreeMap(f, cands[0], target_root)


def lift_active_by_source(f, source_root):
    """For an active map, the unique rooted lift with the given source root."""
    assert classify(f).active
    cands = [
        r
        for r in sorted(f.target.boundary, key=repr)
        if preserves_orientation(f, source_root, r)
    ]
    assert len(cands) == 1, "discrete opfibration violated: %d lifts" % len(cands)
    return RootedTreeMap(f, source_root, cands[0])


def rooted_hom(s, s_root, t, t_root):
    """All rooted maps (s, s_root) -> (t, t_root)."""
    return [
        RootedTreeMap(f, s_root, t_root)
        for f in hom(s, t)
        if preserves_orientation(f, s_root, t_root)
    ]


def rooted_cofaces(t, t_root):
    """Rooted lifts of the cofaces into t, with their kinds."""
    out = []
    for delta, kind in cofaces(t):
        out.append((lift(delta, t_root), kind))
    return out


# ---------------------------------------------------------------------------
# Bounded skeleton of the tree category


class TreeCategory:
    """All trees within (max_vertices, max_valence) with memoized hom sets."""

    def __init__(self, max_vertices, max_valence):
        self.max_vertices = max_vertices
        self.max_valence = max_valence
        self.objects = tr.enumerate_trees(max_vertices, max_valence)
        self._hom = {}

    def hom(self, s, t):
        key = (s, t)
        if key not in self._hom:
            self._hom[key] = hom(s, t)
        return self._hom[key]

    def all_maps(self):
        for s in self.objects:
            for t in self.objects:
                for f in self.hom(s, t):
                    yield f


def ez_check(max_vertices, max_valence):
    """Verify the Eilenberg-Zilber style properties of the tree category.

    (1) positive = mono, (2) negative = split epi, (3) negatives are
    determined by their section sets, (4) pairs of negatives with common
    domain admit a pushout preserved by all hom functors into enumerated
    trees.  Absoluteness in (4) is necessarily checked only against the
    enumerated targets; the report records the bounds.
    """
    cat = TreeCategory(max_vertices, max_valence)
    edge = cat.objects[0]
    report = {
        "bounds": {"max_vertices": max_vertices, "max_valence": max_valence},
        "properties": {},
    }

    # (1) positive iff mono.  Composition is composition of arc maps, so an
    # injective map cancels tautologically; a non-injective one is separated
    # by a pair of edge probes.
    bad1 = []
    for f in cat.all_maps():
        positive = classify(f).positive
        if positive:
            continue
        seen = {}
        witness = None
        for a, b in f.arc_map.items():
            if b in seen and seen[b] != a:
                witness = (seen[b], a)
                break
            seen[b] = a
        if witness is None:
            bad1.append(f)
            continue
        a1, a2 = witness
        e = min(edge.arcs, key=repr)
        p1 = TreeMap(edge, f.source, {e: a1, edge.dagger(e): f.source.dagger(a1)})
        p2 = TreeMap(edge, f.source, {e: a2, edge.dagger(e): f.source.dagger(a2)})
        if p1 == p2 or compose(f, p1) != compose(f, p2):
            bad1.append(f)
    report["properties"][1] = {"pass": not bad1, "violations": bad1}

    negatives = {}
    for s in cat.objects:
        for t in cat.objects:
            negs = [f for f in cat.hom(s, t) if classify(f).negative]
            if negs:
                negatives[(s, t)] = negs

    # (2) negative iff split epi
    bad2 = []
    for s in cat.objects:
        for t in cat.objects:
            for f in cat.hom(s, t):
                sections = [
                    g for g in cat.hom(t, s) if is_identity(compose(f, g))
                ]
                if bool(sections) != classify(f).negative:
                    bad2.append(f)
    report["properties"][2] = {"pass": not bad2, "violations": bad2}

    # (3) equal section sets imply equal negatives
    bad3 = []
    for (s, t), negs in negatives.items():
        secs = [
            frozenset(g for g in cat.hom(t, s) if is_identity(compose(f, g)))
            for f in negs
        ]
        for i in range(len(negs)):
            for j in range(i + 1, len(negs)):
                if secs[i] == secs[j]:
                    bad3.append((negs[i], negs[j]))
    report["properties"][3] = {"pass": not bad3, "violations": bad3}

    # (4) absolute pushouts of pairs of negatives with common domain
    bad4 = []
    for s in cat.objects:
        outgoing = [f for (src, _), fs in negatives.items() if src == s for f in fs]
        for i, f1 in enumerate(outgoing):
            for f2 in outgoing[i:]:
                if _bounded_absolute_pushout(cat, f1, f2) is None:
                    bad4.append((f1, f2))
    report["properties"][4] = {"pass": not bad4, "violations": bad4}
    report["pass"] = all(p["pass"] for p in report["properties"].values())
    return report


def _bounded_absolute_pushout(cat, f1, f2):
    """Find a pushout of f1, f2 verified against every enumerated target."""
    u1, u2 = f1.target, f2.target
    for w in cat.objects:
        for t1 in cat.hom(u1, w):
            left = compose(t1, f1)
            for t2 in cat.hom(u2, w):
                if compose(t2, f2) != left:
                    continue
                if _is_pushout_against_all(cat, f1, f2, t1, t2):
                    return (w, t1, t2)
    return None


def _is_pushout_against_all(cat, f1, f2, t1, t2):
    w = t1.target
    for z in cat.objects:
        homs_w = cat.hom(w, z)
        cones = [
            (g1, g2)
            for g1 in cat.hom(t1.source, z)
            for g2 in cat.hom(t2.source, z)
            if compose(g1, f1) == compose(g2, f2)
        ]
        for g1, g2 in cones:
            mediating = [
                h
                for h in homs_w
                if compose(h, t1) == g1 and compose(h, t2) == g2
            ]
            if len(mediating) != 1:
                return False
        # every h gives a cone, so cones and mediating maps must biject
        if len(cones) != len(homs_w):
            return False
    return True
