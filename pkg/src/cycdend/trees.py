"""Undirected trees with loose ends, their subtrees, and isomorphism machinery.

A tree is a diagram of finite sets: arcs with a fixpoint-free involution
(written ``dagger``), a subset of inner arcs, and a target map from inner
arcs to vertices.  Arcs not hitting any vertex form the boundary (the
"loose ends").  All trees here have nonempty boundary.

Integer-labelled trees use the convention ``dagger(a) == ~a``, so arcs come
in pairs ``(k, ~k)`` with ``k >= 0``; arbitrary hashable labels are allowed
when an explicit involution is supplied.
"""

from itertools import combinations


class Tree:
    """A finite undirected tree with loose ends.

    Immutable after construction.  ``target`` maps each inner arc to the
    vertex it points at; its domain is the set of inner arcs.
    """

    __slots__ = ("arcs", "vertices", "_dagger", "target", "_nb", "_hash", "_cache")

    def __init__(self, arcs, dagger, target, vertices):
        self.arcs = frozenset(arcs)
        self._dagger = dict(dagger)
        self.target = dict(target)
        self.vertices = frozenset(vertices)
        nb = {v: set() for v in self.vertices}
        for a, v in self.target.items():
            nb[v].add(a)
        self._nb = {v: frozenset(s) for v, s in nb.items()}
        self._hash = hash(
            (
                self.arcs,
                frozenset(self._dagger.items()),
                frozenset(self.target.items()),
                self.vertices,
            )
        )
        self._cache = {}

    def dagger(self, a):
        return self._dagger[a]

    @property
    def inner_arcs(self):
        return frozenset(self.target)

    @property
    def boundary(self):
        return self.arcs - frozenset(self.target)

    def nb(self, v):
        """Arcs pointing at the vertex v."""
        return self._nb[v]

    def valence(self, v):
        return len(self._nb[v])

    @property
    def edges(self):
        """Dagger-orbits of arcs, each a 2-element frozenset."""
        if "edges" not in self._cache:
            self._cache["edges"] = frozenset(
                frozenset((a, self._dagger[a])) for a in self.arcs
            )
        return self._cache["edges"]

    def edge_of(self, a):
        return frozenset((a, self._dagger[a]))

    @property
    def inner_edges(self):
        """Edges both of whose arcs point at vertices."""
        return frozenset(e for e in self.edges if all(a in self.target for a in e))

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return (
            self.arcs == other.arcs
            and self._dagger == other._dagger
            and self.target == other.target
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Tree(%d arcs, %d vertices)" % (len(self.arcs), len(self.vertices))


def _endpoint(tree, a):
    # Where arc a points: a vertex, or its own loose end.
    if a in tree.target:
        return ("v", tree.target[a])
    return ("end", a)


def validate(tree):
    """List every violated tree invariant; empty list iff valid."""
    problems = []
    dg = tree._dagger
    if set(dg) != set(tree.arcs):
        problems.append("involution not defined on exactly the arc set")
        return problems
    for a in tree.arcs:
        if dg[a] not in tree.arcs or dg[dg[a]] != a:
            problems.append("dagger is not an involution at %r" % (a,))
            return problems
        if dg[a] == a:
            problems.append("involution has fixpoint at %r" % (a,))
    for a, v in tree.target.items():
        if a not in tree.arcs:
            problems.append("inner arc %r not an arc" % (a,))
        if v not in tree.vertices:
            problems.append("target of %r is not a vertex" % (a,))
    if problems:
        return problems
    for v in tree.vertices:
        if not tree.nb(v):
            problems.append("isolated vertex %r" % (v,))
    if not tree.arcs:
        problems.append("no arcs (empty boundary)")
        return problems
    # Connectivity and acyclicity over endpoints (vertices and loose ends).
    nodes = set()
    for a in tree.arcs:
        nodes.add(_endpoint(tree, a))
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    n_edges = 0
    for e in tree.edges:
        a, b = tuple(e)
        n_edges += 1
        ra, rb = find(_endpoint(tree, a)), find(_endpoint(tree, b))
        if ra == rb:
            problems.append("cycle through edge %r" % (sorted(e, key=repr),))
        else:
            parent[ra] = rb
    roots = {find(n) for n in nodes}
    if len(roots) > 1:
        problems.append("disconnected (%d components)" % len(roots))
    if not problems and n_edges != len(nodes) - 1:
        problems.append("edge/endpoint count mismatch (cycles)")
    if not tree.boundary:
        problems.append("empty boundary")
    return problems


def is_valid(tree):
    return not validate(tree)


# ---------------------------------------------------------------------------
# Basic trees


def make_edge():
    """The tree with two arcs and no vertices."""
    return Tree([0, ~0], {0: ~0, ~0: 0}, {}, [])


def make_star(n):
    """Star with one vertex of valence n; boundary is the n outward arcs."""
    if n < 1:
        raise ValueError("star(0) has empty boundary")
    arcs = []
    dagger = {}
    target = {}
    for k in range(n):
        arcs += [k, ~k]
        dagger[k] = ~k
        dagger[~k] = k
        target[k] = 0
    return Tree(arcs, dagger, target, [0])


def make_linear(n):
    """Linear tree with n vertices; boundary {~0, n}.  linear(0) is the edge."""
    if n < 0:
        raise ValueError("n must be >= 0")
    arcs = []
    dagger = {}
    target = {}
    for k in range(n + 1):
        arcs += [k, ~k]
        dagger[k] = ~k
        dagger[~k] = k
        if k < n:
            target[k] = k
        if k > 0:
            target[~k] = k - 1
    return Tree(arcs, dagger, target, range(n))


def make_basic(kind, n=None):
    """Build one of the fundamental trees: 'edge', 'star', or 'linear'."""
    if kind == "edge":
        return make_edge()
    if kind == "star":
        return make_star(n)
    if kind == "linear":
        if n < 0:
            raise ValueError("n must be >= 0")
        return make_linear(n)
    raise ValueError("unknown kind %r" % (kind,))


# ---------------------------------------------------------------------------
# Subtrees


class Subtree:
    """A subgraph of a host tree which is itself a tree.

    Stores the edge and vertex subsets redundantly so the subgraph condition
    is directly testable.
    """

    __slots__ = ("host", "edges", "verts", "_hash")

    def __init__(self, host, edges, verts):
        self.host = host
        self.edges = frozenset(edges)
        self.verts = frozenset(verts)
        self._hash = hash((self.edges, self.verts))

    @property
    def arc_set(self):
        return frozenset(a for e in self.edges for a in e)

    @property
    def boundary(self):
        arcs = self.arc_set
        return frozenset(
            a for a in arcs if self.host.target.get(a) not in self.verts
        )

    @property
    def inner_edges(self):
        """Edges of the subtree both of whose arcs point at selected vertices."""
        return frozenset(
            e
            for e in self.edges
            if all(self.host.target.get(a) in self.verts for a in e)
        )

    def as_tree(self):
        """The subtree as a standalone Tree on the same labels."""
        arcs = self.arc_set
        dagger = {a: self.host.dagger(a) for a in arcs}
        target = {
            a: v
            for a, v in self.host.target.items()
            if a in arcs and v in self.verts
        }
        return Tree(arcs, dagger, target, self.verts)

    def validate(self):
        problems = []
        host = self.host
        if not self.edges:
            problems.append("empty edge set")
            return problems
        for e in self.edges:
            if e not in host.edges:
                problems.append("%r is not an edge of the host" % (sorted(e, key=repr),))
        for v in self.verts:
            if v not in host.vertices:
                problems.append("%r is not a vertex of the host" % (v,))
                return problems
            if not host.nb(v) <= self.arc_set:
                problems.append("vertex %r is missing incident arcs" % (v,))
        if problems:
            return problems
        return [("subtree: " + p) for p in validate(self.as_tree())]

    def __eq__(self, other):
        if not isinstance(other, Subtree):
            return NotImplemented
        return (
            self.host == other.host
            and self.edges == other.edges
            and self.verts == other.verts
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Subtree(%d edges, %d vertices)" % (len(self.edges), len(self.verts))

    def sort_key(self):
        return (
            len(self.verts),
            sorted(map(repr, self.verts)),
            sorted(sorted(map(repr, e)) for e in self.edges),
        )


def _incident_edges(tree, verts):
    return frozenset(e for e in tree.edges if any(tree.target.get(a) in verts for a in e))


def subtrees(tree):
    """All subtrees: single edges, plus one per connected vertex subset."""
    key = "subtrees"
    if key in tree._cache:
        return tree._cache[key]
    out = [Subtree(tree, [e], []) for e in tree.edges]
    verts = sorted(tree.vertices, key=repr)
    # vertex adjacency
    adj = {v: set() for v in verts}
    for e in tree.inner_edges:
        a, b = tuple(e)
        u, w = tree.target[a], tree.target[b]
        adj[u].add(w)
        adj[w].add(u)
    for r in range(1, len(verts) + 1):
        for combo in combinations(verts, r):
            cs = set(combo)
            # connectivity of the induced vertex set
            stack, seen = [combo[0]], {combo[0]}
            while stack:
                for w in adj[stack.pop()] & cs:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if seen == cs:
                out.append(Subtree(tree, _incident_edges(tree, cs), cs))
    out.sort(key=Subtree.sort_key)
    tree._cache[key] = out
    return out


def subtree_by_boundary(tree, arcs):
    """The unique subtree with the given boundary arc set, or None.

    Uniqueness is checked against the full subtree enumeration.
    """
    arcs = list(arcs)
    if len(set(arcs)) != len(arcs):
        raise ValueError("duplicate arcs in boundary request")
    want = frozenset(arcs)
    key = "bd_index"
    if key not in tree._cache:
        index = {}
        for s in subtrees(tree):
            b = s.boundary
            assert b not in index, "boundary does not determine subtree"
            index[b] = s
        tree._cache[key] = index
    return tree._cache[key].get(want)


def graft(s1, s2, shared_edge):
    """Union of two subtrees overlapping in exactly the given edge."""
    if s1.host != s2.host:
        raise ValueError("subtrees live in different hosts")
    overlap = s1.edges & s2.edges
    if overlap != {shared_edge} or (s1.verts & s2.verts):
        raise ValueError("subtrees must overlap in exactly the shared edge")
    out = Subtree(s1.host, s1.edges | s2.edges, s1.verts | s2.verts)
    assert not out.validate()
    return out


def star_subtree(tree, v):
    """The one-vertex subtree at v."""
    return Subtree(tree, [tree.edge_of(a) for a in tree.nb(v)], [v])


def edge_subtree(tree, e):
    return Subtree(tree, [e], [])


# ---------------------------------------------------------------------------
# Canonical forms and isomorphisms


_END = ("e",)


def _rooted_code(tree, r):
    # AHU code of the tree rooted at boundary arc r.  Loose ends and
    # childless vertices carry distinct tags.
    rd = tree.dagger(r)
    if rd not in tree.target:
        return _END

    def vcode(v, in_arc):
        kids = []
        for c in tree.nb(v):
            if c == in_arc:
                continue
            cd = tree.dagger(c)
            if cd in tree.target:
                kids.append(vcode(tree.target[cd], cd))
            else:
                kids.append(_END)
        kids.sort()
        return ("v", tuple(kids))

    return vcode(tree.target[rd], rd)


def canonical_form(tree):
    """Isomorphism-invariant code: equal codes iff isomorphic trees."""
    key = "code"
    if key not in tree._cache:
        tree._cache[key] = (
            len(tree.vertices),
            min(_rooted_code(tree, r) for r in tree.boundary),
        )
    return tree._cache[key]


def isomorphisms(s, t):
    """All arc bijections s -> t commuting with dagger and incidence."""
    if len(s.arcs) != len(t.arcs) or len(s.vertices) != len(t.vertices):
        return []
    if canonical_form(s) != canonical_form(t):
        return []
    if not s.vertices:
        a = min(s.arcs, key=repr)
        return [{a: b, s.dagger(a): t.dagger(b)} for b in sorted(t.arcs, key=repr)]

    def match_vertex(v, in_a, w, in_b, mapping):
        # Extend mapping by matching the branch at (v, entered via in_a)
        # against the branch at (w, entered via in_b); return completions.
        kids_a = sorted(s.nb(v) - {in_a}, key=repr)
        kids_b = sorted(t.nb(w) - {in_b}, key=repr)
        if len(kids_a) != len(kids_b):
            return []
        partial = [mapping]
        for c in kids_a:
            nxt = []
            for m in partial:
                used = set(m.values())
                for d in kids_b:
                    if d in used:
                        continue
                    cd, dd = s.dagger(c), t.dagger(d)
                    if (cd in s.target) != (dd in t.target):
                        continue
                    m2 = dict(m)
                    m2[c] = d
                    m2[cd] = dd
                    if cd in s.target:
                        nxt.extend(
                            match_vertex(s.target[cd], cd, t.target[dd], dd, m2)
                        )
                    else:
                        nxt.append(m2)
            partial = nxt
        return partial

    results = []
    r = min(s.boundary, key=repr)
    rcode = _rooted_code(s, r)
    rd = s.dagger(r)
    for r2 in sorted(t.boundary, key=repr):
        if _rooted_code(t, r2) != rcode:
            continue
        r2d = t.dagger(r2)
        m0 = {r: r2, rd: r2d}
        results.extend(match_vertex(s.target[rd], rd, t.target[r2d], r2d, m0))
    return results


def relabel(tree):
    """Deterministic canonical relabelling onto integer arcs and vertices.

    Edges are numbered by a traversal from the code-minimal boundary arc,
    children visited in code order; edge i carries arcs (i, ~i) with arc i
    pointing away from the root end.
    """
    root = min(
        tree.boundary, key=lambda r: (_rooted_code(tree, r), repr(r))
    )
    arc_map = {}
    vert_map = {}
    counter = [0]

    def new_edge(toward_root_arc):
        i = counter[0]
        counter[0] += 1
        arc_map[toward_root_arc] = ~i
        arc_map[tree.dagger(toward_root_arc)] = i
        return i

    new_edge(root)
    queue = []
    rd = tree.dagger(root)
    if rd in tree.target:
        queue.append((tree.target[rd], rd))
    while queue:
        v, in_arc = queue.pop(0)
        vert_map[v] = len(vert_map)
        kids = sorted(
            tree.nb(v) - {in_arc},
            key=lambda c: (
                _subtree_code_beyond(tree, c),
                repr(c),
            ),
        )
        for c in kids:
            new_edge(c)
            cd = tree.dagger(c)
            if cd in tree.target:
                queue.append((tree.target[cd], cd))
    arcs = [arc_map[a] for a in tree.arcs]
    dagger = {arc_map[a]: arc_map[tree.dagger(a)] for a in tree.arcs}
    target = {arc_map[a]: vert_map[v] for a, v in tree.target.items()}
    return Tree(arcs, dagger, target, vert_map.values())


def _subtree_code_beyond(tree, c):
    # Code of the branch hanging outward beyond arc c (c points at a vertex).
    cd = tree.dagger(c)
    if cd not in tree.target:
        return _END
    v = tree.target[cd]
    kids = sorted(_subtree_code_beyond(tree, k) for k in tree.nb(v) if k != cd)
    return ("v", tuple(kids))


def enumerate_trees(max_vertices, max_valence):
    """One canonical representative per isomorphism class within bounds.

    Ordered by (vertex count, canonical code).
    """
    if max_vertices < 0:
        raise ValueError("max_vertices must be >= 0")
    if max_valence < 1:
        raise ValueError("max_valence must be >= 1")
    levels = [[make_edge()]]
    for n in range(1, max_vertices + 1):
        seen = {}
        for t in levels[n - 1]:
            for b in sorted(t.boundary, key=repr):
                for k in range(1, max_valence + 1):
                    grown = _graft_star_on(t, b, k)
                    if not grown.boundary:
                        continue
                    code = canonical_form(grown)
                    if code not in seen:
                        seen[code] = relabel(grown)
        levels.append([seen[c] for c in sorted(seen)])
    return [t for lvl in levels for t in lvl]


def _graft_star_on(tree, b, k):
    # Attach a new k-valent vertex at the loose end of boundary arc b.
    arcs = set(tree.arcs)
    dagger = dict(tree._dagger)
    target = dict(tree.target)
    v = ("new", len(tree.vertices))
    verts = set(tree.vertices) | {v}
    target[b] = v
    nxt = 0
    for _ in range(k - 1):
        while nxt in arcs or ~nxt in arcs:
            nxt += 1
        a = nxt
        arcs |= {a, ~a}
        dagger[a] = ~a
        dagger[~a] = a
        target[a] = v
    return Tree(arcs, dagger, target, verts)


# ---------------------------------------------------------------------------
# Rooted trees and orientations


class RootedTree:
    """A tree with a chosen boundary arc as root."""

    __slots__ = ("tree", "root", "_hash")

    def __init__(self, tree, root):
        if root not in tree.boundary:
            raise ValueError("root must be a boundary arc")
        self.tree = tree
        self.root = root
        self._hash = hash((tree, root))

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.tree == other.tree and self.root == other.root

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "RootedTree(%r, root=%r)" % (self.tree, self.root)


def rootward(tree, root):
    """For each arc, whether it points toward the root loose end.

    The root arc itself points toward the root; each edge has exactly one
    rootward arc.
    """
    rw = {root: True, tree.dagger(root): False}
    stack = []
    rd = tree.dagger(root)
    if rd in tree.target:
        stack.append(rd)
    while stack:
        x = stack.pop()
        v = tree.target[x]
        for c in tree.nb(v):
            if c == x:
                continue
            rw[c] = True
            cd = tree.dagger(c)
            rw[cd] = False
            if cd in tree.target:
                stack.append(cd)
    return rw


def subtree_root(sub, rw):
    """The boundary arc of a subtree nearest the host root (rootward table rw)."""
    cands = [a for a in sub.boundary if rw[a]]
    assert len(cands) == 1
    return cands[0]


def out_edge(rooted):
    return rooted.tree.edge_of(rooted.root)


def in_edges(rooted):
    t = rooted.tree
    return frozenset(t.edge_of(a) for a in t.boundary if a != rooted.root)


def vertex_io(tree, root, v):
    """(input edge list, output edge) of a vertex in a rooted tree."""
    rw = rootward(tree, root)
    star = star_subtree(tree, v)
    r = subtree_root(star, rw)
    ins = frozenset(tree.edge_of(a) for a in star.boundary if a != r)
    return ins, tree.edge_of(r)


# ---------------------------------------------------------------------------
# Planar structures


def cyclic_normalize(order):
    """Normalize a cyclic tuple to its minimal rotation (by repr)."""
    order = tuple(order)
    if not order:
        return order
    rots = [order[i:] + order[:i] for i in range(len(order))]
    return min(rots, key=lambda t: [repr(x) for x in t])


class PlanarStructure:
    """A cyclic order on nb(v) for each vertex v."""

    __slots__ = ("tree", "orders")

    def __init__(self, tree, orders):
        self.tree = tree
        norm = {}
        for v in tree.vertices:
            if v not in orders:
                raise ValueError("missing cyclic order at vertex %r" % (v,))
            o = tuple(orders[v])
            if set(o) != set(tree.nb(v)) or len(o) != len(tree.nb(v)):
                raise ValueError("order at %r is not a cyclic order on nb(v)" % (v,))
            norm[v] = cyclic_normalize(o)
        self.orders = norm

    def __eq__(self, other):
        if not isinstance(other, PlanarStructure):
            return NotImplemented
        return self.tree == other.tree and self.orders == other.orders

    def __hash__(self):
        return hash((self.tree, frozenset(self.orders.items())))


def planar_structures(tree):
    """All planar structures on a tree, in a deterministic order."""
    from itertools import permutations

    per_vertex = []
    verts = sorted(tree.vertices, key=repr)
    for v in verts:
        nbv = sorted(tree.nb(v), key=repr)
        if not nbv:
            per_vertex.append([()])
            continue
        head, rest = nbv[0], nbv[1:]
        per_vertex.append([(head,) + p for p in permutations(rest)])
    out = []

    def rec(i, acc):
        if i == len(verts):
            out.append(PlanarStructure(tree, dict(zip(verts, acc))))
            return
        for o in per_vertex[i]:
            rec(i + 1, acc + [o])

    rec(0, [])
    return out
