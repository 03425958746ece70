"""Independent reference computations used to check the library.

Deliberately naive: edge flows by summing path flows edge by edge, paths as
explicit vertex walks.  Nothing here imports from ``cycleflow``'s algorithms.
"""

from fractions import Fraction

from hypothesis import strategies as st


def walk_edges(n, s, t):
    """Edges visited walking from s to t by increasing labels."""
    edges = []
    v = s
    while v != t:
        edges.append(v)
        v = (v + 1) % n
    return edges


def naive_edge_flows(n, triples, x):
    """triples = [(s, t, r)], x = clockwise amounts."""
    load = [Fraction(0)] * n
    for (s, t, r), xi in zip(triples, x):
        cw = walk_edges(n, s, t)
        ccw = walk_edges(n, t, s)
        for e in cw:
            load[e] += Fraction(xi)
        for e in ccw:
            load[e] += Fraction(r) - Fraction(xi)
    return load


def naive_witnesses(n, triples, x, xp):
    """Set of (i, frozenset(edges)) for every dominating positive-flow path."""
    lf = naive_edge_flows(n, triples, x)
    lfp = naive_edge_flows(n, triples, xp)
    found = set()
    for i, ((s, t, r), xi) in enumerate(zip(triples, x)):
        for edges, amount in ((walk_edges(n, s, t), xi), (walk_edges(n, t, s), r - xi)):
            if amount > 0 and all(lf[e] >= lfp[e] for e in edges):
                found.add((i, frozenset(edges)))
    return found


def interleaved(n, a, b, c, d):
    """Do chords {a, b} and {c, d} (four distinct vertices) cross?"""
    inside_c = c in walk_vertices_strict(n, a, b)
    inside_d = d in walk_vertices_strict(n, a, b)
    return inside_c != inside_d


def walk_vertices_strict(n, s, t):
    out = []
    v = (s + 1) % n
    while v != t:
        out.append(v)
        v = (v + 1) % n
    return out


# -- hypothesis strategies ------------------------------------------------------

small_rationals = st.builds(Fraction, st.integers(1, 24), st.integers(1, 8))


@st.composite
def instance_triples(draw, k=None, max_n=12):
    n = draw(st.integers(3, max_n))
    k = draw(st.integers(1, 3)) if k is None else k
    triples = []
    for _ in range(k):
        s = draw(st.integers(0, n - 1))
        t = draw(st.integers(0, n - 1).filter(lambda v: v != s))
        triples.append((s, t, draw(small_rationals)))
    return n, triples


@st.composite
def flow_for(draw, triples):
    xs = []
    for _, _, r in triples:
        j = draw(st.integers(0, 8))
        xs.append(Fraction(r) * Fraction(j, 8))
    return xs
