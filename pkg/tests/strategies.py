"""Hypothesis strategies for small connected multigraphs and orientations."""

from hypothesis import strategies as st

from cographic.graph import Graph, Orientation, OrientedEdge


@st.composite
def connected_graphs(draw, max_vertices=5, max_extra_edges=4, allow_loops=True):
    nv = draw(st.integers(1, max_vertices))
    vs = [f"v{i}" for i in range(nv)]
    edges = []
    # random spanning tree first, then extra edges
    for i in range(1, nv):
        j = draw(st.integers(0, i - 1))
        a, b = (vs[i], vs[j]) if draw(st.booleans()) else (vs[j], vs[i])
        edges.append((a, b))
    extra = draw(st.integers(0, max_extra_edges))
    for _ in range(extra):
        a = draw(st.sampled_from(vs))
        b = draw(st.sampled_from(vs))
        if a == b and not allow_loops:
            continue
        edges.append((a, b))
    order = draw(st.permutations(list(range(len(edges))))) if edges else []
    return Graph(vs, [(f"e{k}", *edges[i]) for k, i in enumerate(order)])


@st.composite
def graphs_with_orientation(draw, **kw):
    g = draw(connected_graphs(**kw))
    flags = draw(st.lists(st.booleans(), min_size=g.num_edges, max_size=g.num_edges))
    return g, Orientation([OrientedEdge(e.id, f) for e, f in zip(g.edges, flags)])
