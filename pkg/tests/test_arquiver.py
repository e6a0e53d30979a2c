import pytest

from arfold.rootsys import root_system
from arfold.words import commutation_class
from arfold.arquiver import (
    DynkinQuiver,
    adapted_quiver_of,
    adapted_word,
    all_quivers,
    convex_order,
    covers,
    coxeter_element_of,
    gamma_q,
    hasse_quiver,
    read_reduced_words,
    roots_of_reading,
)

A4 = root_system("A", 4)
EXAMPLE_Q = DynkinQuiver(A4, frozenset({(2, 1), (2, 3), (3, 4)}))
A4_WORD = (4, 1, 3, 2, 4, 1, 3, 2, 4, 3)


def interval(rs, a, b):
    return tuple(1 if a <= i + 1 <= b else 0 for i in range(rs.rank))


def test_all_quivers_count():
    assert len(all_quivers(A4)) == 8
    assert len(all_quivers(root_system("A", 5))) == 16
    assert len(all_quivers(root_system("D", 4))) == 8


def test_quiver_validation():
    with pytest.raises(ValueError):
        DynkinQuiver(A4, frozenset({(1, 2), (2, 3)}))  # missing an edge


def test_coxeter_element_sink_convention():
    rs2 = root_system("A", 2)
    q = DynkinQuiver(rs2, frozenset({(1, 2)}))  # 1 -> 2, sink 2
    assert coxeter_element_of(q) == (2, 1)
    assert coxeter_element_of(q.reflect(2)) == (1, 2)


def test_coxeter_element_example_quiver():
    from arfold.arquiver import is_adapted

    word = coxeter_element_of(EXAMPLE_Q)
    assert sorted(word) == [1, 2, 3, 4]
    assert is_adapted(word, EXAMPLE_Q)


def test_adapted_quiver_of():
    assert adapted_quiver_of(A4, A4_WORD) == EXAMPLE_Q
    # in A_2 both classes are adapted; (1,2,1) goes with the quiver 2 -> 1
    rs2 = root_system("A", 2)
    q2 = adapted_quiver_of(rs2, (1, 2, 1))
    assert q2 is not None and q2.orientation == frozenset({(2, 1)})
    # a twisted adapted class of A_3 is adapted to no quiver
    rs3 = root_system("A", 3)
    assert adapted_quiver_of(rs3, (1, 2, 3, 2, 1, 2)) is None
    # one commutation move leaves the quiver unchanged
    w2 = (4, 1, 3, 2, 4, 3, 1, 2, 4, 3)
    assert adapted_quiver_of(A4, w2) == EXAMPLE_Q


def test_adapted_class_count_a3():
    from arfold.words import adapted_point, twisted_adapted_point

    adapted = adapted_point("A", 3)
    twisted = twisted_adapted_point("A", 3)
    assert len(adapted) == 4 and len(twisted) == 4
    assert not (adapted & twisted)
    for cls in adapted:
        assert adapted_quiver_of(root_system("A", 3), cls.canonical_word)
    for cls in twisted:
        assert adapted_quiver_of(root_system("A", 3), cls.canonical_word) is None


def test_gamma_q_printed_coordinates():
    g = gamma_q(EXAMPLE_Q)
    got = {A4.positive_roots[r]: (i, p2) for r, i, p2 in g.coords}
    expected = {
        interval(A4, 1, 1): (1, 0),
        interval(A4, 2, 4): (1, -4),
        interval(A4, 1, 4): (2, -2),
        interval(A4, 2, 3): (2, -6),
        interval(A4, 3, 4): (3, 0),
        interval(A4, 1, 3): (3, -4),
        interval(A4, 2, 2): (3, -8),
        interval(A4, 3, 3): (4, -2),
        interval(A4, 1, 2): (4, -6),
        interval(A4, 4, 4): (4, 2),
    }
    assert got == expected  # positions doubled: (i, p) printed as (i, p2/2)


def test_gamma_q_shift_equivariance():
    g0 = gamma_q(EXAMPLE_Q)
    g5 = gamma_q(EXAMPLE_Q, shift=5)
    assert g5.arrows == g0.arrows
    c0, c5 = g0.coord_of(), g5.coord_of()
    assert all(c5[r] == (c0[r][0], c0[r][1] + 10) for r in c0)


def test_gamma_q_a2_mirror():
    rs2 = root_system("A", 2)
    q = DynkinQuiver(rs2, frozenset({(1, 2)}))
    qop = q.reflect(2)
    g, gop = gamma_q(q), gamma_q(qop)
    assert len(g.coords) == len(gop.coords) == 3

    def normalized(cells):
        lo = min(p for _, p in cells)
        return {(i, p - lo) for i, p in cells}

    mirrored = normalized({(3 - i, -p2) for _, i, p2 in g.coords})
    assert normalized({(i, p2) for _, i, p2 in gop.coords}) == mirrored


def test_read_reduced_words_contains_printed_word():
    g = gamma_q(EXAMPLE_Q)
    words = read_reduced_words(g)
    assert A4_WORD in words


def test_read_reduced_words_equals_commutation_class():
    for rs in (A4, root_system("A", 5)):
        for q in all_quivers(rs):
            g = gamma_q(q)
            words = set(read_reduced_words(g))
            cls = commutation_class(rs, adapted_word(q))
            assert words == set(cls.members())


def test_read_single_vertex():
    rs1 = root_system("A", 1)
    q = DynkinQuiver(rs1, frozenset())
    assert read_reduced_words(gamma_q(q)) == [(1,)]


def test_reading_roots_match_quiver_translation():
    g = gamma_q(EXAMPLE_Q)
    lab = roots_of_reading(g, A4)
    assert all(A4.positive_roots[r] == beta for r, beta in lab.items())


def test_convex_order_is_path_order_on_gamma_q():
    for q in all_quivers(A4):
        g = gamma_q(q)
        cls = commutation_class(A4, adapted_word(q))
        below = convex_order(cls)
        # reachability along arrows (from b to a means a < b)
        reach = {r: set() for r, _, _ in g.coords}
        adj = {r: [] for r, _, _ in g.coords}
        for a, b in g.arrows:
            adj[a].append(b)
        def dfs(start):
            stack, seen = [start], set()
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            return seen
        for r in adj:
            reach[r] = dfs(r)
        for a in adj:
            for b in adj:
                assert (a in reach[b]) == bool(below[b] >> a & 1)


def test_convexity_of_class_order():
    rs = root_system("A", 3)
    from arfold.words import cluster_point
    point = cluster_point(commutation_class(rs, (1, 2, 1, 3, 2, 1)))
    for cls in point:
        below = convex_order(cls)
        for av in rs.positive_roots:
            for bv in rs.positive_roots:
                if av >= bv:
                    continue
                gv = tuple(x + y for x, y in zip(av, bv))
                if gv not in rs.root_index:
                    continue
                a, b, g = (rs.root_index[v] for v in (av, bv, gv))
                between = (
                    below[g] >> a & 1 and below[b] >> g & 1
                ) or (
                    below[g] >> b & 1 and below[a] >> g & 1
                )
                assert between


def _all_classes(rs):
    """Every commutation class of w_0, by DFS over reduced words."""
    from arfold.words import commutation_class

    classes = {}

    def rec(prefix):
        if len(prefix) == rs.num_positive:
            c = commutation_class(rs, tuple(prefix))
            classes[c.canonical_word] = c
            return
        for i in rs.nodes:
            b = rs.apply_word(prefix, rs.simple_root(i))
            if rs.is_positive(b):
                prefix.append(i)
                rec(prefix)
                prefix.pop()

    rec([])
    return list(classes.values())


def test_convexity_every_class_a4():
    rs = root_system("A", 4)
    classes = _all_classes(rs)
    assert len(classes) == 62  # all commutation classes of w_0(A_4)
    triples = []
    for av in rs.positive_roots:
        for bv in rs.positive_roots:
            if av < bv:
                gv = tuple(x + y for x, y in zip(av, bv))
                if gv in rs.root_index:
                    triples.append((rs.root_index[av], rs.root_index[bv],
                                    rs.root_index[gv]))
    for cls in classes:
        below = convex_order(cls)
        for a, b, g in triples:
            assert (
                below[g] >> a & 1 and below[b] >> g & 1
            ) or (
                below[g] >> b & 1 and below[a] >> g & 1
            )


def test_reflexivity_never_strict():
    cls = commutation_class(A4, A4_WORD)
    below = convex_order(cls)
    assert all(not (below[r] >> r & 1) for r in below)


def test_hasse_quiver_agrees_with_gamma_q():
    g = gamma_q(EXAMPLE_Q)
    cls = commutation_class(A4, A4_WORD)
    h = hasse_quiver(cls, g)  # raises if arrows differ from covers
    assert h.arrows == g.arrows
    assert h.coords == g.coords


def test_hasse_quiver_single_vertex():
    rs1 = root_system("A", 1)
    cls = commutation_class(rs1, (1,))
    h = hasse_quiver(cls)
    assert len(h.coords) == 1 and not h.arrows


def test_covers_are_transitive_reduction():
    cls = commutation_class(A4, A4_WORD)
    below = convex_order(cls)
    cov = covers(cls)
    for a, b in cov:
        assert below[b] >> a & 1
        for c in below:
            assert not (below[b] >> c & 1 and below[c] >> a & 1)
