import pytest

from arfold.rootsys import root_system, trivial_automorphism
from arfold.words import (
    CapExceededError,
    NotReducedError,
    adapted_point,
    cluster_point,
    commutation_class,
    coxeter_composition,
    is_foldable,
    reflect,
    root_sequence,
    twisted_adapted_point,
    twisted_coxeter_elements,
)

A4_EXAMPLE_WORD = (4, 1, 3, 2, 4, 1, 3, 2, 4, 3)


def test_root_sequence_rank2():
    rs = root_system("A", 2)
    assert root_sequence(rs, (1, 2, 1)) == [(1, 0), (1, 1), (0, 1)]


def test_root_sequence_a4_example_word():
    rs = root_system("A", 4)
    roots = root_sequence(rs, A4_EXAMPLE_WORD)
    assert sorted(roots) == sorted(rs.positive_roots)


def test_root_sequence_rejects_non_reduced():
    rs = root_system("A", 2)
    with pytest.raises(NotReducedError):
        root_sequence(rs, (1, 1))
    with pytest.raises(NotReducedError):
        commutation_class(rs, (1, 2))  # wrong length for w_0


def test_commutation_class_singleton():
    rs = root_system("A", 2)
    cls = commutation_class(rs, (1, 2, 1))
    assert cls.members() == [(1, 2, 1)]
    assert cls.member_count() == 1


def test_commutation_class_closure_oracle():
    """members() must equal the swap-closure of the defining word."""
    rs = root_system("A", 3)
    word = (1, 3, 2, 1, 3, 2)
    cls = commutation_class(rs, word)

    def swap_closure(w):
        seen = {w}
        frontier = [w]
        while frontier:
            new = []
            for u in frontier:
                for k in range(len(u) - 1):
                    a, b = u[k], u[k + 1]
                    if rs.cartan[a][b] == 0:
                        v = u[:k] + (b, a) + u[k + 2:]
                        if v not in seen:
                            seen.add(v)
                            new.append(v)
            frontier = new
        return seen

    closure = swap_closure(word)
    assert set(cls.members()) == closure
    assert (3, 1, 2, 3, 1, 2) in closure
    assert cls.canonical_word == min(closure)
    assert cls.member_count() == len(closure)


def test_a4_example_class_is_adapted_class_of_quiver():
    from arfold.arquiver import DynkinQuiver, adapted_word

    rs = root_system("A", 4)
    q = DynkinQuiver(rs, frozenset({(2, 1), (2, 3), (3, 4)}))
    assert commutation_class(rs, A4_EXAMPLE_WORD) == commutation_class(
        rs, adapted_word(q)
    )


def test_members_cap():
    rs = root_system("A", 4)
    cls = commutation_class(rs, A4_EXAMPLE_WORD)
    with pytest.raises(CapExceededError):
        cls.members(cap=3)


def test_reflect_fixed_point():
    rs = root_system("A", 2)
    cls = commutation_class(rs, (1, 2, 1))
    # the class is the single word (1,2,1): no member starts or ends with 2
    assert reflect(cls, 2, "right") == cls
    assert reflect(cls, 2, "left") == cls
    # it does start and end with 1, so both actions at 1 move it
    assert reflect(cls, 1, "right") != cls
    assert reflect(cls, 1, "left") != cls


def test_reflect_adapted_moves_to_reflected_quiver():
    from arfold.arquiver import DynkinQuiver, adapted_quiver_of, adapted_word

    rs = root_system("A", 4)
    q = DynkinQuiver(rs, frozenset({(2, 1), (2, 3), (3, 4)}))
    cls = commutation_class(rs, adapted_word(q))
    for i in (1, 4):  # sinks of q
        out = reflect(cls, i, "right")
        assert out != cls
        q2 = adapted_quiver_of(rs, out.canonical_word)
        assert q2 == q.reflect(i)


def test_reflect_round_trip_stays_in_cluster_point():
    rs = root_system("A", 3)
    cls = commutation_class(rs, (1, 2, 3, 1, 2, 1))
    point = cluster_point(cls)
    star = rs.star()
    for i in rs.nodes:
        d = reflect(cls, i, "right")
        assert d in point
        back = reflect(d, star[i], "left")
        assert back in point


def test_reflect_acts_within_point_and_inverts():
    # On the classes it moves, the right action at i is injective and is
    # undone by the left action at i*; images always stay in the point.
    for tt, rk in [("A", 3), ("D", 4)]:
        rs = root_system(tt, rk)
        star = rs.star()
        point = twisted_adapted_point(tt, rk)
        for i in rs.nodes:
            movers = {c for c in point if reflect(c, i, "right") != c}
            images = {c: reflect(c, i, "right") for c in movers}
            assert set(images.values()) <= point
            assert len(set(images.values())) == len(movers)
            for c, d in images.items():
                assert reflect(d, star[i], "left") == c


def test_cluster_point_counts():
    assert len(adapted_point("A", 4)) == 8
    assert len(adapted_point("A", 5)) == 16
    assert len(twisted_adapted_point("A", 5)) == 16
    assert len(twisted_adapted_point("E", 6)) == 32


def test_twisted_point_size_formula():
    # 2^(|I| - |vee|) x |vee| with |vee| the order of the automorphism
    for tt, rk in [("A", 3), ("A", 5), ("D", 4), ("D", 5), ("E", 6)]:
        rs = root_system(tt, rk)
        aut = rs.diagram_automorphism()
        point = twisted_adapted_point(tt, rk)
        assert len(point) == 2 ** (rs.rank - aut.order) * aut.order


def test_coxeter_composition_printed_examples():
    rs5 = root_system("A", 5)
    aut5 = rs5.diagram_automorphism()
    w = (1, 2, 3, 5, 4, 3, 1, 2, 3, 5, 4, 3, 1, 2, 3)
    assert coxeter_composition(commutation_class(rs5, w), aut5) == (5, 5, 5)
    assert coxeter_composition(twisted_adapted_point("A", 3),
                               root_system("A", 3).diagram_automorphism()) == (3, 3)
    assert coxeter_composition(twisted_adapted_point("E", 6),
                               root_system("E", 6).diagram_automorphism()) \
        == (9, 9, 9, 9)
    assert coxeter_composition(twisted_adapted_point("D", 5),
                               root_system("D", 5).diagram_automorphism()) \
        == (5, 5, 5, 5)


def test_composition_constant_across_cluster_point():
    aut = root_system("A", 5).diagram_automorphism()
    # raises if any class of the point disagrees
    coxeter_composition(twisted_adapted_point("A", 5), aut)
    coxeter_composition(adapted_point("A", 5), aut)


def test_foldability():
    aut5 = root_system("A", 5).diagram_automorphism()
    assert is_foldable(twisted_adapted_point("A", 5), aut5)
    assert not is_foldable(adapted_point("A", 5), aut5)
    rs1 = root_system("A", 1)
    cls = commutation_class(rs1, (1,))
    assert is_foldable(cluster_point(cls), trivial_automorphism(rs1))


def test_twisted_coxeter_elements_a3():
    rs = root_system("A", 3)
    aut = rs.diagram_automorphism()
    words = twisted_coxeter_elements(rs, aut)
    assert {(1, 2), (2, 1), (3, 2), (2, 3)} <= set(words)
    assert len(words) == 4
    assert (1, 2) in words  # s_1 s_2 ... s_n is always one


def test_twisted_coxeter_elements_e6():
    rs = root_system("E", 6)
    words = twisted_coxeter_elements(rs, rs.diagram_automorphism())
    # one letter per orbit: length 4, always using the fixed nodes 3 and 6
    assert all(len(w) == 4 for w in words)
    assert all({3, 6} <= set(w) for w in words)
    assert (1, 2, 6, 3) in words  # the element generating the E6 base word


def test_twisted_adapted_point_counts_small():
    assert len(twisted_adapted_point("A", 3)) == 4
    assert len(twisted_adapted_point("D", 4)) == 8
    assert len(twisted_adapted_point("D", 5)) == 16
