"""Finite root systems of type A/D/E with exact integer arithmetic.

Roots are coefficient vectors over the simple roots, stored as tuples of
ints.  Nodes are labelled 1..rank following the usual conventions:
type A is the path 1-2-...-n; type D_m is the path 1-...-(m-2) with both
m-1 and m attached to m-2; type E6 is the path 1-2-3-4-5 with 6 attached
to 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

Root = tuple[int, ...]


class UnsupportedTypeError(ValueError):
    pass


def _edges(type_tag: str, rank: int) -> list[tuple[int, int]]:
    if type_tag == "A":
        if rank < 1:
            raise UnsupportedTypeError(f"A_{rank} is not supported (need rank >= 1)")
        return [(i, i + 1) for i in range(1, rank)]
    if type_tag == "D":
        if rank < 4:
            raise UnsupportedTypeError(f"D_{rank} is not supported (need rank >= 4)")
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    if type_tag == "E":
        if rank != 6:
            raise UnsupportedTypeError(f"E_{rank} is not supported (only E_6)")
        return [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)]
    raise UnsupportedTypeError(f"unknown type {type_tag!r}")


@dataclass(frozen=True)
class DiagramAutomorphism:
    """A diagram automorphism together with its orbit labelling.

    ``perm`` maps each node to its image, ``orbit_label`` maps each node
    to the label of its orbit in the folded diagram.
    """

    perm: dict[int, int]
    order: int
    orbit_label: dict[int, int]

    def orbit_labels(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.orbit_label.values())))

    def orbit(self, i: int) -> frozenset[int]:
        members, j = set(), i
        while j not in members:
            members.add(j)
            j = self.perm[j]
        return frozenset(members)


class RootSystem:
    """Positive roots, Cartan matrix and Weyl combinatorics for one type.

    Positive roots are enumerated once, ordered by (height, coefficients)
    so indices are stable across runs.  All state is immutable after
    construction.
    """

    def __init__(self, type_tag: str, rank: int):
        self.type_tag = type_tag
        self.rank = rank
        self.nodes = tuple(range(1, rank + 1))
        self.edges = tuple(_edges(type_tag, rank))
        adj: dict[int, set[int]] = {i: set() for i in self.nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        self.adjacent = {i: frozenset(adj[i]) for i in self.nodes}
        # Cartan matrix entries a[i][j], 1-based dict of dicts.
        self.cartan = {
            i: {j: 2 if i == j else (-1 if j in adj[i] else 0) for j in self.nodes}
            for i in self.nodes
        }
        self.positive_roots = self._generate_positive_roots()
        self.root_index = {r: k for k, r in enumerate(self.positive_roots)}
        self.num_positive = len(self.positive_roots)
        self.simple_root_index = {
            i: self.root_index[self.simple_root(i)] for i in self.nodes
        }
        self._longest_word: tuple[int, ...] | None = None
        self._star: dict[int, int] | None = None

    def __repr__(self) -> str:
        return f"RootSystem({self.type_tag}{self.rank})"

    def simple_root(self, i: int) -> Root:
        v = [0] * self.rank
        v[i - 1] = 1
        return tuple(v)

    def pairing(self, v: Root, i: int) -> int:
        """<v, h_i> for a vector v in the root lattice."""
        return sum(self.cartan[i][j + 1] * c for j, c in enumerate(v) if c)

    def reflect(self, v: Root, i: int) -> Root:
        c = self.pairing(v, i)
        if not c:
            return v
        w = list(v)
        w[i - 1] -= c
        return tuple(w)

    def apply_word(self, word: tuple[int, ...] | list[int], v: Root) -> Root:
        """Apply s_{i_1} ... s_{i_k} to v (rightmost letter acts first)."""
        for i in reversed(word):
            v = self.reflect(v, i)
        return v

    def is_positive(self, v: Root) -> bool:
        return all(c >= 0 for c in v) and any(c > 0 for c in v)

    def _generate_positive_roots(self) -> tuple[Root, ...]:
        found = {self.simple_root(i) for i in self.nodes}
        frontier = set(found)
        while frontier:
            new = set()
            for r in frontier:
                for i in self.nodes:
                    s = self.reflect(r, i)
                    if self.is_positive(s) and s not in found:
                        new.add(s)
            found |= new
            frontier = new
        roots = sorted(found, key=lambda r: (sum(r), r))
        expected = {
            "A": rank_count_a,
            "D": rank_count_d,
            "E": lambda n: 36,
        }[self.type_tag](self.rank)
        if len(roots) != expected:
            raise AssertionError(
                f"generated {len(roots)} positive roots, expected {expected}"
            )
        return tuple(roots)

    def height(self, v: Root) -> int:
        return sum(v)

    # -- longest element -------------------------------------------------

    def longest_word(self) -> tuple[int, ...]:
        """Some reduced word for the longest element, deterministic."""
        if self._longest_word is None:
            # images of the simple roots under the product built so far
            images = [self.simple_root(i) for i in self.nodes]
            word: list[int] = []
            while True:
                for i in self.nodes:
                    if self.is_positive(images[i - 1]):
                        break
                else:
                    break
                word.append(i)
                # right-multiply by s_i: new images w*s_i(alpha_j)
                si_alpha = [self.reflect(self.simple_root(j), i) for j in self.nodes]
                images = [
                    tuple(
                        sum(images[k][m] * c for k, c in enumerate(v) if c)
                        for m in range(self.rank)
                    )
                    for v in si_alpha
                ]
            if len(word) != self.num_positive:
                raise AssertionError("longest-element search terminated early")
            self._longest_word = tuple(word)
        return self._longest_word

    def star(self) -> dict[int, int]:
        """The involution i -> i* with w_0(alpha_i) = -alpha_{i*}."""
        if self._star is None:
            w0 = self.longest_word()
            star = {}
            for i in self.nodes:
                img = self.apply_word(w0, self.simple_root(i))
                neg = tuple(-c for c in img)
                if neg not in self.root_index or sum(neg) != 1:
                    raise AssertionError("w_0 image of a simple root is not -simple")
                star[i] = neg.index(1) + 1
            self._star = star
        return self._star

    def diagram_automorphism(self, triality: bool = False) -> DiagramAutomorphism:
        """The folding automorphism printed for this type.

        A_{2n-1} -> B_n, D_{n+1} -> C_n, E_6 -> F_4 and, with
        ``triality``, D_4 -> G_2.
        """
        if triality:
            if (self.type_tag, self.rank) != ("D", 4):
                raise UnsupportedTypeError("triality only exists for D_4")
            perm = {1: 3, 3: 4, 4: 1, 2: 2}
            labels = {1: 1, 3: 1, 4: 1, 2: 2}
            return DiagramAutomorphism(perm, 3, labels)
        if self.type_tag == "A":
            if self.rank % 2 == 0 or self.rank < 3:
                raise UnsupportedTypeError(
                    f"A_{self.rank} has no printed folding (need odd rank >= 3)"
                )
            m = self.rank + 1  # = 2n
            perm = {i: m - i for i in self.nodes}
            labels = {i: min(i, m - i) for i in self.nodes}
            return DiagramAutomorphism(perm, 2, labels)
        if self.type_tag == "D":
            n = self.rank - 1
            perm = {i: i for i in self.nodes}
            perm[n], perm[n + 1] = n + 1, n
            labels = {i: min(i, n) for i in self.nodes}
            return DiagramAutomorphism(perm, 2, labels)
        # E_6 -> F_4, orbit labels as in the folded table: {1,5}->1,
        # {2,4}->2, {3}->3, {6}->4.
        perm = {1: 5, 5: 1, 2: 4, 4: 2, 3: 3, 6: 6}
        labels = {1: 1, 5: 1, 2: 2, 4: 2, 3: 3, 6: 4}
        return DiagramAutomorphism(perm, 2, labels)

    def roots_summing_to(self, v: Root) -> Iterator[tuple[Root, Root]]:
        """All unordered pairs (a, b) of positive roots with a + b = v."""
        seen = set()
        for a in self.positive_roots:
            b = tuple(x - y for x, y in zip(v, a))
            if b in self.root_index and a != b and (b, a) not in seen:
                seen.add((a, b))
                yield a, b


def rank_count_a(n: int) -> int:
    return n * (n + 1) // 2


def rank_count_d(n: int) -> int:
    return n * (n - 1)


def trivial_automorphism(rs: RootSystem) -> DiagramAutomorphism:
    ident = {i: i for i in rs.nodes}
    return DiagramAutomorphism(ident, 1, dict(ident))


@lru_cache(maxsize=None)
def root_system(type_tag: str, rank: int) -> RootSystem:
    """Shared, memoized root-system instances."""
    return RootSystem(type_tag, rank)
