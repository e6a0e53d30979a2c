"""Dynkin quivers, height functions and AR quivers with coordinates.

Positions are stored as doubled integers so the half-integer columns of
the twisted quivers stay exact: a vertex drawn at position p in a figure
is stored with pos2 = 2p.  Arrows point from a root to the roots it
covers in the convex order, i.e. towards vertices that are read earlier.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .rootsys import Root, RootSystem
from .words import (
    CapExceededError,
    CommutationClass,
    DEFAULT_CAP,
    Word,
    root_sequence,
)


@dataclass(frozen=True)
class DynkinQuiver:
    """An orientation of the Dynkin diagram of ``rs``.

    ``orientation`` holds one (tail, head) pair per diagram edge.
    """

    rs: RootSystem
    orientation: frozenset[tuple[int, int]]

    def __post_init__(self):
        edges = {frozenset(e) for e in self.rs.edges}
        got = {frozenset(e) for e in self.orientation}
        if got != edges or len(self.orientation) != len(edges):
            raise ValueError("orientation does not match the diagram edges")

    def is_sink(self, i: int) -> bool:
        return all(h == i for t, h in self.orientation if i in (t, h))

    def is_source(self, i: int) -> bool:
        return all(t == i for t, h in self.orientation if i in (t, h))

    def sinks(self) -> list[int]:
        return [i for i in self.rs.nodes if self.is_sink(i)]

    def reflect(self, i: int) -> DynkinQuiver:
        """s_i Q: reverse every arrow incident to the sink or source i."""
        if not (self.is_sink(i) or self.is_source(i)):
            raise ValueError(f"{i} is neither a sink nor a source")
        flipped = frozenset(
            (h, t) if i in (t, h) else (t, h) for t, h in self.orientation
        )
        return DynkinQuiver(self.rs, flipped)

    def height_function(self) -> dict[int, int]:
        """xi with xi(j) = xi(i) + 1 for every arrow i -> j, xi(1) = 0."""
        xi = {1: 0}
        while len(xi) < self.rs.rank:
            progressed = False
            for t, h in self.orientation:
                if t in xi and h not in xi:
                    xi[h] = xi[t] + 1
                    progressed = True
                elif h in xi and t not in xi:
                    xi[t] = xi[h] - 1
                    progressed = True
            if not progressed:
                raise AssertionError("diagram is not connected")
        return xi


def all_quivers(rs: RootSystem) -> list[DynkinQuiver]:
    """Every orientation of the diagram, in a deterministic order."""
    out = []
    for heads in product((0, 1), repeat=len(rs.edges)):
        orient = frozenset(
            (a, b) if h else (b, a) for (a, b), h in zip(rs.edges, heads)
        )
        out.append(DynkinQuiver(rs, orient))
    return out


def coxeter_element_of(q: DynkinQuiver) -> Word:
    """The unique Coxeter word adapted to Q, by peeling sinks."""
    word = []
    cur = q
    remaining = set(q.rs.nodes)
    while remaining:
        i = min(j for j in remaining if cur.is_sink(j))
        word.append(i)
        cur = cur.reflect(i)
        remaining.discard(i)
    return tuple(word)


@dataclass(frozen=True)
class ARQuiver:
    """A quiver on the positive roots with (residue, position) coordinates."""

    rs: RootSystem
    coords: tuple[tuple[int, int, int], ...]  # (root_idx, residue, pos2)
    arrows: frozenset[tuple[int, int]]  # (from_root_idx, to_root_idx)

    def coord_of(self) -> dict[int, tuple[int, int]]:
        return {r: (i, p2) for r, i, p2 in self.coords}

    def by_coord(self) -> dict[tuple[int, int], int]:
        out = {(i, p2): r for r, i, p2 in self.coords}
        if len(out) != len(self.coords):
            raise AssertionError("coordinate map is not injective")
        return out

    def residues(self) -> dict[int, int]:
        return {r: i for r, i, _ in self.coords}


def adapted_word(q: DynkinQuiver) -> Word:
    """Some reduced word of w_0 adapted to Q (a reading of Gamma_Q)."""
    g = gamma_q(q)
    return read_one(g)


def is_adapted(word: Word, q: DynkinQuiver) -> bool:
    """Sink simulation: every letter must be a sink when it is applied."""
    cur = q
    for i in word:
        if not cur.is_sink(i):
            return False
        cur = cur.reflect(i)
    return True


def adapted_quiver_of(rs: RootSystem, word: Word) -> DynkinQuiver | None:
    """The unique quiver the word is adapted to, if any.

    Orientation guess: the edge {i, j} points i -> j when j first occurs
    before i; the guess is then validated by sink simulation.
    """
    first = {}
    for k, i in enumerate(word):
        first.setdefault(i, k)
    if set(first) != set(rs.nodes):
        return None
    orient = frozenset(
        (a, b) if first[b] < first[a] else (b, a) for a, b in rs.edges
    )
    q = DynkinQuiver(rs, orient)
    return q if is_adapted(word, q) else None


@lru_cache(maxsize=None)
def _gamma_q_cached(q: DynkinQuiver) -> ARQuiver:
    rs = q.rs
    xi = q.height_function()
    phi = coxeter_element_of(q)
    phi_roots = root_sequence(rs, phi)
    coords: dict[int, tuple[int, int]] = {}
    for i, beta in zip(phi, phi_roots):
        coords[rs.root_index[beta]] = (i, 2 * xi[i])
    frontier = list(phi_roots)
    while frontier:
        new = []
        for beta in frontier:
            img = rs.apply_word(phi, beta)
            if rs.is_positive(img):
                r = rs.root_index[img]
                if r in coords:
                    raise AssertionError("phi_Q translation revisited a root")
                i, p2 = coords[rs.root_index[beta]]
                coords[r] = (i, p2 - 4)
                new.append(img)
        frontier = new
    if len(coords) != rs.num_positive:
        raise AssertionError("Gamma_Q did not reach every positive root")
    by_coord = {v: r for r, v in coords.items()}
    arrows = set()
    for (i, p2), r in by_coord.items():
        for j in rs.adjacent[i]:
            s = by_coord.get((j, p2 + 2))
            if s is not None:
                arrows.add((r, s))  # rightward arrow; s is read earlier
    coord_rows = tuple(
        sorted((r, i, p2) for r, (i, p2) in coords.items())
    )
    return ARQuiver(rs, coord_rows, frozenset(arrows))


def gamma_q(q: DynkinQuiver, shift: int = 0) -> ARQuiver:
    """The AR quiver of Q: coordinates by the Coxeter translation rule.

    ``shift`` adds a constant to the height function (positions move by
    2 * shift in doubled units); the default pins xi(1) = 0.
    """
    g = _gamma_q_cached(q)
    if not shift:
        return g
    return ARQuiver(
        g.rs,
        tuple((r, i, p2 + 2 * shift) for r, i, p2 in g.coords),
        g.arrows,
    )


def reading_vertices(quiver: ARQuiver) -> list[int]:
    """Vertices in one reading order: a vertex follows its arrow targets."""
    residues = quiver.residues()
    out_deg = {r: 0 for r in residues}
    preds: dict[int, list[int]] = {r: [] for r in residues}
    for a, b in quiver.arrows:
        out_deg[a] += 1
        preds[b].append(a)
    order = []
    avail = sorted(r for r, d in out_deg.items() if d == 0)
    while avail:
        r = avail.pop(0)
        order.append(r)
        for p in preds[r]:
            out_deg[p] -= 1
            if out_deg[p] == 0:
                avail.append(p)
        avail.sort()
    if len(order) != len(residues):
        raise AssertionError("quiver has a cycle")
    return order


def read_one(quiver: ARQuiver) -> Word:
    """One reading of the quiver compatible with arrows (greedy smallest)."""
    residues = quiver.residues()
    return tuple(residues[r] for r in reading_vertices(quiver))


def read_reduced_words(quiver: ARQuiver, cap: int = DEFAULT_CAP) -> list[Word]:
    """All readings of the quiver; equals the commutation class it realizes."""
    residues = quiver.residues()
    verts = sorted(residues)
    pos = {r: k for k, r in enumerate(verts)}
    after: dict[int, int] = {r: 0 for r in verts}  # vertices that must wait
    for a, b in quiver.arrows:
        after[a] |= 1 << pos[b]  # a can be read only after b
    out: list[Word] = []
    word: list[int] = []

    def rec(remaining: list[int], done: int):
        if not remaining:
            out.append(tuple(word))
            if len(out) > cap:
                raise CapExceededError(f"reading enumeration exceeds cap {cap}")
            return
        for k, r in enumerate(remaining):
            if after[r] & ~done:
                continue
            word.append(residues[r])
            rec(remaining[:k] + remaining[k + 1:], done | (1 << pos[r]))
            word.pop()

    rec(verts, 0)
    return out


def roots_of_reading(quiver: ARQuiver, rs: RootSystem) -> dict[int, Root]:
    """Vertex -> root, computed from one reading of the quiver."""
    order = reading_vertices(quiver)
    word = tuple(quiver.residues()[r] for r in order)
    return dict(zip(order, root_sequence(rs, word)))


def convex_order(cls: CommutationClass) -> dict[int, int]:
    """Strict-order bitmasks of the class partial order on root indices."""
    return cls.below()


def covers(cls: CommutationClass) -> set[tuple[int, int]]:
    """Cover relations (a, b): a before b with nothing strictly between."""
    below = cls.below()
    above = {r: 0 for r in below}
    for b, mask in below.items():
        m = mask
        while m:
            low = m & -m
            above[low.bit_length() - 1] |= 1 << b
            m ^= low
    out = set()
    for b, mask in below.items():
        m = mask
        while m:
            low = m & -m
            a = low.bit_length() - 1
            m ^= low
            if not (below[b] & above[a]):
                out.add((a, b))
    return out


def hasse_quiver(cls: CommutationClass, quiver: ARQuiver | None = None) -> ARQuiver:
    """The cover-relation digraph of the convex order, with coordinates.

    When a constructed quiver is supplied its coordinates are attached
    (and must realize the same arrow set); otherwise positions come from
    longest-path layering, which reproduces no particular figure but
    keeps rendering deterministic.
    """
    rel = covers(cls)
    arrows = frozenset((b, a) for a, b in rel)  # point towards earlier roots
    if quiver is not None:
        if arrows != quiver.arrows:
            raise AssertionError(
                "constructed quiver disagrees with the cover relations"
            )
        return ARQuiver(cls.rs, quiver.coords, arrows)
    below = cls.below()
    depth = {}
    for r in sorted(below, key=lambda r: bin(below[r]).count("1")):
        ups = [depth[a] for a in below if below[r] >> a & 1 and a in depth]
        depth[r] = 1 + max(ups, default=-1)
    top = max(depth.values(), default=0)
    coords = tuple(
        sorted((r, cls.letter_of(r), 2 * (top - depth[r])) for r in below)
    )
    return ARQuiver(cls.rs, coords, arrows)
