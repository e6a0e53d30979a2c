"""Sequences of positive roots under the class-wise bi-lexicographic order.

A sequence is a multiplicity vector over the positive roots (indexed by
the root system's canonical root order, never by word position).  The
class order m < m' tests the bi-lexicographic condition under every
member word; because member words are exactly the linear extensions of
the convex order, this reduces to a condition on the extremal elements
of the difference support, which is what `class_less` implements.  The
definitional word-by-word test is kept as `bilex_less_word` and serves
as the oracle in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil

from .rootsys import Root, RootSystem
from .words import CommutationClass, Word
from .twistfold import FoldedQuiver

Sequence = tuple[int, ...]  # multiplicity per positive-root index
SequenceVector = Sequence


def sequence_from_roots(rs: RootSystem, roots) -> Sequence:
    m = [0] * rs.num_positive
    for r in roots:
        m[r if isinstance(r, int) else rs.root_index[r]] += 1
    return tuple(m)


def weight_of(rs: RootSystem, m: Sequence) -> Root:
    w = [0] * rs.rank
    for r, mult in enumerate(m):
        if mult:
            for j, c in enumerate(rs.positive_roots[r]):
                w[j] += mult * c
    return tuple(w)


def support(m: Sequence) -> list[int]:
    return [r for r, mult in enumerate(m) if mult]


def is_pair(m: Sequence) -> bool:
    return sum(m) == 2 and max(m) == 1


@lru_cache(maxsize=None)
def _sequences_of_weight(rs: RootSystem, w: Root) -> tuple[Sequence, ...]:
    return tuple(_partitions(rs, w, range(rs.num_positive)))


def sequences_of_weight(rs: RootSystem, w: Root, cap_height: int = 40):
    """All multiplicity vectors of positive roots with the given weight."""
    if sum(w) > cap_height:
        raise ValueError(
            f"weight height {sum(w)} exceeds the enumeration cap {cap_height}"
        )
    return _sequences_of_weight(rs, tuple(w))


def _partitions(rs: RootSystem, w: Root, allowed) -> list[Sequence]:
    """Multisets from ``allowed`` root indices summing to w."""
    allowed = sorted(allowed, key=lambda r: (-sum(rs.positive_roots[r]), r))
    n = rs.num_positive
    out: list[Sequence] = []
    cur = [0] * n

    def rec(k: int, rem: Root, rem_ht: int):
        if rem_ht == 0:
            out.append(tuple(cur))
            return
        if k == len(allowed):
            return
        r = allowed[k]
        beta = rs.positive_roots[r]
        ht = sum(beta)
        max_mult = rem_ht // ht
        for j, c in enumerate(beta):
            if c:
                max_mult = min(max_mult, rem[j] // c)
                if max_mult == 0:
                    break
        rec(k + 1, rem, rem_ht)
        acc = rem
        for mult in range(1, max_mult + 1):
            acc = tuple(a - b for a, b in zip(acc, beta))
            cur[r] = mult
            rec(k + 1, acc, rem_ht - mult * ht)
        cur[r] = 0

    rec(0, w, sum(w))
    return out


# ---------------------------------------------------------------------------
# orders


def position_vector(cls: CommutationClass, word: Word, m: Sequence) -> Sequence:
    """Multiplicities listed in the total order of one member word."""
    from .words import root_sequence

    rs = cls.rs
    return tuple(m[rs.root_index[b]] for b in root_sequence(rs, word))


def bilex_less_word(cls: CommutationClass, word: Word, m: Sequence, mp: Sequence) -> bool:
    """The bi-lexicographic order under one member word (definitional)."""
    a = position_vector(cls, word, m)
    b = position_vector(cls, word, mp)
    if a == b:
        return False
    diff = [k for k in range(len(a)) if a[k] != b[k]]
    return a[diff[0]] < b[diff[0]] and a[diff[-1]] < b[diff[-1]]


def bilex_less(cls: CommutationClass, word: Word, m: Sequence, mp: Sequence) -> bool:
    return bilex_less_word(cls, word, m, mp)


def class_less(cls: CommutationClass, m: Sequence, mp: Sequence) -> bool:
    """m < m' under every member word (weights must agree).

    Equivalent to: at every minimal and every maximal element of the
    difference support (w.r.t. the convex order), m is strictly smaller.
    """
    rs = cls.rs
    if weight_of(rs, m) != weight_of(rs, mp):
        return False
    diff = [r for r in range(rs.num_positive) if m[r] != mp[r]]
    if not diff:
        return False
    below = cls.below()
    diff_mask = 0
    for r in diff:
        diff_mask |= 1 << r
    for r in diff:
        is_min = not (below[r] & diff_mask)
        if is_min and m[r] >= mp[r]:
            return False
        is_max = all(not (below[s] >> r & 1) for s in diff if s != r)
        if is_max and m[r] >= mp[r]:
            return False
    return True


# ---------------------------------------------------------------------------
# pairs: everything below a pair lives on its open interval


def pair_below(cls: CommutationClass, a: int, b: int) -> list[Sequence]:
    """All sequences strictly below the pair {a, b} in the class order.

    These are exactly the multisets of roots lying strictly between a
    and b in the convex order whose weight is root_a + root_b.
    """
    rs = cls.rs
    if cls.precedes(b, a):
        a, b = b, a
    elif not cls.precedes(a, b):
        return []
    inner = cls.interval(a, b)
    if not inner:
        return []
    w = tuple(
        x + y for x, y in zip(rs.positive_roots[a], rs.positive_roots[b])
    )
    return _partitions(rs, w, inner)


def pair_is_simple(cls: CommutationClass, a: int, b: int) -> bool:
    return not pair_below(cls, a, b)


def is_simple(cls: CommutationClass, m: Sequence) -> bool:
    """Simplicity: a single-root multiple, or all supported pairs simple."""
    supp = support(m)
    if len(supp) <= 1:
        return True
    for x in range(len(supp)):
        for y in range(x + 1, len(supp)):
            if not pair_is_simple(cls, supp[x], supp[y]):
                return False
    return True


def _chain_depths(cls: CommutationClass, elems: list[Sequence]) -> dict[Sequence, int]:
    """Longest-chain length ending at each element of the given poset."""
    lt = {
        (x, y)
        for x in elems
        for y in elems
        if x != y and class_less(cls, x, y)
    }
    depth: dict[Sequence, int] = {}

    def rec(y: Sequence) -> int:
        if y in depth:
            return depth[y]
        best = 0
        for x in elems:
            if (x, y) in lt:
                best = max(best, rec(x) + 1)
        depth[y] = best
        return best

    for y in elems:
        rec(y)
    return depth


def dist(cls: CommutationClass, m: Sequence) -> int:
    """Length of the longest strict chain below m (ending at a simple)."""
    if is_pair(m):
        a, b = support(m)
        below = pair_below(cls, a, b)
        if not below:
            return 0
        depth = _chain_depths(cls, below)
        return 1 + max(depth.values())
    rs = cls.rs
    elems = [x for x in sequences_of_weight(rs, weight_of(rs, m)) if x != m]
    under = [x for x in elems if class_less(cls, x, m)]
    if not under:
        return 0
    depth = _chain_depths(cls, under)
    return 1 + max(depth[x] for x in under)


def socle(cls: CommutationClass, m: Sequence) -> Sequence | None:
    """The unique simple sequence weakly below a pair, when it exists."""
    if not is_pair(m):
        raise ValueError("socle is defined for pairs")
    a, b = support(m)
    if pair_is_simple(cls, a, b):
        return m
    simples = [x for x in pair_below(cls, a, b) if is_simple(cls, x)]
    if len(simples) == 1:
        return simples[0]
    return None


def minimal_sequences(cls: CommutationClass, s: Sequence) -> list[Sequence]:
    """The minimal elements strictly above a class-simple sequence."""
    rs = cls.rs
    if not is_simple(cls, s):
        raise ValueError("minimal sequences are defined over a simple sequence")
    above = [
        m
        for m in sequences_of_weight(rs, weight_of(rs, s))
        if m != s and class_less(cls, s, m)
    ]
    return [
        m
        for m in above
        if not any(mp != m and class_less(cls, mp, m) for mp in above)
    ]


def minimal_pairs_of_root(cls: CommutationClass, gamma: int) -> list[tuple[int, int]]:
    """Minimal pairs (a, b) of a positive root, a preceding b.

    Every minimal sequence of a non-simple root is such a pair; this is
    re-checked on the fly.
    """
    rs = cls.rs
    s = sequence_from_roots(rs, [gamma])
    out = []
    for m in minimal_sequences(cls, s):
        if not is_pair(m):
            raise AssertionError("minimal sequence of a root is not a pair")
        a, b = support(m)
        if cls.precedes(b, a):
            a, b = b, a
        out.append((a, b))
    return sorted(out)


@dataclass(frozen=True)
class CoverClassification:
    """A maximal sequence below a pair, tagged by the printed trichotomy."""

    pair: tuple[int, int]
    cover: Sequence
    case: int  # 1 = summed root, 2 = triple, 3 = pair
    details: tuple[tuple[str, bool], ...] = ()


def classify_cover(cls: CommutationClass, m: Sequence) -> list[CoverClassification]:
    """Classify the maximal sequences below a pair of positive distance."""
    rs = cls.rs
    if not is_pair(m):
        raise ValueError("cover classification applies to pairs")
    a, b = support(m)
    if cls.precedes(b, a):
        a, b = b, a
    below = pair_below(cls, a, b)
    if not below:
        raise ValueError("pair has distance 0")
    covers = [
        x for x in below if not any(y != x and class_less(cls, x, y) for y in below)
    ]
    out = []
    for cov in covers:
        size = sum(cov)
        supp = support(cov)
        if size == 1:
            details = (
                ("pair_is_minimal_pair_of_sum",
                 _pair_is_minimal_of(cls, a, b, supp[0])),
            )
            out.append(CoverClassification((a, b), cov, 1, details))
        elif size == 3 and len(supp) == 3:
            details = _triple_conditions(cls, a, b, supp)
            out.append(CoverClassification((a, b), cov, 2, details))
        elif size == 2:
            details = _pair_cover_conditions(cls, a, b, supp)
            out.append(CoverClassification((a, b), cov, 3, details))
        else:
            out.append(CoverClassification((a, b), cov, 0))
    return out


def _pair_is_minimal_of(cls: CommutationClass, a: int, b: int, g: int) -> bool:
    return tuple(sorted((a, b))) in {
        tuple(sorted(p)) for p in minimal_pairs_of_root(cls, g)
    }


def _triple_conditions(cls, a, b, supp):
    """Conditions (i)-(iv) for the triple case, tried over assignments."""
    rs = cls.rs
    alpha, beta = rs.positive_roots[a], rs.positive_roots[b]
    sum_not_root = tuple(x + y for x, y in zip(alpha, beta)) not in rs.root_index

    def minus(u, v):
        return tuple(x - y for x, y in zip(u, v))

    for mu, nu, eta in _permute3(supp):
        mv, nv, ev = (rs.positive_roots[r] for r in (mu, nu, eta))
        mn = tuple(x + y for x, y in zip(mv, nv))
        if mn not in rs.root_index:
            continue
        am, bn = minus(alpha, mv), minus(beta, nv)
        if am not in rs.root_index or bn not in rs.root_index:
            continue
        cond_i = _pair_is_minimal_of(cls, mu, nu, rs.root_index[mn])
        cond_ii = not cls.comparable(eta, mu) and not cls.comparable(eta, nu)
        cond_iii = (
            tuple(x + y for x, y in zip(am, bn)) == ev
            and _pair_is_minimal_of(
                cls, rs.root_index[am], rs.root_index[bn], eta
            )
        )
        cond_iv = _pair_is_minimal_of(
            cls, rs.root_index[am], mu, a
        ) and _pair_is_minimal_of(cls, nu, rs.root_index[bn], b)
        if cond_i and cond_ii and cond_iii and cond_iv:
            return (
                ("sum_not_root", sum_not_root),
                ("i", True),
                ("ii", True),
                ("iii", True),
                ("iv", True),
            )
    return (("sum_not_root", sum_not_root), ("conditions", False))


def _pair_cover_conditions(cls, a, b, supp):
    """Root-difference conditions for the pair case of the trichotomy."""
    rs = cls.rs
    alpha, beta = rs.positive_roots[a], rs.positive_roots[b]

    def diff_in_phi(u, v):
        d = tuple(x - y for x, y in zip(u, v))
        return d in rs.root_index

    for ap, bp in _permute2(supp):
        av, bv = rs.positive_roots[ap], rs.positive_roots[bp]
        fwd = diff_in_phi(av, alpha) and diff_in_phi(beta, bv)
        bwd = diff_in_phi(alpha, av) and diff_in_phi(bv, beta)
        if fwd or bwd:
            return (("forward", fwd), ("backward", bwd))
    return (("forward", False), ("backward", False))


def _permute2(supp):
    if len(supp) == 1:
        return [(supp[0], supp[0])]
    a, b = supp
    return [(a, b), (b, a)]


def _permute3(supp):
    from itertools import permutations

    return list(permutations(supp))


# ---------------------------------------------------------------------------
# distance polynomials


@dataclass(frozen=True)
class RootedPolynomial:
    """A multiset of linear factors (z - eps * q_s^t), eps in {+1, -1}."""

    factors: tuple[tuple[tuple[int, int], int], ...]  # ((eps, t), multiplicity)

    @classmethod
    def from_factors(cls, factors) -> RootedPolynomial:
        counts: dict[tuple[int, int], int] = {}
        for eps, t in factors:
            if eps not in (1, -1):
                raise ValueError("factor sign must be +1 or -1")
            counts[(eps, t)] = counts.get((eps, t), 0) + 1
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def one(cls) -> RootedPolynomial:
        return cls(())

    def __mul__(self, other: RootedPolynomial) -> RootedPolynomial:
        counts = dict(self.factors)
        for key, mult in other.factors:
            counts[key] = counts.get(key, 0) + mult
        return RootedPolynomial(tuple(sorted(counts.items())))

    def degree(self) -> int:
        return sum(mult for _, mult in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for (eps, t), mult in self.factors:
            sign = "-" if eps > 0 else "+"
            body = f"(z {sign} qs^{t})"
            parts.append(body if mult == 1 else body + f"^{mult}")
        return "".join(parts)


def factor_minus_q_power(a: int) -> tuple[int, int]:
    """(z - (-q)^a) as (eps, t) with q = q_s^2."""
    return ((-1) ** a, 2 * a)


def factor_plus_q_power(a: int) -> tuple[int, int]:
    """(z + (-q)^a) as (eps, t)."""
    return ((-1) ** (a + 1), 2 * a)


def factor_minus_qs_power(a: int) -> tuple[int, int]:
    """(z - (-q_s)^a) as (eps, t)."""
    return ((-1) ** a, a)


def comparable_pairs(cls: CommutationClass) -> list[tuple[int, int]]:
    below = cls.below()
    out = []
    for b, mask in below.items():
        m = mask
        while m:
            low = m & -m
            out.append((low.bit_length() - 1, b))
            m ^= low
    return out


def phi_pairs(
    cls: CommutationClass, fq: FoldedQuiver, k: int, l: int, t: int
) -> list[tuple[int, int]]:
    """Comparable pairs whose folded coordinates sit at {k, l} with gap t."""
    coord = fq.coord_of()
    out = []
    for a, b in comparable_pairs(cls):
        (ia, pa), (ib, pb) = coord[a], coord[b]
        if {ia, ib} == ({k, l} if k != l else {k}) and abs(pa - pb) == t:
            out.append((a, b))
    return sorted(out)


def o_t(cls: CommutationClass, fq: FoldedQuiver, k: int, l: int, t: int) -> int | None:
    """Common distance on Phi[t]; None when the set is empty."""
    pairs = phi_pairs(cls, fq, k, l, t)
    if not pairs:
        return None
    rs = cls.rs
    dists = {dist(cls, sequence_from_roots(rs, [a, b])) for a, b in pairs}
    if len(dists) != 1:
        raise AssertionError(
            f"distance is not constant on Phi[{t}] at ({k},{l}): {sorted(dists)}"
        )
    return dists.pop()


def realized_gaps(cls: CommutationClass, fq: FoldedQuiver, k: int, l: int) -> list[int]:
    coord = fq.coord_of()
    gaps = set()
    for a, b in comparable_pairs(cls):
        (ia, pa), (ib, pb) = coord[a], coord[b]
        if {ia, ib} == ({k, l} if k != l else {k}):
            gaps.add(abs(pa - pb))
    return sorted(gaps)


def distance_polynomial(
    cls: CommutationClass,
    fq: FoldedQuiver,
    k: int,
    l: int,
    convention: str,
) -> RootedPolynomial:
    """The folded distance polynomial at (k, l) under one sign convention.

    Convention "A" uses factors (z - (-1)^(k+l) q_s^t), convention "D"
    uses (z - (-q_s)^t); exponents are ceil(o_t / 2).
    """
    if convention not in ("A", "D"):
        raise ValueError("convention must be 'A' or 'D'")
    dbar = 2
    factors = []
    for t in realized_gaps(cls, fq, k, l):
        o = o_t(cls, fq, k, l, t)
        e = ceil(o / dbar)
        if not e:
            continue
        eps = (-1) ** (k + l) if convention == "A" else (-1) ** t
        factors.extend([(eps, t)] * e)
    return RootedPolynomial.from_factors(factors)
