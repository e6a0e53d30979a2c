"""Denominator formulas, spectral assignments and Dorey-rule checks.

Spectral parameters are eps * q_s^t with eps a fourth root of unity
(stored as a power of i); everything outside the twisted assignment of
`v_untwisted_twisted` stays in {+1, -1}.  q = q_s^2 throughout.

The Dorey table for the B target ships in two conventions: "printed",
the branch data in its printed form, and "validated", in which the
three min-index branches carry the exponents that the exhaustive
minimal-pair sweep (and the zero set of the denominator formulas)
forces.  `verify_dorey` reports the discrepancy rather than hiding it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .words import CommutationClass
from .arquiver import DynkinQuiver, gamma_q
from .twistfold import FoldedQuiver, twisted_folded_quivers
from .seqorder import (
    RootedPolynomial,
    distance_polynomial,
    factor_minus_q_power,
    factor_minus_qs_power,
    factor_plus_q_power,
    minimal_pairs_of_root,
)


@dataclass(frozen=True)
class SpectralParameter:
    """eps * q_s^exp with eps = i^phase, phase modulo 4."""

    phase: int
    exp: int

    def __post_init__(self):
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def q_power(cls, a: int) -> SpectralParameter:
        return cls(0, 2 * a)

    @classmethod
    def qs_power(cls, a: int) -> SpectralParameter:
        return cls(0, a)

    @classmethod
    def minus_q_power(cls, a: int) -> SpectralParameter:
        return cls(2 * a, 2 * a)

    @classmethod
    def minus_qs_power(cls, a: int) -> SpectralParameter:
        return cls(2 * a, a)

    @classmethod
    def signed_qs(cls, sign: int, a: int) -> SpectralParameter:
        return cls(0 if sign > 0 else 2, a)

    def __mul__(self, other: SpectralParameter) -> SpectralParameter:
        return SpectralParameter(self.phase + other.phase, self.exp + other.exp)

    def __truediv__(self, other: SpectralParameter) -> SpectralParameter:
        return SpectralParameter(self.phase - other.phase, self.exp - other.exp)

    def sign(self) -> int:
        if self.phase % 2:
            raise ValueError("parameter is not real")
        return 1 if self.phase == 0 else -1

    def __str__(self) -> str:
        pre = {0: "", 1: "i*", 2: "-", 3: "-i*"}[self.phase]
        return f"{pre}qs^{self.exp}"


@dataclass(frozen=True)
class FundamentalModuleLabel:
    node: int
    parameter: SpectralParameter


# ---------------------------------------------------------------------------
# denominator formulas


def denominator(target: str, n: int, k: int, l: int) -> RootedPolynomial:
    """The printed denominator of the (k, l) fundamental R-matrix."""
    if target == "F":
        return f4_denominator(k, l)
    if not (1 <= k <= n and 1 <= l <= n):
        raise ValueError(f"indices ({k},{l}) out of range for rank {n}")
    if target == "B":
        if k > l:
            k, l = l, k
        factors = []
        if l <= n - 1:
            for s in range(1, min(k, l) + 1):
                factors.append(factor_minus_q_power(abs(k - l) + 2 * s))
                factors.append(factor_plus_q_power(2 * n - k - l - 1 + 2 * s))
        elif k <= n - 1:
            for s in range(1, k + 1):
                sign = (-1) ** (n + k)
                factors.append((sign, 2 * n - 2 * k - 1 + 4 * s))
        else:
            factors = [(1, 4 * s - 2) for s in range(1, n + 1)]
        return RootedPolynomial.from_factors(factors)
    if target == "C":
        factors = []
        for s in range(1, min(k, l, n - k, n - l) + 1):
            factors.append(factor_minus_qs_power(abs(k - l) + 2 * s))
        for s in range(1, min(k, l) + 1):
            factors.append(factor_minus_qs_power(2 * n + 2 - k - l + 2 * s))
        return RootedPolynomial.from_factors(factors)
    raise ValueError(f"unknown target {target!r}")


_F4_EXPONENTS = {
    (1, 1): [4, 10, 12, 18],
    (1, 2): [6, 10, 12, 14, 16],
    (1, 3): [7, 9, 13, 15],
    (1, 4): [8, 14],
    (2, 2): [4, 6, 8, 10, 12, 14, 14, 16, 18],
    (2, 3): [5, 7, 9, 11, 11, 13, 15, 17],
    (2, 4): [6, 10, 12, 16],
    (3, 3): [2, 6, 8, 10, 12, 16, 18],
    (3, 4): [3, 7, 11, 13, 17],
    (4, 4): [2, 8, 12, 18],
}


def f4_denominator(k: int, l: int) -> RootedPolynomial:
    """The conjectural F_4 denominators of the printed exceptional list."""
    key = (min(k, l), max(k, l))
    if key not in _F4_EXPONENTS:
        raise ValueError(f"no F_4 entry for ({k},{l})")
    return RootedPolynomial.from_factors(
        factor_minus_qs_power(t) for t in _F4_EXPONENTS[key]
    )


def den_dist_extra_factor(target: str, n: int) -> tuple[int, int]:
    """The diagonal factor (z - q^{h_dual}) relating den and dist polys."""
    h_dual = {"B": 2 * n - 1, "C": n + 1, "F": 9}[target]
    if target == "F":
        # (z - (-q_s)^18) stated as the natural extrapolation
        return factor_minus_qs_power(2 * h_dual)
    return (1, 2 * h_dual)


def dist_convention(target: str) -> str:
    return {"B": "A", "C": "D", "F": "D"}[target]


# ---------------------------------------------------------------------------
# spectral assignments


def v_assign(fq: FoldedQuiver, root_idx: int) -> FundamentalModuleLabel:
    """V(pi_i) with parameter read off the folded coordinate of a root."""
    target, _ = fq.target()
    i, p = fq.coord_of()[root_idx]
    if target == "B":
        return FundamentalModuleLabel(i, SpectralParameter(2 * i, p))
    if target == "C":
        return FundamentalModuleLabel(i, SpectralParameter.minus_qs_power(p))
    raise ValueError("spectral assignment is printed for B and C targets only")


def v_untwisted_twisted(q: DynkinQuiver, beta, t: int) -> FundamentalModuleLabel:
    """V^(1) and V^(2) labels for a root of an adapted class of type A/D."""
    rs = q.rs
    r = beta if isinstance(beta, int) else rs.root_index[tuple(beta)]
    i, p2 = gamma_q(q).coord_of()[r]
    if p2 % 2:
        raise AssertionError("Gamma_Q positions must be integers")
    p = p2 // 2
    base = SpectralParameter.minus_q_power(p)
    if t == 1:
        return FundamentalModuleLabel(i, base)
    if t != 2:
        raise ValueError("t must be 1 or 2")
    n = rs.rank
    if rs.type_tag == "A":
        if i <= (n + 1) // 2:
            return FundamentalModuleLabel(i, base)
        sign = SpectralParameter(2 * n, 0)
        return FundamentalModuleLabel(n + 1 - i, sign * base)
    if rs.type_tag == "D":
        if i <= n - 2:
            phase = SpectralParameter(n - i, 0)  # (sqrt(-1))^(n-i)
            return FundamentalModuleLabel(i, phase * base)
        sign = SpectralParameter(2 * i, 0)
        return FundamentalModuleLabel(n - 1, sign * base)
    raise ValueError("twisted assignment is printed for types A and D")


# ---------------------------------------------------------------------------
# Dorey's rule


@dataclass(frozen=True)
class DoreyEntry:
    i: int
    j: int
    k: int
    y_over_z: SpectralParameter
    x_over_z: SpectralParameter
    branch: str


def dorey_triples(target: str, n: int, convention: str = "validated") -> list[DoreyEntry]:
    """The finite Dorey condition table for the B or C target.

    For B, branch (ii) differs between the printed text and the version
    the minimal-pair sweep validates; both are available.
    """
    if convention not in ("printed", "validated"):
        raise ValueError("convention must be 'printed' or 'validated'")
    out: list[DoreyEntry] = []
    sp = SpectralParameter
    if target == "B":
        if n < 2:
            raise ValueError("B target needs n >= 2")
        for l in range(1, n):
            for k in range(1, l + 1):
                for i in range(1, l + 1):
                    j = 2 * l - i - k
                    if not 1 <= j <= l or max(i, j, k) != l:
                        continue
                    if l == k:
                        y = sp((j + k) * 2, -2 * i)
                        x = sp((i + k) * 2, 2 * j)
                        out.append(DoreyEntry(i, j, k, y, x, "B(i) l=k"))
                    elif l == i:
                        y = sp((j + k) * 2, 2 * (i - (2 * n - 1)))
                        x = sp((i + k) * 2, 2 * j)
                        out.append(DoreyEntry(i, j, k, y, x, "B(i) l=i"))
                    else:
                        y = sp((j + k) * 2, -2 * i)
                        x = sp((i + k) * 2, 2 * (2 * n - 1 - j))
                        out.append(DoreyEntry(i, j, k, y, x, "B(i) l=j"))
        for s in range(1, n):
            if convention == "printed":
                e = 2 * (n - 1 - s) - 1
                out.append(DoreyEntry(
                    n, n, s,
                    sp(2 * (n + s), -e), sp(2 * (n + 1 + s), e), "B(ii) s=k"))
                out.append(DoreyEntry(
                    s, n, n,
                    sp(0, -4 * s - 4), sp(2 * (s + n), e), "B(ii) s=i"))
                out.append(DoreyEntry(
                    n, s, n,
                    sp(2 * (s + n), -e), sp(0, 4 * s + 4), "B(ii) s=j"))
            else:
                e = 2 * (n - s) - 1
                out.append(DoreyEntry(
                    n, n, s,
                    sp(2 * (n + s), -e), sp(2 * (n + s), e), "B(ii) s=k"))
                out.append(DoreyEntry(
                    s, n, n,
                    sp(0, -4 * s), sp(2 * (s + n), e), "B(ii) s=i"))
                out.append(DoreyEntry(
                    n, s, n,
                    sp(2 * (s + n), -e), sp(0, 4 * s), "B(ii) s=j"))
        return out
    if target == "C":
        if n < 3:
            raise ValueError("C target needs n >= 3")
        for l in range(1, n + 1):
            for k in range(1, n + 1):
                for i in range(1, n + 1):
                    j = 2 * l - i - k
                    if not 1 <= j <= n or max(i, j, k) != l:
                        continue
                    if l == k:
                        y, x = sp.minus_qs_power(-i), sp.minus_qs_power(j)
                        out.append(DoreyEntry(i, j, k, y, x, "C l=k"))
                    elif l == i:
                        y = sp.minus_qs_power(i - (2 * n + 2))
                        x = sp.minus_qs_power(j)
                        out.append(DoreyEntry(i, j, k, y, x, "C l=i"))
                    elif l == j:
                        y = sp.minus_qs_power(-i)
                        x = sp.minus_qs_power(2 * n + 2 - j)
                        out.append(DoreyEntry(i, j, k, y, x, "C l=j"))
        return _dedupe_entries(out)
    raise ValueError(f"unknown target {target!r}")


def _dedupe_entries(entries: list[DoreyEntry]) -> list[DoreyEntry]:
    seen = {}
    for e in entries:
        key = (e.i, e.j, e.k, e.y_over_z, e.x_over_z)
        seen.setdefault(key, e)
    return list(seen.values())


def minimal_pair_coordinates(
    cls: CommutationClass, fq: FoldedQuiver, gamma
) -> list[tuple[tuple[int, int], tuple[int, int], tuple[int, int]]]:
    """Folded coordinate triples ((i,p),(j,q),(k,r)) of the minimal pairs
    of a positive root, the pair ordered by the convex order."""
    rs = cls.rs
    g = gamma if isinstance(gamma, int) else rs.root_index[tuple(gamma)]
    coord = fq.coord_of()
    return [
        (coord[a], coord[b], coord[g])
        for a, b in minimal_pairs_of_root(cls, g)
    ]


def minimal_pair_predicate(
    target: str, n: int, a_coord, b_coord, g_coord, convention: str = "validated"
) -> bool:
    """The printed coordinate characterization of minimal pairs.

    Coordinates are folded (residue, position) triples for the pair
    (alpha, beta) and the summed root; both orderings of the pair are
    accepted.
    """
    for (i, p), (j, q) in ((a_coord, b_coord), (b_coord, a_coord)):
        k, r = g_coord
        if target == "B" and _b_pair_condition(n, i, p, j, q, k, r, convention):
            return True
        if target == "C" and _c_pair_condition(n, i, p, j, q, k, r):
            return True
    return False


def _b_pair_condition(n, i, p, j, q, k, r, convention) -> bool:
    l = max(i, j, k)
    if l <= n - 1 and i + j + k == 2 * l and (q - r) % 2 == 0 and (p - r) % 2 == 0:
        half = ((q - r) // 2, (p - r) // 2)
        if l == k and half == (-i, j):
            return True
        if l == i and half == (i - (2 * n - 1), j):
            return True
        if l == j and half == (-i, 2 * n - 1 - j):
            return True
    s = min(i, j, k)
    if s <= n - 1 and sorted((i, j, k))[1:] == [n, n]:
        d = (q - r, p - r)
        if convention == "printed":
            if s == k and i == j == n and d == (-2 * (n - 1 - k) + 1, 2 * (n - 1 - k) - 1):
                return True
            if s == i and j == k == n and d == (-4 * i - 4, 2 * (n - 1 - i) - 1):
                return True
            if s == j and i == k == n and d == (-2 * (n - 1 - j) + 1, 4 * j + 4):
                return True
        else:
            if s == k and i == j == n and d == (-(2 * (n - k) - 1), 2 * (n - k) - 1):
                return True
            if s == i and j == k == n and d == (-4 * i, 2 * (n - i) - 1):
                return True
            if s == j and i == k == n and d == (-(2 * (n - j) - 1), 4 * j):
                return True
    return False


def _c_pair_condition(n, i, p, j, q, k, r) -> bool:
    l = max(i, j, k)
    if not (l <= n and i + j + k == 2 * l):
        return False
    d = (q - r, p - r)
    if l == k and d == (-i, j):
        return True
    if l == i and d == (i - (2 * n + 2), j):
        return True
    if l == j and d == (-i, 2 * n + 2 - j):
        return True
    return False


# ---------------------------------------------------------------------------
# verification sweeps


@dataclass
class Report:
    """Outcome of one verification suite."""

    name: str
    ok: bool
    checked: int
    mismatches: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "mismatches": [str(m) for m in self.mismatches],
            "notes": list(self.notes),
        }


def _twisted_source(target: str, n: int) -> tuple[str, int]:
    if target == "B":
        return "A", 2 * n - 1
    if target == "C":
        return "D", n + 1
    return "E", 6


def verify_den_dist(target: str, n: int) -> Report:
    """den = dist poly x diagonal factor, class by class, exactly."""
    src_type, src_rank = _twisted_source(target, n)
    fqs = twisted_folded_quivers(src_type, src_rank)
    conv = dist_convention(target)
    extra = den_dist_extra_factor(target, n)
    rep = Report(f"den-dist {target} n={n}", True, 0)
    for cls in sorted(fqs, key=lambda c: c.canonical_word):
        fq = fqs[cls]
        for k in range(1, n + 1):
            for l in range(k, n + 1):
                dhat = distance_polynomial(cls, fq, k, l, conv)
                if k == l:
                    dhat = dhat * RootedPolynomial.from_factors([extra])
                den = denominator(target, n, k, l)
                rep.checked += 1
                if dhat != den:
                    rep.ok = False
                    rep.mismatches.append(
                        (cls.canonical_word, (k, l), str(dhat), str(den))
                    )
    return rep


def verify_class_invariance(target: str, n: int) -> Report:
    """The distance polynomial must not depend on the class."""
    src_type, src_rank = _twisted_source(target, n)
    fqs = twisted_folded_quivers(src_type, src_rank)
    conv = dist_convention(target)
    rep = Report(f"class-invariance {target} n={n}", True, 0)
    for k in range(1, n + 1):
        for l in range(k, n + 1):
            polys = {}
            for cls in fqs:
                polys[cls] = distance_polynomial(cls, fqs[cls], k, l, conv)
            rep.checked += len(polys)
            if len(set(polys.values())) != 1:
                rep.ok = False
                rep.mismatches.append(((k, l), "polynomials differ across classes"))
    return rep


def _all_minimal_pair_data(target: str, n: int):
    """(class, fq, alpha, beta, gamma) for every minimal pair, alpha first."""
    src_type, src_rank = _twisted_source(target, n)
    fqs = twisted_folded_quivers(src_type, src_rank)
    for cls in sorted(fqs, key=lambda c: c.canonical_word):
        fq = fqs[cls]
        rs = cls.rs
        for g in range(rs.num_positive):
            for a, b in minimal_pairs_of_root(cls, g):
                yield cls, fq, a, b, g


def verify_dorey(target: str, n: int) -> Report:
    """Both inclusions of the Dorey correspondence, plus the predicates.

    (<=): the spectral ratios of every minimal pair appear in the table;
    (>=): every table entry is realized by a minimal pair in some class.
    The coordinate predicate is checked to be exactly equivalent to
    brute-forced minimality.  Runs under both table conventions and
    reports branches of the printed one that never match.
    """
    rep = Report(f"dorey {target} n={n}", True, 0)
    tables = {
        conv: dorey_triples(target, n, conv) for conv in ("printed", "validated")
    }
    keysets = {
        conv: {(e.i, e.j, e.k, e.y_over_z, e.x_over_z) for e in tables[conv]}
        for conv in tables
    }
    hit: dict[str, set] = {conv: set() for conv in tables}
    data = list(_all_minimal_pair_data(target, n))
    for cls, fq, a, b, g in data:
        coord = fq.coord_of()
        rep.checked += 1
        realized = set()
        for first, second in ((a, b), (b, a)):
            la = v_assign(fq, first)
            lb = v_assign(fq, second)
            lg = v_assign(fq, g)
            key = (
                la.node,
                lb.node,
                lg.node,
                lb.parameter / lg.parameter,
                la.parameter / lg.parameter,
            )
            realized.add(key)
        for conv in tables:
            got = realized & keysets[conv]
            hit[conv] |= got
            if conv == "validated" and not got:
                rep.ok = False
                rep.mismatches.append(
                    ("pair not in table", cls.canonical_word,
                     coord[a], coord[b], coord[g])
                )
    # coverage (>=) per convention
    for conv in tables:
        missing = keysets[conv] - hit[conv]
        if conv == "validated" and missing:
            rep.ok = False
            rep.mismatches.append(("unrealized validated entries", sorted(
                (i, j, k, str(y), str(x)) for i, j, k, y, x in missing)))
        if conv == "printed":
            bad_branches = sorted({
                e.branch for e in tables[conv]
                if (e.i, e.j, e.k, e.y_over_z, e.x_over_z) in missing
            })
            if bad_branches:
                rep.notes.append(
                    "printed branches never realized by any minimal pair "
                    f"(suspected typos): {bad_branches}"
                )
    rep.notes.append(
        "table convention 'validated' corrects the B(ii) exponents; "
        "see dorey_triples for both versions"
        if target == "B" else "printed table used as-is"
    )
    # predicate <-> minimality equivalence
    eq = verify_minimal_pair_predicate(target, n)
    rep.checked += eq.checked
    if not eq.ok:
        rep.ok = False
        rep.mismatches.extend(eq.mismatches)
    return rep


def verify_minimal_pair_predicate(target: str, n: int) -> Report:
    """Coordinate predicate == brute-forced minimality, all summing pairs."""
    src_type, src_rank = _twisted_source(target, n)
    fqs = twisted_folded_quivers(src_type, src_rank)
    rep = Report(f"minimal-pair predicate {target} n={n}", True, 0)
    for cls in sorted(fqs, key=lambda c: c.canonical_word):
        fq = fqs[cls]
        rs = cls.rs
        coord = fq.coord_of()
        for g in range(rs.num_positive):
            gamma = rs.positive_roots[g]
            minimal = {
                frozenset(p) for p in minimal_pairs_of_root(cls, g)
            }
            for av, bv in rs.roots_summing_to(gamma):
                a, b = rs.root_index[av], rs.root_index[bv]
                rep.checked += 1
                pred = minimal_pair_predicate(
                    target, n, coord[a], coord[b], coord[g]
                )
                if pred != (frozenset((a, b)) in minimal):
                    rep.ok = False
                    rep.mismatches.append(
                        (cls.canonical_word, coord[a], coord[b], coord[g],
                         "predicate", pred)
                    )
    return rep


def verify_f4_conjecture() -> Report:
    """Class invariance over E_6 and the match with the listed F_4 table.

    The diagonal factor (z - (-q_s)^18) is the natural extrapolation of
    the den = dist x diagonal pattern, a hypothesis rather than an
    established identity.  The
    report names the sign convention that matches and lists, entry by
    entry, where the definitional distance polynomial differs from the
    listed table (it carries strictly more factors at three entries).
    """
    fqs = twisted_folded_quivers("E", 6)
    rep = Report("f4 conjecture", True, 0)
    extra = RootedPolynomial.from_factors([den_dist_extra_factor("F", 4)])
    entry_match = {"A": {}, "D": {}}
    invariant = True
    computed: dict[tuple[int, int], dict[str, RootedPolynomial]] = {}
    for conv in ("A", "D"):
        for k in range(1, 5):
            for l in range(k, 5):
                polys = set()
                for cls in fqs:
                    polys.add(distance_polynomial(cls, fqs[cls], k, l, conv))
                rep.checked += len(fqs)
                if len(polys) != 1:
                    invariant = False
                    rep.mismatches.append((conv, (k, l), "not class-invariant"))
                    continue
                dhat = polys.pop()
                if k == l:
                    dhat = dhat * extra
                computed.setdefault((k, l), {})[conv] = dhat
                entry_match[conv][(k, l)] = dhat == f4_denominator(k, l)
    full = [c for c in ("A", "D") if all(entry_match[c].values())]
    rep.ok = invariant and len(full) == 1
    counts = {c: sum(entry_match[c].values()) for c in ("A", "D")}
    best = max(counts, key=lambda c: counts[c])
    rep.notes.append(f"class-invariance over all 32 classes: {invariant}")
    rep.notes.append(
        f"entries matching the listed table: A {counts['A']}/10, D {counts['D']}/10"
        + (f"; full match under {full}" if full else "; no full match")
    )
    rep.notes.append(f"closest sign convention: {best}")
    for key, ok in sorted(entry_match[best].items()):
        if not ok:
            rep.mismatches.append(
                (best, key, f"computed {computed[key][best]}",
                 f"listed {f4_denominator(*key)}")
            )
    rep.notes.append(
        "diagonal factor (z-(-qs)^18) = (z-q^9) with 9 the dual Coxeter "
        "number of F_4: extrapolated hypothesis, not a printed identity"
    )
    return rep


def verify_counts() -> Report:
    """Cluster-point cardinalities for the printed cases."""
    from .words import adapted_point, twisted_adapted_point

    rep = Report("counts", True, 0)
    expected = [
        ("adapted", "A", 4, 8),
        ("adapted", "A", 5, 16),
        ("twisted", "A", 5, 16),
        ("twisted", "D", 4, 8),
        ("twisted", "D", 5, 16),
        ("twisted", "E", 6, 32),
    ]
    for kind, tt, rk, want in expected:
        point = (adapted_point if kind == "adapted" else twisted_adapted_point)(tt, rk)
        rep.checked += 1
        if len(point) != want:
            rep.ok = False
            rep.mismatches.append((kind, tt, rk, len(point), want))
    return rep
