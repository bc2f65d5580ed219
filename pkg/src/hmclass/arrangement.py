"""Projective hyperplane arrangements with multiplicities.

Input model and validation, the intersection lattice (edges), localized
central arrangements with their Mobius-function combinatorics, dense-edge
detection, stratifications of the divisor and of its singular locus, and
chi_y genera computed by additivity over strata.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .coeffs import PolyY, rat

__all__ = [
    "ArrangementError",
    "Arrangement",
    "Edge",
    "Stratum",
    "LocalizedArrangement",
    "build",
    "edges",
    "edge_key",
    "localize",
    "complement_chi",
    "milnor_fiber_chi",
    "is_dense",
    "sigma_strata",
    "x_strata",
    "chi_y",
    "chi_y_stratum",
    "chi_y_pn",
    "euler_by_inclusion_exclusion",
]


class ArrangementError(ValueError):
    """Invalid arrangement input."""


# ---------------------------------------------------------------------------
# exact linear algebra over Q


def _rref(rows) -> tuple:
    """Canonical reduced row echelon form (tuple of tuples), zero rows dropped.
    Unique per row space, so usable as a dictionary key."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        lead = mat[pivot_row][col]
        mat[pivot_row] = [v / lead for v in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pivot_row] if any(v != 0 for v in r))


def _rank(rows) -> int:
    return len(_rref(rows))


def _in_span(rref_rows, vec) -> bool:
    v = list(vec)
    for row in rref_rows:
        lead = next(i for i, x in enumerate(row) if x != 0)
        if v[lead] != 0:
            f = v[lead]
            v = [a - f * b for a, b in zip(v, row)]
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# arrangement and edges


@dataclass(frozen=True)
class Hyperplane:
    covector: tuple
    mult: int


@dataclass(frozen=True)
class Arrangement:
    n: int
    hyperplanes: tuple

    @property
    def m(self) -> int:
        return sum(h.mult for h in self.hyperplanes)

    @property
    def r(self) -> int:
        return len(self.hyperplanes)

    def mult(self, j: int) -> int:
        return self.hyperplanes[j].mult

    def covector(self, j: int) -> tuple:
        return self.hyperplanes[j].covector

    def multiple_indices(self) -> tuple:
        return tuple(j for j, h in enumerate(self.hyperplanes) if h.mult > 1)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "hyperplanes": [
                {"coeffs": [str(c) for c in h.covector], "mult": h.mult}
                for h in self.hyperplanes
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "Arrangement":
        try:
            n = data["n"]
            raw = data["hyperplanes"]
        except (KeyError, TypeError) as exc:
            raise ArrangementError(f"missing field in arrangement input: {exc}")
        hyps = []
        for item in raw:
            try:
                coeffs = [rat(c) for c in item["coeffs"]]
                mult = item["mult"]
            except (KeyError, TypeError, ValueError) as exc:
                raise ArrangementError(f"bad hyperplane entry {item!r}: {exc}")
            hyps.append((coeffs, mult))
        return build(n, hyps)

    @staticmethod
    def load(path) -> "Arrangement":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ArrangementError(f"malformed JSON: {exc}")
        return Arrangement.from_json(data)


def build(n: int, hyperplanes) -> Arrangement:
    """Validate and construct an arrangement.

    Rejects zero covectors, proportional covector pairs (duplicates are an
    input error, never merged) and non-positive multiplicities.
    """
    if not isinstance(n, int) or n < 1:
        raise ArrangementError(f"ambient dimension must be a positive integer, got {n!r}")
    hyps = []
    for covector, mult in hyperplanes:
        cov = tuple(rat(c) for c in covector)
        if len(cov) != n + 1:
            raise ArrangementError(
                f"covector {cov} has length {len(cov)}, expected {n + 1}")
        if all(c == 0 for c in cov):
            raise ArrangementError("zero covector")
        if not isinstance(mult, int) or mult < 1:
            raise ArrangementError(f"multiplicity must be a positive integer, got {mult!r}")
        hyps.append(Hyperplane(cov, mult))
    if not hyps:
        raise ArrangementError("arrangement needs at least one hyperplane")
    for i in range(len(hyps)):
        for j in range(i + 1, len(hyps)):
            if _rank([hyps[i].covector, hyps[j].covector]) == 1:
                raise ArrangementError(
                    f"proportional covectors at positions {i + 1} and {j + 1}")
    return Arrangement(n, tuple(hyps))


@dataclass(frozen=True)
class Edge:
    """An intersection of hyperplanes, with saturated index set.

    index_set holds 0-based hyperplane indices; span is the canonical
    reduced row echelon form of their covectors.
    """

    index_set: tuple
    codim: int
    m_s: int
    span: tuple

    @property
    def key(self) -> str:
        return ",".join(str(j + 1) for j in self.index_set)

    def contains(self, other: "Edge") -> bool:
        """True when other is contained in this edge as a subspace."""
        return set(self.index_set) <= set(other.index_set)


def edge_key(edge: Edge) -> str:
    return edge.key


def edges(arr: Arrangement) -> list:
    """All edges of the arrangement: intersections of subfamilies,
    deduplicated by subspace, with saturated index sets.  Sorted by
    (codimension, index set)."""
    covs = [h.covector for h in arr.hyperplanes]

    def saturate(span):
        return tuple(j for j, c in enumerate(covs) if _in_span(span, c))

    found = {}
    frontier = []
    for j, c in enumerate(covs):
        span = _rref([c])
        if span not in found:
            iset = saturate(span)
            e = Edge(iset, 1, sum(arr.mult(i) for i in iset), span)
            found[span] = e
            frontier.append(e)
    while frontier:
        nxt = []
        for e in frontier:
            for j, c in enumerate(covs):
                if j in e.index_set:
                    continue
                span = _rref(list(e.span) + [c])
                rank = len(span)
                if rank > arr.n or span in found:
                    continue
                iset = saturate(span)
                new = Edge(iset, rank, sum(arr.mult(i) for i in iset), span)
                found[span] = new
                nxt.append(new)
        frontier = nxt
    return sorted(found.values(), key=lambda e: (e.codim, e.index_set))


def edges_by_key(arr: Arrangement) -> dict:
    return {e.key: e for e in edges(arr)}


# ---------------------------------------------------------------------------
# Mobius combinatorics


def _mobius(isets) -> dict:
    """Mobius function from the minimum of a finite family of index sets
    ordered by inclusion.  The unique minimum must be present."""
    order = sorted(isets, key=len)
    mu = {}
    for iset in order:
        if not mu:
            mu[iset] = 1
        else:
            mu[iset] = -sum(v for other, v in mu.items() if other < iset)
    return mu


def _whitney(flats) -> PolyY:
    """Whitney polynomial sum_F mu(F) (-t)^{rank F} of a ranked family of
    flats given as (index_set, rank) pairs including the rank-0 bottom."""
    ranks = dict(flats)
    mu = _mobius(set(ranks))
    coeffs = [Fraction(0)] * (max(ranks.values()) + 1)
    for iset, rank in ranks.items():
        coeffs[rank] += mu[iset] * (-1) ** rank
    return PolyY(coeffs)


@dataclass(frozen=True)
class LocalizedArrangement:
    """The quotient central arrangement at an edge: its rank, the
    multiplicities of its hyperplanes, and the interval of the big
    intersection lattice that forms its own lattice."""

    edge: Edge
    rank: int
    mults: tuple
    flats: tuple  # (index_set, codim) pairs, bottom () included

    @property
    def m_s(self) -> int:
        return sum(self.mults)

    @property
    def reduced(self) -> bool:
        return all(m == 1 for m in self.mults)

    @property
    def size(self) -> int:
        return len(self.mults)

    @property
    def boolean(self) -> bool:
        """True when the covectors through the edge are linearly independent,
        so the local model is a product of coordinate hyperplanes."""
        return len(self.mults) == self.rank


def localize(arr: Arrangement, edge: Edge, all_edges=None) -> LocalizedArrangement:
    if all_edges is None:
        all_edges = edges(arr)
    sset = set(edge.index_set)
    flats = [((), 0)]
    for e in all_edges:
        if set(e.index_set) <= sset:
            flats.append((frozenset(e.index_set), e.codim))
    flats = [(frozenset(i), r) for i, r in flats]
    mults = tuple(arr.mult(j) for j in edge.index_set)
    return LocalizedArrangement(edge, edge.codim, mults, tuple(flats))


def complement_chi(loc: LocalizedArrangement) -> int:
    """Euler characteristic of the projectivized complement of the localized
    central arrangement, from the Mobius function of its lattice."""
    whitney = _whitney(loc.flats)
    projective = whitney.exact_div(PolyY([1, 1]))
    return int(projective(-1))


def milnor_fiber_chi(loc: LocalizedArrangement) -> int:
    """Euler characteristic of the local Milnor fiber: the projectivized
    complement count scaled by the local degree."""
    return complement_chi(loc) * loc.m_s


def is_dense(edge: Edge, arr: Arrangement) -> bool:
    """True when the localized central arrangement is indecomposable: no
    proper bipartition of its hyperplanes has additive rank."""
    covs = [arr.covector(j) for j in edge.index_set]
    k = len(covs)
    if k == 1:
        return True
    if k > 20:
        raise ValueError("dense-edge bipartition search capped at 20 hyperplanes")
    total = edge.codim
    for mask in range(1, 1 << (k - 1)):
        part_a = [covs[i] for i in range(k) if mask >> i & 1]
        part_b = [covs[i] for i in range(k) if not mask >> i & 1]
        if _rank(part_a) + _rank(part_b) == total:
            return False
    return True


# ---------------------------------------------------------------------------
# stratifications


@dataclass(frozen=True)
class Stratum:
    """Open stratum attached to an edge, in either the stratification of the
    divisor itself or of the singular locus minus the generic section."""

    edge: Edge
    family: str  # "X" or "Sigma"
    dim: int
    boundary: tuple = field(default=())  # (sub-edge, induced multiplicity)

    @property
    def key(self) -> str:
        return self.edge.key


def _boundary(arr: Arrangement, edge: Edge, all_edges) -> tuple:
    sset = set(edge.index_set)
    out = []
    for e in all_edges:
        if set(e.index_set) > sset:
            m_rel = sum(arr.mult(j) for j in e.index_set if j not in sset)
            out.append((e, m_rel))
    return tuple(out)


def x_strata(arr: Arrangement) -> list:
    """Canonical stratification of the divisor: one open stratum per edge."""
    all_edges = edges(arr)
    return [Stratum(e, "X", arr.n - e.codim, _boundary(arr, e, all_edges))
            for e in all_edges]


def sigma_strata(arr: Arrangement) -> list:
    """Strata of the singular locus away from the generic section: every edge
    of codimension >= 2, plus multiple hyperplanes.  The generic section is
    handled symbolically downstream and never appears as an edge."""
    all_edges = edges(arr)
    out = []
    for e in all_edges:
        if e.codim >= 2 or (len(e.index_set) == 1 and arr.mult(e.index_set[0]) > 1):
            out.append(Stratum(e, "Sigma", arr.n - e.codim,
                               _boundary(arr, e, all_edges)))
    return out


# ---------------------------------------------------------------------------
# chi_y genera


def chi_y_pn(n: int) -> PolyY:
    """chi_y of projective n-space: alternating powers of y."""
    return PolyY([(-1) ** p for p in range(n + 1)])


def _arrangement_rank(arr: Arrangement) -> int:
    return _rank([h.covector for h in arr.hyperplanes])


def chi_y_stratum(arr: Arrangement, edge: Edge, all_edges=None,
                  _rank_cache=None) -> PolyY:
    """chi_y of the open stratum of an edge, from the Betti numbers of the
    induced projective arrangement complement (all of Tate type)."""
    d = arr.n - edge.codim
    if d == 0:
        return PolyY([1])
    if all_edges is None:
        all_edges = edges(arr)
    sset = set(edge.index_set)
    flats = [(frozenset(sset), 0)]
    for e in all_edges:
        if set(e.index_set) > sset:
            flats.append((frozenset(e.index_set), e.codim - edge.codim))
    full_rank = _rank_cache if _rank_cache is not None else _arrangement_rank(arr)
    if full_rank == arr.n + 1:
        flats.append((frozenset(range(arr.r)) | {-1}, arr.n + 1 - edge.codim))
    if len(flats) == 1:
        return chi_y_pn(d)
    whitney = _whitney(flats)
    betti = whitney.exact_div(PolyY([1, 1]))
    acc = PolyY()
    minus_y = PolyY([0, -1])
    for j in range(betti.degree + 1):
        b = betti.coeff(j)
        if b:
            acc = acc + minus_y ** (d - j) * (b * (-1) ** j)
    return acc


def chi_y(arr: Arrangement, target: str = "X") -> PolyY:
    """chi_y genus by additivity over the canonical stratification.

    target 'X' sums all edge strata of the divisor; 'P^n' returns the
    ambient value; an edge key returns that open stratum."""
    if target == "P^n":
        return chi_y_pn(arr.n)
    all_edges = edges(arr)
    full_rank = _arrangement_rank(arr)
    if target == "X":
        acc = PolyY()
        for e in all_edges:
            acc = acc + chi_y_stratum(arr, e, all_edges, full_rank)
        return acc
    for e in all_edges:
        if e.key == target:
            return chi_y_stratum(arr, e, all_edges, full_rank)
    raise ArrangementError(f"unknown chi_y target {target!r}")


def euler_by_inclusion_exclusion(arr: Arrangement) -> int:
    """Independent Euler-characteristic oracle for the divisor: alternating
    sum over all subfamilies of hyperplanes."""
    covs = [h.covector for h in arr.hyperplanes]
    r = len(covs)
    total = 0
    for mask in range(1, 1 << r):
        subset = [covs[i] for i in range(r) if mask >> i & 1]
        rank = _rank(subset)
        if rank <= arr.n:
            dim = arr.n - rank
            total += (-1) ** (bin(mask).count("1") + 1) * (dim + 1)
    return total
