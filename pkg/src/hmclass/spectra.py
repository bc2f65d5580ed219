"""Spectrum data for local defining functions of arrangement strata.

A spectrum is a finitely supported integer-valued function on rational
exponents.  The built-in catalogue covers the two germ families that
arrangements of small ambient dimension produce: monomial germs (local
normal crossings with multiplicities) and ordinary plane germs (k distinct
reduced concurrent lines).  Everything else is admitted via user tables,
which are validated before use and rejected on any failure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arrangement import (Arrangement, Edge, LocalizedArrangement, Stratum,
                          edges, localize, milnor_fiber_chi)
from .coeffs import rat

__all__ = [
    "SpectrumError",
    "SpectrumValidationError",
    "Spectrum",
    "GermKind",
    "classify_germ",
    "sp_monomial",
    "sp_ordinary",
    "sp_shift",
    "sp_unshift",
    "sp_validate",
    "sp_user_load",
    "catalogue_spectrum",
    "stratum_spectrum",
]


class SpectrumError(ValueError):
    """Malformed spectrum data."""


class SpectrumValidationError(SpectrumError):
    """Well-formed spectrum table rejected by the validators."""


@dataclass(frozen=True)
class Spectrum:
    """Finite map exponent -> multiplicity with a frame tag.

    frame is ('germ', d) for a function germ on affine d-space at the
    origin, or ('stratum', n) for ambient indexing after the dimension
    shift.  Zero multiplicities are never stored.
    """

    entries: tuple  # sorted ((Fraction, int), ...)
    frame: tuple

    @staticmethod
    def make(mapping, frame) -> "Spectrum":
        items = tuple(sorted((Fraction(a), int(m)) for a, m in mapping.items()
                             if m != 0))
        return Spectrum(items, tuple(frame))

    def as_dict(self) -> dict:
        return dict(self.entries)

    @property
    def mass(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def support(self) -> tuple:
        return tuple(a for a, _ in self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def to_json(self) -> list:
        return [{"alpha": str(a), "mult": m} for a, m in self.entries]

    def __str__(self):
        if not self.entries:
            return "0"
        parts = []
        for a, m in self.entries:
            term = f"t^({a})" if a.denominator > 1 else f"t^{a}"
            if m == 1:
                parts.append(term)
            elif m == -1:
                parts.append(f"-{term}")
            else:
                parts.append(f"{m}*{term}")
        return " + ".join(parts).replace("+ -", "- ")


def sp_monomial(exponents) -> Spectrum:
    """Spectrum of a monomial germ prod y_i^{m_i} on affine r-space.

    Derived from the Milnor fiber directly: gcd-many disjoint tori of
    dimension r-1, cohomology of Tate type (j,j) in degree j, monodromy
    cycling the components, so each degree-j group splits into
    one-dimensional eigenspaces for every gcd-th root of unity with
    multiplicity binomial(r-1, j).
    """
    ms = [int(m) for m in exponents]
    if not ms or any(m < 1 for m in ms):
        raise SpectrumError("monomial exponents must be positive integers")
    r = len(ms)
    e = 0
    for m in ms:
        e = gcd(e, m)
    out = {}
    binom = 1
    for j in range(r):
        if j > 0:
            binom = binom * (r - j) // j
        for c in range(e):
            count = binom
            if j == 0 and c == 0:
                count -= 1  # reduced cohomology
            if count == 0:
                continue
            alpha = Fraction(r - j) - Fraction(c, e)
            sign = 1 if (j - r + 1) % 2 == 0 else -1
            out[alpha] = out.get(alpha, 0) + sign * count
    return Spectrum.make(out, ("germ", r))


def sp_ordinary(k: int) -> Spectrum:
    """Spectrum of k distinct reduced concurrent lines in the plane, via the
    quasi-homogeneous product rule on the equisingular model x^k + y^k:
    exponent (i+j)/k for 1 <= i, j <= k-1, counted with multiplicity."""
    if k < 2:
        raise SpectrumError("ordinary plane germ needs k >= 2 lines")
    out = {}
    for i in range(1, k):
        for j in range(1, k):
            a = Fraction(i + j, k)
            out[a] = out.get(a, 0) + 1
    return Spectrum.make(out, ("germ", 2))


def sp_shift(germ_sp: Spectrum, stratum: Stratum, n: int) -> Spectrum:
    """Reindex a germ spectrum to the ambient stratum frame: exponents move
    up by dim S and multiplicities pick up (-1)^{dim S}."""
    kind, d = germ_sp.frame
    if kind != "germ":
        raise SpectrumError(f"expected a germ frame, got {germ_sp.frame}")
    if d != stratum.edge.codim:
        raise SpectrumError(
            f"germ frame dimension {d} does not match stratum codimension "
            f"{stratum.edge.codim}")
    sign = (-1) ** stratum.dim
    out = {a + stratum.dim: sign * m for a, m in germ_sp.entries}
    return Spectrum.make(out, ("stratum", n))


def sp_unshift(stratum_sp: Spectrum, stratum: Stratum) -> Spectrum:
    """Inverse of sp_shift."""
    kind, _ = stratum_sp.frame
    if kind != "stratum":
        raise SpectrumError(f"expected a stratum frame, got {stratum_sp.frame}")
    sign = (-1) ** stratum.dim
    out = {a - stratum.dim: sign * m for a, m in stratum_sp.entries}
    return Spectrum.make(out, ("germ", stratum.edge.codim))


@dataclass(frozen=True)
class GermKind:
    """Classification of a localized germ: 'monomial' with its exponent
    vector, 'ordinary' with its line count, or 'user_table'."""

    tag: str
    data: tuple = ()

    def describe(self) -> str:
        if self.tag == "monomial":
            return "monomial(" + ",".join(map(str, self.data)) + ")"
        if self.tag == "ordinary":
            return f"ordinary({self.data[0]})"
        return "user_table_required"


def classify_germ(loc: LocalizedArrangement) -> GermKind:
    if loc.boolean:
        return GermKind("monomial", loc.mults)
    if loc.rank == 2 and loc.reduced:
        return GermKind("ordinary", (loc.size,))
    return GermKind("user_table")


def _is_isolated(loc: LocalizedArrangement) -> bool:
    # A localized arrangement germ is an isolated singularity exactly for a
    # single (possibly multiple) hyperplane or a reduced plane germ.
    return loc.rank == 1 or (loc.rank == 2 and loc.reduced)


def sp_validate(sp: Spectrum, loc: LocalizedArrangement) -> dict:
    """Validate a germ spectrum against its localized arrangement.

    Checks support within (0, rank) with denominators dividing the local
    degree, the signed total-mass identity against the Milnor-fiber Euler
    characteristic, and the exponent symmetry for isolated germs.
    Returns {"ok": bool, "failures": [...]}.
    """
    failures = []
    kind, d = sp.frame
    if kind != "germ" or d != loc.rank:
        failures.append(f"frame {sp.frame} does not match germ dimension {loc.rank}")
    m_s = loc.m_s
    for a, _ in sp.entries:
        if not (0 < a < loc.rank):
            failures.append(f"support: exponent {a} outside (0, {loc.rank})")
        if (a * m_s).denominator != 1:
            failures.append(f"support: exponent {a} has denominator not dividing {m_s}")
    expected_mass = (-1) ** (loc.rank - 1) * (milnor_fiber_chi(loc) - 1)
    if sp.mass != expected_mass:
        failures.append(f"mass: total {sp.mass} != expected {expected_mass}")
    if _is_isolated(loc):
        table = sp.as_dict()
        for a, m in table.items():
            if table.get(loc.rank - a, 0) != m:
                failures.append(f"symmetry: n_{a} = {m} but "
                                f"n_{loc.rank - a} = {table.get(loc.rank - a, 0)}")
                break
    return {"ok": not failures, "failures": failures}


def catalogue_spectrum(arr: Arrangement, edge: Edge,
                       loc: LocalizedArrangement = None):
    """Built-in germ spectrum for an edge, or None when only a user table
    will do (non-monomial germs that are not reduced plane germs)."""
    if loc is None:
        loc = localize(arr, edge)
    kind = classify_germ(loc)
    if kind.tag == "monomial":
        return sp_monomial(kind.data)
    if kind.tag == "ordinary":
        return sp_ordinary(kind.data[0])
    return None


def sp_user_load(source, arr: Arrangement) -> dict:
    """Load and validate user spectrum tables.

    source is a path or a parsed mapping {edge-key: [{"alpha": "p/q",
    "mult": int}, ...]} with exponents in the germ frame.  Every table is
    validated against its edge before use; any failure rejects the load.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SpectrumError(f"malformed JSON: {exc}")
    else:
        data = source
    if not isinstance(data, dict):
        raise SpectrumError("spectrum tables must be a JSON object keyed by edge")
    by_key = {e.key: e for e in edges(arr)}
    out = {}
    for key, entries in data.items():
        if key not in by_key:
            raise SpectrumError(f"unknown edge key {key!r}")
        edge = by_key[key]
        table = {}
        for item in entries:
            try:
                alpha = rat(item["alpha"])
                mult = int(item["mult"])
            except (KeyError, TypeError, ValueError) as exc:
                raise SpectrumError(f"bad spectrum entry {item!r}: {exc}")
            table[alpha] = table.get(alpha, 0) + mult
        sp = Spectrum.make(table, ("germ", edge.codim))
        report = sp_validate(sp, localize(arr, edge))
        if not report["ok"]:
            raise SpectrumValidationError(
                f"table for edge {key} rejected: " + "; ".join(report["failures"]))
        out[key] = sp
    return out


def stratum_spectrum(arr: Arrangement, stratum: Stratum,
                     user_tables: dict = None):
    """Germ spectrum for a stratum from the catalogue or the user tables.
    User tables win over the catalogue when both exist."""
    key = stratum.edge.key
    if user_tables and key in user_tables:
        return user_tables[key]
    return catalogue_spectrum(arr, stratum.edge)
