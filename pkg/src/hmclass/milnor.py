"""Assembly of the Hirzebruch-Milnor class of an arrangement divisor.

The class is summed stratum by stratum from spectrum multiplicities,
Deligne-extension line bundles twisted by logarithmic cotangent powers,
and the scaled Todd transformation, then pushed into the labeled Chow
basis of the singular locus.  An independent Euler-weighted Chern path
provides the cross-check at y = -1, and a degree-zero comparison against
the virtual-genus difference is always reported.  The one unprintable
global choice (a shift convention) is quarantined in ConventionSet and
explored exhaustively by calibrate().
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .ambient import GradedClass, virtual_genus
from .arrangement import Arrangement, chi_y, complement_chi, localize, sigma_strata
from .coeffs import PolyY, RatFuncY
from .genera import ChernData, chern_to_ch
from .rings import RingElement, exp_nilpotent
from .spectra import sp_shift, stratum_spectrum
from .strata import (EXT_HALF_OPEN_DOWN, EXT_HALF_OPEN_UP, LabelSchema,
                     SigmaChowVector, StratumModel, build_labels, compactify,
                     deligne_class, k_representative, log_chern, push_to_sigma)

__all__ = [
    "MilnorError",
    "MissingSpectrumError",
    "PolynomialityError",
    "ConventionSet",
    "DEFAULT_CONVENTIONS",
    "ALL_CONVENTIONS",
    "MilnorReport",
    "td_transform",
    "td_1py",
    "assemble",
    "chern_milnor",
    "degree0_check",
    "calibrate",
]


class MilnorError(RuntimeError):
    pass


class MissingSpectrumError(MilnorError):
    """A stratum has no catalogue spectrum and no user table."""

    def __init__(self, keys):
        self.keys = list(keys)
        super().__init__(
            "missing spectrum tables for edges: " + ", ".join(self.keys))


class PolynomialityError(MilnorError):
    """A per-stratum sum kept a (1+y) denominator: convention violation."""

    def __init__(self, key, coefficient):
        self.key = key
        super().__init__(
            f"stratum {key}: non-polynomial contribution {coefficient}")


SIGN_MODES = ("as_printed", "flip_odd_strata")


@dataclass(frozen=True)
class ConventionSet:
    """The two unprinted global choices: an overall per-stratum sign and the
    half-open window for Deligne-extension residues."""

    sign_mode: str = "as_printed"
    extension_mode: str = EXT_HALF_OPEN_UP
    notes: str = ""

    def __post_init__(self):
        if self.sign_mode not in SIGN_MODES:
            raise ValueError(f"unknown sign mode {self.sign_mode!r}")
        if self.extension_mode not in (EXT_HALF_OPEN_UP, EXT_HALF_OPEN_DOWN):
            raise ValueError(f"unknown extension mode {self.extension_mode!r}")

    def label(self) -> str:
        return f"{self.sign_mode}/{self.extension_mode}"


DEFAULT_CONVENTIONS = ConventionSet()
ALL_CONVENTIONS = tuple(
    ConventionSet(s, e)
    for s in SIGN_MODES
    for e in (EXT_HALF_OPEN_UP, EXT_HALF_OPEN_DOWN)
)


def td_transform(ch_elem: RingElement, todd_elem: RingElement) -> GradedClass:
    """Todd-transform a Chern character and rescale the homology degree-k
    part by (1+y)^{-k}."""
    ring = ch_elem.ring
    total = ch_elem * todd_elem
    acc = ring.zero()
    for j in range(ring.dim + 1):
        part = total.graded_part(j)
        if part.is_zero():
            continue
        k = ring.dim - j
        if k:
            part = part * RatFuncY(PolyY.ONE, PolyY.ONE_PLUS_Y ** k)
        acc = acc + part
    return GradedClass(ring, acc)


def td_1py(cd: ChernData, model: StratumModel) -> GradedClass:
    """Scaled Todd transformation of a K-class given by Chern data on a
    stratum model."""
    return td_transform(chern_to_ch(cd, model.ring), model.todd())


@dataclass
class MilnorReport:
    arrangement: Arrangement
    conventions: ConventionSet
    schema: LabelSchema
    m_y: SigmaChowVector
    per_stratum: dict
    degree0: dict
    specializations: dict
    chern_path: SigmaChowVector
    cross_path_ok: bool
    models: list = field(default_factory=list)

    def to_json(self, dump_strata: bool = False) -> dict:
        out = {
            "n": self.arrangement.n,
            "m": self.arrangement.m,
            "conventions": {
                "sign_mode": self.conventions.sign_mode,
                "extension_mode": self.conventions.extension_mode,
            },
            "M_y": self.m_y.to_json(),
            "per_stratum": {k: v.to_json() for k, v in
                            self.per_stratum.items()},
            "specializations": {
                str(y0): {k: str(v.num.coeff(0)) for k, v in
                          vec.values.items()}
                for y0, vec in self.specializations.items()
            },
            "degree0": self.degree0,
            "cross_path_ok": self.cross_path_ok,
            "cross_path": {
                "ok": self.cross_path_ok,
                "chern_milnor": {k: str(v.num.coeff(0)) for k, v in
                                 self.chern_path.values.items()},
            },
        }
        if dump_strata:
            out["strata"] = [m.to_json() for m in self.models]
        return out


def _stratum_contribution(arr: Arrangement, stratum, germ_sp, model,
                          conv: ConventionSet) -> RingElement:
    """Sum over exponents and cotangent powers for one stratum, on the model
    ring, with the degree scaling already applied."""
    n = arr.n
    ring = model.ring
    strat_sp = sp_shift(germ_sp, stratum, n)
    acc = ring.zero()
    minus_y = PolyY([0, -1])
    log_data = [log_chern(model, q) for q in range(model.dim + 1)]
    ch_log = [chern_to_ch(cd, ring) for cd in log_data]
    todd = model.todd()
    for alpha, n_alpha in strat_sp.entries:
        k = k_representative(alpha, model.m_s, conv.extension_mode)
        ch_line = exp_nilpotent(deligne_class(model, k, conv.extension_mode))
        p = math.floor(n - alpha)
        for q in range(model.dim + 1):
            sign = 1 if (q + n - 1) % 2 == 0 else -1
            weight = RatFuncY(minus_y ** (p + q) * (sign * n_alpha))
            cls = td_transform(ch_line * ch_log[q], todd)
            acc = acc + cls.elem * weight
    return acc


def assemble(arr: Arrangement, user_tables: dict = None,
             conv: ConventionSet = DEFAULT_CONVENTIONS) -> MilnorReport:
    """Assemble the Hirzebruch-Milnor class of the arrangement divisor.

    Every stratum of the singular locus needs a spectrum (catalogue or
    user table); each per-stratum sum must come out polynomial in y, and
    a failure is raised as a convention violation rather than silenced.
    """
    schema = build_labels(arr)
    strata = sigma_strata(arr)
    spectra = {}
    missing = []
    for s in strata:
        sp = stratum_spectrum(arr, s, user_tables)
        if sp is None:
            missing.append(s.key)
        else:
            spectra[s.key] = sp
    if missing:
        raise MissingSpectrumError(missing)

    m_y = schema.zero_vector()
    per_stratum = {}
    models = []
    for s in strata:
        germ = spectra[s.key]
        if germ.is_zero():
            continue  # skip by spectrum content only
        model = compactify(arr, s)
        models.append(model)
        elem = _stratum_contribution(arr, s, germ, model, conv)
        for c in elem.coeffs:
            if not c.is_polynomial():
                raise PolynomialityError(s.key, c)
        if conv.sign_mode == "flip_odd_strata" and s.dim % 2 == 1:
            elem = -elem
        contribution = push_to_sigma(schema, s.edge, GradedClass(model.ring, elem))
        per_stratum[s.key] = contribution
        m_y = m_y + contribution

    chern_path = chern_milnor(arr, schema)
    spec_minus1 = m_y.specialize(-1)
    report = MilnorReport(
        arrangement=arr,
        conventions=conv,
        schema=schema,
        m_y=m_y,
        per_stratum=per_stratum,
        degree0={},
        specializations={-1: spec_minus1, 0: m_y.specialize(0),
                         1: m_y.specialize(1)},
        chern_path=chern_path,
        cross_path_ok=(spec_minus1 == chern_path),
        models=models,
    )
    report.degree0 = degree0_check(arr, report)
    return report


def chern_milnor(arr: Arrangement, schema: LabelSchema = None) -> SigmaChowVector:
    """Euler-weighted Chern-class path: sum over strata of the reduced
    Milnor-fiber Euler characteristic times the Chern class of the
    logarithmic tangent bundle, pushed to the Chow basis.  Needs no
    spectra and no conventions."""
    if schema is None:
        schema = build_labels(arr)
    acc = schema.zero_vector()
    for s in sigma_strata(arr):
        loc = localize(arr, s.edge)
        chi_tilde = complement_chi(loc) * loc.m_s - 1
        if chi_tilde == 0:
            continue
        model = compactify(arr, s)
        ring = model.ring
        if model.dim == 0:
            total = ring.one()
        else:
            cd = log_chern(model, 1)
            total = ring.one() - cd.c(1)
            if model.dim == 2:
                total = total + cd.c(2)
        pushed = push_to_sigma(schema, s.edge, GradedClass(ring, total))
        acc = acc + pushed * chi_tilde
    return acc


def degree0_check(arr: Arrangement, report: MilnorReport) -> dict:
    """Compare the trace of the assembled class with the wholly independent
    degree-zero difference: the virtual genus of the divisor degree minus
    the chi_y genus of the underlying reduced divisor."""
    vg = virtual_genus(arr.m, arr.n)
    cx = chi_y(arr)
    delta = vg - cx
    trace = report.m_y.trace().as_poly()
    return {
        "virtual_genus": vg.as_strings(),
        "chi_y_X": cx.as_strings(),
        "delta": delta.as_strings(),
        "trace_M_y": trace.as_strings(),
        "equal": delta == trace,
    }


def calibrate(suite) -> tuple:
    """Exhaustively evaluate the convention space over a suite of
    arrangements.

    suite: iterable of (name, arrangement, user_tables-or-None).  Returns
    (chosen_conventions, report).  The chosen set maximizes the number of
    suite members whose degree-zero comparison holds, ties broken toward
    the default; disagreements are reported per member, never reconciled.
    """
    suite = list(suite)
    results = {}
    scores = []
    for conv in ALL_CONVENTIONS:
        per = {}
        score = 0
        for name, arr, tables in suite:
            try:
                rep = assemble(arr, tables, conv)
            except MilnorError as exc:
                per[name] = {
                    "polynomial": False,
                    "degree0_equal": False,
                    "cross_path_ok": False,
                    "error": str(exc),
                }
                continue
            entry = {
                "polynomial": True,
                "degree0_equal": rep.degree0["equal"],
                "cross_path_ok": rep.cross_path_ok,
                "delta": rep.degree0["delta"],
                "trace_M_y": rep.degree0["trace_M_y"],
            }
            per[name] = entry
            if rep.degree0["equal"]:
                score += 1
        results[conv.label()] = per
        scores.append((score, conv))
    best_score = max(s for s, _ in scores)
    chosen = next(conv for s, conv in scores if s == best_score)
    report = {
        "suite": [name for name, _, _ in suite],
        "conventions": results,
        "chosen": {
            "sign_mode": chosen.sign_mode,
            "extension_mode": chosen.extension_mode,
            "degree0_agreement": best_score,
            "out_of": len(suite),
        },
    }
    if not suite:
        chosen = DEFAULT_CONVENTIONS
        report["chosen"] = {
            "sign_mode": chosen.sign_mode,
            "extension_mode": chosen.extension_mode,
            "degree0_agreement": 0,
            "out_of": 0,
        }
    return chosen, report
