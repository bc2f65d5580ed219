"""Good compactifications of strata and the Chow model of the singular locus.

Strata of dimension <= 2 are compactified explicitly: a point, a line, or
the stratum closure blown up at the points where the induced arrangement
fails to be normal crossing.  Each model carries its boundary divisors
with integer residues, Deligne-extension line-bundle classes, logarithmic
cotangent Chern data, and a pushforward to the labeled Chow basis of the
singular locus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ambient import GradedClass
from .arrangement import Arrangement, Edge, Stratum, edges
from .coeffs import PolyY, RatFuncY, rat
from .genera import ChernData, todd_from_chern
from .rings import BlownPlaneRing, ProjRing, RingElement

__all__ = [
    "StrataError",
    "BoundaryComponent",
    "StratumModel",
    "compactify",
    "residues",
    "deligne_base",
    "deligne_class",
    "deligne_residues",
    "power_identity_holds",
    "log_chern",
    "LabelSchema",
    "build_labels",
    "SigmaChowVector",
    "push_to_sigma",
    "chow_dims",
    "homology_weight_dims",
]


class StrataError(ValueError):
    """Stratum-model construction or query error."""


# ---------------------------------------------------------------------------
# compactified models


@dataclass(frozen=True)
class BoundaryComponent:
    name: str          # sub-edge key or "infinity"
    source: str        # "edge" | "exceptional" | "infinity"
    m_sub: int         # induced multiplicity (0 for infinity)
    m_res: int         # residue integer in [0, m_s)
    cls: RingElement   # divisor class in the model ring


@dataclass(frozen=True)
class StratumModel:
    stratum: Stratum
    kind: str                  # "point" | "curve" | "surface"
    ring: object
    blown: tuple               # keys of blown-up points (surface only)
    boundary: tuple            # BoundaryComponent list
    m_s: int
    out_degree: int            # total multiplicity away from the stratum

    @property
    def dim(self) -> int:
        return self.stratum.dim

    @property
    def edge(self) -> Edge:
        return self.stratum.edge

    def hyperplane_cls(self) -> RingElement:
        """Pullback of the ambient hyperplane class (zero on a point)."""
        if self.kind == "point":
            return self.ring.zero()
        if self.kind == "curve":
            return self.ring.basis_element(1)
        return self.ring.e

    def tangent_chern(self) -> ChernData:
        if self.kind == "point":
            return ChernData(0, ())
        if self.kind == "curve":
            return ChernData(1, (self.ring.basis_element(1) * 2,))
        e, pt = self.ring.e, self.ring.pt
        c1 = e * 3
        for p in self.blown:
            c1 = c1 - self.ring.eps(p)
        c2 = pt * (3 + len(self.blown))
        return ChernData(2, (c1, c2))

    def todd(self) -> RingElement:
        if self.kind == "point":
            return self.ring.one()
        return todd_from_chern(self.tangent_chern(), self.ring)

    def to_json(self) -> dict:
        return {
            "edge": self.edge.key,
            "kind": self.kind,
            "dim": self.dim,
            "m_s": self.m_s,
            "ring_basis": list(self.ring.names),
            "blown_points": list(self.blown),
            "boundary": [
                {
                    "name": c.name,
                    "source": c.source,
                    "m_sub": c.m_sub,
                    "m_res": c.m_res,
                    "class": [str(x) for x in c.cls.coeffs],
                }
                for c in self.boundary
            ],
        }


def compactify(arr: Arrangement, stratum: Stratum) -> StratumModel:
    """Good compactification of a stratum of dimension <= 2.

    Curves need no blow-ups; surfaces are blown up exactly at the points
    of the closure through which at least three induced boundary lines
    pass.  The generic auxiliary section contributes one extra boundary
    component symbolically (a generic point on curves, a generic line on
    surfaces) and never passes through an edge.
    """
    d = stratum.dim
    if d > 2:
        raise StrataError(f"unsupported stratum dimension {d} (cap is 2)")
    m_s = stratum.edge.m_s
    out_degree = arr.m - m_s

    def res(value: int) -> int:
        return value % m_s

    if d == 0:
        return StratumModel(stratum, "point", ProjRing(0), (), (), m_s, out_degree)

    if d == 1:
        ring = ProjRing(1)
        pt = ring.basis_element(1)
        comps = [BoundaryComponent(e.key, "edge", m_rel, res(m_rel), pt)
                 for e, m_rel in stratum.boundary]
        comps.append(BoundaryComponent("infinity", "infinity", 0,
                                       res(-arr.m), pt))
        return StratumModel(stratum, "curve", ring, (), tuple(comps),
                            m_s, out_degree)

    lines = [(e, m_rel) for e, m_rel in stratum.boundary
             if e.codim == stratum.edge.codim + 1]
    points = [(e, m_rel) for e, m_rel in stratum.boundary
              if e.codim == stratum.edge.codim + 2]
    blown = []
    for p, m_rel in points:
        through = [l for l, _ in lines if set(l.index_set) <= set(p.index_set)]
        if len(through) >= 3:
            blown.append(p.key)
    ring = BlownPlaneRing(tuple(blown))
    comps = []
    for l, m_rel in lines:
        cls = ring.e
        for p, _ in points:
            if p.key in blown and set(l.index_set) <= set(p.index_set):
                cls = cls - ring.eps(p.key)
        comps.append(BoundaryComponent(l.key, "edge", m_rel, res(m_rel), cls))
    for p, m_rel in points:
        if p.key in blown:
            comps.append(BoundaryComponent(p.key, "exceptional", m_rel,
                                           res(m_rel), ring.eps(p.key)))
    comps.append(BoundaryComponent("infinity", "infinity", 0, res(-arr.m),
                                   ring.e))
    return StratumModel(stratum, "surface", ring, tuple(blown), tuple(comps),
                        m_s, out_degree)


def residues(model: StratumModel) -> dict:
    """Residue integer per boundary component name; all lie in [0, m_s)."""
    return {c.name: c.m_res for c in model.boundary}


# ---------------------------------------------------------------------------
# Deligne-extension line bundles

EXT_HALF_OPEN_UP = "res_(0,1]"
EXT_HALF_OPEN_DOWN = "res_[0,1)"
EXTENSION_MODES = (EXT_HALF_OPEN_UP, EXT_HALF_OPEN_DOWN)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def deligne_base(model: StratumModel) -> RingElement:
    """First Chern class of the base extension bundle: the ambient twist by
    minus the rounded-up relative degree, corrected on the sub-edge
    transforms by the integer parts of the induced multiplicity ratios."""
    acc = model.hyperplane_cls() * (-_ceil_div(model.out_degree, model.m_s))
    for comp in model.boundary:
        if comp.source != "infinity":
            q = comp.m_sub // model.m_s
            if q:
                acc = acc + comp.cls * q
    return acc


def _twist(k: int, m_res: int, m_s: int, mode: str) -> int:
    if mode == EXT_HALF_OPEN_UP:
        return _ceil_div(k * m_res, m_s) - 1
    if mode == EXT_HALF_OPEN_DOWN:
        return (k * m_res) // m_s
    raise StrataError(f"unknown extension mode {mode!r}")


def k_representative(alpha: Fraction, m_s: int, mode: str) -> int:
    """Integer k with e(k/m_s) = e(-alpha), normalized per extension mode:
    k in {1..m_s} for residues in (0,1], k in {0..m_s-1} for [0,1)."""
    scaled = alpha * m_s
    if scaled.denominator != 1:
        raise StrataError(f"exponent {alpha} has denominator not dividing {m_s}")
    k = (-scaled.numerator) % m_s
    if mode == EXT_HALF_OPEN_UP and k == 0:
        k = m_s
    return k


def deligne_class(model: StratumModel, k: int,
                  mode: str = EXT_HALF_OPEN_UP) -> RingElement:
    """First Chern class of the k-th Deligne-extension power: k times the
    base class plus the boundary twists fixed by the residue rounding."""
    lo = 1 if mode == EXT_HALF_OPEN_UP else 0
    if not lo <= k <= model.m_s - 1 + lo:
        raise StrataError(f"k = {k} outside [{lo}, {model.m_s - 1 + lo}]")
    acc = deligne_base(model) * k
    for comp in model.boundary:
        t = _twist(k, comp.m_res, model.m_s, mode)
        if t:
            acc = acc + comp.cls * t
    return acc


def deligne_residues(model: StratumModel, k: int,
                     mode: str = EXT_HALF_OPEN_UP) -> dict:
    """Connection residues k*m_res/m_s minus their boundary twist, per
    component; they lie in (0,1] or [0,1) according to the mode."""
    out = {}
    for comp in model.boundary:
        t = _twist(k, comp.m_res, model.m_s, mode)
        out[comp.name] = Fraction(k * comp.m_res, model.m_s) - t
    return out


def power_identity_holds(model: StratumModel) -> bool:
    """Exact divisor-class form of the m_s-th tensor power identity: m_s
    times the base class equals minus the residue-weighted boundary sum."""
    lhs = deligne_base(model) * model.m_s
    rhs = model.ring.zero()
    for comp in model.boundary:
        rhs = rhs - comp.cls * comp.m_res
    return lhs == rhs


# ---------------------------------------------------------------------------
# logarithmic cotangent data


def log_chern(model: StratumModel, q: int) -> ChernData:
    """Chern data of the q-th logarithmic cotangent power along the full
    boundary divisor of the model."""
    if q < 0 or q > model.dim:
        raise StrataError(f"q = {q} outside [0, {model.dim}]")
    ring = model.ring
    if model.kind == "point":
        return ChernData(1, ())
    if model.kind == "curve":
        if q == 0:
            return ChernData(1, (ring.zero(),))
        deg = -2 + len(model.boundary)
        return ChernData(1, (ring.basis_element(1) * deg,))
    if q == 0:
        return ChernData(1, (ring.zero(), ring.zero()))
    tangent = model.tangent_chern()
    k_cls = -tangent.c(1)
    if q == 2:
        c1 = k_cls
        for comp in model.boundary:
            c1 = c1 + comp.cls
        return ChernData(1, (c1, ring.zero()))
    # q == 1: c(log cotangent) = c(cotangent) * prod over boundary of
    # (1 - D)^{-1}, truncated in degree 2
    total = ring.one() + k_cls + tangent.c(2)
    for comp in model.boundary:
        total = total * (ring.one() + comp.cls + comp.cls * comp.cls)
    return ChernData(2, (total.graded_part(1), total.graded_part(2)))


# ---------------------------------------------------------------------------
# Chow labels of the singular locus


@dataclass(frozen=True)
class Label:
    name: str
    degree: int
    kind: str        # "hyperplane" | "codim2" | "shared"
    edge_key: str = ""


_DIM_LETTER = {0: "P", 1: "L", 2: "F"}


def _index_body(index_set) -> str:
    one_based = [j + 1 for j in index_set]
    if all(v <= 9 for v in one_based):
        return "".join(str(v) for v in one_based)
    return ".".join(str(v) for v in one_based)


def _own_label_name(arr: Arrangement, edge: Edge) -> str:
    if edge.codim == 1:
        return f"H_{{{_index_body(edge.index_set)}}}"
    letter = _DIM_LETTER.get(arr.n - edge.codim, f"S{arr.n - edge.codim}")
    return f"{letter}_{{{_index_body(edge.index_set)}}}"


@dataclass(frozen=True)
class LabelSchema:
    """Ordered Chow basis of the singular locus: one label per multiple
    hyperplane in top degree, one per codimension-2 edge away from the
    multiple hyperplanes, and one shared label per remaining degree."""

    n: int
    labels: tuple
    _edge_in_sigma1: tuple  # keys of edges inside a multiple hyperplane

    def names(self) -> list:
        return [l.name for l in self.labels]

    def by_name(self, name: str) -> Label:
        for l in self.labels:
            if l.name == name:
                return l
        raise StrataError(f"unknown label {name!r}")

    def shared(self, degree: int) -> str:
        for l in self.labels:
            if l.kind == "shared" and l.degree == degree:
                return l.name
        raise StrataError(f"no shared label in degree {degree}")

    def own(self, edge_key: str) -> str:
        for l in self.labels:
            if l.edge_key == edge_key:
                return l.name
        raise StrataError(f"no own label for edge {edge_key}")

    def in_sigma1(self, edge: Edge) -> bool:
        return edge.key in self._edge_in_sigma1

    def resolve_fundamental(self, edge: Edge) -> str:
        if edge.codim == 1:
            return self.own(edge.key)
        if edge.codim == 2 and not self.in_sigma1(edge):
            return self.own(edge.key)
        if edge.codim == 2:
            return self.shared(self.n - 2)
        return self.shared(self.n - edge.codim)

    def resolve_push(self, edge: Edge, k: int) -> str:
        dim = self.n - edge.codim
        if k == dim:
            return self.resolve_fundamental(edge)
        if k > dim:
            raise StrataError(f"degree {k} exceeds stratum dimension {dim}")
        return self.shared(k)

    def zero_vector(self) -> "SigmaChowVector":
        return SigmaChowVector(self, {l.name: RatFuncY.ZERO for l in self.labels})


def build_labels(arr: Arrangement) -> LabelSchema:
    all_edges = edges(arr)
    multiple = set(arr.multiple_indices())
    in_sigma1 = tuple(e.key for e in all_edges
                      if any(j in multiple for j in e.index_set))
    # canonical order: degree descending, own labels before the shared one,
    # own labels by sorted hyperplane index set
    labels = []
    for e in all_edges:  # all_edges is sorted by (codim, index set)
        if e.codim == 1 and e.index_set[0] in multiple:
            labels.append(Label(_own_label_name(arr, e), arr.n - 1,
                                "hyperplane", e.key))
    for e in all_edges:
        if e.codim == 2 and e.key not in in_sigma1:
            labels.append(Label(_own_label_name(arr, e), arr.n - 2,
                                "codim2", e.key))
    sigma_nonempty = bool(multiple) or any(e.codim >= 2 for e in all_edges)
    if sigma_nonempty:
        if multiple and arr.n >= 2:
            labels.append(Label(f"Q_{{{arr.n - 2}}}", arr.n - 2, "shared"))
        for k in range(arr.n - 3, -1, -1):
            labels.append(Label(f"Q_{{{k}}}", k, "shared"))
    return LabelSchema(arr.n, tuple(labels), in_sigma1)


class SigmaChowVector:
    """Element of the labeled Chow basis with rational-function-in-y
    coefficients (polynomial after full assembly)."""

    __slots__ = ("schema", "values")

    def __init__(self, schema: LabelSchema, values: dict):
        self.schema = schema
        self.values = {l.name: values.get(l.name, RatFuncY.ZERO)
                       for l in schema.labels}

    def add_to(self, name: str, value: RatFuncY):
        self.values[name] = self.values[name] + value

    def __add__(self, other: "SigmaChowVector"):
        out = SigmaChowVector(self.schema, dict(self.values))
        for name, v in other.values.items():
            out.add_to(name, v)
        return out

    def __mul__(self, scalar):
        return SigmaChowVector(
            self.schema, {k: v * scalar for k, v in self.values.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1)

    def __eq__(self, other):
        if not isinstance(other, SigmaChowVector):
            return NotImplemented
        return self.values == other.values

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def coefficient(self, name: str) -> RatFuncY:
        return self.values[name]

    def trace(self) -> RatFuncY:
        """Sum of the degree-zero coefficients (each basis point has
        degree one)."""
        acc = RatFuncY.ZERO
        for l in self.schema.labels:
            if l.degree == 0:
                acc = acc + self.values[l.name]
        return acc

    def specialize(self, y0) -> "SigmaChowVector":
        y0 = rat(y0)
        return SigmaChowVector(
            self.schema,
            {k: RatFuncY(PolyY([v(y0)])) for k, v in self.values.items()})

    def is_polynomial(self) -> bool:
        return all(v.is_polynomial() for v in self.values.values())

    def to_json(self, drop_zero: bool = False) -> dict:
        out = {}
        for l in self.schema.labels:
            v = self.values[l.name]
            if drop_zero and v.is_zero():
                continue
            out[l.name] = v.as_poly().as_strings()
        return out

    def __repr__(self):
        items = [f"{k}: {v}" for k, v in self.values.items() if not v.is_zero()]
        return "SigmaChowVector(" + ", ".join(items) + ")"


def push_to_sigma(schema: LabelSchema, edge: Edge,
                  gc: GradedClass) -> SigmaChowVector:
    """Push a model class to the labeled Chow basis: the fundamental part
    lands on the closure's own or shared label, lower parts land on the
    shared label of their degree, exceptional-curve classes contract to
    zero."""
    out = schema.zero_vector()
    dim = gc.dim
    for k in range(dim + 1):
        part = gc.part(k)
        for i, c in enumerate(part.coeffs):
            if c.is_zero():
                continue
            if gc.ring.names[i].startswith("eps"):
                continue  # exceptional curves contract
            out.add_to(schema.resolve_push(edge, k), c)
    return out


def relabel_vector(vec: SigmaChowVector, perm: dict,
                   target: LabelSchema) -> SigmaChowVector:
    """Transport a vector along a hyperplane relabeling (1-based index map),
    for comparing lattice-isomorphic arrangements."""

    def rename(name: str) -> str:
        if not name or "{" not in name or name.startswith("Q_"):
            return name
        prefix, body = name.split("_{", 1)
        body = body.rstrip("}")
        parts = body.split(".") if "." in body else list(body)
        mapped = sorted(perm[int(p)] for p in parts)
        if all(v <= 9 for v in mapped):
            new_body = "".join(str(v) for v in mapped)
        else:
            new_body = ".".join(str(v) for v in mapped)
        return f"{prefix}_{{{new_body}}}"

    values = {rename(k): v for k, v in vec.values.items()}
    return SigmaChowVector(target, values)


# ---------------------------------------------------------------------------
# dimension tables


def chow_dims(arr: Arrangement) -> dict:
    """Ranks of the rational Chow groups of the divisor and of its singular
    locus, by homology degree."""
    all_edges = edges(arr)
    multiple = set(arr.multiple_indices())
    in_sigma1 = {e.key for e in all_edges
                 if any(j in multiple for j in e.index_set)}
    n, r = arr.n, arr.r
    ch_x = {n - 1: r}
    for k in range(n - 1):
        ch_x[k] = 1
    sigma_nonempty = bool(multiple) or any(e.codim >= 2 for e in all_edges)
    ch_sigma = {}
    if sigma_nonempty:
        ch_sigma[n - 1] = len(multiple)
        if n >= 2:
            own2 = sum(1 for e in all_edges
                       if e.codim == 2 and e.key not in in_sigma1)
            ch_sigma[n - 2] = own2 + (1 if multiple else 0)
        for k in range(n - 3, -1, -1):
            ch_sigma[k] = 1
    else:
        for k in range(n):
            ch_sigma[k] = 0
    return {"CH_X": ch_x, "CH_Sigma": ch_sigma}


def homology_weight_dims(arr: Arrangement) -> dict:
    """Ranks of the lowest-weight graded pieces of the divisor homology:
    the component count on top, one in every other even degree, zero in
    odd degrees."""
    n, r = arr.n, arr.r
    out = {}
    for k in range(2 * n - 1):
        if k == 2 * n - 2:
            out[k] = r
        elif k % 2 == 0:
            out[k] = 1
        else:
            out[k] = 0
    return out
