"""Mixed-type parameter space: schema, values, case vectors, distance, proximity.

Every value is kept in interval/set form (a point is a degenerate interval) so
one intersection rule covers equality checks for all three parameter kinds.
All types are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import ArgumentError, SchemaError

NUMERIC = "numeric"
ORDINAL = "ordinal"
CATEGORICAL = "categorical"
KINDS = (NUMERIC, ORDINAL, CATEGORICAL)

_EPS = 1e-9


@dataclass(frozen=True)
class Interval:
    """Closed numeric interval; points are stored as [v, v]."""

    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise SchemaError(f"interval lower bound {self.lo} exceeds upper bound {self.hi}")

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2.0

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


@dataclass(frozen=True)
class LevelRange:
    """Contiguous inclusive range on an ordinal scale, stored by endpoint level names."""

    lo: str
    hi: str


@dataclass(frozen=True)
class LabelSet:
    """Non-empty subset of a categorical parameter's labels."""

    labels: frozenset[str]

    def __post_init__(self):
        if not self.labels:
            raise SchemaError("label set must be non-empty")

    def intersects(self, other: "LabelSet") -> bool:
        return bool(self.labels & other.labels)


Value = Interval | LevelRange | LabelSet


def value_key(v: Value) -> tuple:
    """Canonical sort key for values of any kind."""
    if isinstance(v, Interval):
        return ("i", v.lo, v.hi)
    if isinstance(v, LevelRange):
        return ("l", v.lo, v.hi)
    return ("s", tuple(sorted(v.labels)))


@dataclass(frozen=True)
class ParameterDef:
    """Declaration of one parameter: kind, admissible values, norm, proximity, weight.

    ``radius`` is a numeric half-width for numeric parameters and a step count
    for ordinal ones; categorical proximity comes from the ``neighbors``
    adjacency instead.  ``bins`` are optional non-intersecting numeric cut
    intervals used as mining atoms.
    """

    name: str
    kind: str
    units: str | None = None
    bounds: tuple[float, float] | None = None
    levels: tuple[str, ...] = ()
    labels: frozenset[str] = frozenset()
    norm: Value | None = None
    radius: float = 0.0
    neighbors: tuple[tuple[str, tuple[str, ...]], ...] = ()
    weight: float = 1.0
    bins: tuple[tuple[float, float], ...] = ()
    help_text: str = ""

    def level_index(self, level: str) -> int:
        try:
            return self.levels.index(level)
        except ValueError:
            raise SchemaError(f"unknown level {level!r}", parameter=self.name) from None

    def neighbor_map(self) -> dict[str, frozenset[str]]:
        return {label: frozenset(adj) for label, adj in self.neighbors}

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise SchemaError(f"unknown kind {self.kind!r}", parameter=self.name)
        if self.weight < 0:
            raise SchemaError("weight must be non-negative", parameter=self.name)
        if self.radius < 0:
            raise SchemaError("proximity radius must be non-negative", parameter=self.name)
        if self.kind == NUMERIC:
            if self.bounds is None:
                raise SchemaError("numeric parameter needs a [min, max] range", parameter=self.name)
            lo, hi = self.bounds
            if not lo < hi:
                raise SchemaError("numeric range must have positive width", parameter=self.name)
            for blo, bhi in self.bins:
                if blo > bhi or blo < lo - _EPS or bhi > hi + _EPS:
                    raise SchemaError("bin outside declared range", parameter=self.name)
            for i, a in enumerate(self.bins):
                for b in self.bins[i + 1:]:
                    if Interval(*a).intersects(Interval(*b)):
                        raise SchemaError("bins must not intersect", parameter=self.name)
        elif self.kind == ORDINAL:
            if not self.levels:
                raise SchemaError("ordinal parameter needs a level list", parameter=self.name)
            if len(set(self.levels)) != len(self.levels):
                raise SchemaError("ordinal levels must be distinct", parameter=self.name)
        else:
            if not self.labels:
                raise SchemaError("categorical parameter needs a label set", parameter=self.name)
            for label, adj in self.neighbors:
                if label not in self.labels or not set(adj) <= self.labels:
                    raise SchemaError("neighbor map mentions undeclared label", parameter=self.name)
        if self.norm is not None:
            self.check_value(self.norm)

    def check_value(self, v: Value) -> None:
        """Raise SchemaError unless ``v`` fits this parameter's kind and range."""
        if self.kind == NUMERIC:
            if not isinstance(v, Interval):
                raise SchemaError("expected a numeric interval", parameter=self.name)
            lo, hi = self.bounds
            if v.lo < lo - _EPS or v.hi > hi + _EPS:
                raise SchemaError(
                    f"value [{v.lo}, {v.hi}] outside declared range [{lo}, {hi}]",
                    parameter=self.name,
                )
        elif self.kind == ORDINAL:
            if not isinstance(v, LevelRange):
                raise SchemaError("expected an ordinal level range", parameter=self.name)
            if self.level_index(v.lo) > self.level_index(v.hi):
                raise SchemaError("level range endpoints out of order", parameter=self.name)
        else:
            if not isinstance(v, LabelSet):
                raise SchemaError("expected a label set", parameter=self.name)
            if not v.labels <= self.labels:
                unknown = sorted(v.labels - self.labels)
                raise SchemaError(f"undeclared labels {unknown}", parameter=self.name)


@dataclass(frozen=True)
class Solution:
    id: str
    label: str = ""


@dataclass(frozen=True)
class CaseVector:
    """A set of named components; at most one per name, kept sorted by name."""

    components: tuple[tuple[str, Value], ...] = ()

    def __post_init__(self):
        names = [n for n, _ in self.components]
        if len(set(names)) != len(names):
            raise ArgumentError("duplicate component name in case vector")
        object.__setattr__(self, "components", tuple(sorted(self.components)))

    @classmethod
    def of(cls, items: Mapping[str, Value] | Iterable[tuple[str, Value]]) -> "CaseVector":
        if isinstance(items, Mapping):
            items = items.items()
        return cls(tuple(items))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.components)

    def get(self, name: str) -> Value | None:
        for n, v in self.components:
            if n == name:
                return v
        return None

    def has(self, name: str) -> bool:
        return self.get(name) is not None

    def with_component(self, name: str, value: Value) -> "CaseVector":
        rest = tuple((n, v) for n, v in self.components if n != name)
        return CaseVector(rest + ((name, value),))

    def without(self, name: str) -> "CaseVector":
        return CaseVector(tuple((n, v) for n, v in self.components if n != name))

    def key(self) -> tuple:
        return tuple((n, value_key(v)) for n, v in self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[tuple[str, Value]]:
        return iter(self.components)


EMPTY = CaseVector()


@dataclass(frozen=True)
class DomainSchema:
    """The parameter space: declarations, solution set, metric configuration."""

    parameters: tuple[ParameterDef, ...]
    solutions: tuple[Solution, ...]
    missing_penalty: float = 0.5

    def __post_init__(self):
        if not self.parameters:
            raise SchemaError("schema needs at least one parameter")
        if len(self.solutions) < 2:
            raise SchemaError("schema needs at least two solutions")
        names = [p.name for p in self.parameters]
        if len(set(names)) != len(names):
            dup = sorted(n for n in set(names) if names.count(n) > 1)
            raise SchemaError(f"duplicate parameter name {dup[0]!r}", parameter=dup[0])
        ids = [s.id for s in self.solutions]
        if len(set(ids)) != len(ids):
            raise SchemaError("duplicate solution id")
        if not 0.0 <= self.missing_penalty <= 1.0:
            raise SchemaError("missing penalty must lie in [0, 1]")
        for p in self.parameters:
            p.validate()
        object.__setattr__(self, "_by_name", {p.name: p for p in self.parameters})

    @property
    def dim(self) -> int:
        return len(self.parameters)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.parameters)

    @property
    def solution_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.solutions)

    def param(self, name: str) -> ParameterDef:
        try:
            return self._by_name[name]  # type: ignore[attr-defined]
        except KeyError:
            raise SchemaError("parameter not declared in schema", parameter=name) from None

    def solution_label(self, sid: str) -> str:
        for s in self.solutions:
            if s.id == sid:
                return s.label or s.id
        return sid

    # -- JSON value encoding ------------------------------------------------
    # numeric: 37.8 or [37.5, 38.1]; ordinal: "small" or ["small", "moderate"]
    # (range endpoints); categorical: "yes" or ["a", "b"] (label set).

    def parse_value(self, name: str, raw: object) -> Value:
        return parse_value_for(self.param(name), raw)

    def parse_vector(self, raw: Mapping[str, object]) -> CaseVector:
        return CaseVector(tuple((n, self.parse_value(n, r)) for n, r in raw.items()))

    def value_to_json(self, v: Value) -> object:
        if isinstance(v, Interval):
            return v.lo if v.lo == v.hi else [v.lo, v.hi]
        if isinstance(v, LevelRange):
            return v.lo if v.lo == v.hi else [v.lo, v.hi]
        labels = sorted(v.labels)
        return labels[0] if len(labels) == 1 else labels

    def vector_to_json(self, x: CaseVector) -> dict[str, object]:
        return {n: self.value_to_json(v) for n, v in x}

    def check_vector(self, x: CaseVector) -> None:
        for n, v in x:
            self.param(n).check_value(v)

    # -- document loading ---------------------------------------------------

    @classmethod
    def from_dict(cls, doc: Mapping) -> "DomainSchema":
        params = tuple(_param_from_dict(d) for d in doc.get("parameters", []))
        sols = tuple(
            Solution(d["id"], d.get("label", "")) if isinstance(d, Mapping) else Solution(str(d))
            for d in doc.get("solutions", [])
        )
        return cls(params, sols, float(doc.get("missing_penalty", 0.5)))

    @classmethod
    def from_json(cls, text: str) -> "DomainSchema":
        return cls.from_dict(json.loads(text))


def parse_value_for(p: ParameterDef, raw: object) -> Value:
    """Parse the JSON encoding of a value against one parameter declaration."""
    if p.kind == NUMERIC:
        if isinstance(raw, (int, float)) and not isinstance(raw, bool):
            v: Value = Interval(float(raw), float(raw))
        elif isinstance(raw, (list, tuple)) and len(raw) == 2:
            v = Interval(float(raw[0]), float(raw[1]))
        else:
            raise SchemaError(f"expected a number or [lo, hi], got {raw!r}", parameter=p.name)
    elif p.kind == ORDINAL:
        if isinstance(raw, str):
            v = LevelRange(raw, raw)
        elif isinstance(raw, (list, tuple)) and 1 <= len(raw) <= 2:
            v = LevelRange(str(raw[0]), str(raw[-1]))
        else:
            raise SchemaError(f"expected a level or [lo, hi], got {raw!r}", parameter=p.name)
    else:
        if isinstance(raw, str):
            v = LabelSet(frozenset([raw]))
        elif isinstance(raw, (list, tuple)) and raw:
            v = LabelSet(frozenset(str(x) for x in raw))
        else:
            raise SchemaError(f"expected a label or label list, got {raw!r}", parameter=p.name)
    p.check_value(v)
    return v


def _param_from_dict(d: Mapping) -> ParameterDef:
    name = d.get("name")
    if not name:
        raise SchemaError("parameter without a name")
    kind = d.get("kind", "")
    kwargs: dict = {
        "name": name,
        "kind": kind,
        "units": d.get("units"),
        "radius": float(d.get("proximity_radius", 0.0)),
        "weight": float(d.get("weight", 1.0)),
        "help_text": d.get("help", ""),
    }
    if kind == NUMERIC:
        rng = d.get("range")
        if not (isinstance(rng, (list, tuple)) and len(rng) == 2):
            raise SchemaError("numeric parameter needs a [min, max] range", parameter=name)
        kwargs["bounds"] = (float(rng[0]), float(rng[1]))
        kwargs["bins"] = tuple((float(a), float(b)) for a, b in d.get("bins", []))
    elif kind == ORDINAL:
        kwargs["levels"] = tuple(d.get("levels", ()))
    elif kind == CATEGORICAL:
        kwargs["labels"] = frozenset(d.get("labels", ()))
        kwargs["neighbors"] = tuple(
            (label, tuple(adj)) for label, adj in sorted(d.get("neighbors", {}).items())
        )
    param = ParameterDef(**kwargs)
    if d.get("norm") is not None:
        param.validate()
        return ParameterDef(**kwargs, norm=parse_value_for(param, d["norm"]))
    return param


# ---------------------------------------------------------------------------
# operations


def _values_intersect(p: ParameterDef, a: Value, b: Value) -> bool:
    if p.kind == NUMERIC:
        return a.intersects(b)  # type: ignore[union-attr]
    if p.kind == ORDINAL:
        alo, ahi = p.level_index(a.lo), p.level_index(a.hi)  # type: ignore[union-attr]
        blo, bhi = p.level_index(b.lo), p.level_index(b.hi)  # type: ignore[union-attr]
        return alo <= bhi and blo <= ahi
    return a.intersects(b)  # type: ignore[union-attr]


def components_equal(a: tuple[str, Value], b: tuple[str, Value], schema: DomainSchema) -> bool:
    """True iff both components carry the same name and their values intersect."""
    (an, av), (bn, bv) = a, b
    pa = schema.param(an)
    schema.param(bn)
    if an != bn:
        return False
    return _values_intersect(pa, av, bv)


def is_subvector(y: CaseVector, x: CaseVector, schema: DomainSchema) -> bool:
    """True iff every component of ``y`` is found (name + intersecting value) in ``x``."""
    for n, v in y:
        p = schema.param(n)
        xv = x.get(n)
        if xv is None or not _values_intersect(p, v, xv):
            return False
    return True


def _midpoint_index(p: ParameterDef, v: LevelRange) -> float:
    return (p.level_index(v.lo) + p.level_index(v.hi)) / 2.0


def _component_distance(p: ParameterDef, a: Value, b: Value) -> float:
    if p.kind == NUMERIC:
        lo, hi = p.bounds  # type: ignore[misc]
        width = hi - lo
        if width <= 0:
            raise SchemaError("zero-width numeric range", parameter=p.name)
        return min(1.0, abs(a.mid - b.mid) / width)  # type: ignore[union-attr]
    if p.kind == ORDINAL:
        n_levels = len(p.levels)
        if n_levels <= 1:
            return 0.0
        return abs(_midpoint_index(p, a) - _midpoint_index(p, b)) / (n_levels - 1)  # type: ignore[arg-type]
    return 0.0 if a.intersects(b) else 1.0  # type: ignore[union-attr]


def distance(x1: CaseVector, x2: CaseVector, schema: DomainSchema) -> float:
    """Normalized weighted distance over all declared parameters, in [0, 1].

    A component missing from exactly one vector contributes the schema's
    missing penalty; missing from both contributes 0.
    """
    num = 0.0
    den = 0.0
    for p in schema.parameters:
        a = x1.get(p.name)
        b = x2.get(p.name)
        if a is None and b is None:
            d = 0.0
        elif a is None or b is None:
            d = schema.missing_penalty
        else:
            d = _component_distance(p, a, b)
        num += p.weight * d
        den += p.weight
    return num / den if den > 0 else 0.0


def _proximity_window(p: ParameterDef, center: Value) -> tuple:
    """Per-parameter neighborhood of a value, clipped to the declared range."""
    if p.kind == NUMERIC:
        lo, hi = p.bounds  # type: ignore[misc]
        return (max(lo, center.lo - p.radius), min(hi, center.hi + p.radius))  # type: ignore[union-attr]
    if p.kind == ORDINAL:
        step = int(p.radius)
        top = len(p.levels) - 1
        return (
            max(0, p.level_index(center.lo) - step),  # type: ignore[union-attr]
            min(top, p.level_index(center.hi) + step),  # type: ignore[union-attr]
        )
    pool = set(center.labels)  # type: ignore[union-attr]
    adjacency = p.neighbor_map()
    for label in center.labels:  # type: ignore[union-attr]
        pool |= adjacency.get(label, frozenset())
    return (frozenset(pool),)


def omega_contains(schema: DomainSchema, center: CaseVector, candidate: CaseVector) -> bool:
    """True iff every candidate component lies within the proximity of the center's."""
    if set(candidate.names) != set(center.names):
        raise ArgumentError("candidate must carry the same component names as the center")
    for name, cv in candidate:
        p = schema.param(name)
        window = _proximity_window(p, center.get(name))
        if p.kind == NUMERIC:
            lo, hi = window
            if cv.lo < lo - _EPS or cv.hi > hi + _EPS:
                return False
        elif p.kind == ORDINAL:
            lo, hi = window
            if p.level_index(cv.lo) < lo or p.level_index(cv.hi) > hi:
                return False
        else:
            if not cv.labels <= window[0]:
                return False
    return True


def _sample_component(rng: random.Random, p: ParameterDef, center: Value) -> Value:
    window = _proximity_window(p, center)
    if p.kind == NUMERIC:
        x = rng.uniform(window[0], window[1])
        return Interval(x, x)
    if p.kind == ORDINAL:
        i = rng.randint(window[0], window[1])
        return LevelRange(p.levels[i], p.levels[i])
    pool = sorted(window[0])
    return LabelSet(frozenset([pool[rng.randrange(len(pool))]]))


def omega_sample(
    schema: DomainSchema, center: CaseVector, count: int, seed: int
) -> list[CaseVector]:
    """Draw ``count`` vectors uniformly from the proximity of ``center``.

    Deterministic for a fixed seed; every draw satisfies :func:`omega_contains`.
    """
    if count < 1:
        raise ArgumentError("count must be at least 1")
    rng = random.Random(seed)
    names = [p.name for p in schema.parameters if center.has(p.name)]
    out = []
    for _ in range(count):
        comps = tuple(
            (n, _sample_component(rng, schema.param(n), center.get(n))) for n in names
        )
        out.append(CaseVector(comps))
    return out
