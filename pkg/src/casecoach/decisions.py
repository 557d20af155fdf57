"""Solution classification: typical representations and the reference model.

The reference classifier picks the solution whose typical vector is nearest
to the input, after vetoing every solution with a violated minimal
antisyndrome.  It is deliberately built from exactly the artifacts the
dialogue engine already holds (typical vectors plus antisyndrome sets), and
sits behind a small protocol so an externally trained classifier can be
plugged in instead.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Mapping, Protocol

from .errors import ArgumentError, IncompleteDataError
from .space import (
    NUMERIC,
    ORDINAL,
    CaseVector,
    DomainSchema,
    Interval,
    LabelSet,
    LevelRange,
    Value,
    distance,
    is_subvector,
)
from .syndromes import AntisyndromeSet, TrainingSample

UNDETERMINED = "undetermined"

COMPUTED = "computed"
EXPERT = "expert"


@dataclass(frozen=True)
class TypicalRepresentation:
    """A full vector (one component per declared parameter) characterizing a solution."""

    solution: str
    vector: CaseVector
    source: str = COMPUTED

    def check_complete(self, schema: DomainSchema) -> None:
        missing = [n for n in schema.names if not self.vector.has(n)]
        if missing:
            raise IncompleteDataError(
                f"typical representation for {self.solution!r} lacks {missing}"
            )


class DecisionModel(Protocol):
    """Deterministic total classifier over (possibly partial) case vectors."""

    def classify(self, x: CaseVector) -> str: ...


def _median_level(p, values: list[LevelRange]) -> LevelRange:
    mids = sorted((p.level_index(v.lo) + p.level_index(v.hi)) / 2.0 for v in values)
    lower_median = mids[(len(mids) - 1) // 2]
    idx = math.ceil(lower_median - 0.5)  # half-way rounds toward the lower level
    level = p.levels[int(idx)]
    return LevelRange(level, level)


def _mode_label(values: list[LabelSet]) -> LabelSet:
    counts: dict[str, int] = {}
    for v in values:
        for label in v.labels:
            counts[label] = counts.get(label, 0) + 1
    top = max(counts.values())
    winners = sorted(label for label, c in counts.items() if c == top)
    return LabelSet(frozenset([winners[0]]))  # tie -> lexicographically first


def typical_representation(
    sample: TrainingSample,
    schema: DomainSchema,
    overrides: Mapping[str, Value] | None = None,
) -> TypicalRepresentation:
    """Median-based summary of a training sample, with expert overrides on top.

    Numeric components take the median of interval midpoints, ordinal ones the
    median level, categorical ones the most frequent label (ties go to the
    lexicographically first).  Parameters absent from every case must be
    covered by an override.
    """
    overrides = dict(overrides or {})
    comps: list[tuple[str, Value]] = []
    for p in schema.parameters:
        if p.name in overrides:
            v = overrides[p.name]
            p.check_value(v)
            comps.append((p.name, v))
            continue
        observed = [c.get(p.name) for c in sample.cases if c.has(p.name)]
        if not observed:
            raise IncompleteDataError(
                f"parameter {p.name!r} absent from every case and not overridden"
            )
        if p.kind == NUMERIC:
            m = statistics.median(v.mid for v in observed)  # type: ignore[union-attr]
            comps.append((p.name, Interval(m, m)))
        elif p.kind == ORDINAL:
            comps.append((p.name, _median_level(p, observed)))  # type: ignore[arg-type]
        else:
            comps.append((p.name, _mode_label(observed)))  # type: ignore[arg-type]
    source = EXPERT if set(overrides) >= set(schema.names) else COMPUTED
    rep = TypicalRepresentation(sample.solution, CaseVector(tuple(comps)), source)
    rep.check_complete(schema)
    return rep


def complete_with_typical(v: CaseVector, typical: TypicalRepresentation) -> CaseVector:
    """Fill the components absent from ``v`` with the typical vector's values."""
    comps = list(v.components)
    for name, value in typical.vector:
        if not v.has(name):
            comps.append((name, value))
    return CaseVector(tuple(comps))


@dataclass(frozen=True)
class NearestTypicalModel:
    """Reference decision model: nearest typical vector with antisyndrome veto.

    Candidates are the solutions none of whose minimal antisyndromes is
    contained in the input; among them the one with the smallest distance to
    its typical vector wins (ties go to the lexicographically smallest id).
    If every solution is vetoed the designated fallback id is returned.
    """

    schema: DomainSchema
    typicals: Mapping[str, TypicalRepresentation]
    antisyndromes: Mapping[str, AntisyndromeSet]
    fallback: str = UNDETERMINED

    def __post_init__(self):
        for sid in self.schema.solution_ids:
            if sid not in self.typicals:
                raise ArgumentError(f"no typical representation for solution {sid!r}")
            self.typicals[sid].check_complete(self.schema)

    def _vetoed(self, sid: str, x: CaseVector) -> bool:
        mas = self.antisyndromes.get(sid)
        if mas is None:
            return False
        return any(is_subvector(entry, x, self.schema) for entry in mas.entries)

    def classify(self, x: CaseVector) -> str:
        candidates = [sid for sid in self.schema.solution_ids if not self._vetoed(sid, x)]
        if not candidates:
            return self.fallback
        return min(
            candidates,
            key=lambda sid: (distance(x, self.typicals[sid].vector, self.schema), sid),
        )
