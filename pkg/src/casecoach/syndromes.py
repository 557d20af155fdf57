"""Syndrome / antisyndrome algebra over case vectors.

A sub-vector of some case in a sample is a syndrome of that sample; a
non-empty vector that is a sub-vector of no case is an antisyndrome.  A
minimal antisyndrome is one whose every delete-one sub-vector is a syndrome;
the complete set of them bounds the class, and is what the dialogue engine
uses to flag inconsistent input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ArgumentError
from .space import CaseVector, DomainSchema, Value, components_equal, is_subvector, value_key

EXPERT = "expert"
MINED = "mined"
MERGED = "merged"


@dataclass(frozen=True)
class TrainingSample:
    """Non-empty collection of (possibly partial) cases observed for one solution."""

    solution: str
    cases: tuple[CaseVector, ...]

    def __post_init__(self):
        if not self.cases:
            raise ArgumentError("training sample must contain at least one case")


def entry_sort_key(y: CaseVector) -> tuple:
    return (len(y), y.names, y.key())


@dataclass(frozen=True)
class AntisyndromeSet:
    """Canonically ordered set of minimal antisyndromes for one solution."""

    solution: str
    entries: tuple[CaseVector, ...]
    source: str = EXPERT

    @classmethod
    def build(
        cls,
        solution: str,
        entries: Iterable[CaseVector],
        source: str,
        schema: DomainSchema,
    ) -> "AntisyndromeSet":
        unique: list[CaseVector] = []
        seen = set()
        for y in entries:
            if len(y) == 0:
                raise ArgumentError("antisyndrome entries must be non-empty")
            if y.key() not in seen:
                seen.add(y.key())
                unique.append(y)
        for a in unique:
            for b in unique:
                if a is not b and is_subvector(a, b, schema):
                    raise ArgumentError(
                        f"entry {dict(a.components)!r} is a sub-vector of another entry"
                    )
        return cls(solution, tuple(sorted(unique, key=entry_sort_key)), source)


def is_syndrome(y: CaseVector, sample: TrainingSample, schema: DomainSchema) -> bool:
    """True iff ``y`` is a sub-vector of at least one case in the sample."""
    return any(is_subvector(y, x, schema) for x in sample.cases)


def is_antisyndrome(y: CaseVector, sample: TrainingSample, schema: DomainSchema) -> bool:
    """True iff ``y`` is non-empty and a sub-vector of no case in the sample."""
    return len(y) > 0 and not is_syndrome(y, sample, schema)


def is_minimal_antisyndrome(y: CaseVector, sample: TrainingSample, schema: DomainSchema) -> bool:
    """True iff ``y`` is an antisyndrome and dropping any one component yields a syndrome."""
    if not is_antisyndrome(y, sample, schema):
        return False
    return all(is_syndrome(y.without(name), sample, schema) for name in y.names)


def _check_atoms(atoms: Sequence[tuple[str, Value]], schema: DomainSchema) -> None:
    by_name: dict[str, list[Value]] = {}
    for name, v in atoms:
        schema.param(name).check_value(v)
        by_name.setdefault(name, []).append(v)
    for name, values in by_name.items():
        for i, a in enumerate(values):
            for b in values[i + 1:]:
                if components_equal((name, a), (name, b), schema):
                    raise ArgumentError(f"atoms for parameter {name!r} intersect")


def mine_minimal_antisyndromes(
    sample: TrainingSample,
    atoms: Sequence[tuple[str, Value]],
    k_max: int,
    schema: DomainSchema,
) -> AntisyndromeSet:
    """Level-wise search for every minimal antisyndrome of at most ``k_max`` atoms.

    Atoms discretize each parameter (pairwise non-intersecting per name); a
    level-k candidate is generated only when all of its (k-1)-atom subsets are
    syndromes, which makes any surviving antisyndrome minimal by definition.
    """
    if k_max < 1:
        raise ArgumentError("k_max must be at least 1")
    _check_atoms(atoms, schema)
    ordered = sorted(atoms, key=lambda a: (a[0], value_key(a[1])))
    names = [a[0] for a in ordered]

    minimal: list[CaseVector] = []
    level: list[tuple[int, ...]] = [(i,) for i in range(len(ordered))]
    for k in range(1, k_max + 1):
        syndrome_combos: set[tuple[int, ...]] = set()
        for combo in level:
            y = CaseVector(tuple(ordered[i] for i in combo))
            if is_syndrome(y, sample, schema):
                syndrome_combos.add(combo)
            else:
                minimal.append(y)
        if k == k_max or not syndrome_combos:
            break
        level = _next_candidates(names, syndrome_combos)
    return AntisyndromeSet.build(sample.solution, minimal, MINED, schema)


def _next_candidates(
    names: Sequence[str], syndromes: set[tuple[int, ...]]
) -> list[tuple[int, ...]]:
    out = []
    for combo in sorted(syndromes):
        used = {names[i] for i in combo}
        for j in range(combo[-1] + 1, len(names)):
            if names[j] in used:
                continue
            cand = combo + (j,)
            if all(
                cand[:i] + cand[i + 1:] in syndromes for i in range(len(cand))
            ):
                out.append(cand)
    return out


def violated_antisyndromes(
    v: CaseVector, mas: AntisyndromeSet, schema: DomainSchema
) -> list[CaseVector]:
    """Entries of ``mas`` contained in ``v``, in the set's canonical order."""
    return [y for y in mas.entries if is_subvector(y, v, schema)]


def merge_antisyndrome_sets(
    expert: AntisyndromeSet | None,
    mined: AntisyndromeSet | None,
    schema: DomainSchema,
) -> AntisyndromeSet:
    """Union of expert and mined entries; expert entries win conflicts.

    A mined entry is dropped when it shares its component-name set with an
    expert entry or sits in a sub-vector relation with one, which keeps the
    no-entry-contains-another invariant intact.
    """
    if expert is None and mined is None:
        raise ArgumentError("nothing to merge")
    if expert is None:
        return mined  # type: ignore[return-value]
    if mined is None:
        return expert
    if expert.solution != mined.solution:
        raise ArgumentError("cannot merge antisyndrome sets for different solutions")
    kept = list(expert.entries)
    expert_name_sets = {e.names for e in expert.entries}
    for y in mined.entries:
        if y.names in expert_name_sets:
            continue
        if any(
            is_subvector(y, e, schema) or is_subvector(e, y, schema) for e in kept
        ):
            continue
        kept.append(y)
    return AntisyndromeSet.build(expert.solution, kept, MERGED, schema)
