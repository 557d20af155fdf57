"""Domain bundle: schema plus the fixtures the engine needs for one domain.

A bundle document carries the parameter schema, the solution set, expert
typical vectors and/or training samples to compute them from, and expert
antisyndrome sets.  It is the unit of ingestion for both the CLI and the
service.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .decisions import NearestTypicalModel, TypicalRepresentation, typical_representation
from .errors import CasecoachError, SchemaError
from .space import CaseVector, DomainSchema
from .syndromes import EXPERT, AntisyndromeSet, TrainingSample


@dataclass(frozen=True)
class DomainBundle:
    id: str
    schema: DomainSchema
    typicals: Mapping[str, TypicalRepresentation]
    antisyndromes: Mapping[str, AntisyndromeSet]
    model: NearestTypicalModel
    raw: dict

    @classmethod
    def from_dict(cls, doc: Mapping) -> "DomainBundle":
        domain_id = doc.get("id")
        if not domain_id:
            raise SchemaError("domain document needs an 'id'")
        schema = DomainSchema.from_dict(doc.get("schema", {}))

        samples = {
            sid: TrainingSample(sid, tuple(schema.parse_vector(c) for c in cases))
            for sid, cases in doc.get("training", {}).items()
        }

        typicals: dict[str, TypicalRepresentation] = {}
        declared = doc.get("typical", {})
        for sid in schema.solution_ids:
            overrides = {
                name: schema.parse_value(name, raw)
                for name, raw in declared.get(sid, {}).items()
            }
            if sid in samples:
                typicals[sid] = typical_representation(samples[sid], schema, overrides)
            elif overrides:
                vector = CaseVector(tuple(overrides.items()))
                rep = TypicalRepresentation(sid, vector, source="expert")
                rep.check_complete(schema)
                typicals[sid] = rep
            else:
                raise SchemaError(
                    f"solution {sid!r} has neither a typical vector nor training cases"
                )

        antisyndromes: dict[str, AntisyndromeSet] = {}
        for sid, entries in doc.get("antisyndromes", {}).items():
            if sid not in schema.solution_ids:
                raise SchemaError(f"antisyndromes declared for unknown solution {sid!r}")
            vectors = [schema.parse_vector(e) for e in entries]
            antisyndromes[sid] = AntisyndromeSet.build(sid, vectors, EXPERT, schema)

        model = NearestTypicalModel(schema, typicals, antisyndromes)
        return cls(
            id=domain_id,
            schema=schema,
            typicals=typicals,
            antisyndromes=antisyndromes,
            model=model,
            raw=dict(doc),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "DomainBundle":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def public_view(self) -> dict:
        """The schema fields a client may see: parameters and solutions only."""
        schema_doc = self.raw.get("schema", {})
        return {
            "id": self.id,
            "parameters": schema_doc.get("parameters", []),
            "solutions": schema_doc.get("solutions", []),
        }


def validate_domain_document(doc: Mapping) -> list[str]:
    """Collect human-readable problems with a domain document; empty means valid."""
    problems: list[str] = []
    try:
        DomainBundle.from_dict(doc)
    except CasecoachError as exc:
        problems.append(str(exc))
        # keep collecting per-parameter issues where possible
        params = doc.get("schema", {}).get("parameters", [])
        seen: set[str] = set()
        for p in params:
            name = p.get("name", "<unnamed>")
            if name in seen:
                problems.append(f"{name}: duplicate parameter name")
            seen.add(name)
    return problems
