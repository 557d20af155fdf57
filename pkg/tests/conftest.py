import json
import random
from pathlib import Path

import pytest

from casecoach import CaseVector, DomainBundle, DomainSchema, Interval, LabelSet, LevelRange

REPO = Path(__file__).resolve().parent.parent
DOMAIN_FILE = REPO / "domains" / "respiratory.json"
SCRIPT_FILE = REPO / "scripts" / "walkthrough.json"


@pytest.fixture(scope="session")
def bundle() -> DomainBundle:
    return DomainBundle.from_file(DOMAIN_FILE)


@pytest.fixture(scope="session")
def schema(bundle) -> DomainSchema:
    return bundle.schema


@pytest.fixture(scope="session")
def walkthrough_evidence(schema) -> CaseVector:
    return schema.parse_vector(
        {
            "general_aches": "slight",
            "sneezing": "yes",
            "headache": "small",
            "stuffy_runny_nose": "yes",
            "cough": "no",
            "allergy_anamnesis": "yes",
        }
    )


@pytest.fixture(scope="session")
def walkthrough_history() -> list[dict]:
    return json.loads(SCRIPT_FILE.read_text())["history"]


def random_value(rng: random.Random, p):
    """A random admissible value for one parameter; points, ranges and sets all occur."""
    if p.kind == "numeric":
        lo, hi = p.bounds
        a = rng.uniform(lo, hi)
        if rng.random() < 0.3:
            b = rng.uniform(lo, hi)
            a, b = min(a, b), max(a, b)
            return Interval(a, b)
        return Interval(a, a)
    if p.kind == "ordinal":
        i = rng.randrange(len(p.levels))
        if rng.random() < 0.3:
            j = rng.randrange(i, len(p.levels))
            return LevelRange(p.levels[i], p.levels[j])
        return LevelRange(p.levels[i], p.levels[i])
    labels = sorted(p.labels)
    if rng.random() < 0.3 and len(labels) > 1:
        k = rng.randint(1, len(labels))
        return LabelSet(frozenset(rng.sample(labels, k)))
    return LabelSet(frozenset([rng.choice(labels)]))


def random_vector(rng: random.Random, schema: DomainSchema, keep_probability: float = 0.7) -> CaseVector:
    comps = []
    for p in schema.parameters:
        if rng.random() < keep_probability:
            comps.append((p.name, random_value(rng, p)))
    return CaseVector(tuple(comps))


def random_full_vector(rng: random.Random, schema: DomainSchema) -> CaseVector:
    return CaseVector(tuple((p.name, random_value(rng, p)) for p in schema.parameters))
