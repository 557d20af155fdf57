import random

import pytest

from casecoach import (
    CaseVector,
    IncompleteDataError,
    Interval,
    NearestTypicalModel,
    TrainingSample,
    TypicalRepresentation,
    UNDETERMINED,
    complete_with_typical,
    distance,
    typical_representation,
    violated_antisyndromes,
)

from .conftest import random_vector


FLU_OVERRIDES = {
    "temperature": [38.1, 41.0],
    "headache": "strong",
    "general_aches": "severe",
    "exhaustion": "extreme",
    "weakness": "yes",
    "cough": "no",
    "stuffy_runny_nose": "no",
    "sneezing": "no",
    "allergy_anamnesis": "no",
}


class TestTypicalRepresentation:
    def test_expert_override_vector_accepted_verbatim(self, schema):
        sample = TrainingSample("flu", (schema.parse_vector({"cough": "no"}),))
        overrides = {n: schema.parse_value(n, raw) for n, raw in FLU_OVERRIDES.items()}
        rep = typical_representation(sample, schema, overrides)
        assert rep.vector == schema.parse_vector(FLU_OVERRIDES)
        assert rep.source == "expert"

    def test_single_case_sample_is_its_own_typical(self, schema):
        case = schema.parse_vector(
            {
                "temperature": 37.0,
                "headache": "small",
                "general_aches": "none",
                "exhaustion": "small",
                "weakness": "no",
                "cough": "yes",
                "stuffy_runny_nose": "yes",
                "sneezing": "yes",
                "allergy_anamnesis": "no",
            }
        )
        rep = typical_representation(TrainingSample("cold", (case,)), schema)
        assert rep.vector == case

    def test_numeric_median_sort_and_select(self, schema):
        # midpoints {36.5, 37.0, 39.0}; sorted middle element -> 37.0
        cases = tuple(
            schema.parse_vector({"temperature": t, **_rest(schema)}) for t in (39.0, 36.5, 37.0)
        )
        rep = typical_representation(TrainingSample("x", cases), schema)
        assert rep.vector.get("temperature") == Interval(37.0, 37.0)

    def test_categorical_mode_tie_goes_lexicographic(self, schema):
        cases = (
            schema.parse_vector({**_rest(schema), "cough": "yes"}),
            schema.parse_vector({**_rest(schema), "cough": "no"}),
        )
        rep = typical_representation(TrainingSample("x", cases), schema)
        assert rep.vector.get("cough").labels == frozenset(["no"])

    def test_uncovered_parameter_without_override_errors(self, schema):
        sample = TrainingSample("x", (schema.parse_vector({"cough": "no"}),))
        with pytest.raises(IncompleteDataError):
            typical_representation(sample, schema)


def _rest(schema):
    return {
        "temperature": 37.0,
        "headache": "none",
        "general_aches": "none",
        "exhaustion": "none",
        "weakness": "no",
        "cough": "no",
        "stuffy_runny_nose": "no",
        "sneezing": "no",
        "allergy_anamnesis": "no",
    }


class TestCompleteWithTypical:
    def test_full_vector_unchanged(self, bundle, schema):
        full = bundle.typicals["cold"].vector
        assert complete_with_typical(full, bundle.typicals["flu"]) == full

    def test_empty_vector_becomes_typical(self, bundle):
        assert complete_with_typical(CaseVector(), bundle.typicals["flu"]) == bundle.typicals["flu"].vector

    def test_walkthrough_completion_gains_fever_and_classifies_flu(
        self, bundle, schema, walkthrough_evidence
    ):
        completed = complete_with_typical(walkthrough_evidence, bundle.typicals["flu"])
        assert completed.get("temperature") == Interval(38.1, 41.0)
        assert completed.get("exhaustion").lo == "extreme"
        assert bundle.model.classify(completed) == "flu"

    def test_never_alters_present_components(self, bundle, schema):
        rng = random.Random(5)
        for _ in range(200):
            v = random_vector(rng, schema)
            completed = complete_with_typical(v, bundle.typicals["flu"])
            for name, value in v:
                assert completed.get(name) == value
            assert set(completed.names) == set(schema.names)


class TestClassify:
    def test_own_typical_classifies_to_itself_without_veto(self, bundle, schema):
        model = NearestTypicalModel(schema, bundle.typicals, {})
        for sid in schema.solution_ids:
            assert model.classify(bundle.typicals[sid].vector) == sid

    def test_flu_typical_with_temp_39(self, bundle, schema):
        x = bundle.typicals["flu"].vector.with_component(
            "temperature", schema.parse_value("temperature", 39.0)
        )
        assert bundle.model.classify(x) == "flu"
        # independent check: flu's typical is the nearest unvetoed one by the
        # plain distance formula
        d_flu = distance(x, bundle.typicals["flu"].vector, schema)
        d_cold = distance(x, bundle.typicals["cold"].vector, schema)
        assert d_flu < d_cold

    def test_vector_containing_antisyndrome_never_gets_that_solution(self, bundle, schema):
        rng = random.Random(31)
        checked = 0
        for _ in range(1000):
            x = random_vector(rng, schema)
            got = bundle.model.classify(x)
            for sid, mas in bundle.antisyndromes.items():
                if violated_antisyndromes(x, mas, schema):
                    checked += 1
                    assert got != sid
        assert checked > 100

    def test_total_on_empty_vector(self, bundle, schema):
        got = bundle.model.classify(CaseVector())
        assert got in schema.solution_ids  # no veto applies; ties break lexicographically
        assert got == "airborne_allergy"

    def test_deterministic(self, bundle, schema):
        rng = random.Random(37)
        for _ in range(50):
            x = random_vector(rng, schema)
            assert bundle.model.classify(x) == bundle.model.classify(x)

    def test_all_vetoed_falls_back_to_undetermined(self, bundle, schema):
        from casecoach import AntisyndromeSet

        entry = schema.parse_vector({"general_aches": ["slight", "severe"]})
        vetoes = {
            sid: AntisyndromeSet.build(sid, [entry], "expert", schema)
            for sid in schema.solution_ids
        }
        model = NearestTypicalModel(schema, bundle.typicals, vetoes)
        x = schema.parse_vector({"general_aches": "slight"})
        assert model.classify(x) == UNDETERMINED
