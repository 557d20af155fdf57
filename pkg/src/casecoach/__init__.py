"""casecoach: decision-support dialogue engine that steers with questions."""

from .bundle import DomainBundle, validate_domain_document
from .decisions import (
    UNDETERMINED,
    DecisionModel,
    NearestTypicalModel,
    TypicalRepresentation,
    complete_with_typical,
    typical_representation,
)
from .dialogue import (
    Answer,
    DialogueEngine,
    FinalizePrompt,
    Question,
    ScenarioAdvance,
    Session,
    SessionState,
)
from .errors import (
    AccessError,
    ArgumentError,
    CasecoachError,
    IncompleteDataError,
    NotFoundError,
    SchemaError,
    SequencingError,
)
from .explain import Explanation, PerturbationConfig, explain_local, rank_parameters_for_questioning
from .precedents import ErrorExplanationRow, Precedent, PrecedentStore, precedent_proximity
from .space import (
    CaseVector,
    DomainSchema,
    Interval,
    LabelSet,
    LevelRange,
    ParameterDef,
    Solution,
    components_equal,
    distance,
    is_subvector,
    omega_contains,
    omega_sample,
)
from .syndromes import (
    AntisyndromeSet,
    TrainingSample,
    is_antisyndrome,
    is_minimal_antisyndrome,
    is_syndrome,
    merge_antisyndrome_sets,
    mine_minimal_antisyndromes,
    violated_antisyndromes,
)

__version__ = "0.1.0"
