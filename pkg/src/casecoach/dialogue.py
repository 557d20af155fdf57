"""The dialogue state machine: four scenarios, question generation, answer routing.

A session walks scenarios in a fixed order.  Scenario 1 surfaces input that
contradicts the user's stated decision, scenario 2 probes unmeasured
parameters that could change it, scenario 3 checks robustness of the input
against measurement error, scenario 4 reviews similar past cases before the
user commits to a prognosis.  The machine's own solution is recomputed on
every data or decision change and is never serialized outward; the user only
ever sees questions.
"""

from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .bundle import DomainBundle
from .decisions import complete_with_typical
from .errors import ArgumentError, SchemaError, SequencingError
from .explain import PerturbationConfig, explain_local, rank_parameters_for_questioning
from .precedents import PrecedentStore
from .space import CaseVector, DomainSchema, Value, distance, omega_sample
from .syndromes import violated_antisyndromes


class SessionState(str, Enum):
    S1_INCONSISTENCY = "S1_INCONSISTENCY"
    S2_MISSING_INFO = "S2_MISSING_INFO"
    S3_DISTORTION = "S3_DISTORTION"
    S4_PRECEDENTS = "S4_PRECEDENTS"
    AWAIT_ANSWER = "AWAIT_ANSWER"
    FINALIZE = "FINALIZE"
    CLOSED = "CLOSED"


_SCENARIO_STATE = {
    1: SessionState.S1_INCONSISTENCY,
    2: SessionState.S2_MISSING_INFO,
    3: SessionState.S3_DISTORTION,
    4: SessionState.S4_PRECEDENTS,
}

INCONSISTENCY = "inconsistency"
VALUE_REQUEST = "value_request"
REMEASURE_REQUEST = "remeasure_request"
PRECEDENT_REVIEW = "precedent_review"


@dataclass(frozen=True)
class Question:
    id: str
    scenario: int
    kind: str
    subject: tuple[str, ...]
    prompt: str
    why: str
    details: dict = field(default_factory=dict)

    def to_view(self) -> dict:
        return {
            "id": self.id,
            "scenario": self.scenario,
            "kind": self.kind,
            "subject": list(self.subject),
            "prompt": self.prompt,
            "why": self.why,
            "details": self.details,
        }


@dataclass(frozen=True)
class ScenarioAdvance:
    from_scenario: int
    to_scenario: int


@dataclass(frozen=True)
class FinalizePrompt:
    prompt: str = (
        "No further questions. State your final decision and a prognosis for this case."
    )


@dataclass(frozen=True)
class Answer:
    question_id: str
    kind: str  # "value" | "decision" | "ack" | "attach_precedent"
    name: str | None = None
    value: object = None
    solution: str | None = None
    attachment: Mapping | None = None


@dataclass(frozen=True)
class PerturbationFinding:
    """Internal record of the nearest in-proximity vector with a different decision."""

    counter_case: CaseVector
    delta: float
    parameter: str


class Session:
    """One dialogue; mutable, but only through the engine's operations."""

    def __init__(
        self,
        session_id: str,
        user: str,
        domain: str,
        alpha_user: str,
        evidence: CaseVector,
        alpha_machine: str,
        seed: int,
    ):
        self.id = session_id
        self.user = user
        self.domain = domain
        self.alpha_user = alpha_user
        self.evidence = evidence
        self._alpha_machine = alpha_machine  # private: never serialized outward
        self.state = SessionState.S1_INCONSISTENCY
        self.pending_question: Question | None = None
        self.presented_violations: set[tuple] = set()
        self.asked_missing: set[str] = set()
        self.asked_remeasure: set[str] = set()
        self.review_done = False
        self.seed = seed
        self.announced_solutions: list[str] = [alpha_user]
        self.transcript: list[dict] = []
        self.final_solution: str | None = None
        self._question_counter = 0
        self._derive_counter = 0

    # -- deterministic child seeds -------------------------------------------

    def next_seed(self, purpose: str) -> int:
        self._derive_counter += 1
        token = f"{self.seed}:{purpose}:{self._derive_counter}"
        return zlib.crc32(token.encode()) & 0x7FFFFFFF

    def next_question_id(self) -> str:
        self._question_counter += 1
        return f"q-{self._question_counter}"

    # -- transcript ------------------------------------------------------------

    def log(self, event_type: str, **payload) -> None:
        self.transcript.append({"seq": len(self.transcript) + 1, "type": event_type, **payload})

    def transcript_view(self) -> list[dict]:
        return [dict(e) for e in self.transcript]

    def to_view(self, schema: DomainSchema) -> dict:
        """Externally visible session state; the machine's solution is excluded."""
        return {
            "id": self.id,
            "user": self.user,
            "domain": self.domain,
            "state": self.state.value,
            "solution": self.alpha_user,
            "evidence": schema.vector_to_json(self.evidence),
            "pending_question": self.pending_question.to_view() if self.pending_question else None,
            "final_solution": self.final_solution,
            "transcript": self.transcript_view(),
        }


class DialogueEngine:
    """Runs sessions for one domain bundle against a precedent store."""

    def __init__(
        self,
        bundle: DomainBundle,
        store: PrecedentStore,
        explainer: PerturbationConfig | None = None,
        distortion_samples: int = 500,
        review_limit: int = 10,
    ):
        self.bundle = bundle
        self.schema = bundle.schema
        self.model = bundle.model
        self.store = store
        self.explainer = explainer or PerturbationConfig()
        self.distortion_samples = distortion_samples
        self.review_limit = review_limit
        self._session_counter = itertools.count(1)

    # -- lifecycle ---------------------------------------------------------

    def start_session(
        self,
        user: str,
        alpha_user: str,
        evidence: CaseVector,
        seed: int = 0,
        session_id: str | None = None,
    ) -> Session:
        if alpha_user not in self.schema.solution_ids:
            raise SchemaError(f"unknown solution {alpha_user!r}")
        if len(evidence) < 1:
            raise ArgumentError("a session needs at least one evidence component")
        self.schema.check_vector(evidence)
        session = Session(
            session_id=session_id or f"s-{next(self._session_counter):06d}",
            user=user,
            domain=self.bundle.id,
            alpha_user=alpha_user,
            evidence=evidence,
            alpha_machine=self.model.classify(evidence),
            seed=seed,
        )
        session.log(
            "session_started",
            solution=alpha_user,
            evidence=self.schema.vector_to_json(evidence),
            state=session.state.value,
        )
        return session

    # -- stepping ------------------------------------------------------------

    def step(self, session: Session) -> Question | ScenarioAdvance | FinalizePrompt:
        if session.state is SessionState.CLOSED:
            raise SequencingError("session is closed")
        if session.pending_question is not None:
            raise SequencingError("a question is already pending")
        if session.state is SessionState.FINALIZE:
            return FinalizePrompt()
        scenario = {v: k for k, v in _SCENARIO_STATE.items()}[session.state]
        handler = {
            1: self._step_inconsistency,
            2: self._step_missing_info,
            3: self._step_distortion,
            4: self._step_precedents,
        }[scenario]
        result = handler(session)
        if isinstance(result, Question):
            session.pending_question = result
            session.state = SessionState.AWAIT_ANSWER
            session.log("question", question=result.to_view())
        elif isinstance(result, ScenarioAdvance):
            session.state = _SCENARIO_STATE[result.to_scenario]
            session.log(
                "scenario_advanced",
                from_scenario=result.from_scenario,
                to_scenario=result.to_scenario,
            )
        else:
            session.state = SessionState.FINALIZE
            session.log("finalize_prompt", prompt=result.prompt)
        return result

    def advance_until_question(self, session: Session) -> Question | FinalizePrompt:
        """Step until a question is pending or the session is ready to finalize."""
        while True:
            if session.state is SessionState.CLOSED:
                raise SequencingError("session is closed")
            if session.pending_question is not None:
                return session.pending_question
            result = self.step(session)
            if isinstance(result, (Question, FinalizePrompt)):
                return result

    # -- scenario handlers ---------------------------------------------------

    def _step_inconsistency(self, session: Session):
        mas = self.bundle.antisyndromes.get(session.alpha_user)
        if mas is not None:
            for entry in violated_antisyndromes(session.evidence, mas, self.schema):
                sig = (session.alpha_user, entry.key())
                if sig in session.presented_violations:
                    continue
                session.presented_violations.add(sig)
                return self._inconsistency_question(session, entry)
        return ScenarioAdvance(1, 2)

    def _inconsistency_question(self, session: Session, entry: CaseVector) -> Question:
        names = entry.names
        shown = {n: self.schema.value_to_json(session.evidence.get(n)) for n in names}
        rendered = "; ".join(f"{n} = {shown[n]}" for n in names)
        label = self.schema.solution_label(session.alpha_user)
        return Question(
            id=session.next_question_id(),
            scenario=1,
            kind=INCONSISTENCY,
            subject=names,
            prompt=(
                f"The combination {rendered} is not on record together with "
                f"{label}. Re-check these values, change your decision, or confirm both."
            ),
            why="This combination of findings falls outside the recorded picture for your decision.",
            details={"conflict": shown},
        )

    def _step_missing_info(self, session: Session):
        absent = [n for n in self.schema.names if not session.evidence.has(n)]
        if absent:
            for alpha_d in sorted(self.schema.solution_ids):
                if alpha_d == session.alpha_user:
                    continue
                typical = self.bundle.typicals.get(alpha_d)
                if typical is None:
                    continue
                completed = complete_with_typical(session.evidence, typical)
                if self.model.classify(completed) != alpha_d:
                    continue
                cfg = self.explainer.with_seed(session.next_seed("s2"))
                explanation = explain_local(self.model, completed, alpha_d, cfg, self.schema)
                ranked = rank_parameters_for_questioning(
                    explanation, asked=session.asked_missing, restrict_to=absent
                )
                if not ranked:
                    continue
                name = ranked[0]
                session.asked_missing.add(name)
                return self._value_question(session, name)
        return ScenarioAdvance(2, 3)

    def _value_question(self, session: Session, name: str) -> Question:
        p = self.schema.param(name)
        units = f" ({p.units})" if p.units else ""
        return Question(
            id=session.next_question_id(),
            scenario=2,
            kind=VALUE_REQUEST,
            subject=(name,),
            prompt=f"What is the value of {name}{units}?",
            why="This parameter is not part of your input, and knowing it could change the assessment.",
        )

    def _step_distortion(self, session: Session):
        samples = omega_sample(
            self.schema,
            session.evidence,
            self.distortion_samples,
            session.next_seed("s3-sample"),
        )
        counter: list[tuple[float, tuple, CaseVector, str]] = []
        for z in samples:
            alpha = self.model.classify(z)
            if alpha != session.alpha_user:
                counter.append((distance(z, session.evidence, self.schema), z.key(), z, alpha))
        if counter:
            counter.sort(key=lambda item: (item[0], item[1]))
            delta, _, counter_case, alpha_d = counter[0]
            typical = self.bundle.typicals.get(alpha_d) or self.bundle.typicals.get(
                session.alpha_user
            )
            full = complete_with_typical(counter_case, typical) if typical else counter_case
            cfg = self.explainer.with_seed(session.next_seed("s3-explain"))
            explanation = explain_local(self.model, full, alpha_d, cfg, self.schema)
            ranked = rank_parameters_for_questioning(
                explanation, asked=(), restrict_to=session.evidence.names
            )
            if ranked:
                finding = PerturbationFinding(counter_case=counter_case, delta=delta, parameter=ranked[0])
                # only the single most sensitive parameter warrants a re-check;
                # once it has been re-asked the scenario is exhausted
                if finding.parameter not in session.asked_remeasure:
                    session.asked_remeasure.add(finding.parameter)
                    return self._remeasure_question(session, finding.parameter)
        return ScenarioAdvance(3, 4)

    def _remeasure_question(self, session: Session, name: str) -> Question:
        p = self.schema.param(name)
        units = f" ({p.units})" if p.units else ""
        return Question(
            id=session.next_question_id(),
            scenario=3,
            kind=REMEASURE_REQUEST,
            subject=(name,),
            prompt=(
                f"Please measure {name}{units} again and report the value; "
                "a small measurement error here could matter."
            ),
            why="Your input would support a different assessment if this value were slightly off.",
        )

    def _step_precedents(self, session: Session):
        if not session.review_done:
            session.review_done = True
            rows, warning = self.store.query_similar(
                user=session.user,
                v=session.evidence,
                schema=self.schema,
                caller=session.user,
                domain=session.domain,
                limit=self.review_limit,
            )
            return Question(
                id=session.next_question_id(),
                scenario=4,
                kind=PRECEDENT_REVIEW,
                subject=tuple(r.precedent_id for r in rows),
                prompt=(
                    "Review your most similar past cases and their recorded error notes "
                    "before finalizing. You may attach another precedent you remember."
                ),
                why="Past discrepancies in similar situations are the strongest warning available.",
                details={
                    "rows": [r.to_json() for r in rows],
                    "warning": warning.to_json() if warning else None,
                },
            )
        return FinalizePrompt()

    # -- user actions ---------------------------------------------------------

    def submit_answer(self, session: Session, answer: Answer) -> None:
        if session.state is SessionState.CLOSED:
            raise SequencingError("session is closed")
        pending = session.pending_question
        if pending is None:
            raise SequencingError("no question is pending")
        if answer.question_id != pending.id:
            raise SequencingError(
                f"answer refers to {answer.question_id!r} but {pending.id!r} is pending"
            )
        session.pending_question = None
        if answer.kind == "value":
            if not answer.name:
                raise ArgumentError("a value answer needs a parameter name")
            value = self.schema.parse_value(answer.name, answer.value)
            session.log(
                "answer",
                question_id=pending.id,
                kind="value",
                name=answer.name,
                value=self.schema.value_to_json(value),
            )
            self._merge_value(session, pending, answer.name, value)
        elif answer.kind == "decision":
            if not answer.solution:
                raise ArgumentError("a decision answer needs a solution id")
            session.log(
                "answer", question_id=pending.id, kind="decision", solution=answer.solution
            )
            self._apply_decision(session, pending, answer.solution)
        elif answer.kind == "ack":
            session.log("answer", question_id=pending.id, kind="ack")
            self._resume(session, pending)
        elif answer.kind == "attach_precedent":
            if not answer.attachment:
                raise ArgumentError("an attachment answer needs precedent data")
            rec = self._attach_precedent(session, answer.attachment)
            session.log(
                "answer",
                question_id=pending.id,
                kind="attach_precedent",
                precedent_id=rec.id,
            )
            self._resume(session, pending)
        else:
            raise ArgumentError(f"unknown answer kind {answer.kind!r}")

    def _merge_value(self, session: Session, pending: Question, name: str, value: Value) -> None:
        new_evidence = session.evidence.with_component(name, value)
        if new_evidence == session.evidence:
            self._resume(session, pending)
            return
        session.evidence = new_evidence
        self._reenter(session)

    def _apply_decision(self, session: Session, pending: Question | None, solution: str) -> None:
        if solution not in self.schema.solution_ids:
            raise SchemaError(f"unknown solution {solution!r}")
        if solution == session.alpha_user:
            if pending is not None:
                self._resume(session, pending)
            return
        session.alpha_user = solution
        session.announced_solutions.append(solution)
        session.log("decision_changed", solution=solution)
        self._reenter(session)

    def _resume(self, session: Session, pending: Question) -> None:
        if pending.scenario == 4:
            session.state = SessionState.FINALIZE
            session.log("finalize_prompt", prompt=FinalizePrompt().prompt)
        else:
            session.state = _SCENARIO_STATE[pending.scenario]

    def _reenter(self, session: Session) -> None:
        """Any accepted change to the evidence or the decision restarts the scenarios."""
        session._alpha_machine = self.model.classify(session.evidence)
        session.state = SessionState.S1_INCONSISTENCY
        session.log("state_changed", state=session.state.value)

    def change_decision(self, session: Session, solution: str) -> None:
        """Standalone decision change; voids any pending question."""
        if session.state is SessionState.CLOSED:
            raise SequencingError("session is closed")
        if session.pending_question is not None:
            session.log("question_voided", question_id=session.pending_question.id)
            session.pending_question = None
        self._apply_decision(session, None, solution)
        if session.state is SessionState.AWAIT_ANSWER:
            # a voided question leaves no pending state to resume; restart checks
            session.state = SessionState.S1_INCONSISTENCY

    def revise_value(self, session: Session, name: str, raw_value: object) -> None:
        """Standalone evidence revision outside a pending question."""
        if session.state is SessionState.CLOSED:
            raise SequencingError("session is closed")
        if session.pending_question is not None:
            session.log("question_voided", question_id=session.pending_question.id)
            session.pending_question = None
        value = self.schema.parse_value(name, raw_value)
        session.log("revision", name=name, value=self.schema.value_to_json(value))
        new_evidence = session.evidence.with_component(name, value)
        if new_evidence != session.evidence:
            session.evidence = new_evidence
            self._reenter(session)
        elif session.state is SessionState.AWAIT_ANSWER:
            session.state = SessionState.S1_INCONSISTENCY

    def _attach_precedent(self, session: Session, attachment: Mapping):
        case = self.schema.parse_vector(attachment.get("case", {}))
        return self.store.record_precedent(
            user=session.user,
            domain=session.domain,
            case=case,
            decision=attachment.get("decision", session.alpha_user),
            prognosis=attachment.get("prognosis", ""),
            caller=session.user,
            session_id=session.id,
            outcome=attachment.get("outcome"),
            matches_prognosis=attachment.get("matches_prognosis"),
            discrepancy_explanation=attachment.get("discrepancy_explanation"),
            error_explanation=attachment.get("error_explanation"),
        )

    def finalize(self, session: Session, prognosis: str, solution: str):
        if session.state is SessionState.CLOSED:
            raise SequencingError("session already finalized")
        if session.state is not SessionState.FINALIZE:
            raise SequencingError("session has not reached the finalize prompt")
        if not prognosis.strip():
            raise ArgumentError("prognosis is mandatory")
        if solution not in self.schema.solution_ids:
            raise SchemaError(f"unknown solution {solution!r}")
        if solution != session.alpha_user:
            session.alpha_user = solution
            session.announced_solutions.append(solution)
        session.final_solution = solution
        session.state = SessionState.CLOSED
        session.log("finalized", solution=solution, prognosis=prognosis)
        return self.store.record_precedent(
            user=session.user,
            domain=session.domain,
            case=session.evidence,
            decision=solution,
            prognosis=prognosis,
            caller=session.user,
            session_id=session.id,
        )
