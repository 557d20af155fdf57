"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class DomainIngestResponse(BaseModel):
    id: str
    parameters: int
    solutions: list[str]


class CreateSessionRequest(BaseModel):
    domain: str
    solution: str
    evidence: dict[str, Any]
    seed: Optional[int] = None


class QuestionView(BaseModel):
    id: str
    scenario: int
    kind: str
    subject: list[str]
    prompt: str
    why: str
    details: dict[str, Any] = Field(default_factory=dict)


class SessionView(BaseModel):
    id: str
    user: str
    domain: str
    state: str
    solution: str
    evidence: dict[str, Any]
    pending_question: Optional[QuestionView] = None
    finalize_prompt: Optional[str] = None
    final_solution: Optional[str] = None
    transcript: list[dict[str, Any]]


class AnswerRequest(BaseModel):
    question_id: str
    kind: str  # value | decision | ack | attach_precedent
    name: Optional[str] = None
    value: Optional[Any] = None
    solution: Optional[str] = None
    attachment: Optional[dict[str, Any]] = None


class DecisionRequest(BaseModel):
    solution: str


class FinalizeRequest(BaseModel):
    prognosis: str
    solution: str


class FinalizeResponse(BaseModel):
    precedent_id: str
    session: SessionView


class OutcomeRequest(BaseModel):
    outcome: str
    matches_prognosis: bool
    discrepancy_explanation: Optional[str] = None


class ErrorExplanationRequest(BaseModel):
    text: str


class PrecedentView(BaseModel):
    id: str
    domain: str
    case: dict[str, Any]
    decision: str
    prognosis: str
    outcome: Optional[str] = None
    matches_prognosis: Optional[bool] = None
    discrepancy_explanation: Optional[str] = None
    error_explanation: Optional[str] = None
    session_id: Optional[str] = None
    created_at: str
    updated_at: str


class ErrorRow(BaseModel):
    precedent_id: str
    proximity: float
    decision: str
    error_explanation: Optional[str] = None
    outcome_summary: str
    recorded_at: str


class SimilarResponse(BaseModel):
    rows: list[ErrorRow]
    warning: Optional[ErrorRow] = None


class StatsWindow(BaseModel):
    start: str
    end: str
    user_cases: int
    user_accuracy: float
    cohort_cases: int
    cohort_accuracy: float


class StatsResponse(BaseModel):
    windows: list[StatsWindow]
