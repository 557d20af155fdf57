"""HTTP facade: schema ingestion, sessions, precedents, per-user auth.

This layer is where the two confidentiality contracts are enforced: the
machine's own solution never enters a response body (session views are built
only from whitelisted fields), and every route that touches user data rejects
callers whose token maps to a different user with 403.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Request
from fastapi.responses import JSONResponse

from ..bundle import DomainBundle
from ..dialogue import Answer, DialogueEngine, Session, SessionState
from ..errors import (
    AccessError,
    ArgumentError,
    CasecoachError,
    IncompleteDataError,
    NotFoundError,
    SchemaError,
    SequencingError,
)
from ..precedents import PrecedentStore
from .config import ServiceConfig
from .models import (
    AnswerRequest,
    CreateSessionRequest,
    DecisionRequest,
    DomainIngestResponse,
    ErrorExplanationRequest,
    ErrorRow,
    FinalizeRequest,
    FinalizeResponse,
    OutcomeRequest,
    PrecedentView,
    SessionView,
    SimilarResponse,
    StatsResponse,
    StatsWindow,
)


class ServiceState:
    def __init__(self, config: ServiceConfig):
        self.config = config
        self.store = PrecedentStore(config.data_dir)
        self.engines: dict[str, DialogueEngine] = {}
        self.sessions: dict[str, Session] = {}
        self.session_locks: dict[str, threading.Lock] = {}
        self.registry_lock = threading.Lock()
        for path in config.domain_files:
            self.register_domain(json.loads(Path(path).read_text()))
        domains_dir = Path(config.data_dir) / "domains"
        if domains_dir.is_dir():
            for path in sorted(domains_dir.glob("*.json")):
                self.register_domain(json.loads(path.read_text()), persist=False)

    def register_domain(self, doc: dict, persist: bool = True) -> DomainBundle:
        bundle = DomainBundle.from_dict(doc)
        engine = DialogueEngine(
            bundle,
            self.store,
            explainer=self.config.explainer,
            distortion_samples=self.config.distortion_samples,
            review_limit=self.config.review_limit,
        )
        with self.registry_lock:
            self.engines[bundle.id] = engine
        if persist:
            domains_dir = Path(self.config.data_dir) / "domains"
            domains_dir.mkdir(parents=True, exist_ok=True)
            (domains_dir / f"{bundle.id}.json").write_text(json.dumps(doc, indent=1))
        return bundle

    def engine_for(self, domain: str) -> DialogueEngine:
        engine = self.engines.get(domain)
        if engine is None:
            raise NotFoundError(f"unknown domain {domain!r}")
        return engine


def _session_view(engine: DialogueEngine, session: Session) -> SessionView:
    view = session.to_view(engine.schema)
    if session.state is SessionState.FINALIZE:
        view["finalize_prompt"] = (
            "No further questions. State your final decision and a prognosis for this case."
        )
    return SessionView(**view)


def _precedent_view(engine: DialogueEngine, rec) -> PrecedentView:
    return PrecedentView(
        id=rec.id,
        domain=rec.domain,
        case=engine.schema.vector_to_json(rec.case),
        decision=rec.decision,
        prognosis=rec.prognosis,
        outcome=rec.outcome,
        matches_prognosis=rec.matches_prognosis,
        discrepancy_explanation=rec.discrepancy_explanation,
        error_explanation=rec.error_explanation,
        session_id=rec.session_id,
        created_at=rec.created_at,
        updated_at=rec.updated_at,
    )


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig.load()
    state = ServiceState(config)
    app = FastAPI(title="casecoach", version="0.1.0")
    app.state.service = state

    def current_user(authorization: Optional[str] = Header(default=None)) -> str:
        if not authorization or not authorization.startswith("Bearer "):
            raise HTTPException(status_code=401, detail="missing bearer token")
        token = authorization.removeprefix("Bearer ").strip()
        user = state.config.tokens.get(token)
        if user is None:
            raise HTTPException(status_code=401, detail="unknown token")
        return user

    @app.exception_handler(CasecoachError)
    async def casecoach_error_handler(request: Request, exc: CasecoachError):
        status = 400
        if isinstance(exc, AccessError):
            status = 403
        elif isinstance(exc, NotFoundError):
            status = 404
        elif isinstance(exc, SequencingError):
            status = 409
        elif isinstance(exc, (SchemaError, ArgumentError, IncompleteDataError)):
            status = 400
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    def owned_session(session_id: str, user: str) -> tuple[DialogueEngine, Session]:
        session = state.sessions.get(session_id)
        if session is None:
            raise NotFoundError(f"unknown session {session_id!r}")
        if session.user != user:
            raise AccessError("session belongs to another user")
        return state.engine_for(session.domain), session

    def session_lock(session_id: str) -> threading.Lock:
        with state.registry_lock:
            return state.session_locks.setdefault(session_id, threading.Lock())

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/domains", status_code=201, response_model=DomainIngestResponse)
    def ingest_domain(doc: dict, user: str = Depends(current_user)):
        bundle = state.register_domain(doc)
        return DomainIngestResponse(
            id=bundle.id,
            parameters=bundle.schema.dim,
            solutions=list(bundle.schema.solution_ids),
        )

    @app.get("/domains/{domain_id}")
    def get_domain(domain_id: str, user: str = Depends(current_user)):
        return state.engine_for(domain_id).bundle.public_view()

    @app.post("/sessions", status_code=201, response_model=SessionView)
    def create_session(req: CreateSessionRequest, user: str = Depends(current_user)):
        engine = state.engine_for(req.domain)
        evidence = engine.schema.parse_vector(req.evidence)
        seed = req.seed if req.seed is not None else state.config.seed
        session = engine.start_session(user=user, alpha_user=req.solution, evidence=evidence, seed=seed)
        with state.registry_lock:
            state.sessions[session.id] = session
            state.session_locks[session.id] = threading.Lock()
        engine.advance_until_question(session)
        return _session_view(engine, session)

    @app.get("/sessions/{session_id}", response_model=SessionView)
    def get_session(session_id: str, user: str = Depends(current_user)):
        engine, session = owned_session(session_id, user)
        return _session_view(engine, session)

    @app.get("/sessions/{session_id}/question")
    def get_question(session_id: str, user: str = Depends(current_user)):
        engine, session = owned_session(session_id, user)
        view = _session_view(engine, session)
        return {
            "state": view.state,
            "question": view.pending_question,
            "finalize_prompt": view.finalize_prompt,
        }

    @app.post("/sessions/{session_id}/answer", response_model=SessionView)
    def post_answer(session_id: str, req: AnswerRequest, user: str = Depends(current_user)):
        engine, session = owned_session(session_id, user)
        lock = session_lock(session_id)
        if not lock.acquire(blocking=False):
            raise SequencingError("another request for this session is in flight")
        try:
            engine.submit_answer(
                session,
                Answer(
                    question_id=req.question_id,
                    kind=req.kind,
                    name=req.name,
                    value=req.value,
                    solution=req.solution,
                    attachment=req.attachment,
                ),
            )
            engine.advance_until_question(session)
            return _session_view(engine, session)
        finally:
            lock.release()

    @app.post("/sessions/{session_id}/decision", response_model=SessionView)
    def post_decision(session_id: str, req: DecisionRequest, user: str = Depends(current_user)):
        engine, session = owned_session(session_id, user)
        lock = session_lock(session_id)
        if not lock.acquire(blocking=False):
            raise SequencingError("another request for this session is in flight")
        try:
            engine.change_decision(session, req.solution)
            engine.advance_until_question(session)
            return _session_view(engine, session)
        finally:
            lock.release()

    @app.post("/sessions/{session_id}/finalize", response_model=FinalizeResponse)
    def post_finalize(session_id: str, req: FinalizeRequest, user: str = Depends(current_user)):
        engine, session = owned_session(session_id, user)
        lock = session_lock(session_id)
        if not lock.acquire(blocking=False):
            raise SequencingError("another request for this session is in flight")
        try:
            rec = engine.finalize(session, req.prognosis, req.solution)
            return FinalizeResponse(precedent_id=rec.id, session=_session_view(engine, session))
        finally:
            lock.release()

    @app.get("/precedents/{precedent_id}", response_model=PrecedentView)
    def get_precedent(precedent_id: str, user: str = Depends(current_user)):
        rec = state.store.get(precedent_id, caller=user)
        return _precedent_view(state.engine_for(rec.domain), rec)

    @app.post("/precedents/{precedent_id}/outcome", response_model=PrecedentView)
    def post_outcome(precedent_id: str, req: OutcomeRequest, user: str = Depends(current_user)):
        rec = state.store.submit_outcome(
            precedent_id,
            outcome=req.outcome,
            matches_prognosis=req.matches_prognosis,
            caller=user,
            discrepancy_explanation=req.discrepancy_explanation,
        )
        return _precedent_view(state.engine_for(rec.domain), rec)

    @app.put("/precedents/{precedent_id}/error-explanation", response_model=PrecedentView)
    def put_error_explanation(
        precedent_id: str, req: ErrorExplanationRequest, user: str = Depends(current_user)
    ):
        rec = state.store.update_error_explanation(precedent_id, req.text, caller=user)
        return _precedent_view(state.engine_for(rec.domain), rec)

    @app.get("/users/{user_id}/errors")
    def get_errors(
        user_id: str,
        user: str = Depends(current_user),
        domain: Optional[str] = Query(default=None),
        decision: Optional[str] = Query(default=None),
        date_from: Optional[str] = Query(default=None, alias="from"),
        date_to: Optional[str] = Query(default=None, alias="to"),
    ):
        rows = state.store.list_error_rows(
            user_id,
            caller=user,
            domain=domain,
            decision=decision,
            date_from=date_from,
            date_to=date_to,
        )
        return {"rows": [ErrorRow(**r.to_json()) for r in rows]}

    @app.get("/users/{user_id}/similar", response_model=SimilarResponse)
    def get_similar(
        user_id: str,
        session: str = Query(...),
        limit: int = Query(default=10, ge=1, le=100),
        max_proximity: Optional[float] = Query(default=None),
        user: str = Depends(current_user),
    ):
        engine, sess = owned_session(session, user)
        if user_id != user:
            raise AccessError("cannot query another user's history")
        rows, warning = state.store.query_similar(
            user_id,
            sess.evidence,
            engine.schema,
            caller=user,
            domain=sess.domain,
            limit=limit,
            max_proximity=max_proximity,
        )
        return SimilarResponse(
            rows=[ErrorRow(**r.to_json()) for r in rows],
            warning=ErrorRow(**warning.to_json()) if warning else None,
        )

    @app.get("/users/{user_id}/stats", response_model=StatsResponse)
    def get_stats(
        user_id: str,
        domain: str = Query(...),
        window_days: int = Query(default=30, ge=1),
        user: str = Depends(current_user),
    ):
        series = state.store.progress_stats(
            user_id, caller=user, domain=domain, window_days=window_days
        )
        return StatsResponse(windows=[StatsWindow(**w) for w in series])

    return app
