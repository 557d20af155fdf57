"""Service configuration: one JSON file plus environment-variable overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..explain import PerturbationConfig


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8042
    data_dir: str = "./data"
    tokens: dict = field(default_factory=dict)  # bearer token -> user id
    explainer: PerturbationConfig = field(default_factory=PerturbationConfig)
    distortion_samples: int = 500
    review_limit: int = 10
    seed: int = 0
    domain_files: tuple = ()

    def with_port(self, port: int) -> "ServiceConfig":
        return replace(self, port=port)

    @classmethod
    def load(cls, path: str | Path | None = None) -> "ServiceConfig":
        """Read the config file (CASECOACH_CONFIG when no path given), then env overrides."""
        doc: dict = {}
        path = path or os.environ.get("CASECOACH_CONFIG")
        if path:
            doc = json.loads(Path(path).read_text())
        ex = doc.get("explainer", {})
        cfg = cls(
            host=doc.get("host", "127.0.0.1"),
            port=int(doc.get("port", 8042)),
            data_dir=doc.get("data_dir", "./data"),
            tokens=dict(doc.get("tokens", {})),
            explainer=PerturbationConfig(
                samples=int(ex.get("samples", 1000)),
                kernel_width=float(ex.get("kernel_width", 0.25)),
                ridge=float(ex.get("ridge", 1e-3)),
                seed=int(ex.get("seed", 0)),
            ),
            distortion_samples=int(doc.get("distortion_samples", 500)),
            review_limit=int(doc.get("review_limit", 10)),
            seed=int(doc.get("seed", 0)),
            domain_files=tuple(doc.get("domain_files", ())),
        )
        return _apply_env(cfg)


def _apply_env(cfg: ServiceConfig) -> ServiceConfig:
    env = os.environ
    if "CASECOACH_HOST" in env:
        cfg = replace(cfg, host=env["CASECOACH_HOST"])
    if "CASECOACH_PORT" in env:
        cfg = replace(cfg, port=int(env["CASECOACH_PORT"]))
    if "CASECOACH_DATA_DIR" in env:
        cfg = replace(cfg, data_dir=env["CASECOACH_DATA_DIR"])
    if "CASECOACH_SEED" in env:
        cfg = replace(cfg, seed=int(env["CASECOACH_SEED"]))
    if "CASECOACH_TOKENS" in env:
        tokens = {}
        for pair in env["CASECOACH_TOKENS"].split(","):
            if "=" in pair:
                token, user = pair.split("=", 1)
                tokens[token.strip()] = user.strip()
        cfg = replace(cfg, tokens=tokens)
    return cfg
