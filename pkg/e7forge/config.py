"""Shared configuration constants for the E7 construction toolkit."""

from __future__ import annotations

import os
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES_DIR = REPO_ROOT / "fixtures"
DEFAULT_OUTPUT_DIR = REPO_ROOT / "reports"
SPLIT_FIXTURE = FIXTURES_DIR / "split.json"
HAMILTON_FIXTURE = FIXTURES_DIR / "hamilton.json"
BOURBAKI_E7_FIXTURE = FIXTURES_DIR / "bourbaki_e7.json"

PRIME_FLOOR = 2 ** 20
DEFAULT_PRIME_COUNT = 8
DEFAULT_SEED = 20240601

FULL_JACOBI_MAX_DIM = 200
DERIVATION_SAMPLES = 1000
GIFT_SAMPLES = 500
# Per-coordinate square-free representatives are tried in this order before
# anything larger.
SIGN_SEARCH_RADIUS = (1, 2)

THREADS_ENV = "E7FORGE_THREADS"
RELEASE_TAG_ENV = "E7FORGE_RELEASE_TAG"

DEFAULT_COMMANDS = [
    "validate",
    "build",
    "schur",
    "verify-jacobi",
    "verify-killing",
    "verify-roots",
    "extended-diagram",
    "line-subalgebras",
    "grade:Q",
    "lts",
    "gift",
    "formula-star",
    "embedding",
    "d6a1",
]


def resolve_thread_cap() -> int:
    """Resolve the parallelism cap from ``E7FORGE_THREADS`` (default 1)."""

    raw = os.getenv(THREADS_ENV)
    if not raw:
        return 1

    try:
        value = int(raw)
    except ValueError:
        print(f"Warning: ignoring non-integer {THREADS_ENV}={raw!r}")
        return 1

    if value < 1:
        print(f"Warning: ignoring non-positive {THREADS_ENV}={raw!r}")
        return 1

    return value
