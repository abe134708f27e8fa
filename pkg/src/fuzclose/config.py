"""Enumeration limits shared by every exhaustive checker."""

import os
from dataclasses import dataclass, replace

CAP_ENV = "FUZCLOSE_CAP"


@dataclass(frozen=True)
class Config:
    # largest |L|^|X| enumerated or tabulated exhaustively
    cap: int = 4096
    # largest |L| for which all 2^|L| subsets are enumerated
    subset_cap: int = 16
    # largest number of (u, v) pairs checked exhaustively by pairwise laws
    pair_budget: int = 1 << 20
    # random samples used once a check falls back to sampling
    samples: int = 2000
    seed: int = 0

    def with_(self, **changes) -> "Config":
        return replace(self, **changes)


def default_config() -> Config:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return Config()
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{CAP_ENV} must be positive, got {cap}")
    return Config(cap=cap)
