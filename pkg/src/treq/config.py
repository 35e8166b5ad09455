"""Default parameters shared by the library and the CLI."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import PreconditionError

# Mersenne prime 2^61 - 1; Schwartz-Zippel error per sample is degree / p.
DEFAULT_PRIME = (1 << 61) - 1

DEFAULT_SEED = 0
DEFAULT_STATE_CAP = 10**6
DEFAULT_SAMPLES = 64
DEFAULT_MOVES = 6

# rose-action edge weights: numerator uniform in 1..16, denominator in {1, 2, 4}
WEIGHT_NUMERATORS = tuple(range(1, 17))
WEIGHT_DENOMINATORS = (1, 2, 4)


def default_depth(rank: int) -> int:
    return 4 if rank <= 2 else 3


@dataclass
class Config:
    rank: int | None = None        # None: inferred from the words
    seed: int = DEFAULT_SEED
    depth: int | None = None       # None: default_depth(rank)
    state_cap: int = DEFAULT_STATE_CAP
    samples: int = DEFAULT_SAMPLES
    moves: int = DEFAULT_MOVES
    radius: int | None = None      # None: |g| + |h| + ||gh|| + 4
    prime: int = DEFAULT_PRIME
    jobs: int = 1
    output: str = "text"

    def __post_init__(self):
        for name in ("state_cap", "samples", "prime", "jobs"):
            if getattr(self, name) <= 0:
                raise PreconditionError(f"{name} must be positive")
        for name in ("rank", "depth", "radius"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise PreconditionError(f"{name} must be nonnegative")
        if self.moves < 0:
            raise PreconditionError("moves must be nonnegative")
        if self.output not in ("text", "json"):
            raise PreconditionError("output must be 'text' or 'json'")

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        env_seed = os.environ.get("TREQ_SEED")
        if env_seed is not None and overrides.get("seed") is None:
            try:
                overrides["seed"] = int(env_seed)
            except ValueError:
                raise PreconditionError(f"TREQ_SEED must be an integer, got {env_seed!r}") from None
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return cls(**overrides)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)
