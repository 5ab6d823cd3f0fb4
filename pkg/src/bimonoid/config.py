"""Resource caps for rewriting, read from the environment."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import ConfigError

DEFAULT_STEP_BUDGET = 10 ** 7
DEFAULT_MAX_TERM_SIZE = 10 ** 6

ENV_STEP_BUDGET = "BF_STEP_BUDGET"
ENV_MAX_TERM_SIZE = "BF_MAX_TERM_SIZE"


@dataclass(frozen=True)
class Settings:
    step_budget: int = DEFAULT_STEP_BUDGET
    max_term_size: int = DEFAULT_MAX_TERM_SIZE


def _number(name: str, raw) -> int:
    try:
        value = int(str(raw).strip())
    except ValueError:
        raise ConfigError(f"{name} must be a non-negative integer, got {raw!r}") from None
    if value < 0:
        raise ConfigError(f"{name} must be a non-negative integer, got {raw!r}")
    return value


def load_settings(env=None, **overrides) -> Settings:
    """Defaults, then environment variables, then explicit overrides.

    Overrides use the lowercased variable names (bf_step_budget,
    bf_max_term_size); None means "not given".
    """
    env = os.environ if env is None else env
    settings = Settings()
    if env.get(ENV_STEP_BUDGET) not in (None, ""):
        settings = replace(settings, step_budget=_number(ENV_STEP_BUDGET, env[ENV_STEP_BUDGET]))
    if env.get(ENV_MAX_TERM_SIZE) not in (None, ""):
        settings = replace(settings, max_term_size=_number(ENV_MAX_TERM_SIZE, env[ENV_MAX_TERM_SIZE]))
    budget = overrides.pop("bf_step_budget", None)
    if budget is not None:
        settings = replace(settings, step_budget=_number("--bf_step_budget", budget))
    max_size = overrides.pop("bf_max_term_size", None)
    if max_size is not None:
        settings = replace(settings, max_term_size=_number("--bf_max_term_size", max_size))
    if overrides:
        raise ConfigError(f"unknown settings: {', '.join(sorted(overrides))}")
    return settings
