"""Define the configurable parameters shared by every pipeline."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional, Type, TypeVar

from dotenv import load_dotenv
from langchain_core.runnables import RunnableConfig, ensure_config

from src.shared.rationals import parse_rational

load_dotenv()

DEFAULT_CACHE_DIR = ".gale-cache"


def _cache_dir_from_env() -> str:
    return os.environ.get("GALE_CACHE_DIR", DEFAULT_CACHE_DIR)


@dataclass(kw_only=True)
class BaseConfiguration:
    """Configuration shared by generation, simulation and verification.

    Every command and every verification task is a pure function of one of
    these objects (plus a seed), so the object is also what gets echoed into
    output artifacts.
    """

    seed: int = field(
        default=0,
        metadata={"description": "Seed of the base random source."},
    )

    hedge: str = field(
        default="1/64",
        metadata={
            "description": "Hedge epsilon of the builtin gamblers, as an exact rational 'num/den'."
        },
    )

    state_cap: int = field(
        default=200_000,
        metadata={
            "description": "Upper bound on reachable-state enumeration before totality is reported unknown."
        },
    )

    cache_dir: str = field(
        default_factory=_cache_dir_from_env,
        metadata={
            "description": "Directory for generated sequence files. Read from GALE_CACHE_DIR when set."
        },
    )

    @property
    def hedge_value(self) -> Fraction:
        """Return the hedge as an exact rational."""
        value = parse_rational(self.hedge)
        if not 0 < value < 1:
            raise ValueError(f"hedge must lie in (0, 1), got {self.hedge}")
        return value

    def sequence_path(self, family: str, h: Optional[int], block_bits: int) -> Path:
        """Default body path of a generated sequence under the cache directory."""
        stem = family if h is None else f"{family}-h{h}"
        return Path(self.cache_dir) / f"{stem}-L{block_bits}-s{self.seed}.bin"

    @classmethod
    def from_runnable_config(
        cls: Type[T], config: Optional[RunnableConfig] = None
    ) -> T:
        """Create a configuration instance from a RunnableConfig object.

        Args:
            cls (Type[T]): The class itself.
            config (Optional[RunnableConfig]): The configuration object to use.

        Returns:
            T: An instance of the configuration with the specified values.
        """
        config = ensure_config(config)
        configurable = config.get("configurable") or {}
        _fields = {f.name for f in fields(cls) if f.init}
        return cls(**{k: v for k, v in configurable.items() if k in _fields})


T = TypeVar("T", bound=BaseConfiguration)
