"""Configuration for lrckit: enumeration budgets, seed and worker count.

Configuration comes only from command-line flags and an optional JSON file
named with ``--config``; environment variables are not consulted.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .exceptions import ParameterError

logger = logging.getLogger(__name__)


class Budgets(BaseModel):
    """Upper limits on every brute-force enumeration."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    locality_rank_checks: int = Field(
        10**7, ge=1, description="Rank checks summed over a locality profile"
    )
    hypergraph_subsets: int = Field(
        10**6, ge=1, description="C(n, r+1) limit for the recovery hypergraph"
    )
    distance_subsets: int = Field(
        2**24, ge=1, description="2^n limit for subset-rank minimum distance"
    )
    distance_codewords: int = Field(
        2**24, ge=1, description="q^k limit for codeword enumeration"
    )
    general_position_pairs: int = Field(
        10**6, ge=1, description="Equal-size (I, J) pairs checked for general position"
    )
    span_vectors: int = Field(
        10**6, ge=1, description="q^dim limit for span enumeration"
    )
    kcore_exhaustive_max_n: int = Field(
        14, ge=1, description="Largest n for which k-cores are enumerated exhaustively"
    )
    kcore_spot_checks: int = Field(
        10**4, ge=1, description="Random k-subsets examined above the exhaustive limit"
    )
    sampling_retries: int = Field(64, ge=1, description="Seeds tried by samplers")
    elimination_random_tries: int = Field(
        64, ge=1, description="Random coset points tried by can_eliminate"
    )
    elimination_enumeration: int = Field(
        10**5, ge=1, description="Projective kernel points enumerated exactly"
    )
    repair_subsets: int = Field(
        10**6, ge=1, description="Candidate repair sets examined per erased symbol"
    )
    erasure_patterns: int = Field(
        2**16, ge=1, description="2^(k+h) limit for the Hall equivalence sweep"
    )


DEFAULT_BUDGETS = Budgets()


class LrcKitConfig(BaseModel):
    """Top-level configuration file contents."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    budgets: Budgets = Field(default_factory=Budgets, description="Enumeration budgets")
    seed: int = Field(0, ge=0, description="Default seed for all randomness")
    threads: int = Field(1, ge=1, description="Worker threads for locality profiles")


def load_config(path: Optional[Union[str, Path]]) -> LrcKitConfig:
    """Load an lrckit JSON configuration file.

    Args:
        path: Path to the configuration file, or None for defaults

    Returns:
        Parsed configuration

    Raises:
        ParameterError: If the file is unreadable or does not validate
    """
    if path is None:
        return LrcKitConfig()

    config_file = Path(path)
    try:
        with open(config_file, "r") as f:
            raw = json.load(f)
    except (json.JSONDecodeError, OSError) as e:
        logger.warning(f"Failed to load config from {config_file}: {e}")
        raise ParameterError(f"Cannot read configuration file {config_file}", str(e))

    try:
        config = LrcKitConfig.model_validate(raw)
    except ValidationError as e:
        logger.warning(f"Invalid config in {config_file}: {e}")
        raise ParameterError(f"Invalid configuration in {config_file}", str(e))

    logger.info(f"Loaded lrckit configuration from {config_file}")
    return config


def merge_overrides(config: LrcKitConfig, overrides: Dict[str, Any]) -> LrcKitConfig:
    """Apply command-line overrides (None values are ignored) to a configuration.

    Raises:
        ParameterError: If an override does not validate
    """
    updates = {key: value for key, value in overrides.items() if value is not None}
    if not updates:
        return config
    try:
        return LrcKitConfig.model_validate({**config.model_dump(), **updates})
    except ValidationError as e:
        raise ParameterError("Invalid command-line override", str(e))
