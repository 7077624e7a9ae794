"""
Run configuration and logging setup for the command-line front end.
"""
import sys
from pathlib import Path
from typing import List, Optional

from loguru import logger
from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from utils.algebra import is_exact

LOG_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <7}</level> | {name}:{line} - {message}"
COMMANDS = ("classify", "reproduce", "catalog", "sample", "check-origin", "check-concentric", "check-shifted")


class KlabSettings(BaseSettings):
    """Defaults read from KLAB_* environment variables or a local .env file."""

    model_config = SettingsConfigDict(env_prefix="KLAB_", env_file=".env", extra="ignore")

    threads: int = Field(default=1, ge=1)
    grid: int = Field(default=2048, ge=8)
    log_level: str = "WARNING"
    tol: Optional[float] = Field(default=None, gt=0)


class RunConfig(BaseModel):
    """
    One validated command invocation.

    Attributes:
        command (str): CLI command name.
        n (int): Matrix size.
        xi (list): Parsed invariants; exact scalars or floats.
        source (str, optional): Input file or directory the vectors came from.
        exact (bool): Exact mode; every xi value must be exact.
        tol (float, optional): Residual threshold override.
        grid (int): Number of θ directions for curve sampling.
        threads (int): Worker threads for curve sampling.
        out (Path, optional): Output directory.
    """

    model_config = {"arbitrary_types_allowed": True}

    command: str
    n: Optional[int] = None
    xi: List = Field(default_factory=list)
    source: Optional[str] = None
    exact: bool = False
    tol: Optional[float] = Field(default=None, gt=0)
    grid: int = Field(default=2048, ge=8)
    threads: int = Field(default=1, ge=1)
    out: Optional[Path] = None

    @field_validator("command")
    @classmethod
    def _known_command(cls, value):
        if value not in COMMANDS:
            raise ValueError(f"Unsupported command: {value}")
        return value

    @model_validator(mode="after")
    def _exact_tokens_only(self):
        if self.exact:
            inexact = [j for j, v in enumerate(self.xi, start=1) if not is_exact(v)]
            if inexact:
                raise ValueError(f"exact mode needs rational or a+b*sqrt2 values; xi_{inexact[0]} is a decimal")
        if self.xi and self.n is not None and len(self.xi) != self.n - 1:
            raise ValueError(f"Expected {self.n - 1} xi values for n = {self.n}, got {len(self.xi)}")
        return self

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "numeric"


def load_settings() -> KlabSettings:
    return KlabSettings()


def configure_logging(level: str = "WARNING") -> None:
    """Replace loguru's default sink with a single stderr sink at the given level."""
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format=LOG_FORMAT)
