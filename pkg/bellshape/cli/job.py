# Job configuration: one validated bundle of everything a subcommand needs.

from dataclasses import dataclass, field
from typing import Optional

from ..core.config.cli_config import OUTPUT_FORMATS, get_default_format
from ..core.config.numerics_config import (
    get_derivative_cap,
    get_k_max,
    get_post_cap,
    get_threads,
    get_tolerance,
)
from ..core.errors import ConfigError

MAX_TOLERANCE = 1e-2


@dataclass(frozen=True)
class JobConfig:
    command: str
    payload: dict = field(default_factory=dict)
    tol: float = field(default_factory=get_tolerance)
    threads: Optional[int] = None
    out: Optional[str] = None
    format: str = field(default_factory=get_default_format)
    n_max: Optional[int] = None
    k_max: int = field(default_factory=get_k_max)
    xis: tuple = ()
    orders: tuple = ()
    p_values: tuple = ()
    figure3: bool = False
    limit: bool = False
    method: str = 'auto'

    def __post_init__(self):
        if not 0 < self.tol <= MAX_TOLERANCE:
            raise ConfigError(f'tol must lie in (0, {MAX_TOLERANCE}], got {self.tol}')
        if self.format not in OUTPUT_FORMATS:
            raise ConfigError(f"format must be one of {OUTPUT_FORMATS}, got '{self.format}'")
        if self.threads is not None and self.threads < 1:
            raise ConfigError(f'threads must be >= 1, got {self.threads}')
        if self.k_max < 0:
            raise ConfigError(f'k_max must be >= 0, got {self.k_max}')
        if self.n_max is not None:
            cap = get_post_cap() if self.command == 'post' else get_derivative_cap()
            if not 0 <= self.n_max <= cap:
                raise ConfigError(f'n_max must lie in [0, {cap}] for {self.command}')
        if any(n > get_post_cap() or n < 1 for n in self.orders):
            raise ConfigError(f'approximant orders must lie in [1, {get_post_cap()}]')
        if self.figure3 and self.limit:
            raise ConfigError('--figure3 and --limit are exclusive')

    @property
    def worker_threads(self) -> int:
        return self.threads or get_threads()

    def n_max_or(self, default: int) -> int:
        return self.n_max if self.n_max is not None else default
