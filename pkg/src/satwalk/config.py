"""Run-time settings: caps and tolerances with key=value file overrides."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ValidationError


@dataclass(frozen=True)
class Settings:
    """All tunable caps and tolerances in one place.

    Defaults are the documented per-module values; the CLI can override
    any field from a ``key = value`` config file or individual flags.
    """

    enum_cap: int = 30              # max variables for exhaustive solution enumeration
    full_chain_cap: int = 14        # max sites for the dense 2^N Hamiltonian
    median_cap: int = 2000          # max vertices for the median triple scan
    floquet_steps: int = 256        # default time steps per driving period
    converge_target: float = 1e-6   # max-entry target for the step-doubling mode
    unitarity_tol: float = 1e-9     # ||U^dag U - I||_max acceptance for propagators
    residual_tol: float = 1e-8      # per-eigenpair residual acceptance
    cluster_tol: float = 1e-8       # eigenvalue clustering width in the unitary eigensolver
    rank_tol: float = 1e-12         # singular values below this count as structural zeros
    entropy_slack: float = 1e-9     # allowed excess over a structural entropy bound
    hist_bin_width: float = 0.1     # spacing histogram bin width
    hist_s_max: float = 4.0         # spacing histogram upper edge


DEFAULTS = Settings()

_FIELD_TYPES = {f.name: f.type for f in fields(Settings)}


def load_settings(path: str | Path, base: Settings = DEFAULTS) -> Settings:
    """Read ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    overrides = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _FIELD_TYPES:
            raise ValidationError(f"{path}:{lineno}: unknown setting {key!r}")
        caster = int if _FIELD_TYPES[key] in ("int", int) else float
        try:
            overrides[key] = caster(value.strip())
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return replace(base, **overrides)
