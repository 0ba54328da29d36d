"""Time-dependent drive protocols for the constrained chain.

A protocol supplies the hopping amplitude J(t), the tilt A(t), and the
hopping phase phi(t), plus the angular frequency omega that fixes the
driving period T = 2*pi/omega. Protocols are selectable by name for the
CLI and config files; parameters come from key=value pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import ValidationError


@dataclass(frozen=True)
class DriveProtocol:
    """Bundle of scalar control functions of time with a driving frequency."""

    omega: float
    J: Callable[[float], float]
    A: Callable[[float], float]
    phi: Callable[[float], float]
    name: str = "custom"

    def __post_init__(self):
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValidationError(f"omega must be positive and finite, got {self.omega}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    def controls(self, t: float) -> tuple[float, float, float]:
        """(J, A, phi) at time t, validated finite."""
        j, a, p = self.J(t), self.A(t), self.phi(t)
        if not (math.isfinite(j) and math.isfinite(a) and math.isfinite(p)):
            raise ValidationError(f"drive returned non-finite controls at t={t}: {(j, a, p)}")
        return j, a, p


def winding_drive(omega: float = 0.9071) -> DriveProtocol:
    """The chaotic reference protocol: J = sqrt(1 + cos^2(wt)), A = cos(wt), phi = wt.

    The hopping phase winds one full turn per period, which is what breaks
    the static model's integrability.
    """
    return DriveProtocol(
        omega=omega,
        J=lambda t: math.sqrt(1.0 + math.cos(omega * t) ** 2),
        A=lambda t: math.cos(omega * t),
        phi=lambda t: omega * t,
        name="paper",
    )


def constant_drive(J: float = 1.0, A: float = 0.0, phi: float = 0.0, omega: float = 1.0) -> DriveProtocol:
    """Static controls; omega still fixes the nominal Floquet period."""
    return DriveProtocol(omega=omega, J=lambda t: J, A=lambda t: A, phi=lambda t: phi, name="constant")


def drive_by_name(name: str, **params) -> DriveProtocol:
    """Resolve a protocol name ("paper"/"winding" or "constant") with parameters."""
    key = name.strip().lower()
    if key in ("paper", "winding"):
        return winding_drive(omega=float(params.get("omega", 0.9071)))
    if key == "constant":
        return constant_drive(
            J=float(params.get("J", params.get("j", 1.0))),
            A=float(params.get("A", params.get("a", 0.0))),
            phi=float(params.get("phi", 0.0)),
            omega=float(params.get("omega", 1.0)),
        )
    raise ValidationError(f"unknown drive protocol {name!r}")
