"""Global tolerance profiles.

One profile object carries every numeric tolerance used by validators and
decomposition post-checks.  The active profile is selected once per process,
either explicitly or through the CPMETRIC_TOL_PROFILE environment variable
(``default`` or ``strict``).
"""

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class ToleranceProfile:
    name: str
    # construction-time checks (hermiticity, trace, finiteness scale)
    construction: float = 1e-12
    # decomposition residuals, relative to operator scale
    decomposition: float = 1e-10
    # derived-quantity invariants (reproduction of states, unitality, ...)
    invariant: float = 1e-9
    # negative-eigenvalue clip for nominally PSD matrices
    psd_clip: float = 1e-10
    # certified duality gap targets
    scalar_gap: float = 1e-7
    subspace_gap: float = 1e-6


DEFAULT = ToleranceProfile(name="default")
STRICT = ToleranceProfile(
    name="strict",
    construction=1e-13,
    decomposition=1e-11,
    invariant=1e-10,
    psd_clip=1e-11,
    scalar_gap=1e-8,
    subspace_gap=1e-7,
)

_PROFILES = {"default": DEFAULT, "strict": STRICT}
_active = None


def active_profile() -> ToleranceProfile:
    """Return the process-wide tolerance profile."""
    global _active
    if _active is None:
        name = os.environ.get("CPMETRIC_TOL_PROFILE", "default").strip().lower()
        _active = _PROFILES.get(name, DEFAULT)
    return _active


def set_profile(name: str) -> ToleranceProfile:
    global _active
    if name not in _PROFILES:
        raise KeyError(f"unknown tolerance profile {name!r}")
    _active = _PROFILES[name]
    return _active
