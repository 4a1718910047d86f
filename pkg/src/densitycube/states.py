"""Named cube states: basis cubes, the orthonormal non-quantum triple, and
the phase-tagged family built from a pure state vector.

The registry grammar used by the CLI accepts "e1".."eN", "rho1".."rho3",
"rho_n(psi=(c1,c2,c3),n=K)" with complex amplitudes (normalised
automatically), or a path to a cube JSON file.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .cube import HermitianCube, ValidationError, inner
from .jsonio import read_json
from .quantum import check_pure_state

# Primitive third root of unity.  The exact -1/2 real part makes the sums
# 1 + w + w* cancel to exactly zero in double precision, which keeps the
# involution dynamics and the temporal-correlation protocol exact.
OMEGA = complex(-0.5, math.sqrt(3.0) / 2.0)

# Magnitude of the genuinely non-quantum triple element of the basis states.
TRIPLE_MAGNITUDE = 1.0 / (2.0 * math.sqrt(3.0))

_SQRT6 = math.sqrt(6.0)


def omega_power(n: int) -> complex:
    """w^n with exact conjugate symmetry (w^2 == conj(w), w^3 == 1)."""
    residue = n % 3
    if residue == 0:
        return complex(1.0, 0.0)
    return OMEGA if residue == 1 else OMEGA.conjugate()


@dataclass(frozen=True)
class CubeBasis:
    """A set of normalised, mutually orthogonal cubes over one system."""

    levels: int
    members: tuple[HermitianCube, ...]

    def check_orthonormal(self, tol: float = 1e-10) -> None:
        for a, ca in enumerate(self.members):
            for b, cb in enumerate(self.members):
                target = 1.0 if a == b else 0.0
                val = inner(ca, cb)
                if abs(val - target) > tol:
                    raise ValidationError(
                        f"basis members {a + 1},{b + 1} have overlap {val!r}"
                    )


def standard_basis(levels: int) -> CubeBasis:
    """The basis cubes e_n, each with a single unit diagonal element."""
    return CubeBasis(
        levels,
        tuple(HermitianCube.basis_state(levels, n) for n in range(1, levels + 1)),
    )


def nonquantum_state(n: int) -> HermitianCube:
    """Member rho_n of the orthonormal non-quantum triple (three levels).

    rho_n has diagonal 1/2 everywhere except a zero at position n, no pair
    elements, and triple element w^n / (2 sqrt 3) (so rho_1 carries phase 1,
    rho_2 carries w, rho_3 carries w*).
    """
    if n not in (1, 2, 3):
        raise ValidationError(f"nonquantum basis index must be 1, 2 or 3, got {n}")
    diag = [0.5, 0.5, 0.5]
    diag[n - 1] = 0.0
    phase = {1: complex(1.0, 0.0), 2: OMEGA, 3: OMEGA.conjugate()}[n]
    return HermitianCube.from_elements(
        3, diag, triples={(1, 2, 3): phase * TRIPLE_MAGNITUDE}
    )


def nonquantum_basis() -> CubeBasis:
    """The orthonormal triple (rho_1, rho_2, rho_3)."""
    return CubeBasis(3, tuple(nonquantum_state(n) for n in (1, 2, 3)))


def rho_n_of_psi(psi: Sequence[complex], n: int) -> HermitianCube:
    """Cube associated with a pure three-level vector psi and tag n in {1,2,3}.

    Diagonal (1 - |c_i|^2)/2, pair elements -Re(c_i* c_j)/sqrt6 and
    -Im(c_i* c_j)/sqrt6 for i < j, and triple element w^n / (2 sqrt 3).
    Normalised for unit psi; overlaps follow
    (1 + |<psi|phi>|^2)/4 + cos(2 pi (n - m)/3)/2.
    """
    if n not in (1, 2, 3):
        raise ValidationError(f"phase tag n must be 1, 2 or 3, got {n}")
    c = check_pure_state(psi)
    if c.size != 3:
        raise ValidationError(f"psi must have three amplitudes, got {c.size}")
    pairs = {}
    for i in range(1, 4):
        for j in range(i + 1, 4):
            prod = c[i - 1].conjugate() * c[j - 1]
            pairs[(i, j)] = (-prod.real / _SQRT6, -prod.imag / _SQRT6)
    diag = [(1.0 - abs(c[i]) ** 2) / 2.0 for i in range(3)]
    return HermitianCube.from_elements(
        3, diag, pairs=pairs, triples={(1, 2, 3): omega_power(n) * TRIPLE_MAGNITUDE}
    )


def family_overlap(psi, n: int, phi, m: int) -> float:
    """Closed-form overlap of two family members rho_n(psi), rho_m(phi)."""
    a = check_pure_state(psi)
    b = check_pure_state(phi)
    fidelity = abs(np.vdot(a, b)) ** 2
    return (1.0 + fidelity) / 4.0 + math.cos(2.0 * math.pi * (n - m) / 3.0) / 2.0


# -- registry -----------------------------------------------------------------

_RHO_N_RE = re.compile(
    r"^rho_n\(\s*psi\s*=\s*\(([^)]*)\)\s*,\s*n\s*=\s*([123])\s*\)$"
)


def _parse_amplitude(token: str) -> complex:
    token = token.strip().replace("i", "j")
    try:
        return complex(token)
    except ValueError as exc:
        raise ValidationError(f"cannot parse amplitude {token!r}") from exc


def resolve_state(spec: str, levels: int = 3) -> HermitianCube:
    """Resolve a registry name, rho_n(...) expression, or cube JSON path."""
    spec = spec.strip()
    m = re.fullmatch(r"e([1-9]\d*)", spec)
    if m:
        n = int(m.group(1))
        if n > levels:
            raise ValidationError(f"state e{n} needs at least {n} levels, have {levels}")
        return HermitianCube.basis_state(levels, n)
    m = re.fullmatch(r"rho([123])", spec)
    if m:
        if levels != 3:
            raise ValidationError(f"state {spec} is three-level, requested {levels}")
        return nonquantum_state(int(m.group(1)))
    m = _RHO_N_RE.fullmatch(spec)
    if m:
        if levels != 3:
            raise ValidationError(f"rho_n states are three-level, requested {levels}")
        amplitudes = [_parse_amplitude(tok) for tok in m.group(1).split(",")]
        if len(amplitudes) != 3:
            raise ValidationError(f"psi needs three amplitudes, got {len(amplitudes)}")
        vec = np.asarray(amplitudes, dtype=np.complex128)
        norm = float(np.linalg.norm(vec))
        if norm <= 0.0:
            raise ValidationError("psi must be a nonzero vector")
        return rho_n_of_psi(vec / norm, int(m.group(2)))
    path = Path(spec)
    if path.suffix == ".json" and path.exists():
        cube = HermitianCube.from_dict(read_json(path))
        if cube.levels != levels:
            raise ValidationError(
                f"cube file has {cube.levels} levels, requested {levels}"
            )
        cube.check_state()
        return cube
    raise ValidationError(
        f"unknown state spec {spec!r}: expected e<n>, rho<1-3>, "
        f"rho_n(psi=(...),n=...), or a cube JSON path"
    )
