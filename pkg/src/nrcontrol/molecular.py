"""Surrogate I2 molecular model: Morse potentials, linear polarizability and
the vibrational eigensystem of the field-free B-state Hamiltonian.

The B-state Morse ladder is calibrated to two adjacent level spacings near
v = 30. The default targets reproduce the published 69.1 / 71.3 cm^-1
spacings to better than 0.1% while their ratio is tuned so that the v-1
Raman channel dephases by 0.19 rad per vibrational period and the wave
packet revival falls at ~33 mean periods, which is what anchors all
pulse-train timing in this problem.
"""

from dataclasses import dataclass, field, asdict
from functools import cached_property
import json

import numpy as np
import scipy.linalg

from . import units as u

# default B-state calibration targets (cm^-1): omega_{31,30}, omega_{30,29}
B_SPACING_TARGETS_CM = (69.15, 71.25)
# X-state spectroscopic defaults (cm^-1, Angstrom)
X_WE_CM = 214.5
X_WEXE_CM = 0.61
X_RE_A = 2.666
DEFAULT_MASS_AMU = 63.45
DEFAULT_PUMP_NM = 535.0


@dataclass
class SpatialGrid:
    """Uniform radial grid; n_points must be a power of two (FFT stepping)."""

    r_min_A: float = 2.1
    r_max_A: float = 6.0
    n_points: int = 512

    def __post_init__(self):
        if self.n_points & (self.n_points - 1) or self.n_points < 8:
            raise ValueError(f"n_points must be a power of two >= 8, got {self.n_points}")
        if not self.r_min_A < self.r_max_A:
            raise ValueError("require r_min < r_max")

    @property
    def spacing_A(self):
        return (self.r_max_A - self.r_min_A) / self.n_points

    @property
    def dr_bohr(self):
        return u.angstrom_to_bohr(self.spacing_A)

    @cached_property
    def r_bohr(self):
        r0 = u.angstrom_to_bohr(self.r_min_A)
        return r0 + self.dr_bohr * np.arange(self.n_points)

    @cached_property
    def r_A(self):
        return u.bohr_to_angstrom(self.r_bohr)

    @cached_property
    def k_bohr(self):
        """Momentum grid matching numpy FFT ordering."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dr_bohr)


@dataclass
class MorseParams:
    """Morse potential D_e(1-exp(-a(r-r_e)))^2 + T_e."""

    D_e_cm: float
    a_invA: float
    r_e_A: float
    T_e_cm: float = 0.0

    def __post_init__(self):
        if self.D_e_cm <= 0 or self.a_invA <= 0:
            raise ValueError("Morse parameters D_e and a must be positive")

    def potential_au(self, r_bohr):
        a = self.a_invA * u.ANGSTROM_PER_BOHR
        re = u.angstrom_to_bohr(self.r_e_A)
        De = u.cm_to_au(self.D_e_cm)
        return De * (1.0 - np.exp(-a * (r_bohr - re))) ** 2 + u.cm_to_au(self.T_e_cm)

    def we_cm(self, mass_amu):
        m = u.amu_to_au(mass_amu)
        a = self.a_invA * u.ANGSTROM_PER_BOHR
        return u.au_to_cm(a * np.sqrt(2.0 * u.cm_to_au(self.D_e_cm) / m))

    def wexe_cm(self, mass_amu):
        m = u.amu_to_au(mass_amu)
        a = self.a_invA * u.ANGSTROM_PER_BOHR
        return u.au_to_cm(a * a / (2.0 * m))

    def analytic_levels_cm(self, mass_amu, v_max):
        """E_v = we(v+1/2) - wexe(v+1/2)^2 above the Morse minimum, plus T_e."""
        we = self.we_cm(mass_amu)
        wexe = self.wexe_cm(mass_amu)
        v = np.arange(v_max + 1) + 0.5
        return we * v - wexe * v**2 + self.T_e_cm

    def n_bound(self, mass_amu):
        we = self.we_cm(mass_amu)
        wexe = self.wexe_cm(mass_amu)
        return int(np.floor(we / (2.0 * wexe) - 0.5)) + 1


def morse_from_we_wexe(we_cm, wexe_cm, r_e_A, mass_amu, T_e_cm=0.0):
    """Morse parameters from harmonic frequency and anharmonicity."""
    if we_cm <= 0 or wexe_cm <= 0:
        raise ValueError("we and wexe must be positive")
    De_cm = we_cm**2 / (4.0 * wexe_cm)
    m = u.amu_to_au(mass_amu)
    a_bohr = np.sqrt(2.0 * m * u.cm_to_au(wexe_cm))
    return MorseParams(De_cm, a_bohr * u.BOHR_PER_ANGSTROM, r_e_A, T_e_cm)


def build_b_state_morse(target_spacings_cm, mass_amu=DEFAULT_MASS_AMU,
                        r_e_A=3.024, v_upper=31):
    """Fit a Morse ladder to two adjacent spacings.

    target_spacings_cm = (omega_{v,v-1}, omega_{v-1,v-2}) with v = v_upper.
    The two spacings fix we and wexe exactly:
        wexe = (lower - upper)/2,  we = upper + 2*wexe*v_upper.
    """
    w_up, w_lo = target_spacings_cm
    if w_up <= 0 or w_lo <= 0:
        raise ValueError("spacings must be positive")
    if w_lo <= w_up:
        raise ValueError(
            "Morse ladder must compress upward: require "
            f"omega_({v_upper-1},{v_upper-2}) > omega_({v_upper},{v_upper-1}), "
            f"got {w_lo} <= {w_up}")
    wexe = (w_lo - w_up) / 2.0
    we = w_up + 2.0 * wexe * v_upper
    return morse_from_we_wexe(we, wexe, r_e_A, mass_amu)


@dataclass
class PolarizabilityModel:
    """V_alpha(r) = V0*(1 + k_alpha*(r - r_e)); V0 = alpha(r_e)*E0^2 in au."""

    V0_au: float = 1.3e-3
    slope_invA: float = 1.0
    r_e_A: float = 3.024

    def __post_init__(self):
        if self.V0_au <= 0:
            raise ValueError("V0 must be positive")

    def values_au(self, r_bohr):
        k = self.slope_invA * u.ANGSTROM_PER_BOHR
        re = u.angstrom_to_bohr(self.r_e_A)
        return self.V0_au * (1.0 + k * (r_bohr - re))


class Eigensystem:
    """Bound vibrational eigenpairs on the grid.

    States are grid-quadrature normalized (sum |psi|^2 dr = 1) and carry an
    inner-lobe-positive sign convention: the first antinode of every
    eigenfunction is positive. That convention makes all Franck-Condon
    amplitudes from a compact inner-region state positive (a transform-limited
    pump packet then has zero relative phases) and makes the off-diagonal
    polarizability elements <v+1|V_alpha|v> uniformly negative, which is the
    sign convention behind the negative per-pulse kick strengths.
    """

    def __init__(self, energies_au, states, grid, mass_amu):
        self.energies_au = energies_au
        self.states = states
        self.grid = grid
        self.mass_amu = mass_amu

    @property
    def n_levels(self):
        return len(self.energies_au)

    @property
    def energies_cm(self):
        return u.au_to_cm(self.energies_au)

    def state(self, v):
        return self.states[:, v]

    def spacing_au(self, v_hi, v_lo):
        return self.energies_au[v_hi] - self.energies_au[v_lo]

    def spacing_cm(self, v_hi, v_lo):
        return u.au_to_cm(self.spacing_au(v_hi, v_lo))

    def period_fs(self, v_hi):
        """Vibrational period T_{v_hi, v_hi-1} = 2*pi/omega."""
        return u.au_to_fs(2.0 * np.pi / self.spacing_au(v_hi, v_hi - 1))

    def mean_period_fs(self, v=30):
        """(T_{v+1,v} + T_{v,v-1})/2."""
        return 0.5 * (self.period_fs(v + 1) + self.period_fs(v))

    def revival_time_fs(self, v=30):
        dw = self.spacing_au(v, v - 1) - self.spacing_au(v + 1, v)
        return u.au_to_fs(2.0 * np.pi / abs(dw))

    def project(self, psi):
        """Coefficients <v|psi> for all levels."""
        return self.states.T @ psi * self.grid.dr_bohr

    def reconstruct(self, coeffs):
        return self.states @ coeffs

    def orthonormality_defect(self):
        g = self.states.T @ self.states * self.grid.dr_bohr
        return np.abs(g - np.eye(self.n_levels)).max()


def kinetic_matrix(grid, mass_amu):
    """Dense kinetic matrix exactly consistent with the FFT stepping operator."""
    m = u.amu_to_au(mass_amu)
    tdiag = grid.k_bohr**2 / (2.0 * m)
    F = np.fft.fft(np.eye(grid.n_points), axis=0)
    T = np.fft.ifft(tdiag[:, None] * F, axis=0)
    return 0.5 * (T + T.conj().T).real


def eigensolve(grid, potential_au, mass_amu, n_levels):
    """Diagonalize T + V on the grid and return the lowest n_levels eigenpairs.

    The kinetic operator is the same spectral operator the split-step
    propagator applies, so the returned states are stationary states of the
    discretized dynamics, not merely approximations to the continuum ones.
    """
    potential_au = np.asarray(potential_au, dtype=float)
    if potential_au.shape != (grid.n_points,):
        raise ValueError("potential shape does not match grid")
    if not np.all(np.isfinite(potential_au)):
        raise ValueError("potential contains non-finite values")
    if n_levels >= grid.n_points // 4:
        raise ValueError("n_levels must be well below n_points")
    H = kinetic_matrix(grid, mass_amu) + np.diag(potential_au)
    evals, evecs = scipy.linalg.eigh(H)
    # reject levels that are not bound by the grid-edge potential
    v_edge = min(potential_au[0], potential_au[-1])
    if evals[n_levels - 1] >= v_edge:
        raise ValueError(
            f"requested {n_levels} levels but only "
            f"{int(np.searchsorted(evals, v_edge))} lie below the grid-edge potential")
    states = evecs[:, :n_levels] / np.sqrt(grid.dr_bohr)
    # inner-lobe-positive sign convention
    for v in range(n_levels):
        col = states[:, v]
        first = np.nonzero(np.abs(col) > 0.05 * np.abs(col).max())[0][0]
        if col[first] < 0:
            states[:, v] = -col
    return Eigensystem(evals[:n_levels].copy(), states, grid, mass_amu)


def raman_matrix_element(eigs, pol, v, v_prime):
    """<v'|V_alpha(r)|v> by grid quadrature, in au."""
    va = pol.values_au(eigs.grid.r_bohr)
    return float(eigs.state(v_prime) @ (va * eigs.state(v)) * eigs.grid.dr_bohr)


@dataclass
class MolecularModel:
    """Grid, surrogate X/B potentials, polarizability and dipole in one place."""

    grid: SpatialGrid = field(default_factory=SpatialGrid)
    mass_amu: float = DEFAULT_MASS_AMU
    b_state: MorseParams = None
    x_state: MorseParams = None
    polarizability: PolarizabilityModel = None
    mu_au: float = 1.0            # Condon (constant) transition dipole
    n_levels: int = 46

    def __post_init__(self):
        if self.b_state is None:
            self.b_state = build_b_state_morse(B_SPACING_TARGETS_CM, self.mass_amu)
        if self.x_state is None:
            self.x_state = morse_from_we_wexe(X_WE_CM, X_WEXE_CM, X_RE_A, self.mass_amu)
        if self.polarizability is None:
            self.polarizability = PolarizabilityModel(r_e_A=self.b_state.r_e_A)

    @cached_property
    def b_eigs(self):
        return eigensolve(self.grid, self.b_state.potential_au(self.grid.r_bohr),
                          self.mass_amu, self.n_levels)

    @cached_property
    def x_eigs(self):
        return eigensolve(self.grid, self.x_state.potential_au(self.grid.r_bohr),
                          self.mass_amu, self.n_levels)

    @cached_property
    def valpha_au(self):
        return self.polarizability.values_au(self.grid.r_bohr)

    def b_potential_au(self):
        return self.b_state.potential_au(self.grid.r_bohr)

    def calibrate_b_te(self, lambda_nm=DEFAULT_PUMP_NM, v_target=30):
        """Choose the B-state term energy so a lambda_nm photon from X(v=0)
        is resonant with B(v_target). Returns the new T_e (cm^-1)."""
        if self.b_state.T_e_cm != 0.0:
            # recalibrate from scratch
            self.b_state.T_e_cm = 0.0
            self.__dict__.pop("b_eigs", None)
        e_b = self.b_eigs.energies_cm[v_target]
        e_x0 = self.x_eigs.energies_cm[0]
        te = u.nm_to_cm(lambda_nm) + e_x0 - e_b
        self.b_state.T_e_cm = te
        # shift cached eigensystem in place; states are unaffected
        self.b_eigs.energies_au = self.b_eigs.energies_au + u.cm_to_au(te)
        return te

    @classmethod
    def default(cls, **overrides):
        """Standard calibrated model: B ladder fitted to the spacing targets,
        T_e set for a 535 nm pump resonant at v = 30."""
        model = cls(**overrides)
        model.calibrate_b_te()
        return model

    # --- serialization -------------------------------------------------
    def to_config(self):
        return {
            "schema": "nrcontrol-model-1",
            "grid": asdict(self.grid),
            "mass_amu": self.mass_amu,
            "b_state": asdict(self.b_state),
            "x_state": asdict(self.x_state),
            "polarizability": asdict(self.polarizability),
            "mu_au": self.mu_au,
            "n_levels": self.n_levels,
        }

    @classmethod
    def from_config(cls, cfg):
        return cls(
            grid=SpatialGrid(**cfg["grid"]),
            mass_amu=cfg["mass_amu"],
            b_state=MorseParams(**cfg["b_state"]),
            x_state=MorseParams(**cfg["x_state"]),
            polarizability=PolarizabilityModel(**cfg["polarizability"]),
            mu_au=cfg.get("mu_au", 1.0),
            n_levels=cfg.get("n_levels", 46),
        )

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_config(), fh, indent=2)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_config(json.load(fh))


def export_eigensystem_csv(eigs, path):
    """CSV of (v, E_v cm^-1)."""
    with open(path, "w") as fh:
        fh.write("v,energy_cm\n")
        for v, e in enumerate(eigs.energies_cm):
            fh.write(f"{v},{e!r}\n")
