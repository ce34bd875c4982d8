"""Unit constants and conversions.

All internal physics runs in Hartree atomic units (hbar = 1); public
interfaces speak fs, cm^-1, Angstrom, nm and amu.
"""

import numpy as np

HARTREE_PER_CM = 1.0 / 219474.6313632          # Eh per cm^-1
CM_PER_HARTREE = 219474.6313632
FS_PER_AU = 0.02418884326585747                # fs per atomic time unit
AU_PER_FS = 1.0 / FS_PER_AU
ME_PER_AMU = 1822.888486209                    # electron masses per amu
ANGSTROM_PER_BOHR = 0.529177210903
BOHR_PER_ANGSTROM = 1.0 / ANGSTROM_PER_BOHR
C_CM_PER_FS = 2.99792458e-5                    # speed of light, cm/fs


def cm_to_au(e_cm):
    return np.asarray(e_cm) * HARTREE_PER_CM if np.ndim(e_cm) else e_cm * HARTREE_PER_CM


def au_to_cm(e_au):
    return np.asarray(e_au) * CM_PER_HARTREE if np.ndim(e_au) else e_au * CM_PER_HARTREE


def fs_to_au(t_fs):
    return t_fs * AU_PER_FS


def au_to_fs(t_au):
    return t_au * FS_PER_AU


def angstrom_to_bohr(x):
    return x * BOHR_PER_ANGSTROM


def bohr_to_angstrom(x):
    return x * ANGSTROM_PER_BOHR


def amu_to_au(m_amu):
    return m_amu * ME_PER_AMU


def nm_to_cm(lambda_nm):
    """Vacuum wavelength (nm) to wavenumber (cm^-1)."""
    return 1.0e7 / lambda_nm


def period_fs_from_cm(omega_cm):
    """Vibrational period 2*pi/omega for a spacing given in cm^-1."""
    return 1.0 / (C_CM_PER_FS * omega_cm)
