"""Electron-mirror duality toolkit.

Kinematics, moving-mirror Bogolubov spectra, classical point-charge spectral
distributions and thermality checks for the Davies-Fulling, Walker-Davies,
uniform-acceleration and Carlitz-Willey worldlines.

Energies, powers and forces are per unit e^2 on the electron side and per
unit hbar on the mirror side, so the two agree numerically.
"""

__version__ = "0.1.0"
