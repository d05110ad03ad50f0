"""Physical constants in the unit system used throughout: energies in ueV, times in ns."""

# Reduced Planck constant, ueV * ns
HBAR_UEV_NS = 0.6582119569
