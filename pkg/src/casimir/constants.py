"""Physical constants used throughout the package.

All interfaces exchange SI quantities (rad/s, m, J/m^2, Pa).  The values
below are the single source of truth; nothing else in the package hardcodes
them.
"""

HBAR = 1.054571817e-34  # reduced Planck constant, J s (CODATA 2018)
C = 2.99792458e8        # speed of light in vacuum, m/s (exact)

CONSTANTS_VERSION = "codata-2018"
