# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Constants for the library."""

DEFAULT_TOL = 1e-7
DEFAULT_GRID = 4096
DEFAULT_RESTARTS = 32
DEFAULT_SEED = 42
DEFAULT_MARGIN = 1e-4
DEFAULT_DIRECTIONS = 1000
DEFAULT_BOUNDARY_GRID = 256
MEMBERSHIP_MARGIN = 1e-9

SEED_ENV_VAR = "SPECTRAL_LAB_SEED"

ROOT_ITERATION_BUDGET = 500

# Disc search feasibility.
INTERPOLATION_TOL = 1e-8
DISC_MEMBERSHIP_MARGIN = 1e-6
PENALTY_STAGES = 5
PENALTY_GROWTH = 10.0

# Comparable bounds may cross by this much before the sandwich is declared broken.
SANDWICH_SLACK = 1e-6

THETA_TOL = 1e-10
LIFT_VERIFY_TOL = 1e-8
LIFT_VERIFY_SAMPLES = 64
LIFT_VERIFY_RADIUS = 0.9

CARATHEODORY_DENOMINATOR_FLOOR = 1e-12
BALL_SAFETY_FACTOR = 0.9
MIN_CERTIFICATE_MARGIN = 1e-4
SHRINK_FACTOR = 0.5
SHRINK_STEPS = 20
