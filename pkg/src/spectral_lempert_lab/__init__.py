# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Certified bounds for the Lempert function of the spectral ball and the symmetrized polydisc."""
