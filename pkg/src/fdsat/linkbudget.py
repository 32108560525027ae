"""One-directional carrier budgets from EIRP and G/T."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import constants

BOLTZMANN = constants.Boltzmann
# -10*log10(k_B) as used in G/T budgets
BOLTZMANN_DB = 228.6
FSPL_CONSTANT_DB = 92.45


@dataclass(frozen=True)
class RfChain:
    """
    Radio front end of one node.

    Parameters
    ----------
    eirp_dbw : float
        Equivalent isotropic radiated power.

    g_over_t_dbk : float
        Receive figure of merit.

    carrier_ghz : float
        Carrier frequency used by the chain.

    isolation_db : float, optional
        Transmit-to-receive isolation of the circulator.
    """

    eirp_dbw: float
    g_over_t_dbk: float
    carrier_ghz: float
    isolation_db: float = 0.0

    def __post_init__(self):
        if not self.carrier_ghz > 0:
            raise ValueError('carrier_ghz must be positive')
        if not self.isolation_db >= 0:
            raise ValueError('isolation_db must be non-negative')

    def at_carrier(self, carrier_ghz):
        """Copy of the chain tuned to another carrier."""
        return replace(self, carrier_ghz=carrier_ghz)


@dataclass(frozen=True)
class NoiseEnvironment:
    """Receiver noise temperature and the band the noise is taken over."""

    temperature_k: float = 290.0
    bandwidth_hz: float = 50e6

    def __post_init__(self):
        if not self.temperature_k > 0:
            raise ValueError('temperature must be positive')
        if not self.bandwidth_hz > 0:
            raise ValueError('bandwidth must be positive')

    def scaled(self, fraction):
        """Environment over a fraction of the band."""
        return replace(self, bandwidth_hz=self.bandwidth_hz * fraction)


@dataclass(frozen=True)
class LinkBudget:
    """Evaluated budget of one direction."""

    fspl_db: float
    noise_dbw: float
    snr_db: float
    slant_range_km: float
    carrier_ghz: float
    eirp_dbw: float
    g_over_t_dbk: float
    bandwidth_hz: float
    additional_loss_db: float = 0.0

    def recompute_snr_db(self):
        """SNR rebuilt from the stored budget terms."""
        return (self.eirp_dbw - self.fspl_db - self.additional_loss_db
                + self.g_over_t_dbk + BOLTZMANN_DB
                - 10 * math.log10(self.bandwidth_hz))


def db_to_linear(x_db):
    """Convert decibels to a power ratio."""
    x = np.power(10.0, np.asarray(x_db, dtype=float) / 10)
    return float(x) if x.ndim == 0 else x


def linear_to_db(x):
    """Convert a positive power ratio to decibels."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError('linear_to_db is only defined for positive values')
    x_db = 10 * np.log10(x)
    return float(x_db) if x_db.ndim == 0 else x_db


def fspl_db(distance_km, carrier_ghz):
    """
    Free-space path loss.

    Parameters
    ----------
    distance_km : float or array-like
        Path length in km.

    carrier_ghz : float or array-like
        Carrier frequency in GHz.

    Returns
    -------
    loss : float or numpy.ndarray
        ``92.45 + 20 log10(d) + 20 log10(f)`` in dB.
    """
    d = np.asarray(distance_km, dtype=float)
    f = np.asarray(carrier_ghz, dtype=float)
    if np.any(~(d > 0)):
        raise ValueError('distance_km must be positive')
    if np.any(~(f > 0)):
        raise ValueError('carrier_ghz must be positive')
    loss = FSPL_CONSTANT_DB + 20 * np.log10(d) + 20 * np.log10(f)
    return float(loss) if loss.ndim == 0 else loss


def noise_power_dbw(env):
    """Thermal noise power k*T*B in dBW."""
    return 10 * math.log10(BOLTZMANN * env.temperature_k * env.bandwidth_hz)


def snr_db(tx, rx, distance_km, env, additional_loss_db=0.0):
    """
    Carrier-to-noise ratio of one direction.

    The budget is ``EIRP - FSPL - loss + G/T + 228.6 - 10 log10(B)``,
    evaluated at the transmitter's carrier.

    Parameters
    ----------
    tx : RfChain
        Transmitting chain; supplies EIRP and carrier.

    rx : RfChain
        Receiving chain; supplies G/T.

    distance_km : float or array-like
        Path length.

    env : NoiseEnvironment
        Noise bandwidth of the receiver.

    additional_loss_db : float, optional
        Losses not captured by EIRP and G/T.

    Returns
    -------
    snr : float or numpy.ndarray
        Signal-to-noise ratio in dB.
    """
    loss = fspl_db(distance_km, tx.carrier_ghz)
    return (tx.eirp_dbw - loss - additional_loss_db + rx.g_over_t_dbk
            + BOLTZMANN_DB - 10 * math.log10(env.bandwidth_hz))


def evaluate_link(tx, rx, distance_km, env, additional_loss_db=0.0):
    """Evaluate one direction and keep every budget term."""
    return LinkBudget(
        fspl_db=fspl_db(distance_km, tx.carrier_ghz),
        noise_dbw=noise_power_dbw(env),
        snr_db=snr_db(tx, rx, distance_km, env, additional_loss_db),
        slant_range_km=float(distance_km),
        carrier_ghz=tx.carrier_ghz,
        eirp_dbw=tx.eirp_dbw,
        g_over_t_dbk=rx.g_over_t_dbk,
        bandwidth_hz=env.bandwidth_hz,
        additional_loss_db=additional_loss_db,
    )
