"""Self-interference and full-duplex versus FDD spectral efficiency."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from fdsat import linkbudget

logger = logging.getLogger(__name__)

SIC_SEARCH_LIMIT_DB = 200.0
SIC_SEARCH_XTOL_DB = 0.01


@dataclass(frozen=True)
class SicConfig:
    """Cancellation depth and circulator isolation at the full-duplex node."""

    sic_db: float = 70.0
    isolation_db: float = 0.0

    def __post_init__(self):
        if not self.sic_db >= 0:
            raise ValueError('sic_db must be non-negative')
        if not self.isolation_db >= 0:
            raise ValueError('isolation_db must be non-negative')


@dataclass(frozen=True)
class Direction:
    """One transmit direction between two named nodes."""

    tx: str
    rx: str
    distance_km: float


@dataclass(frozen=True)
class FdLinkPair:
    """
    Two directions sharing one carrier through a full-duplex node.

    Parameters
    ----------
    direction_a, direction_b : Direction
        The two directions. The FD node receives one of them and
        transmits the other.

    carrier_ghz : float
        Shared in-band carrier.

    fd_node : str
        Node that transmits and receives at the same time.

    fd_node_tx_power_dbw : float
        Power leaking into the FD node receiver before isolation and
        cancellation.
    """

    direction_a: Direction
    direction_b: Direction
    carrier_ghz: float
    fd_node: str
    fd_node_tx_power_dbw: float

    def validate(self):
        """Check the single-carrier full-duplex topology."""
        if not self.carrier_ghz > 0:
            raise ValueError('carrier_ghz must be positive')
        a, b = self.direction_a, self.direction_b
        into = [d for d in (a, b) if d.rx == self.fd_node]
        out = [d for d in (a, b) if d.tx == self.fd_node]
        if len(into) != 1 or len(out) != 1 or into[0] is out[0]:
            raise ValueError(
                f'fd_node {self.fd_node!r} must receive one direction and '
                f'transmit the other'
            )
        for d in (a, b):
            if d.tx == d.rx:
                raise ValueError(f'direction {d.tx} -> {d.rx} loops on one node')
            if not d.distance_km > 0:
                raise ValueError(f'distance of {d.tx} -> {d.rx} must be positive')

    def roles(self):
        """Directions ordered as (received by FD node, received remotely)."""
        self.validate()
        if self.direction_a.rx == self.fd_node:
            return self.direction_a, self.direction_b
        return self.direction_b, self.direction_a


@dataclass(frozen=True)
class DirectionResult:
    """Per-direction outcome of a duplex comparison."""

    tx: str
    rx: str
    distance_km: float
    snr_fdd_db: float
    snr_fd_db: float
    sinr_fd_db: float
    se_fdd_bps_hz: float
    se_fd_bps_hz: float


@dataclass(frozen=True)
class DuplexComparison:
    """
    Spectral efficiency of full duplex against the FDD baseline.

    Spectral efficiencies are per Hz of the total band. The direction
    received by the FD node is `fd_rx`; the other is `remote_rx`.
    """

    se_fdd_bps_hz: float
    se_fd_bps_hz: float
    gain_percent: float
    residual_si_dbw: float
    noise_dbw: float
    fdd_split: float
    fd_rx: DirectionResult
    remote_rx: DirectionResult


def residual_si_dbw(tx_power_dbw, cfg):
    """Self-interference left after isolation and cancellation."""
    return tx_power_dbw - cfg.isolation_db - cfg.sic_db


def sinr_db(snr_db, residual_si_dbw, noise_dbw):
    """
    Signal to noise-plus-interference ratio.

    Signal, noise and interference are combined as powers.

    Parameters
    ----------
    snr_db : float or array-like
        Signal-to-noise ratio without interference.

    residual_si_dbw : float or array-like
        Residual self-interference power; -inf for none.

    noise_dbw : float
        Noise power over the same band.

    Returns
    -------
    sinr : float or numpy.ndarray
        SINR in dB. Equal to `snr_db` when the interference is -inf.
    """
    if not math.isfinite(noise_dbw):
        raise ValueError('noise_dbw must be finite')
    inr = linkbudget.db_to_linear(np.asarray(residual_si_dbw, dtype=float)
                                  - noise_dbw)
    # 10*log10(1 + I/N) without losing small ratios
    penalty = 10 * np.log1p(inr) / math.log(10)
    sinr = np.asarray(snr_db, dtype=float) - penalty
    return float(sinr) if sinr.ndim == 0 else sinr


def spectral_efficiency(snr_db):
    """Shannon efficiency log2(1 + SNR) in bps/Hz."""
    snr = linkbudget.db_to_linear(snr_db)
    se = np.log1p(snr) / math.log(2)
    return float(se) if np.ndim(se) == 0 else se


def fdd_spectral_efficiency(snr_fd_rx_db, snr_remote_db, split=0.5):
    """
    FDD efficiency per Hz of the total band.

    The SNRs are those of each direction over its own share of the
    band: `split` for the direction into the FD node, the rest for the
    other one.
    """
    return (split * spectral_efficiency(snr_fd_rx_db)
            + (1 - split) * spectral_efficiency(snr_remote_db))


def fd_spectral_efficiency(sinr_fd_rx_db, snr_remote_db):
    """Full-duplex efficiency; both directions use the whole band."""
    return (spectral_efficiency(sinr_fd_rx_db)
            + spectral_efficiency(snr_remote_db))


def gain_percent(se_fd, se_fdd):
    """Relative gain of full duplex over FDD."""
    if np.any(np.asarray(se_fdd) <= 0):
        raise ValueError('FDD spectral efficiency is zero; gain is undefined')
    return 100 * (se_fd - se_fdd) / se_fdd


def _check_split(split):
    if not 0 < split < 1:
        raise ValueError('fdd_split must be strictly between 0 and 1')


def compare_duplex(pair, chains, env, cfg, fdd_split=0.5,
                   additional_loss_db=0.0):
    """
    Compare full-duplex operation with the FDD baseline.

    In the FDD baseline the direction into the FD node gets a share
    `fdd_split` of the band and the other direction the rest, each with
    noise over its own share. In full duplex both directions use the
    whole band and only the FD node receiver suffers residual
    self-interference.

    Parameters
    ----------
    pair : FdLinkPair
        Link topology and geometry.

    chains : mapping of str to linkbudget.RfChain
        RF chain of every node named in `pair`. The carrier of each
        chain is replaced by the pair carrier.

    env : linkbudget.NoiseEnvironment
        Noise temperature and total bandwidth.

    cfg : SicConfig
        Cancellation and isolation at the FD node.

    fdd_split : float, optional
        Share of the band given to the direction into the FD node in
        the FDD baseline.

    additional_loss_db : float, optional
        Extra loss applied to both directions.

    Returns
    -------
    comparison : DuplexComparison
        Spectral efficiencies, gain and per-direction breakdown.
    """
    _check_split(fdd_split)
    fd_dir, remote_dir = pair.roles()
    for name in (fd_dir.tx, fd_dir.rx, remote_dir.tx, remote_dir.rx):
        if name not in chains:
            raise ValueError(f'no RF chain for node {name!r}')

    def chain(name):
        return chains[name].at_carrier(pair.carrier_ghz)

    def snr(d, band=env):
        return linkbudget.snr_db(chain(d.tx), chain(d.rx), d.distance_km,
                                 band, additional_loss_db)

    noise = linkbudget.noise_power_dbw(env)
    residual = residual_si_dbw(pair.fd_node_tx_power_dbw, cfg)

    snr_fd = snr(fd_dir)
    snr_remote = snr(remote_dir)
    snr_fd_fdd = snr(fd_dir, env.scaled(fdd_split))
    snr_remote_fdd = snr(remote_dir, env.scaled(1 - fdd_split))
    sinr_fd = sinr_db(snr_fd, residual, noise)

    se_fdd_fd = fdd_split * spectral_efficiency(snr_fd_fdd)
    se_fdd_remote = (1 - fdd_split) * spectral_efficiency(snr_remote_fdd)
    se_fd_fd = spectral_efficiency(sinr_fd)
    se_fd_remote = spectral_efficiency(snr_remote)

    se_fdd = se_fdd_fd + se_fdd_remote
    se_fd = se_fd_fd + se_fd_remote
    if not se_fdd > 0:
        raise ValueError(
            'degenerate link: FDD spectral efficiency is zero, gain is undefined'
        )

    fd_result = DirectionResult(
        fd_dir.tx, fd_dir.rx, fd_dir.distance_km, snr_fd_fdd, snr_fd, sinr_fd,
        se_fdd_fd, se_fd_fd
    )
    remote_result = DirectionResult(
        remote_dir.tx, remote_dir.rx, remote_dir.distance_km, snr_remote_fdd,
        snr_remote, snr_remote, se_fdd_remote, se_fd_remote
    )
    return DuplexComparison(
        se_fdd_bps_hz=se_fdd,
        se_fd_bps_hz=se_fd,
        gain_percent=gain_percent(se_fd, se_fdd),
        residual_si_dbw=residual,
        noise_dbw=noise,
        fdd_split=fdd_split,
        fd_rx=fd_result,
        remote_rx=remote_result,
    )


def loop_stability_margin_db(amplification_db, cfg):
    """
    Attenuation of the bent-pipe echo loop per round trip.

    Positive values mean the relayed signal leaking back into the
    receiver decays; negative values mean the loop can oscillate.
    """
    if not amplification_db >= 0:
        raise ValueError('amplification_db must be non-negative')
    return cfg.isolation_db + cfg.sic_db - amplification_db


def sic_breakeven_db(pair, chains, env, isolation_db=0.0, fdd_split=0.5,
                     additional_loss_db=0.0):
    """
    Smallest SIC at which full duplex matches the FDD baseline.

    Parameters
    ----------
    pair : FdLinkPair
        Link topology and geometry.

    chains : mapping of str to linkbudget.RfChain
        RF chain of every node.

    env : linkbudget.NoiseEnvironment
        Noise temperature and total bandwidth.

    isolation_db : float, optional
        Circulator isolation at the FD node.

    fdd_split : float, optional
        FDD band share of the direction into the FD node.

    additional_loss_db : float, optional
        Extra loss applied to both directions.

    Returns
    -------
    sic : float or None
        Break-even SIC in dB, resolved to 0.01 dB. 0 if full duplex
        already wins without cancellation; None if it does not win
        below 200 dB.
    """
    def margin(sic):
        cmp = compare_duplex(pair, chains, env, SicConfig(sic, isolation_db),
                             fdd_split, additional_loss_db)
        return cmp.se_fd_bps_hz - cmp.se_fdd_bps_hz

    if margin(0.0) >= 0:
        return 0.0
    if margin(SIC_SEARCH_LIMIT_DB) < 0:
        logger.info('full duplex does not reach FDD below %g dB SIC',
                    SIC_SEARCH_LIMIT_DB)
        return None
    root = optimize.bisect(margin, 0.0, SIC_SEARCH_LIMIT_DB,
                           xtol=SIC_SEARCH_XTOL_DB / 2)
    # smallest point of the 0.01 dB grid on the winning side
    step = int(math.ceil(root / SIC_SEARCH_XTOL_DB))
    while margin(step * SIC_SEARCH_XTOL_DB) < 0:
        step += 1
    while step > 0 and margin((step - 1) * SIC_SEARCH_XTOL_DB) >= 0:
        step -= 1
    return round(step * SIC_SEARCH_XTOL_DB, 2)
