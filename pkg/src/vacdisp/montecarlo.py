"""Seeded synthesis of two-color photon arrival residuals.

Residuals are arrival times minus the geometric baseline sum(L_i)/c, which
keeps picosecond structure intact in float64.  Random draws come from
numpy's PCG64 seeded through ``SeedSequence(seed, spawn_key=(channel,
block))``, where ``block`` is a fixed-size run of consecutive shots.  The
output therefore depends only on (scenario, seed), not on how many
workers run or in which order blocks finish.
"""

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dispersion import BelowPlasmaCutoff, MAX_ABS_REFRACTIVITY, validate_model
from .physconst import CODATA_2018
from .propagation import excess_delay

__all__ = [
    "CHANNELS",
    "SHOTS_PER_BLOCK",
    "EmptySession",
    "RefractivityOutOfRange",
    "EventCSVError",
    "PulseModel",
    "DetectorModel",
    "RangingScenario",
    "EventSet",
    "ChannelSummary",
    "simulate_session",
    "session_summary",
    "write_events_csv",
    "read_events_csv",
    "events_csv_text",
]

CHANNELS = ("low", "high")
SHOTS_PER_BLOCK = 4096
CSV_HEADER = ["channel", "shot", "residual_s"]


class EmptySession(RuntimeError):
    """Neither channel recorded an event. The (empty) events are attached."""

    def __init__(self, events):
        self.events = events
        super().__init__("EmptySession: no events in either channel")


class RefractivityOutOfRange(ValueError):
    pass


class EventCSVError(ValueError):
    def __init__(self, row, message):
        self.row = row
        super().__init__(f"row {row}: {message}")


@dataclass(frozen=True)
class PulseModel:
    """Gaussian laser pulse.

    ``mean_photons_per_shot_high`` defaults to the low-channel mean; it is
    separate because a return may favour either color.
    """

    sigma_pulse: float
    mean_photons_per_shot: float
    emission_offset: float = 0.0
    mean_photons_per_shot_high: float = None

    def __post_init__(self):
        if self.mean_photons_per_shot_high is None:
            object.__setattr__(self, "mean_photons_per_shot_high", self.mean_photons_per_shot)
        if not self.sigma_pulse >= 0:
            raise ValueError("sigma_pulse must be >= 0")
        if not (self.mean_photons_per_shot >= 0 and self.mean_photons_per_shot_high >= 0):
            raise ValueError("mean photon numbers must be >= 0")
        if not math.isfinite(self.emission_offset):
            raise ValueError("emission_offset must be finite")

    def mean_photons(self, channel):
        return self.mean_photons_per_shot if channel == "low" else self.mean_photons_per_shot_high


@dataclass(frozen=True)
class DetectorModel:
    jitter_sigma: float = 0.0
    background_rate: float = 0.0
    gate_halfwidth: float = 10e-9

    def __post_init__(self):
        if not self.jitter_sigma >= 0:
            raise ValueError("jitter_sigma must be >= 0")
        if not self.background_rate >= 0:
            raise ValueError("background_rate must be >= 0")
        if not (self.gate_halfwidth > 0 and math.isfinite(self.gate_halfwidth)):
            raise ValueError("gate_halfwidth must be positive")


@dataclass(frozen=True)
class RangingScenario:
    path: object
    beams: object
    pulse: PulseModel
    detector: DetectorModel
    shots: int
    k_prime_true: float = 0.0
    constants: object = CODATA_2018

    def __post_init__(self):
        if int(self.shots) != self.shots or self.shots < 1:
            raise ValueError("shots must be an integer >= 1")
        if not math.isfinite(self.k_prime_true):
            raise ValueError("k_prime_true must be finite")

    @property
    def truth_path(self):
        """The path with the injected k' in every Dirac-sea term."""
        return self.path.with_kprime(self.k_prime_true)

    @property
    def sigma_total(self):
        return math.hypot(self.pulse.sigma_pulse, self.detector.jitter_sigma)

    def expected_photons(self, channel):
        return self.shots * self.pulse.mean_photons(channel)

    def omega(self, channel):
        return self.beams.omega_low if channel == "low" else self.beams.omega_high

    def check_physics(self):
        """Raise if either beam is evanescent or |n - 1| leaves the tenuous regime."""
        band = (self.beams.omega_low, self.beams.omega_high)
        for i, seg in enumerate(self.truth_path.segments):
            rep = validate_model(seg.model, band, self.constants)
            if not rep.band_above_cutoff:
                raise BelowPlasmaCutoff(band[0], rep.plasma_cutoff, segment=i)
            if not rep.refractivity_in_range:
                raise RefractivityOutOfRange(
                    f"segment {i}: |n - 1| reaches {rep.max_abs_refractivity:.3e}, "
                    f"above {MAX_ABS_REFRACTIVITY:g}"
                )

    def predicted_residual(self, channel):
        """Expected residual of a signal photon: excess delay (+ emission offset)."""
        t = excess_delay(self.truth_path, self.omega(channel), self.constants)
        if channel == "high":
            t += self.pulse.emission_offset
        return t


@dataclass
class EventSet:
    channel: str
    shot: np.ndarray
    residual: np.ndarray
    truncated: int = 0
    gate_center: float = math.nan

    def __post_init__(self):
        if self.channel not in CHANNELS:
            raise ValueError(f"channel must be one of {CHANNELS}")
        self.shot = np.asarray(self.shot, dtype=np.int64)
        self.residual = np.asarray(self.residual, dtype=np.float64)
        if self.shot.shape != self.residual.shape:
            raise ValueError("shot and residual must have equal length")

    def __len__(self):
        return self.residual.size


def _block(scenario, seed, channel, block, center):
    start = block * SHOTS_PER_BLOCK
    stop = min(start + SHOTS_PER_BLOCK, scenario.shots)
    n = stop - start
    ss = np.random.SeedSequence(seed, spawn_key=(CHANNELS.index(channel), block))
    rng = np.random.Generator(np.random.PCG64(ss))
    gw = scenario.detector.gate_halfwidth

    # signal first, so switching background on leaves the signal draws untouched
    counts = rng.poisson(scenario.pulse.mean_photons(channel), n)
    total = int(counts.sum())
    shots = np.repeat(np.arange(start, stop, dtype=np.int64), counts)
    pulse = rng.normal(0.0, scenario.pulse.sigma_pulse, total)
    jitter = rng.normal(0.0, scenario.detector.jitter_sigma, total)
    res = center + pulse + jitter
    keep = np.abs(res - center) <= gw
    shots, res = shots[keep], res[keep]
    truncated = total - int(keep.sum())

    nb = rng.poisson(scenario.detector.background_rate * 2 * gw, n)
    bshots = np.repeat(np.arange(start, stop, dtype=np.int64), nb)
    bres = center + rng.uniform(-gw, gw, int(nb.sum()))
    return np.concatenate([shots, bshots]), np.concatenate([res, bres]), truncated


def simulate_session(scenario, seed, workers=1):
    """Simulate one two-color ranging session.

    Per shot and channel the detected signal count is Poisson; each photon
    lands at the channel's excess delay (plus the emission offset on the
    high channel) with Gaussian pulse and jitter spread.  Background events
    are uniform within the gate, and signal photons outside it are dropped
    and tallied in ``EventSet.truncated``.

    Parameters
    ----------
    scenario : RangingScenario
    seed : int
        Non-negative integer below 2**64.
    workers : int
        Threads used across shot blocks. The result does not depend on it.

    Returns
    -------
    (EventSet, EventSet)
        Low and high channel, each sorted by shot then residual.

    Raises
    ------
    EmptySession
        If neither channel recorded anything.
    """
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    scenario.check_physics()

    nblocks = -(-scenario.shots // SHOTS_PER_BLOCK)
    tasks = [(ch, b) for ch in CHANNELS for b in range(nblocks)]
    centers = {ch: scenario.predicted_residual(ch) for ch in CHANNELS}

    def run(task):
        ch, b = task
        return _block(scenario, seed, ch, b, centers[ch])

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]

    out = []
    for ch in CHANNELS:
        parts = [r for (c, _), r in zip(tasks, results) if c == ch]
        shots = np.concatenate([p[0] for p in parts])
        res = np.concatenate([p[1] for p in parts])
        order = np.lexsort((res, shots))
        out.append(EventSet(ch, shots[order], res[order],
                            truncated=sum(p[2] for p in parts), gate_center=centers[ch]))

    events = tuple(out)
    if not any(len(e) for e in events):
        raise EmptySession(events)
    return events


@dataclass
class ChannelSummary:
    count: int
    mean: float = None
    std: float = None
    truncated: int = 0


def session_summary(events):
    """Event count, mean and sample standard deviation per channel.

    An empty channel has ``mean`` and ``std`` set to None; a single event has
    std 0.
    """
    out = {}
    for ev in events:
        n = len(ev)
        s = ChannelSummary(count=n, truncated=ev.truncated)
        if n:
            s.mean = float(np.mean(ev.residual))
            s.std = float(np.std(ev.residual, ddof=1)) if n > 1 else 0.0
        out[ev.channel] = s
    return out


def write_events_csv(fileobj, events):
    """Write events as ``channel,shot,residual_s`` rows (17 significant digits)."""
    w = csv.writer(fileobj, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for ev in events:
        for shot, res in zip(ev.shot.tolist(), ev.residual.tolist()):
            w.writerow([ev.channel, shot, f"{res:.16e}"])


def events_csv_text(events):
    buf = io.StringIO()
    write_events_csv(buf, events)
    return buf.getvalue()


def read_events_csv(fileobj):
    """Parse an event CSV back into (low, high) EventSets.

    Raises EventCSVError naming the 1-based line number of the first bad row.
    """
    reader = csv.reader(fileobj)
    header = next(reader, None)
    if header != CSV_HEADER:
        raise EventCSVError(1, f"header must be {','.join(CSV_HEADER)}")
    data = {ch: ([], []) for ch in CHANNELS}
    for lineno, row in enumerate(reader, start=2):
        if len(row) != 3:
            raise EventCSVError(lineno, f"expected 3 fields, got {len(row)}")
        ch, shot, res = row
        if ch not in data:
            raise EventCSVError(lineno, f"unknown channel {ch!r}")
        try:
            shot_i = int(shot)
            res_f = float(res)
        except ValueError:
            raise EventCSVError(lineno, "shot must be an integer and residual_s a number") from None
        if shot_i < 0 or not math.isfinite(res_f):
            raise EventCSVError(lineno, "negative shot index or non-finite residual")
        data[ch][0].append(shot_i)
        data[ch][1].append(res_f)
    return tuple(EventSet(ch, *data[ch]) for ch in CHANNELS)
