"""Time of flight and two-color differential delay over segmented paths.

A path lists every traversed segment explicitly, return leg included, so a
lunar round trip reads atmosphere - vacuum - atmosphere (or just one vacuum
segment of twice the Earth-Moon distance).  Delays are reported as excess
over the geometric light time; the ~2.56 s baseline is never mixed with the
picosecond-level dispersive part.
"""

from dataclasses import dataclass

from .dispersion import (
    BelowPlasmaCutoff,
    CauchyAir,
    ColdPlasma,
    Composite,
    DiracSea,
    dirac_sea_only,
    with_kprime,
)
from .physconst import CODATA_2018, omega_from_wavelength

__all__ = [
    "NoDiracSeaSegment",
    "PathSegment",
    "OpticalPath",
    "BeamPair",
    "EARTH_MOON_ROUND_TRIP_M",
    "ATMOSPHERE_CROSSING_M",
    "SOLAR_WIND_DENSITY_M3",
    "earth_moon_path",
    "excess_delay",
    "time_of_flight",
    "differential_delay",
    "kprime_sensitivity",
    "confounder_delay",
]

EARTH_MOON_ROUND_TRIP_M = 2 * 384_400e3
# equivalent sea-level air column for one vertical crossing
ATMOSPHERE_CROSSING_M = 8.3e3
# typical solar-wind electron density near 1 AU (7 per cm^3)
SOLAR_WIND_DENSITY_M3 = 7e6


class NoDiracSeaSegment(ValueError):
    pass


@dataclass(frozen=True)
class PathSegment:
    length: float
    model: object

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError(f"segment length must be positive, got {self.length!r}")


@dataclass(frozen=True)
class OpticalPath:
    segments: tuple

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise ValueError("an optical path needs at least one segment")
        object.__setattr__(self, "segments", segs)

    @property
    def length(self):
        return sum(s.length for s in self.segments)

    def with_kprime(self, k_prime):
        return OpticalPath(tuple(PathSegment(s.length, with_kprime(s.model, k_prime))
                                 for s in self.segments))

    def split(self, index, fraction=0.5):
        """Return the same path with segment ``index`` cut in two."""
        s = self.segments[index]
        a = PathSegment(s.length * fraction, s.model)
        b = PathSegment(s.length - a.length, s.model)
        segs = self.segments[:index] + (a, b) + self.segments[index + 1:]
        return OpticalPath(segs)


@dataclass(frozen=True)
class BeamPair:
    omega_low: float
    omega_high: float

    def __post_init__(self):
        if not (0 < self.omega_low < self.omega_high):
            raise ValueError("need 0 < omega_low < omega_high")

    @classmethod
    def from_wavelengths(cls, lambda_low, lambda_high, constants=CODATA_2018):
        """Pair from vacuum wavelengths in m (``lambda_low`` is the longer one)."""
        return cls(omega_from_wavelength(lambda_low, constants),
                   omega_from_wavelength(lambda_high, constants))

    @classmethod
    def doubled(cls, lambda_low, constants=CODATA_2018):
        """Fundamental plus its second harmonic."""
        w = omega_from_wavelength(lambda_low, constants)
        return cls(w, 2 * w)


def earth_moon_path(k_prime=1.0, atmosphere=False, plasma=False,
                    length=EARTH_MOON_ROUND_TRIP_M):
    """Lunar ranging round trip.

    The vacuum leg carries the Dirac-sea law (plus solar-wind plasma if
    requested).  With ``atmosphere`` the path gains one equivalent air
    column on the way up and one on the way down; the vacuum length is
    kept at ``length`` so the vacuum signal is unchanged.
    """
    vacuum = DiracSea(k_prime)
    if plasma:
        vacuum = Composite((vacuum, ColdPlasma(SOLAR_WIND_DENSITY_M3)))
    segs = [PathSegment(length, vacuum)]
    if atmosphere:
        air = PathSegment(ATMOSPHERE_CROSSING_M, CauchyAir())
        segs = [air, *segs, air]
    return OpticalPath(tuple(segs))


def _per_segment(path, fn):
    total = 0.0
    for i, seg in enumerate(path.segments):
        try:
            total += seg.length * fn(seg.model)
        except BelowPlasmaCutoff as exc:
            raise BelowPlasmaCutoff(exc.omega, exc.omega_p, segment=i) from None
    return total


def excess_delay(path, omega, constants=CODATA_2018):
    """Delay beyond the geometric light time, sum(L_i * (n_g,i - 1)) / c, in s."""
    if not omega > 0:
        raise ValueError("angular frequency must be positive")
    return _per_segment(path, lambda m: m.group(omega, constants)) / constants.c


def time_of_flight(path, omega, constants=CODATA_2018):
    """(geometric, excess) travel time in s; their sum is the time of flight."""
    return path.length / constants.c, excess_delay(path, omega, constants)


def differential_delay(path, beams, constants=CODATA_2018):
    """Arrival of the high-frequency beam minus the low-frequency beam, in s."""
    wl, wh = beams.omega_low, beams.omega_high
    # touch both channels so evanescent segments are reported even when they cancel
    _per_segment(path, lambda m: m.group(wl, constants) + m.group(wh, constants))
    return _per_segment(path, lambda m: m.group_difference(wl, wh, constants)) / constants.c


def kprime_sensitivity(path, beams, constants=CODATA_2018):
    """d(differential delay)/dk', in s per unit k'.

    Exact, since the Dirac-sea law is linear in k'.  Only the Dirac-sea
    parts of each segment are evaluated, which equals the k'=1 minus k'=0
    difference without the cancellation.
    """
    segs = []
    for s in path.segments:
        m = dirac_sea_only(s.model)
        if m is not None:
            segs.append(PathSegment(s.length, m))
    if not segs:
        raise NoDiracSeaSegment("path has no DiracSea segment; k' is unconstrained")
    return differential_delay(OpticalPath(tuple(segs)), beams, constants)


def confounder_delay(path, beams, constants=CODATA_2018):
    """Differential delay with every Dirac-sea coefficient set to zero."""
    return differential_delay(path.with_kprime(0.0), beams, constants)
