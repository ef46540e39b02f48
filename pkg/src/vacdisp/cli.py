"""``vacdisp`` command-line interface.

Reports are written to stdout as ``key = value`` lines, with the unit in
each numeric key.  Exit codes: 2 scenario/usage error, 3 physics error,
4 I/O error, 5 bad event data.
"""

import argparse
import sys

from . import __version__, scenario as scen
from .audit import audit_lines
from .dispersion import BelowPlasmaCutoff
from .inference import (
    InsufficientEvents,
    ZeroSensitivity,
    estimate_differential_delay,
    infer_kprime,
    sensitivity_sweep,
)
from .montecarlo import (
    EmptySession,
    EventCSVError,
    RefractivityOutOfRange,
    read_events_csv,
    session_summary,
    simulate_session,
    write_events_csv,
)
from .propagation import (
    NoDiracSeaSegment,
    confounder_delay,
    differential_delay,
    kprime_sensitivity,
    time_of_flight,
)

EXIT_PARSE, EXIT_PHYSICS, EXIT_IO, EXIT_DATA = 2, 3, 4, 5
PHYSICS_ERRORS = (BelowPlasmaCutoff, RefractivityOutOfRange, NoDiracSeaSegment, ZeroSensitivity)


class Report:
    def __init__(self, command):
        self.lines = []
        self.add("tool_version", __version__)
        self.add("command", command)

    def add(self, key, value):
        if isinstance(value, float):
            value = f"{value:.16e}"
        elif value is None:
            value = "absent"
        self.lines.append(f"{key} = {value}")

    def emit(self, out):
        out.write("\n".join(self.lines) + "\n")


def _load(args, report):
    sc, seed, doc = scen.load(args.scenario)
    if getattr(args, "seed", None) is not None:
        seed = doc["seed"] = args.seed
    report.add("seed", seed)
    report.add("scenario_json", scen.dumps(doc))
    return sc, seed


def _delay_block(report, sc):
    path = sc.truth_path
    c = sc.constants
    geo, ex_low = time_of_flight(path, sc.beams.omega_low, c)
    _, ex_high = time_of_flight(path, sc.beams.omega_high, c)
    report.add("omega_low_rad_s", sc.beams.omega_low)
    report.add("omega_high_rad_s", sc.beams.omega_high)
    report.add("geometric_time_s", geo)
    report.add("excess_delay_low_s", ex_low)
    report.add("excess_delay_high_s", ex_high)
    report.add("differential_delay_s", differential_delay(path, sc.beams, c))
    report.add("confounder_delay_s", confounder_delay(path, sc.beams, c))
    report.add("kprime_sensitivity_s", kprime_sensitivity(path, sc.beams, c))


def cmd_delay(args, out):
    report = Report("delay")
    sc, _ = _load(args, report)
    sc.check_physics()
    report.add("k_prime_true_dimless", sc.k_prime_true)
    _delay_block(report, sc)
    report.emit(out)
    return 0


def cmd_simulate(args, out):
    report = Report("simulate")
    sc, seed = _load(args, report)
    warning = None
    try:
        events = simulate_session(sc, seed, workers=args.workers)
    except EmptySession as exc:
        events, warning = exc.events, str(exc)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            write_events_csv(f, events)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    report.add("k_prime_true_dimless", sc.k_prime_true)
    report.add("events_csv", args.out)
    for ch, s in session_summary(events).items():
        report.add(f"events_{ch}_count", s.count)
        report.add(f"truncated_{ch}_count", s.truncated)
        report.add(f"mean_residual_{ch}_s", s.mean)
        report.add(f"std_residual_{ch}_s", s.std)
    if warning:
        report.add("warning", warning)
    report.emit(out)
    return 0


def cmd_infer(args, out):
    report = Report("infer")
    sc, _ = _load(args, report)
    try:
        with open(args.events, encoding="utf-8", newline="") as f:
            events = read_events_csv(f)
    except OSError as exc:
        print(f"error: cannot read {args.events}: {exc}", file=sys.stderr)
        return EXIT_IO
    est = estimate_differential_delay(events, args.trim)
    bound = infer_kprime(est, sc, args.z)
    report.add("estimator", est.method)
    report.add("events_low_used_count", est.n_low)
    report.add("events_high_used_count", est.n_high)
    report.add("delta_t_hat_s", est.delta_t_hat)
    report.add("delta_t_sigma_s", est.sigma)
    report.add("degenerate", str(est.degenerate).lower())
    report.add("emission_offset_s", bound.emission_offset)
    report.add("confounder_correction_s", bound.confounder_correction)
    report.add("kprime_sensitivity_s", bound.sensitivity)
    report.add("z_dimless", bound.z)
    report.add("k_hat_dimless", bound.k_hat)
    report.add("ci_low_dimless", bound.ci_low)
    report.add("ci_high_dimless", bound.ci_high)
    report.emit(out)
    return 0


def cmd_sweep(args, out):
    report = Report("sweep")
    sc, _ = _load(args, report)
    rep = sensitivity_sweep(sc, [j * 1e-12 for j in args.jitter_ps], args.photons, args.z)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as f:
                rep.write_csv(f)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        report.add("sweep_csv", args.out)
    report.add("z_dimless", rep.z)
    for i, (j, n, m) in enumerate(rep.rows()):
        report.add(f"cell_{i}_jitter_s", j)
        report.add(f"cell_{i}_photons_count", n)
        report.add(f"cell_{i}_min_kprime_dimless", m)
    report.emit(out)
    return 0


def cmd_audit(args, out):
    report = Report("audit")
    for line in audit_lines():
        report.add(line.key, line.computed)
        report.add(f"{line.name}_quoted_{line.unit}", line.quoted)
        report.add(f"{line.name}_flag", line.flag)
    report.emit(out)
    return 0


def _float_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not values or any(not v > 0 for v in values):
        raise argparse.ArgumentTypeError("expected a non-empty list of positive numbers")
    return values


def _seed(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="vacdisp", description="Two-color lunar ranging test "
                                "of vacuum dispersion: delays, simulation, inference.")
    p.add_argument("--version", action="version", version=f"vacdisp {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_scenario(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--scenario", required=True, metavar="PATH")
        sp.add_argument("--seed", type=_seed, default=None, help="overrides the file's seed")
        return sp

    with_scenario("delay", "time of flight and differential delay").set_defaults(func=cmd_delay)

    sp = with_scenario("simulate", "synthesize photon events to CSV")
    sp.add_argument("--out", required=True, metavar="PATH")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_simulate)

    sp = with_scenario("infer", "estimate k' from an event CSV")
    sp.add_argument("--events", required=True, metavar="PATH")
    sp.add_argument("--z", type=float, default=1.0)
    sp.add_argument("--trim", type=float, default=0.1)
    sp.set_defaults(func=cmd_infer)

    sp = with_scenario("sweep", "minimum detectable k' over a jitter x photon grid")
    sp.add_argument("--jitter-ps", type=_float_list, default=[30.0, 60.0, 120.0])
    sp.add_argument("--photons", type=_float_list, default=[1e3, 1e4, 1e5])
    sp.add_argument("--z", type=float, default=1.0)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_sweep)

    sub.add_parser("audit", help="recompute the proposal's headline numbers").set_defaults(
        func=cmd_audit)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if getattr(args, "z", 1.0) <= 0:
        print("error: --z must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args, out)
    except scen.ScenarioError as exc:
        print(f"error: scenario: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PHYSICS_ERRORS as exc:
        print(f"error: physics: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except (EventCSVError, InsufficientEvents) as exc:
        print(f"error: events: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
