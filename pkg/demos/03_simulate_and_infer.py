"""
Simulate a session and bound k'
===============================

Synthesize 10^4 shots per color with 60 ps timing jitter and some
background, then recover k' with its confidence interval.
"""

from vacdisp import (BeamPair, DetectorModel, PulseModel, RangingScenario, earth_moon_path,
                     estimate_differential_delay, infer_kprime, session_summary, simulate_session)

scenario = RangingScenario(
    path=earth_moon_path(atmosphere=True, plasma=True),
    beams=BeamPair.doubled(1064e-9),
    pulse=PulseModel(sigma_pulse=0.0, mean_photons_per_shot=1.0),
    detector=DetectorModel(jitter_sigma=60e-12, background_rate=5e5, gate_halfwidth=10e-9),
    shots=10_000,
    k_prime_true=20.0,
)

events = simulate_session(scenario, seed=2024, workers=4)
for ch, s in session_summary(events).items():
    print(f"{ch:4s}: {s.count} events, mean residual {s.mean:.4e} s, sd {s.std:.3e} s")

est = estimate_differential_delay(events)
print(f"delta t = {est.delta_t_hat:.5e} +- {est.sigma:.2e} s  ({est.method})")

for z in (1, 2, 3):
    b = infer_kprime(est, scenario, z=z)
    print(f"z={z}: k' = {b.k_hat:.2f}  [{b.ci_low:.2f}, {b.ci_high:.2f}]")
