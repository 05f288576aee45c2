"""Measurements, the sensing operator and coherence.

A plan picks DFT rows, the dictionary holds every circular shift of the
unit-norm pulse, and their product is the sensing operator. Its coherence
is the largest |fft(atom)| on the chosen bins, so plans that sit on the
spectral peak are the most coherent. The sample-count heuristic grows with
the square of the coherence.
"""
import numpy as np

from eqsamp import (
    Band,
    SensingOperator,
    build_dictionary,
    coherence,
    energy_profile,
    forward,
    make_monocycle,
    make_scene,
    measure,
    plan_ees,
    plan_fes,
    plan_random,
    required_samples,
    synthesize,
)

template = make_monocycle(2e9, 16e9, length=256)
dictionary = build_dictionary(template)
band = Band.full(256)
profile = energy_profile(forward(template.waveform), band)

scene = make_scene(dof=3, rng_seed=4, guard=template.duration_bins)
signal = synthesize(scene, template)
print("scene events (shift, amplitude):", [(s, round(a, 3)) for s, a in scene.events])

for name, plan in [("FES", plan_fes(band, 14)), ("RANDOM", plan_random(band, 14, 1)),
                   ("EES", plan_ees(profile, band, 14))]:
    op = SensingOperator(plan, dictionary)
    y = measure(signal, plan)
    # the operator applied to the true coefficients reproduces the measurement
    x = scene.coefficients() * dictionary.norm
    mismatch = np.abs(op.matvec(x) - y.values).max()
    mu = coherence(plan, dictionary)
    print(f"{name:>6}: mu = {mu:5.2f} of sqrt(N) = 16   rows = {op.shape[0]}   "
          f"|Ax - y| = {mismatch:.1e}")

# every 14-sample plan above touches the 2 GHz peak; one confined to the
# weak upper band is far less coherent but also sees far less energy
high = Band(64, 127, 256)
print(f"upper-band FES: mu = {coherence(plan_fes(high, 14), dictionary):.2f}")

print("\nrequired samples for DoF = 3, C = 1:")
for mu in (1.0, 2.0, 4.0):
    print(f"  mu = {mu}: {required_samples(mu, 3, 256, 1.0)}")
