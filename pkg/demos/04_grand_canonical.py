"""
Grand-canonical states
======================

Two constructions: one that prescribes density and entropy only, and one that also
prescribes the mean particle number ``Nbar`` by mixing in the vacuum.
"""

from thermorep import BOSON, FERMION, construct_gc_density_entropy, construct_gc_full, named_density

p = named_density("gaussian:1", mass=1.0)

# density and entropy: a uniform mixture of Fock states with total density p
state, cert = construct_gc_density_entropy(p, 2.0, FERMION)
print(f"gc-entropy: {len(state)} Fock states, <N> = {cert.achieved['mean_particles']:.4f}")
print(f"  nominal entropy {cert.achieved['entropy_nominal']:.4f}, "
      f"overlap of the Fock states {cert.achieved['gram_deviation']:.3f}")
print(f"  kinetic {cert.achieved['kinetic']:.2f} <= bound {cert.bound('gc_entropy_kinetic').value:.0f}")

# density, entropy and mean particle number
for Nbar, S in [(2.5, 1.0), (1.0, 0.3), (4.0, 3.0)]:
    for statistics in (FERMION, BOSON):
        state, cert = construct_gc_full(p, Nbar, S, statistics)
        print(f"gc-full Nbar={Nbar} S={S} {statistics:7s} N={cert.parameters['N']} M={cert.parameters['M']}"
              f"  <N>={cert.achieved['mean_particles']:.12f}  S={cert.achieved['entropy_exact']:.10f}"
              f"  pass={cert.passed}")

for note in cert.notes:
    print("note:", note)
