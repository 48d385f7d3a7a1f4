"""Compare transmission schemes on two example channels.

Run: python3 demos/single_channel_capacities.py
"""

from gausscap import (
    PhaseInsensitiveChannel,
    coherent_capacity,
    crossover_energy,
    holevo_capacity,
    squeezed_capacity,
    threshold_energy,
)


def report(name, channel, n_bar):
    c_coh = coherent_capacity(channel, n_bar)
    c_sq, r = squeezed_capacity(channel, n_bar)
    c_hol = holevo_capacity(channel, n_bar)
    best = max(c_coh, c_sq)
    print("%s  (tau=%g, m=%g), n_bar=%g" % (name, channel.tau, channel.m, n_bar))
    print("  dual-quadrature rate   %.6f bits" % c_coh)
    print("  squeezed single-quad   %.6f bits (r=%.4f)" % (c_sq, r))
    print("  Holevo bound           %.6f bits" % c_hol)
    print("  Gaussian efficiency    %.1f%%" % (100.0 * best / c_hol))
    n_c = crossover_energy(channel)
    if n_c < float("inf"):
        print("  schemes cross at n_bar = %.4f" % n_c)
    print()


def main():
    report("50% loss, no excess noise",
           PhaseInsensitiveChannel.from_loss(0.5), 2.0)
    report("70% transmission, 1 thermal photon",
           PhaseInsensitiveChannel.from_loss(0.7, 1.0), 2.0)
    report("gain-2 amplifier, quantum limited",
           PhaseInsensitiveChannel.from_amplifier(2.0), 2.0)

    # energy needed before the best Gaussian scheme reaches a given
    # fraction of the Holevo bound on the pure-loss channel
    for frac in (0.5, 0.8, 0.9):
        print("pure loss: %.0f%% efficiency needs n_bar >= %.4g"
              % (100.0 * frac, threshold_energy(frac)))


if __name__ == "__main__":
    main()
