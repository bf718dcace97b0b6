# %% [markdown]
# # Where does the light go? Monochromatic drive
#
# A weak, monochromatic beam is focused onto the atom from a fraction
# `omega` of the (dipole-weighted) solid angle, with spatial mode overlap
# `eta`.  The transmitted light splits into three channels:
#
# * `coh`   - forward light where incident and scattered fields interfere
# * `incoh` - forward scattered light orthogonal to the incident mode
# * `back`  - scattered light outside the focusing aperture
#
# Detuning is in units of the linewidth (`gamma = 1`).

# %%
import numpy as np

from atomscatter import (
    AtomParams,
    CouplingParams,
    DriveParams,
    channel_fields,
    channel_powers,
    scattered_phase,
    scattered_power,
)

atom = AtomParams(gamma=1.0)
drive = DriveParams(power=1.0)
delta = np.linspace(-5, 5, 11)

# %% [markdown]
# Total scattered power.  At resonance with perfect coupling the atom
# scatters four times the incident power: the scattered wave is twice as
# strong as, and in anti-phase with, the incident one.

# %%
full = CouplingParams(omega=1.0, eta=1.0)
print("P_sc/P at resonance:", scattered_power(1.0, full, 0.0, atom))
print("with saturation s=1:", scattered_power(1.0, full, 0.0, atom, saturation=1.0))

# %% [markdown]
# Channel powers for a realistic lens (`omega = 0.11`) and for full
# solid-angle focusing.  The last column checks energy conservation.

# %%
for coupling in (CouplingParams(0.11, 1.0), full, CouplingParams(0.6, 0.8)):
    p = channel_powers(drive, coupling, delta, atom)
    print(f"\nomega={coupling.omega}, eta={coupling.eta}")
    print(" delta    p_coh    p_incoh   p_back   sum-1")
    for row in zip(delta, p.p_coh, p.p_incoh, p.p_back, p.total - 1):
        print(" {:5.1f}  {:8.5f}  {:8.5f}  {:8.5f}  {: .1e}".format(*row))

# %% [markdown]
# The scattered phase swings from 0 to pi across the resonance; the
# interfering forward part carries an extra pi/2 (Gouy phase).  On
# resonance with full coupling the forward field is exactly `-A`.

# %%
print("phase at resonance:", scattered_phase(0.0, atom), scattered_phase(0.0, atom, gouy=True))
print("forward field, full coupling:", channel_fields(drive, full, 0.0, atom).e_coh)

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    d = np.linspace(-5, 5, 401)
    p = channel_powers(drive, CouplingParams(0.6, 0.8), d, atom)
    fig, ax = plt.subplots()
    for name, values in zip(p._fields, p):
        ax.plot(d, values, label=name)
    ax.set_xlabel("detuning / gamma")
    ax.set_ylabel("power / P")
    ax.legend()
    fig.savefig("monochromatic_channels.png", dpi=120)
    print("\nwrote monochromatic_channels.png")
except ImportError:
    pass
