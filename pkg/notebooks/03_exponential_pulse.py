# %% [markdown]
# # A rising exponential pulse
#
# The incident envelope is `A0 exp(gamma t / 2)` for `t < 0` and zero
# afterwards: a time-reversed spontaneous-emission photon.  Scattering each
# spectral component elastically and transforming back gives the output
# envelope in every channel.

# %%
import numpy as np

from atomscatter import (
    CouplingParams,
    DetuningGrid,
    PulseParams,
    TransformPlan,
    absorbed_fraction,
    absorbed_fraction_parseval,
    analytic_time_domain,
    decompose_coherent,
    inverse_transform,
    scatter_pulse,
)

pulse = PulseParams(a0=1.0)
grid = DetuningGrid(n=2**16, delta_max=200.0)
plan = TransformPlan(grid)

# %% [markdown]
# The coherent forward spectrum is a weighted sum of the incident (rising)
# spectrum and its phase conjugate (a decaying exponential with a sign flip).

# %%
for omega, eta in ((0.11, 1.0), (0.5, 0.9), (1.0, 1.0)):
    c = CouplingParams(omega, eta)
    dec = decompose_coherent(pulse, c)
    print(
        f"omega={omega:4}, eta={eta:3}:  rising {dec.rising_coeff.real:+.3f}  "
        f"decaying {dec.decaying_coeff.real:+.3f}  "
        f"decaying energy fraction {absorbed_fraction(c):.4f} "
        f"(from spectra: {absorbed_fraction_parseval(pulse, c, grid):.4f})"
    )

# %% [markdown]
# Back to the time domain.  With full coupling the rising part disappears
# and the atom answers with a pure, sign-flipped decaying exponential.

# %%
c = CouplingParams(1.0, 1.0)
sig = inverse_transform(scatter_pulse(pulse, c, grid).s_coh, plan)
exact = analytic_time_domain("coh", pulse, c, sig.t)
show = np.searchsorted(sig.t, [-2.0, -0.5, 0.0, 0.5, 2.0])
print("\n   t      FFT           exact")
for j in show:
    print(f"{sig.t[j]:5.2f}  {sig.values[j].real:+.6f}   {exact[j].real:+.6f}")
print("max deviation:", np.max(np.abs(sig.values - exact)))

# %% [markdown]
# The backward channel at `omega = 0.11` is a symmetric double-sided
# exponential: the elastically scattered rising pulse followed by a
# decay once the drive is gone.

# %%
c = CouplingParams(0.11, 1.0)
back = inverse_transform(scatter_pulse(pulse, c, grid).s_back, plan)
for t0 in (-3.0, -1.0, 0.0, 1.0, 3.0):
    j = np.argmin(np.abs(back.t - t0))
    print(f"t={back.t[j]:+.2f}  |E_back|^2 = {abs(back.values[j])**2:.5f}")

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    window = np.abs(sig.t) <= 6
    fig, ax = plt.subplots()
    for omega in (0.11, 0.5, 1.0):
        c = CouplingParams(omega, 1.0)
        s = inverse_transform(scatter_pulse(pulse, c, grid).s_coh, plan)
        ax.plot(s.t[window], np.abs(s.values[window]) ** 2, label=f"omega={omega}")
    ax.set_xlabel("t * gamma")
    ax.set_ylabel("forward coherent power / A0^2")
    ax.legend()
    fig.savefig("exponential_pulse.png", dpi=120)
    print("\nwrote exponential_pulse.png")
except ImportError:
    pass
