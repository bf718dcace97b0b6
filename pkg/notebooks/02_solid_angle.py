# %% [markdown]
# # Dipole-weighted solid angle
#
# `omega` is the fraction of the atom's emission pattern covered by the
# focusing optics.  For a linear (pi) dipole along z the pattern is
# `sin^2(theta)`, for a circular (sigma) dipole `(1 + cos^2(theta)) / 2`.

# %%
import numpy as np

from atomscatter import AngularAperture, DipolePattern, weighted_solid_angle

for pattern in DipolePattern:
    print(pattern.value, "full sphere:", weighted_solid_angle(pattern, AngularAperture.full_sphere()))

# %% [markdown]
# A lens on the dipole axis sees little of a linear dipole's emission; a
# lens in the equatorial plane (here a cone about +x is approximated by a
# polar band) catches much more.  Note the closed form for an on-axis cone:
# `1/2 - 3/4 cos(a) + 1/4 cos^3(a)`.

# %%
print("\nhalf-angle  linear(on axis)  closed form      circular")
for a in np.linspace(0.1, np.pi / 2, 6):
    lin, err = weighted_solid_angle("linear", AngularAperture.cone(a), full_output=True)
    closed = 0.5 - 0.75 * np.cos(a) + 0.25 * np.cos(a) ** 3
    circ = weighted_solid_angle("circular", AngularAperture.cone(a))
    print(f"{a:9.3f}  {lin:15.12f}  {closed:15.12f}  {circ:10.6f}   (err {err:.1e})")

# %%
band = AngularAperture(theta_min=np.pi / 2 - 0.5, theta_max=np.pi / 2 + 0.5)
print("\nequatorial band +-0.5 rad, linear:", weighted_solid_angle("linear", band))
