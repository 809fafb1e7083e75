"""Radon transform of a compactly supported bump: evenness, the moment
identities, support localization, and round-trip reconstruction.

A function on the plane is integrated over all lines x.omega = p.  The
resulting sinogram must be even under (p, omega) -> (-p, -omega), its
zeroth offset moment recovers the total mass for every direction, and the
first moment is linear in the direction with slope given by the center of
mass.  Inverting through the Fourier-slice route reproduces the function.
"""

import numpy as np

from pwkit import (DirectionSet, GridSpec, evenness_defect, integrate,
                   inverse_radon, make_bump, moment, radon_transform)

grid = GridSpec(2, half_width=1.5, points=257)
f = make_bump(center=[0.35, -0.2], radius=0.5, amplitude=1.0, grid=grid)
print("bump: center (0.35, -0.2), radius 0.5, support radius %.4f"
      % f.support_radius)
print("total mass: %.6f" % integrate(f))

directions = DirectionSet.circle(64)
sino = radon_transform(f, directions=directions)
print("\nsinogram: %d offsets x %d directions" % sino.values.shape)
print("evenness defect s(p,w) vs s(-p,-w): %.2e" % evenness_defect(sino))

beyond = np.abs(sino.offsets) > f.support_radius + grid.spacing
print("largest |value| beyond the support radius: %.2e"
      % np.abs(sino.values[beyond]).max())

# moment identities
m0 = moment(sino, 0)
print("\nzeroth moment: max deviation from the mass: %.2e"
      % np.abs(m0 - integrate(f)).max())
m1 = moment(sino, 1)
th = np.arctan2(directions.vectors[:, 1], directions.vectors[:, 0])
predicted = integrate(f) * (0.35 * np.cos(th) - 0.2 * np.sin(th))
print("first moment vs mass * (center . omega): max deviation %.2e"
      % np.abs(m1 - predicted).max())

# reconstruction; more directions suppress angular aliasing at the corners
fine = radon_transform(f, directions=DirectionSet.circle(256))
rec = inverse_radon(fine, grid=grid)
err = np.abs(rec.values - f.values).max() / f.values.max()
print("\nround trip |reconstruction - f|_inf / |f|_inf: %.2e" % err)
