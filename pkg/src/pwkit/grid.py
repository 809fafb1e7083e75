"""Grid geometry, test-function generators, and quadrature primitives.

Functions on R^n (n = 2 or 3) are represented by their values on a regular
tensor grid over the box [-L, L]^n.  All integrals are tensor-product
trapezoid sums, which are spectrally accurate for the smooth compactly
supported functions this library works with.  Directions on the sphere
S^{n-1} come with quadrature weights for the normalized measure (weights
sum to 1).
"""

import numpy as np

__all__ = [
    "GridSpec",
    "SampledFunction",
    "DirectionSet",
    "BallOutsideGrid",
    "DirectionsNotAntipodal",
    "make_bump",
    "random_bump_suite",
    "integrate",
    "l2_norm_sq",
    "save_function",
    "load_function",
]

SPHERE_AREA = {2: 2 * np.pi, 3: 4 * np.pi}  # sigma_n = 2 pi^{n/2} / Gamma(n/2)


class BallOutsideGrid(ValueError):
    """The requested support ball does not fit inside the grid box."""


class DirectionsNotAntipodal(ValueError):
    """The direction set is not closed under omega -> -omega."""


class GridSpec:
    """Regular grid over [-L, L]^n with M points per axis (M odd >= 33)."""

    def __init__(self, n, half_width, points):
        if n not in (2, 3):
            raise ValueError("dimension must be 2 or 3, got %r" % (n,))
        if points < 33 or points % 2 == 0:
            raise ValueError("points-per-axis must be odd and >= 33")
        if half_width <= 0:
            raise ValueError("half-width must be positive")
        self.n = int(n)
        self.half_width = float(half_width)
        self.points = int(points)

    @property
    def spacing(self):
        return 2.0 * self.half_width / (self.points - 1)

    def axis(self):
        return np.linspace(-self.half_width, self.half_width, self.points)

    def mesh(self):
        axes = [self.axis()] * self.n
        return np.meshgrid(*axes, indexing="ij")

    def __eq__(self, other):
        return (isinstance(other, GridSpec) and self.n == other.n
                and self.points == other.points
                and self.half_width == other.half_width)

    def __repr__(self):
        return "GridSpec(n=%d, half_width=%g, points=%d)" % (
            self.n, self.half_width, self.points)


class SampledFunction:
    """Values of a compactly supported function on a GridSpec.

    Parameters
    ----------
    grid : GridSpec
    values : ndarray, shape (M,)*n
        Real or complex samples, row-major over the grid axes.
    support_radius : float or None
        Declared radius of a ball about the origin containing the support.
        When set, samples at nodes with |x| > support_radius must be zero.
    """

    def __init__(self, grid, values, support_radius=None):
        values = np.asarray(values)
        if values.shape != (grid.points,) * grid.n:
            raise ValueError("values shape %r does not match grid %r"
                             % (values.shape, grid))
        if not np.isfinite(values).all():
            raise ValueError("values must be finite")
        if support_radius is not None:
            r2 = _radius_sq_mesh(grid)
            outside = r2 > support_radius**2
            if np.any(values[outside] != 0):
                raise ValueError("nonzero samples outside declared support radius")
        self.grid = grid
        self.values = values
        self.support_radius = support_radius

    @property
    def n(self):
        return self.grid.n

    def __mul__(self, c):
        return SampledFunction(self.grid, self.values * c, self.support_radius)

    __rmul__ = __mul__

    def __add__(self, other):
        if other.grid != self.grid:
            raise ValueError("grids differ")
        rs = None
        if self.support_radius is not None and other.support_radius is not None:
            rs = max(self.support_radius, other.support_radius)
        return SampledFunction(self.grid, self.values + other.values, rs)


def _radius_sq_mesh(grid):
    ax2 = grid.axis() ** 2
    r2 = ax2
    for _ in range(grid.n - 1):
        r2 = np.add.outer(r2, ax2)
    return r2


def make_bump(center, radius, amplitude, grid):
    """Smooth bump: amplitude * exp(1 - radius^2/(radius^2 - |x-center|^2)).

    The value at the center is `amplitude`; samples vanish identically
    outside the open ball.  Raises BallOutsideGrid when the closed ball
    is not contained in the grid box.
    """
    center = np.asarray(center, dtype=float)
    if center.shape != (grid.n,):
        raise ValueError("center must have %d components" % grid.n)
    if radius <= 0:
        raise ValueError("radius must be positive")
    if np.any(np.abs(center) + radius > grid.half_width + 1e-12):
        raise BallOutsideGrid(
            "ball(center=%s, radius=%g) leaves the box [-%g, %g]^%d"
            % (center, radius, grid.half_width, grid.half_width, grid.n))
    mesh = grid.mesh()
    r2 = np.zeros_like(mesh[0])
    for a, c in zip(mesh, center):
        r2 += (a - c) ** 2
    out = np.zeros_like(r2)
    inside = r2 < radius**2
    # exp(1 - rho^2/(rho^2-r^2)) == exp(-r^2/(rho^2-r^2))
    out[inside] = amplitude * np.exp(-r2[inside] / (radius**2 - r2[inside]))
    return SampledFunction(grid, out, float(np.linalg.norm(center) + radius))


def random_bump_suite(grid, count, seed, radius_range=(0.45, 0.85), center_max=0.35):
    """Seeded family of off-center bumps used by the certification pipelines.

    Radii and centers are drawn so that every support ball stays well inside
    the box and the support radius about the origin stays below 0.8 L.
    """
    rng = np.random.default_rng(seed)
    out = []
    L = grid.half_width
    for _ in range(count):
        radius = rng.uniform(*radius_range) * (L / 1.5)
        cmax = min(center_max * (L / 1.5), 0.8 * L - radius)
        center = rng.uniform(-1, 1, size=grid.n)
        center *= rng.uniform(0, max(cmax, 0.0)) / max(np.linalg.norm(center), 1e-12)
        amplitude = rng.uniform(0.5, 2.0)
        out.append(make_bump(center, radius, amplitude, grid))
    return out


def _trapezoid_weights(npts, dx):
    w = np.full(npts, dx)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def integrate(f):
    """Tensor-product trapezoid quadrature of the samples times h^n."""
    out = f.values
    for axis in range(f.grid.n - 1, -1, -1):
        out = np.trapezoid(out, dx=f.grid.spacing, axis=axis)
    return out


def l2_norm_sq(f):
    """Quadrature of |values|^2 h^n; the squared L2 norm."""
    out = np.abs(f.values) ** 2
    for axis in range(f.grid.n - 1, -1, -1):
        out = np.trapezoid(out, dx=f.grid.spacing, axis=axis)
    return float(out)


class DirectionSet:
    """Quadrature rule on S^{n-1} for the normalized measure.

    For n=2 this is Q equispaced angles with uniform weights 1/Q.  For n=3
    it is a Gauss-Legendre (in cos polar angle) x equispaced azimuth product
    rule.  Construction verifies exactness on spherical harmonics up to the
    band limit: the weighted sum of any harmonic of degree 1 <= l <= band
    must vanish (the constant integrates to 1).
    """

    def __init__(self, vectors, weights, band_limit, angles=None):
        vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
        weights = np.asarray(weights, dtype=float)
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1 (normalized measure)")
        self.vectors = vectors
        self.weights = weights
        self.band_limit = int(band_limit)
        self.angles = angles
        self._antipodal = None
        self._verify_exactness()

    @property
    def n(self):
        return self.vectors.shape[1]

    def __len__(self):
        return len(self.vectors)

    @classmethod
    def circle(cls, count, band_limit=None):
        """Equispaced angles theta_j = 2 pi j / Q on S^1."""
        if band_limit is None:
            band_limit = count // 2 - 1
        thetas = 2 * np.pi * np.arange(count) / count
        vecs = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
        return cls(vecs, np.full(count, 1.0 / count), band_limit, angles=thetas)

    @classmethod
    def sphere(cls, band_limit):
        """Gauss-Legendre x equispaced azimuth rule, exact through degree
        2*band_limit (enough for Parseval checks at the band limit)."""
        g = band_limit + 1
        naz = 2 * band_limit + 2
        nodes, glw = np.polynomial.legendre.leggauss(g)
        phi = 2 * np.pi * np.arange(naz) / naz
        st = np.sqrt(1.0 - nodes**2)
        vecs = np.empty((g * naz, 3))
        wts = np.empty(g * naz)
        k = 0
        for a in range(g):
            for b in range(naz):
                vecs[k] = (st[a] * np.cos(phi[b]), st[a] * np.sin(phi[b]), nodes[a])
                wts[k] = glw[a] / (2.0 * naz)
                k += 1
        return cls(vecs, wts, band_limit)

    def _verify_exactness(self, tol=1e-10):
        if self.n == 2:
            th = np.arctan2(self.vectors[:, 1], self.vectors[:, 0])
            for l in range(1, self.band_limit + 1):
                if abs(self.weights @ np.cos(l * th)) > tol or \
                   abs(self.weights @ np.sin(l * th)) > tol:
                    raise ValueError("rule not exact at harmonic degree %d" % l)
        else:
            from scipy.special import sph_harm_y
            theta = np.arccos(np.clip(self.vectors[:, 2], -1, 1))
            phi = np.arctan2(self.vectors[:, 1], self.vectors[:, 0])
            for l in range(1, self.band_limit + 1):
                for m in range(0, l + 1):
                    y = sph_harm_y(l, m, theta, phi)
                    if abs(self.weights @ y.real) > tol or \
                       (m > 0 and abs(self.weights @ y.imag) > tol):
                        raise ValueError("rule not exact at harmonic degree %d" % l)

    def antipodal_index(self):
        """Index map j -> j' with vectors[j'] == -vectors[j].

        Raises DirectionsNotAntipodal when the set is not closed under the
        antipodal map, which evenness checks require.
        """
        if self._antipodal is None:
            idx = np.empty(len(self), dtype=int)
            for i, v in enumerate(self.vectors):
                d = np.abs(self.vectors + v).sum(axis=1)
                j = int(np.argmin(d))
                if d[j] > 1e-10:
                    raise DirectionsNotAntipodal(
                        "no antipode for direction %d in the set" % i)
                idx[i] = j
            self._antipodal = idx
        return self._antipodal


def save_function(f, path):
    """CSV serialization: header line `n,M,L`, then one value per line."""
    with open(path, "w") as fh:
        fh.write("%d,%d,%.17g\n" % (f.grid.n, f.grid.points, f.grid.half_width))
        for v in f.values.ravel():
            fh.write("%.17g\n" % v)


def load_function(path, support_radius=None):
    with open(path) as fh:
        head = fh.readline().strip().split(",")
        n, m, half_width = int(head[0]), int(head[1]), float(head[2])
        vals = np.loadtxt(fh)
    grid = GridSpec(n, half_width, m)
    return SampledFunction(grid, vals.reshape((m,) * n), support_radius)
