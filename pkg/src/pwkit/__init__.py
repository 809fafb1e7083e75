"""pwkit: transforms of compactly supported functions (Radon, motion-group
Fourier, sphere Abel) plus exact Weyl-group invariant theory, with
numerical certificates for the support, homogeneity, growth, and
restriction identities that tie them together."""

from .grid import (GridSpec, SampledFunction, DirectionSet, BallOutsideGrid,
                   DirectionsNotAntipodal, make_bump, random_bump_suite,
                   integrate, l2_norm_sq, save_function, load_function)
from .radon import (Sinogram, UnsupportedDimension, NotEven, radon_transform,
                    default_offsets, evenness_defect, moment, inverse_radon,
                    save_sinogram, load_sinogram)
from .fourier import (VectorFT, ZeroFunction, UnsupportedPair, radial_fourier,
                      fourier_on_rays, choose_r_max, fourier_slice_defect,
                      plancherel_defect, pointwise_inversion,
                      marginal_projection, projection_compatibility_defect,
                      save_vector_ft)
from .pw import (ComplexGrid, ComplexSpherePoint, HarmonicExpansion, ZeroInput,
                 complex_slice_eval, pw_seminorm, support_radius_estimate,
                 taylor_coefficient, homogeneity_defect,
                 complexified_sphere_eval, extension_consistency_defect,
                 schwartz_seminorm)
from .sphere import (ZonalProfile, SphericalCoefficients,
                     DegenerateCalibration, UnsupportedSphereDimension,
                     cap_bump, spherical_function, spherical_transform,
                     sphere_radon, sphere_slice_defect, sphere_slice_constants,
                     sphere_support_check, save_profile, load_profile)
from .weyl import (SignedPermutation, RootSystemSpec, MultivariatePolynomial,
                   GroupTooLarge, DegreeTooLarge, NotInvariant,
                   NoSolutionAtDegree, ObstructionHit, weyl_group, group_order,
                   stabilizer, restricted_group, reynolds,
                   chevalley_generators, invariant_basis, restrict_poly,
                   surjectivity_certificate, SurjectivityCertificate,
                   rais_decompose, ow1_lift)

__version__ = "0.1.0"
