"""Slice transforms on the sphere: forward maps, factorizations, inversions.

Core entry points:

- transforms: funk, slice_complete, slice_truncated, cosine families
- meridional: conjugation of complete slices to the Funk transform,
  Funk inversion, and slice reconstruction
- stereo: stereographic bridge to the plane Radon transform,
  truncated-slice factorization and reconstruction
- zonal: 1-D closed forms for zonal fields (oracles)
- limits: Riesz potentials and limit certification
- service.app / cli: HTTP service and its thin command-line client
"""

from .constants import (
    cosine_gamma,
    funk_limit_const,
    radon_limit_const,
    riesz_gamma,
    sphere_area,
)
from .errors import DomainError, NumericalError, RangeError
from .fields import ScalarField, cap_field, catalog_field, plane_field, sphere_field
from .transforms import (
    cap_cosine,
    cosine_transform,
    funk,
    shifted_cosine,
    slice_complete,
    slice_geometry,
    slice_truncated,
)

__all__ = [
    "DomainError",
    "NumericalError",
    "RangeError",
    "ScalarField",
    "cap_cosine",
    "cap_field",
    "catalog_field",
    "cosine_gamma",
    "cosine_transform",
    "funk",
    "funk_limit_const",
    "plane_field",
    "radon_limit_const",
    "riesz_gamma",
    "shifted_cosine",
    "slice_complete",
    "slice_geometry",
    "slice_truncated",
    "sphere_area",
    "sphere_field",
]

__version__ = "0.1.0"
