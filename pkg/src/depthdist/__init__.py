"""Exact distribution of permutation depth over S_n, computed four independent ways."""

from .distribution import (
    BinomialPolynomial,
    DepthTable,
    first_divergence,
    fixed_depth_polynomial,
    max_depth,
    max_depth_count,
    table,
    table_brute,
    table_jfrac,
    table_motzkin,
    table_sfrac,
)
from .errors import (
    CeilingError,
    DepthDistError,
    PathError,
    PermutationError,
    SeriesError,
    VerificationError,
)
from .motzkin import (
    MotzkinPath,
    Step,
    area,
    enumerate_paths,
    geometric_area,
    heights,
    parse_path,
    step_weights,
    weight,
)
from .permutation import (
    Permutation,
    depth,
    enumerate_sn,
    inverse,
    parse_permutation,
    total_displacement,
)
from .phi_map import (
    ArrowDiagram,
    depth_via_path,
    diagram,
    enumerate_preimage,
    phi,
    preimage_count,
)
from .series import TruncatedSeries

__version__ = "0.1.0"
