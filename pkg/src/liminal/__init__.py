"""Counting polynomials over finite fields as the number of variables grows.

Exact closed forms for irreducible, typed and squarefree counts, their
limits in q-adic topology, the reciprocity identities linking one and
infinitely many variables, the S_d character families behind first
moments of factorization statistics, and a brute-force census over small
finite fields to check it all against.
"""

from .characters import (
    Kind,
    SignMode,
    Statistic,
    expected_sign,
    first_moment,
    liminal_moment_via_characters,
    moment_via_univariate_characters,
    phi_family,
    psi_family,
    sigma_family,
    stirling_first_unsigned,
)
from .counting import (
    INF,
    CountKey,
    bounded_mult_total,
    count,
    irr_count,
    liminal_bounded_total,
    liminal_irr,
    liminal_sf_type,
    liminal_total,
    liminal_type,
    necklace,
    sf_type_poly,
    total_count,
    type_poly,
)
from .exact import PolyQ, RatFuncQ, SeriesQ, series_at_infinity, series_at_zero, substitute_involution
from .partitions import ClassFunction, Partition, inner_product, partitions_of

__version__ = "0.1.0"
