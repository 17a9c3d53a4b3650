"""Distance metrics of systematic non-linear codes via basis completion.

The package computes the minimum distance, weight distribution, distance
distribution and closest word pairs of a systematic code over a prime field
two ways: a polynomial route (ideal construction, Buchberger completion,
variety counting) and a brute-force enumeration oracle, cross-checked
against each other.  A query-counting distance-oracle simulator and a
benchmark harness round out the toolkit.
"""

__version__ = "0.1.0"

from .algebra import (
    FieldElem,
    Monomial,
    Polynomial,
    PolynomialRing,
    PrimeField,
    TermOrder,
    compare_monomials,
    field_inverse,
    reduce_field_exponents,
)
from .codes import (
    DistanceReport,
    SystematicCode,
    Word,
    brute_metrics,
    hamming_distance,
    hamming_weight,
    random_code,
)
from .errors import (
    DegreeOutOfRange,
    FieldEquationsMissing,
    GbdistError,
    HypothesisViolated,
    InvalidInput,
    InversionOfZero,
    LengthTooSmall,
    NotSystematic,
    OddDifference,
    ParameterTooLarge,
    RingMismatch,
)
from .gbmetrics import (
    Diagonal,
    MetricsSession,
    closest_pairs_gb,
    distance_distribution_gb,
    gb_report,
    min_distance_gb,
    weight_distribution_gb,
)
from .groebner import (
    GroebnerBasis,
    PointSet,
    buchberger,
    count_points,
    enumerate_points,
    inter_reduce,
    is_groebner_basis,
    normal_form,
    s_polynomial,
)
from .ideals import (
    GeneratorSet,
    code_ideal,
    distance_ideal,
    elementary_symmetric,
    field_equations,
    interpolate_systematic,
    pair_vector,
    read_code_file,
    squarefree_monomials,
    weight_enum_ideal,
    weight_ideal,
    write_code_file,
)
from .oraclemodel import (
    AdversarialInstance,
    DistanceOracle,
    aspect_ratio_instance,
    naive_decode,
    pruned_closest_pair,
    sphere_instance,
)
from .bench import BenchConfig, BenchRow, run_benchmark, verify_binomial_bound
