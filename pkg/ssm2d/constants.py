"""Constants for the ssm2d package."""

# Binary file magics
KERNEL_MAGIC = b"SSM2DKRN"
TENSOR_MAGIC = b"SSM2DTEN"

# Raw-parameter initialization range
INIT_LOW = -1.0
INIT_HIGH = 1.0

# |A| and |B| stay this far below one so the complex modulus cannot round up to 1.
RADIUS_MARGIN = 8.0 * 2.0**-52

# Largest path count a double represents exactly
MAX_EXACT_COUNT = 2**53

# Per-step factor of the normalized recurrence
NORMALIZED_STEP = 0.5

# Output scale applied to relaxed first-row/column cells
RELAXED_EDGE_SCALE = 2.0

# Axis flips per direction count, in stack order
DIRECTION_FLIPS: dict[int, tuple[tuple[int, ...], ...]] = {
    1: ((),),
    2: ((), (0, 1)),
    4: ((), (0,), (1,), (0, 1)),
}

# Tolerances used by the verification suite (double precision)
DEFAULT_RANK_TOL = 1e-9
EQUIVALENCE_TOL = 1e-10
FFT_TOL = 1e-8
GRADIENT_EPS = 1e-6
GRADIENT_TOL = 1e-4
SEPARABLE_TOL = 1e-12
LINEARITY_TOL = 1e-12
BOUND_TOL = 1e-12

# Cells checked by the cache-structure verification
CACHE_CHECK_SIZE = 32

# Largest grid the verification suite compiles without normalization
UNNORMALIZED_CHECK_MAX = 12

# Benchmarks
MIN_BENCH_REPS = 5

# CLI exit codes
EXIT_OK = 0
EXIT_PROPERTY_FAILED = 1
EXIT_BAD_ARGUMENTS = 2
EXIT_IO_ERROR = 3
EXIT_SHAPE_MISMATCH = 4
