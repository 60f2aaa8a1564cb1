DEFAULT_MAX_N = 16  # Largest vertex count the brute-force oracle accepts by default.
MAX_N_ENV = "MDTOOL_MAX_N"  # Environment variable overriding DEFAULT_MAX_N.
EXHAUSTIVE_MAX_N = 6  # Largest vertex count for exhaustive labeled-graph enumeration.
PERMUTATION_MAX_N = 7  # Largest vertex count for all-permutations processing orders.

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_SIZE_LIMIT = 3
