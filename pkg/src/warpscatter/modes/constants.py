"""Constants for the modes module."""

# Error messages
ERROR_LAMBDA_MAX = "Truncation eigenvalue must be >= 0, got {value}"
ERROR_CUSTOM_UNSORTED = "Custom cross-section eigenvalues must be nondecreasing"
ERROR_CUSTOM_FIRST = "Custom cross-section spectrum must start with eigenvalue 0 of multiplicity 1"
ERROR_ALIASING = "{count} circle samples alias the requested modes; need at least {need}"
ERROR_NO_EIGENFUNCTIONS = "{kind} cross-section has no sampled eigenfunctions"
ERROR_SAMPLE_COUNT = "Got {count} samples, the custom quadrature has {need}"
