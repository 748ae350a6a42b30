"""Central record of numerical tolerances.

Library code and the test suite must agree on these values, so they live
in one frozen record instead of being scattered as literals.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermiticity: float = 1e-12      # max-abs deviation of A from A-dagger
    orthonormality: float = 1e-10   # max-abs deviation of a Gram matrix from identity
    norm: float = 1e-10             # allowed |norm - 1| of a state vector
    spectral: float = 1e-10         # eigendecomposition reconstruction, max-abs
    expectation_imag: float = 1e-10 # allowed imaginary part of a Hermitian expectation
    probability: float = 1e-10      # slack around [0, 1] for projector expectations
    trajectory_prob: float = 1e-9   # slack on stored probability curves
    schmidt_cutoff: float = 1e-12   # singular values below this are dropped
    schmidt_reconstruction: float = 1e-9
    distribution_sum: float = 1e-10 # allowed |sum of probabilities - 1|


TOL = Tolerances()
