"""Class group invariants of the Dirichlet biquadratic fields Q(sqrt(n), sqrt(-n)).

The public surface is split by topic:

* :mod:`.arithmetic`  factorization, Kronecker symbol, Gaussian divisors
* :mod:`.quadratic`   genus 2-ranks and Redei 4-ranks of Q(sqrt(+-n))
* :mod:`.pell`        continued fractions, unit norms, the set E, Q(n)
* :mod:`.biquadratic` rk2, delta, epsilon and rk4 of Cl(K_n)
* :mod:`.forms`       binary quadratic form class groups (the oracle)
* :mod:`.experiments` scans, densities and the verifier
"""
__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402
