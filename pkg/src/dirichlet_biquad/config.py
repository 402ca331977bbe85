"""Tunable resource bounds shared by all modules."""
from dataclasses import dataclass


@dataclass
class Settings:
    # bytes available to the smallest-prime-factor table (4 bytes per entry)
    sieve_memory_budget: int = 10**8
    # gaussian_divisors refuses when 2*omega1 + omega3 + 2 exceeds this
    gaussian_divisor_log2_bound: int = 24
    # largest |D| the form class group oracle accepts
    oracle_bound: int = 10**5

    @property
    def sieve_limit(self):
        return self.sieve_memory_budget // 4


settings = Settings()
