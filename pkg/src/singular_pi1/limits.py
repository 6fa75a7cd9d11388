"""Configurable enumeration bounds.

Every exhaustive search in the package is gated by one of these three
numbers.  The defaults keep all bundled computations in the seconds
range; raise them at your own risk.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    order_bound: int = 5040      # largest allowed finite group order
    degree_bound: int = 5        # largest symmetric-group degree for counting
    ceiling: int = 10 ** 8       # largest admissible candidate-tuple count

    def replace(self, **kw):
        data = {"order_bound": self.order_bound,
                "degree_bound": self.degree_bound,
                "ceiling": self.ceiling}
        data.update(kw)
        return Limits(**data)


DEFAULT_LIMITS = Limits()
