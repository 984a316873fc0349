import math
from dataclasses import dataclass

from boundary_liouville.exceptions import DomainError


@dataclass(frozen=True)
class LiouvilleCoupling:
    """The coupling γ and the constants derived from it.

    The two shift generators of the double gamma function are ``b = γ/2``
    and ``big_b = 2/γ``; their product is 1 and their sum is the background
    charge Q.
    """

    gamma: float

    def __post_init__(self):
        gamma = float(self.gamma)
        if not (0.0 < gamma < 2.0) or not math.isfinite(gamma):
            raise DomainError(f"gamma must lie in (0, 2), got {self.gamma!r}")
        object.__setattr__(self, 'gamma', gamma)

    @property
    def b(self):
        return self.gamma / 2.0

    @property
    def big_b(self):
        return 2.0 / self.gamma

    @property
    def q_charge(self):
        return self.gamma / 2.0 + 2.0 / self.gamma

    @property
    def central_charge(self):
        return 1.0 + 6.0 * self.q_charge ** 2

    @property
    def b_min(self):
        return min(self.b, self.big_b)

    @property
    def b_max(self):
        return max(self.b, self.big_b)

    def __str__(self):
        return f"gamma={self.gamma:g}"
