"""Parameter bundle (n, k, r) shared by the bound and construction modules."""
from __future__ import annotations

from dataclasses import dataclass


class InvalidParameters(ValueError):
    """Raised when (n, k, r) violates the LRC validity predicate."""


class ScaleError(ValueError):
    """Raised when an exhaustive search or oracle is asked to exceed its size guard."""


class OutOfScope(ValueError):
    """Raised when a routine needs n1 > n2 and the parameters do not satisfy it."""


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def split_n(n: int, r: int) -> tuple[int, int]:
    """Return (n1, n2) with n = n1 (r + 1) - n2 and 0 <= n2 < r + 1."""
    if n < 1 or r < 1:
        raise InvalidParameters(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    n1 = ceil_div(n, r + 1)
    return n1, n1 * (r + 1) - n


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    r: int

    @property
    def n1(self) -> int:
        return split_n(self.n, self.r)[0]

    @property
    def n2(self) -> int:
        return split_n(self.n, self.r)[1]

    @property
    def wide(self) -> bool:
        """True when n1 > n2, the regime with a closed-form bound and construction."""
        return self.n1 > self.n2

    @property
    def mu(self) -> int:
        self._require_wide()
        return self.n1 - self.n2

    @property
    def lam(self) -> int:
        self._require_wide()
        return self.n1 // self.mu

    @property
    def nu(self) -> int:
        self._require_wide()
        return self.n1 % self.mu

    @property
    def is_valid(self) -> bool:
        n, k, r = self.n, self.k, self.r
        return n > k >= 1 and 1 < r < k and k * (r + 1) <= n * r

    def validate(self) -> "CodeParams":
        if not self.is_valid:
            raise InvalidParameters(
                f"(n={self.n}, k={self.k}, r={self.r}) must satisfy 1 < r < k < n "
                "and k/n <= r/(r+1)"
            )
        return self

    def _require_wide(self) -> None:
        if not self.wide:
            raise OutOfScope(
                f"n1={self.n1} <= n2={self.n2} for n={self.n}, r={self.r}; "
                "mu, lambda and nu are only defined when n1 > n2"
            )
