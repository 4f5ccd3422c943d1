"""Parameter records for the four small-world topologies."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .graph import ParameterError


def _check_lattice(n: int, k: int) -> None:
    if n < 4:
        raise ParameterError(f"ring lattice needs n >= 4, got n={n}")
    if k % 2 or not 2 <= k <= n - 2:
        raise ParameterError(f"k must be even with 2 <= k <= n-2, got k={k}, n={n}")


def _check_prob(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"probability p must lie in [0, 1], got {p}")


class _Params:
    model = ""

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class RingLatticeParams(_Params):
    n: int
    k: int
    model = "ring"

    def __post_init__(self):
        _check_lattice(self.n, self.k)


@dataclass(frozen=True)
class ShortcutParams(_Params):
    n: int
    k: int
    p: float
    model = "shortcuts"

    def __post_init__(self):
        _check_lattice(self.n, self.k)
        _check_prob(self.p)

    @property
    def lattice(self) -> RingLatticeParams:
        return RingLatticeParams(self.n, self.k)


@dataclass(frozen=True)
class RewiringParams(_Params):
    n: int
    k: int
    p: float
    model = "rewiring"

    def __post_init__(self):
        _check_lattice(self.n, self.k)
        _check_prob(self.p)

    @property
    def lattice(self) -> RingLatticeParams:
        return RingLatticeParams(self.n, self.k)


@dataclass(frozen=True)
class KleinbergParams(_Params):
    """n x n grid; initial neighbourhood radius h, q trials per node, exponent r."""

    n: int
    h: int
    q: int
    r: float
    model = "kleinberg"

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"grid side must be >= 2, got {self.n}")
        if self.h < 1 or not self.h < self.n - 1:
            raise ParameterError(f"need 1 <= h < n-1, got h={self.h}, n={self.n}")
        if self.q < 0:
            raise ParameterError(f"q must be >= 0, got {self.q}")
        if self.r < 0:
            raise ParameterError(f"r must be >= 0, got {self.r}")

    @property
    def node_count(self) -> int:
        return self.n * self.n


@dataclass(frozen=True)
class NavigableRingParams(_Params):
    n: int
    k: int
    q: int
    r: float
    model = "navigable"

    def __post_init__(self):
        _check_lattice(self.n, self.k)
        if self.q < 0:
            raise ParameterError(f"q must be >= 0, got {self.q}")
        if self.r < 0:
            raise ParameterError(f"r must be >= 0, got {self.r}")

    @property
    def lattice(self) -> RingLatticeParams:
        return RingLatticeParams(self.n, self.k)


MODEL_PARAMS = {
    "ring": RingLatticeParams,
    "shortcuts": ShortcutParams,
    "rewiring": RewiringParams,
    "kleinberg": KleinbergParams,
    "navigable": NavigableRingParams,
}
