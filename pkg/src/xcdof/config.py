"""Antenna configurations for the two-transmitter, two-receiver network."""

from __future__ import annotations

from dataclasses import dataclass

from . import errors


@dataclass(frozen=True, order=True)
class AntennaConfig:
    """Antenna counts (m1, m2, n1, n2) defining a network instance.

    m1/m2 are the transmitter antenna counts, n1/n2 the receiver counts.
    Most derived quantities assume the normalized ordering m1 >= m2; m2 = 0
    is allowed only to realize a broadcast channel (single active
    transmitter) for the BC rank-ratio checks.
    """

    m1: int
    m2: int
    n1: int
    n2: int

    def __post_init__(self):
        for v in (self.m1, self.m2, self.n1, self.n2):
            if not isinstance(v, int) or v < 0:
                raise errors.ConfigError(f"antenna counts must be non-negative ints: {self}")
        if self.n1 < 1 or self.n2 < 1:
            raise errors.ConfigError(f"each receiver needs at least one antenna: {self}")
        if self.m1 + self.m2 < 1:
            raise errors.ConfigError(f"at least one transmit antenna required: {self}")

    # index helpers: i, j are 1-based as in the decodability conditions
    def m(self, j: int) -> int:
        return self.m1 if j == 1 else self.m2

    def n(self, i: int) -> int:
        return self.n1 if i == 1 else self.n2

    def n_other(self, i: int) -> int:
        return self.n2 if i == 1 else self.n1

    def q(self, i: int, j: int) -> int:
        """max(M_j, N_i') — the effective antenna count seen across the link."""
        return max(self.m(j), self.n_other(i))

    @property
    def is_normalized(self) -> bool:
        return self.m1 >= self.m2

    def swapped_tx(self) -> "AntennaConfig":
        return AntennaConfig(self.m2, self.m1, self.n1, self.n2)

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.m1, self.m2, self.n1, self.n2)


def normalize(config: AntennaConfig) -> tuple[AntennaConfig, bool]:
    """Reorder transmitters so that m1 >= m2.

    Returns the normalized configuration and a flag telling whether the
    transmitter indices were exchanged.  Receiver indices never move.
    """
    if config.m1 >= config.m2:
        return config, False
    return config.swapped_tx(), True


def require_normalized(config: AntennaConfig) -> AntennaConfig:
    if not config.is_normalized:
        raise errors.ConfigError(f"config must be normalized (m1 >= m2): {config}")
    return config
