"""First-order radio model."""

from dataclasses import dataclass

BITS_PER_BYTE = 8


@dataclass(frozen=True, slots=True)
class RadioModel:
    e_elec: float = 50e-9
    eps_amp: float = 100e-12

    def tx_cost(self, size_bytes: int, hop_distance: float) -> float:
        bits = size_bytes * BITS_PER_BYTE
        return self.e_elec * bits + self.eps_amp * bits * hop_distance * hop_distance

    def rx_cost(self, size_bytes: int) -> float:
        return self.e_elec * size_bytes * BITS_PER_BYTE
