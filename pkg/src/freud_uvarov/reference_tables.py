"""Published zeros of ``Q_n`` and roots of ``u(x, t; n)`` used as golden values.

Each table lists, for the masses in ``MASSES``, the positive zeros of
``Q_n`` (largest first) and the two magnitudes ``sqrt|s|`` of the roots of
``u`` (``s = x^2``): the row for the smaller ``s`` (an imaginary pair,
listed in the "imaginary" row) and the row for the larger ``s`` (a real
pair).  Values carry four or five decimals.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["MASSES", "TABLES", "ReferenceTable"]

MASSES = (0.0, 0.002, 0.05, 0.5, 5.0, 10.0, 50.0)


@dataclass(frozen=True)
class ReferenceTable:
    number: int
    t: float
    n: int
    q_rows: tuple      # one row per positive zero, largest zero first
    u_imag: tuple      # sqrt|s| for the smaller root s of u
    u_real: tuple      # sqrt|s| for the larger root s of u
    masses: tuple = MASSES

    @property
    def m(self) -> int:
        return self.n // 2


TABLES = {
    3: ReferenceTable(3, 0.5, 4,
                      ((1.1640, 1.1639, 1.1623, 1.1516, 1.1318, 1.1286, 1.1257),
                       (0.4839, 0.4836, 0.4755, 0.4154, 0.2256, 0.1689, 0.0794)),
                      (0.94861, 0.94869, 0.9505, 0.9618, 0.9827, 0.9863, 0.9898),
                      (0.0, 0.0144, 0.0689, 0.1528, 0.1219, 0.0942, 0.0455)),
    4: ReferenceTable(4, 1.0, 4,
                      ((1.3002, 1.3001, 1.2988, 1.2891, 1.2659, 1.2615, 1.2570),
                       (0.6156, 0.6153, 0.6084, 0.5533, 0.3335, 0.2551, 0.1227)),
                      (0.7653, 0.7654, 0.7687, 0.7894, 0.8354, 0.8454, 0.8563),
                      (0.0, 0.0171, 0.0827, 0.1962, 0.1800, 0.1424, 0.0703)),
    5: ReferenceTable(5, 1.5, 4,
                      ((1.4485, 1.4484, 1.4474, 1.4395, 1.4120, 1.4047, 1.3964),
                       (0.8059, 0.8057, 0.8010, 0.7603, 0.5363, 0.4290, 0.2176)),
                      (0.5175, 0.5179, 0.5263, 0.5714, 0.663, 0.6899, 0.7282),
                      (0.0, 0.0233, 0.1125, 0.2770, 0.3021, 0.2477, 0.1261)),
    6: ReferenceTable(6, 2.0, 4,
                      ((1.60437, 1.6043, 1.6038, 1.5989, 1.5717, 1.5594, 1.5406),
                       (1.0429, 1.0428, 1.0408, 1.0220, 0.8736, 0.7644, 0.4490)),
                      (0.0, 0.0605, 0.1906, 0.3316, 0.4564, 0.4885, 0.5748),
                      (0.1487, 0.1613, 0.2539, 0.4256, 0.5625, 0.5117, 0.2832)),
    7: ReferenceTable(7, 1.0, 6,
                      ((1.51614, 1.51612, 1.5153, 1.5103, 1.5018, 1.5005, 1.4993),
                       (1.0730, 1.0729, 1.0711, 1.0600, 1.0403, 1.0374, 1.0346),
                       (0.4530, 0.4526, 0.4445, 0.3846, 0.2044, 0.1524, 0.0714)),
                      (0.9164, 0.9165, 0.9185, 0.9300, 0.9501, 0.9533, 0.9564),
                      (0.0, 0.0139, 0.0665, 0.1444, 0.1109, 0.0852, 0.0409)),
    8: ReferenceTable(8, 1.0, 10,
                      ((1.79469, 1.79467, 1.7942, 1.7921, 1.7896, 1.7893, 1.7890),
                       (1.49286, 1.49284, 1.4922, 1.4888, 1.4849, 1.4845, 1.4841),
                       (1.17419, 1.17414, 1.1730, 1.1674, 1.1608, 1.1600, 1.1593),
                       (0.7931, 0.7930, 0.7907, 0.7789, 0.7647, 0.7630, 0.7616),
                       (0.2950, 0.2947, 0.2858, 0.2291, 0.1067, 0.0780, 0.0359)),
                      (1.1107, 1.1108, 1.1117, 1.1166, 1.1223, 1.1230, 1.1236),
                      (0.0, 0.0110, 0.0509, 0.0950, 0.0589, 0.0440, 0.0206)),
}
