from __future__ import annotations

from dataclasses import dataclass

from .matrix import RingMatrix
from .rank import fraction_field_rank
from .rings import RingTag


class ChainComplexError(ValueError):
    pass


@dataclass(frozen=True)
class FreeChainComplex:
    """Chain complex of finitely generated free modules C_0 <- C_1 <- ... <- C_top.

    ``differentials[p - 1]`` is d_p : C_p -> C_{p-1}, a matrix of shape
    ``(ranks[p-1], ranks[p])`` acting on column vectors.
    """

    ring: RingTag
    ranks: tuple[int, ...]
    differentials: tuple[RingMatrix, ...]

    def __post_init__(self):
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ChainComplexError("need one differential per positive degree")
        for p, d in enumerate(self.differentials, start=1):
            if d.ring != self.ring:
                raise ChainComplexError(f"d_{p} is over {d.ring}, complex is over {self.ring}")
            if d.shape != (self.ranks[p - 1], self.ranks[p]):
                raise ChainComplexError(
                    f"d_{p} has shape {d.shape}, expected {(self.ranks[p - 1], self.ranks[p])}"
                )

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def d(self, p: int) -> RingMatrix | None:
        if 1 <= p <= self.top:
            return self.differentials[p - 1]
        return None

    def boundary_defects(self) -> list[int]:
        """Degrees p with d_{p} @ d_{p+1} != 0."""
        return [p for p in range(1, self.top)
                if not (self.differentials[p - 1] @ self.differentials[p]).is_zero()]

    def shifted(self, k: int) -> FreeChainComplex:
        """The same complex with every degree raised by ``k >= 0``."""
        if k == 0 or not self.ranks:
            return self
        ranks = (0,) * k + self.ranks
        pad = [RingMatrix(self.ring, 0, 0, ())] * (k - 1)
        pad.append(RingMatrix(self.ring, 0, self.ranks[0], ()))
        return FreeChainComplex(self.ring, ranks, tuple(pad) + self.differentials)


def chain_homology_ranks(C: FreeChainComplex) -> list[int]:
    """rank H_p = rank C_p - rank d_p - rank d_{p+1}, over the fraction field."""
    bad = C.boundary_defects()
    if bad:
        raise ChainComplexError(f"d_{bad[0]} o d_{bad[0] + 1} is not zero")
    ranks = [fraction_field_rank(d) for d in C.differentials] + [0]
    out = []
    for p, n in enumerate(C.ranks):
        rk_in = ranks[p - 1] if p >= 1 else 0
        out.append(n - rk_in - ranks[p])
    return out
