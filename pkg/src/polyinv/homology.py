"""Reduced simplicial homology ranks of complexes of dimension at most 2."""

from __future__ import annotations

from dataclasses import dataclass, field

# Ranks are computed modulo a large prime.  Boundary matrices of these
# complexes have entries in {-1, 0, 1}, so a rank drop modulo this prime
# would need a minor divisible by it.
PRIME = (1 << 61) - 1


@dataclass
class OrderComplex:
    vertices: list
    edges: list = field(default_factory=list)  # (u, v), u < v in the order
    triangles: list = field(default_factory=list)  # (u, v, w), u < v < w

    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.triangles)

    def euler_characteristic(self) -> int:
        v, e, f = self.counts()
        return v - e + f

    @property
    def dimension(self) -> int:
        for d, n in zip((2, 1, 0), self.counts()[::-1]):
            if n:
                return d
        return -1


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers ``b[-1], b[0], b[1], b[2]``."""

    b_minus1: int
    b0: int
    b1: int
    b2: int

    def __getitem__(self, k: int) -> int:
        return (self.b_minus1, self.b0, self.b1, self.b2)[k + 1]


def rank_mod_p(columns: list[dict], p: int = PRIME) -> int:
    """Rank of a sparse matrix given as a list of ``{row: value}`` columns."""
    pivots: dict[int, dict] = {}
    rank = 0
    for col in columns:
        v = {r: x % p for r, x in col.items() if x % p}
        while v:
            r = max(v)
            if r not in pivots:
                inv = pow(v[r], p - 2, p)
                pivots[r] = {k: (x * inv) % p for k, x in v.items()}
                rank += 1
                break
            piv = pivots[r]
            f = v[r]
            for k, x in piv.items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return rank


def boundary_ranks(K: OrderComplex) -> tuple[int, int, int]:
    """Ranks of the augmentation and of the boundary maps in degrees 1 and 2."""
    vindex = {v: k for k, v in enumerate(K.vertices)}
    eindex = {e: k for k, e in enumerate(K.edges)}
    r0 = 1 if K.vertices else 0
    d1 = [{vindex[v]: 1, vindex[u]: -1} for u, v in K.edges]
    d2 = [{eindex[(v, w)]: 1, eindex[(u, w)]: -1, eindex[(u, v)]: 1} for u, v, w in K.triangles]
    return r0, rank_mod_p(d1), rank_mod_p(d2)


def homology_ranks(K: OrderComplex) -> BettiVector:
    nv, ne, nt = K.counts()
    r0, r1, r2 = boundary_ranks(K)
    return BettiVector(1 - r0, nv - r0 - r1, ne - r1 - r2, nt - r2)
