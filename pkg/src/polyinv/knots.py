"""Knot diagrams from polygons, the Kauffman bracket, Jones polynomial and a small knot table.

Conventions
-----------
A diagram is stored as a signed Gauss code: the sequence of crossing passages
met while walking along the knot, each marked over or under, plus one sign per
crossing.  The projection is viewed from ``+direction``; a crossing is
positive (right-handed) when ``det(over tangent, under tangent, direction) > 0``.

Segment ``i`` runs from passage ``i`` to passage ``i + 1``.  The PD code of a
crossing is ``(a, b, c, d)`` with ``a`` the incoming under segment and the
rest listed counterclockwise.  The A-smoothing joins ``a-b`` and ``c-d``.

The Jones polynomial is kept in the bracket variable ``A`` (``t = A^-4``), so
a right-handed trefoil has ``V = A^-4 + A^-12 - A^-16``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import NoGenericProjection, StateExplosion
from .geom import DEFAULT_EPS, orthonormal_frame
from .laurent import LOOP, Laurent
from .polygon import Polygon

MAX_CROSSINGS = 24


@dataclass(frozen=True, eq=False)
class KnotDiagram:
    gauss: tuple  # ((crossing, is_over), ...)
    signs: tuple  # sign of crossing k
    free_loops: int = 0  # extra crossingless components
    direction: Optional[np.ndarray] = None

    def __post_init__(self):
        gauss = tuple((int(k), bool(o)) for k, o in self.gauss)
        object.__setattr__(self, "gauss", gauss)
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        seen = defaultdict(list)
        for k, over in gauss:
            seen[k].append(over)
        if sorted(seen) != list(range(len(self.signs))):
            raise ValueError("crossing ids must be 0..c-1")
        if any(sorted(v) != [False, True] for v in seen.values()):
            raise ValueError("each crossing must be passed once over and once under")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("crossing signs must be +1 or -1")

    @property
    def crossings(self) -> int:
        return len(self.signs)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def pd(self) -> list[tuple[int, int, int, int]]:
        """PD quadruples ``(a, b, c, d)`` indexed by crossing, labels ``0..2c-1``."""
        n = len(self.gauss)
        under, over = {}, {}
        for i, (k, is_over) in enumerate(self.gauss):
            (over if is_over else under)[k] = i
        codes = []
        for k, sign in enumerate(self.signs):
            i, j = under[k], over[k]
            a, c = (i - 1) % n, i
            if sign > 0:
                b, d = j, (j - 1) % n
            else:
                b, d = (j - 1) % n, j
            codes.append((a, b, c, d))
        return codes

    def mirror(self) -> "KnotDiagram":
        return KnotDiagram(
            tuple((k, not o) for k, o in self.gauss),
            tuple(-s for s in self.signs),
            self.free_loops,
            None if self.direction is None else -self.direction,
        )

    def add_curl(self, position: int, sign: int, over_first: bool = True) -> "KnotDiagram":
        """Insert a Reidemeister-I kink before passage ``position``."""
        k = self.crossings
        g = list(self.gauss)
        position %= max(len(g), 1)
        g[position:position] = [(k, over_first), (k, not over_first)]
        return KnotDiagram(tuple(g), self.signs + (sign,), self.free_loops)

    def reduce_kinks(self) -> "KnotDiagram":
        """Remove crossings whose two passages are consecutive along the curve."""
        g, signs = list(self.gauss), dict(enumerate(self.signs))
        changed = True
        while changed and g:
            changed = False
            n = len(g)
            for i in range(n):
                if g[i][0] == g[(i + 1) % n][0]:
                    k = g[i][0]
                    g = [p for p in g if p[0] != k]
                    del signs[k]
                    changed = True
                    break
        relabel = {old: new for new, old in enumerate(sorted(signs))}
        return KnotDiagram(
            tuple((relabel[k], o) for k, o in g),
            tuple(signs[old] for old in sorted(signs)),
            self.free_loops,
            self.direction,
        )

    @classmethod
    def from_pd(cls, codes: Sequence[Sequence[int]]) -> "KnotDiagram":
        """Build from a 1-based PD code whose labels increase along the knot."""
        n = 2 * len(codes)
        gauss: list = [None] * n
        signs = []
        for k, (a, b, c, d) in enumerate(codes):
            positive = b - d == 1 or d - b > 1
            signs.append(1 if positive else -1)
            gauss[a % n] = (k, False)
            gauss[(d if positive else b) % n] = (k, True)
        if any(p is None for p in gauss):
            raise ValueError("PD code does not describe a single closed strand")
        return cls(tuple(gauss), tuple(signs))


UNKNOT_DIAGRAM = KnotDiagram((), ())


# ---------------------------------------------------------------- projection


def _cross2(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def _try_projection(V: np.ndarray, direction: np.ndarray, eps: float) -> Optional[KnotDiagram]:
    n = len(V)
    scale = float(np.linalg.norm(V.max(axis=0) - V.min(axis=0)))
    gap_tol = 1e3 * eps * (1.0 + scale)
    angle_tol = 1e3 * eps
    e1, e2 = orthonormal_frame(direction)
    P = np.stack([V @ e1, V @ e2], axis=1)
    H = V @ direction
    E = np.roll(P, -1, axis=0) - P
    E3 = np.roll(V, -1, axis=0) - V
    dH = np.roll(H, -1) - H
    plen = np.linalg.norm(E, axis=1)
    if np.any(plen <= angle_tol * np.linalg.norm(E3, axis=1)):
        return None
    # adjacent edges folding back onto each other in projection
    En = np.roll(E, -1, axis=0)
    turn = _cross2(E, En) / (plen * np.roll(plen, -1))
    if np.any((np.abs(turn) <= angle_tol) & (np.einsum("ij,ij->i", E, En) < 0)):
        return None

    hits = defaultdict(list)  # edge -> [(param, crossing, is_over)]
    points, signs = [], []
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            den = _cross2(E[i], E[j])
            w = P[j] - P[i]
            if abs(den) <= angle_tol * plen[i] * plen[j]:
                # nearly parallel: only a problem if the projected segments nearly touch
                offs = abs(_cross2(w, E[i])) / plen[i]
                if offs <= gap_tol:
                    s0 = np.dot(w, E[i]) / plen[i] ** 2
                    s1 = np.dot(w + E[j], E[i]) / plen[i] ** 2
                    if max(s0, s1) >= -gap_tol / plen[i] and min(s0, s1) <= 1 + gap_tol / plen[i]:
                        return None
                continue
            s = _cross2(w, E[j]) / den
            t = _cross2(w, E[i]) / den
            ms, mt = gap_tol / plen[i], gap_tol / plen[j]
            if s < -ms or s > 1 + ms or t < -mt or t > 1 + mt:
                continue
            if s <= ms or s >= 1 - ms or t <= mt or t >= 1 - mt:
                return None
            hi, hj = H[i] + s * dH[i], H[j] + t * dH[j]
            if abs(hi - hj) <= gap_tol:
                return None
            k = len(signs)
            i_over = hi > hj
            over, under = (E3[i], E3[j]) if i_over else (E3[j], E3[i])
            signs.append(1 if np.linalg.det(np.array([over, under, direction])) > 0 else -1)
            hits[i].append((s, k, i_over))
            hits[j].append((t, k, not i_over))
            points.append(P[i] + s * E[i])
    if len(points) > 1:
        pts = np.array(points)
        diff = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
        np.fill_diagonal(diff, np.inf)
        if diff.min() <= gap_tol:
            return None
    gauss = []
    for i in range(n):
        for _, k, over in sorted(hits[i]):
            gauss.append((k, over))
    return KnotDiagram(tuple(gauss), tuple(signs), direction=direction)


def random_direction(rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.normal(size=3)
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            return v / norm


def project_to_diagram(
    K: Polygon,
    rng=None,
    direction=None,
    eps: float = DEFAULT_EPS,
    max_tries: int = 1000,
) -> KnotDiagram:
    """Signed crossing diagram of ``K`` seen from a generic direction.

    A fixed ``direction`` is tried once; otherwise directions are drawn from
    ``rng`` (a Generator or seed) until one is generic.
    """
    V = K.vertices
    if direction is not None:
        d = np.asarray(direction, dtype=float)
        D = _try_projection(V, d / np.linalg.norm(d), eps)
        if D is None:
            raise NoGenericProjection(f"direction {direction} is not generic")
        return D
    rng = np.random.default_rng(rng if rng is not None else 0)
    for _ in range(max_tries):
        D = _try_projection(V, random_direction(rng), eps)
        if D is not None:
            return D
    raise NoGenericProjection(f"no generic projection found in {max_tries} tries")


# ---------------------------------------------------------------- bracket


def _join(m: dict, u: int, v: int) -> int:
    """Add an arc u-v to the open matching ``m``; return number of loops closed."""
    if u == v:
        return 1
    pu, pv = m.pop(u, None), m.pop(v, None)
    if pu is not None and pu == v:
        return 1
    if pu is not None:
        del m[pu]
        u = pu
    if pv is not None:
        del m[pv]
        v = pv
    if u == v:
        return 1
    m[u], m[v] = v, u
    return 0


def _order(codes) -> list[int]:
    remaining = list(range(len(codes)))
    order, open_labels = [], set()
    while remaining:
        best = max(remaining, key=lambda k: (len(open_labels & set(codes[k])), -k))
        remaining.remove(best)
        order.append(best)
        for lab in codes[best]:
            if lab in open_labels:
                open_labels.discard(lab)
            else:
                open_labels.add(lab)
    return order


def kauffman_bracket(D: KnotDiagram) -> Laurent:
    """Kauffman bracket ``<D>`` with ``<O> = 1``, summed crossing by crossing.

    Partial states that induce the same pairing of the open segment ends are
    merged, so the cost grows with the width of the diagram rather than
    ``2**c``.
    """
    c = D.crossings
    if c > MAX_CROSSINGS:
        raise StateExplosion(f"{c} crossings exceeds the cap of {MAX_CROSSINGS}")
    extra = LOOP ** D.free_loops
    if c == 0:
        return extra
    codes = D.pd()
    states: dict = {(frozenset(), False): Laurent.constant(1)}
    for k in _order(codes):
        a, b, cc, d = codes[k]
        nxt: dict = defaultdict(Laurent)
        for (match, closed), poly in states.items():
            for pairs, power in ((((a, b), (cc, d)), 1), (((a, d), (b, cc)), -1)):
                m = {}
                for u, v in match:
                    m[u], m[v] = v, u
                loops = sum(_join(m, u, v) for u, v in pairs)
                value = poly.shift(power)
                now_closed = closed
                if loops and not now_closed:
                    loops -= 1
                    now_closed = True
                if loops:
                    value = value * LOOP**loops
                key = frozenset((u, v) for u, v in m.items() if u < v)
                nxt[(key, now_closed)] = nxt[(key, now_closed)] + value
        states = nxt
    total = sum(states.values(), Laurent())
    return total * extra


def bracket_state_sum(D: KnotDiagram) -> Laurent:
    """Plain enumeration of all ``2**c`` smoothings (reference implementation)."""
    c = D.crossings
    if c > MAX_CROSSINGS:
        raise StateExplosion(f"{c} crossings exceeds the cap of {MAX_CROSSINGS}")
    extra = LOOP ** D.free_loops
    if c == 0:
        return extra
    codes = D.pd()
    total = Laurent()
    for state in itertools.product((0, 1), repeat=c):
        parent = list(range(2 * c))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (a, b, cc, d), s in zip(codes, state):
            pairs = ((a, b), (cc, d)) if s == 0 else ((a, d), (b, cc))
            for u, v in pairs:
                parent[find(u)] = find(v)
        loops = len({find(x) for x in range(2 * c)})
        n_a = state.count(0)
        total = total + Laurent.monomial(n_a - (c - n_a)) * LOOP ** (loops - 1)
    return total * extra


def jones(D: KnotDiagram) -> Laurent:
    """Writhe-normalised bracket ``(-A^3)^(-w) <D>``."""
    w = D.writhe
    return kauffman_bracket(D).shift(-3 * w) * (-1) ** (w % 2)


def determinant(D: KnotDiagram) -> int:
    return determinant_of_jones(jones(D))


def determinant_of_jones(V: Laurent) -> int:
    # A = exp(i pi / 4) gives t = A^-4 = -1
    return int(round(abs(V.at_root_of_unity(1, 8))))


# ---------------------------------------------------------------- classification

# Rolfsen-table PD codes; the "*" entries are their mirror images.
REFERENCE_PD = {
    "trefoil_LH": [(1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)],
    "figure_eight": [(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)],
    "5_1": [(1, 6, 2, 7), (3, 8, 4, 9), (5, 10, 6, 1), (7, 2, 8, 3), (9, 4, 10, 5)],
    "5_2": [(1, 4, 2, 5), (3, 8, 4, 9), (5, 10, 6, 1), (9, 6, 10, 7), (7, 2, 8, 3)],
}
MIRROR_LABEL = {
    "unknot": "unknot",
    "trefoil_RH": "trefoil_LH",
    "trefoil_LH": "trefoil_RH",
    "figure_eight": "figure_eight",
    "5_1": "5_1*",
    "5_1*": "5_1",
    "5_2": "5_2*",
    "5_2*": "5_2",
    "unknown": "unknown",
}
LABELS = tuple(MIRROR_LABEL)


def mirror_label(label: str) -> str:
    return MIRROR_LABEL[label]


@lru_cache(maxsize=None)
def reference_table() -> dict:
    """``{Jones polynomial: label}`` generated from the reference PD codes."""
    table = {jones(UNKNOT_DIAGRAM): "unknot"}
    for label, codes in REFERENCE_PD.items():
        V = jones(KnotDiagram.from_pd(codes))
        table.setdefault(V, label)
        table.setdefault(V.mirror(), mirror_label(label))
    return table


@dataclass(frozen=True, eq=False)
class KnotClass:
    label: str
    jones: Laurent
    determinant: int
    writhe: int
    crossings: int
    raw_crossings: int
    direction: Optional[np.ndarray] = field(default=None, repr=False)

    def jones_t(self) -> Laurent:
        """Jones polynomial in ``t = A^-4``."""
        return self.jones.mirror().substitute_power(4)

    def as_record(self) -> dict:
        return {
            "label": self.label,
            "jones": [[e, c] for e, c in self.jones_t().items()],
            "determinant": self.determinant,
            "writhe": self.writhe,
            "crossings": self.crossings,
            "raw_crossings": self.raw_crossings,
            "direction": None if self.direction is None else [float(x) for x in self.direction],
        }


def identify(D: KnotDiagram) -> KnotClass:
    reduced = D.reduce_kinks()
    V = jones(reduced)
    det = determinant_of_jones(V)
    table = reference_table()
    label = "unknown"
    if det in _reference_determinants():
        label = table.get(V, "unknown")
    return KnotClass(label, V, det, reduced.writhe, reduced.crossings, D.crossings, D.direction)


@lru_cache(maxsize=None)
def _reference_determinants() -> frozenset:
    return frozenset(determinant_of_jones(V) for V in reference_table())


def classify(K: Polygon, rng=None, direction=None, eps: float = DEFAULT_EPS) -> KnotClass:
    """Knot type of ``K`` from the Jones polynomial of a generic projection."""
    return identify(project_to_diagram(K, rng=rng, direction=direction, eps=eps))
