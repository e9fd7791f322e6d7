"""Affine Weyl geometry: alcove reduction, facets, splitting degrees and
apartment orbits.

Points live in the rational span of the coroot lattice, written in
simple-coroot coordinates.  The closed fundamental alcove is cut out by
``<alpha_i, x> >= 0`` for the simple roots and ``<theta, x> <= 1`` for the
highest root; wall 0 is the theta-wall.  Reduction folds a point into the
alcove by reflecting across violated walls, which terminates because each
step lowers the number of affine hyperplanes separating the point from the
alcove.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .exactalg import QZVector, lcm_many
from .rootdata import (
    DEFAULT_WEYL_CAP,
    EnumerationCapError,
    RootDatum,
    build_root_datum,
    weyl_elements,
)

AlcovePoint = Tuple[Fraction, ...]

MAX_REDUCTION_STEPS = 10 ** 6


def as_point(coords: Sequence) -> AlcovePoint:
    return tuple(Fraction(x) for x in coords)


def simple_root_values(datum: RootDatum, x: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    n = datum.rank
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return tuple(datum.pairing(s, x) for s in simple)


def point_from_root_values(datum: RootDatum, values: Sequence[Fraction]) -> AlcovePoint:
    """Invert <alpha_i, x> = values_i (the Cartan matrix is invertible)."""
    n = datum.rank
    a = [[Fraction(datum.cartan[i][j]) for j in range(n)] + [Fraction(values[i])]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] for i in range(n))


def reduce_to_alcove(
    datum: RootDatum, x: Sequence[Fraction]
) -> Tuple[AlcovePoint, Tuple[int, ...]]:
    """Fold x into the closed fundamental alcove; the word lists the walls
    (0 for the theta-wall, i for the i-th simple wall) in reflection order."""
    point = list(as_point(x))
    theta = datum.highest_root
    theta_coroot = datum.coroot(theta)
    word: List[int] = []
    for _ in range(MAX_REDUCTION_STEPS):
        moved = False
        for i in range(datum.rank):
            value = sum(
                Fraction(datum.cartan[i][j]) * point[j] for j in range(datum.rank)
            )
            if value < 0:
                point[i] -= value
                word.append(i + 1)
                moved = True
                break
        if moved:
            continue
        theta_value = datum.pairing(theta, point)
        if theta_value > 1:
            excess = theta_value - 1
            for j in range(datum.rank):
                point[j] -= excess * theta_coroot[j]
            word.append(0)
            continue
        return tuple(point), tuple(word)
    raise RuntimeError("alcove reduction did not terminate within the step cap")


@dataclass(frozen=True)
class FacetDescriptor:
    """The set of affine walls through a reduced point; node 0 is the
    theta-wall 1 - <theta, x> = 0."""

    vanishing_walls: FrozenSet[int]
    classification: str  # "vertex" | "Iwahori" | "intermediate"
    special: bool

    def describe(self) -> str:
        if self.classification == "Iwahori":
            text = "Iwahori"
        else:
            walls = "{" + ",".join(str(w) for w in sorted(self.vanishing_walls)) + "}"
            text = f"{self.classification} {walls}"
        if self.special:
            text += ", hyperspecial" if self.classification == "vertex" else ", special"
        return text


def facet_of(datum: RootDatum, x0: Sequence[Fraction]) -> FacetDescriptor:
    point = as_point(x0)
    values = simple_root_values(datum, point)
    theta_value = datum.pairing(datum.highest_root, point)
    if any(v < 0 for v in values) or theta_value > 1:
        raise ValueError("point is not reduced to the fundamental alcove")
    walls = {i + 1 for i, v in enumerate(values) if v == 0}
    if theta_value == 1:
        walls.add(0)
    if len(walls) == datum.rank:
        classification = "vertex"
    elif not walls:
        classification = "Iwahori"
    else:
        classification = "intermediate"
    special = all(
        datum.pairing(root, point).denominator == 1 for root in datum.positive_roots
    )
    return FacetDescriptor(frozenset(walls), classification, special)


def min_split_degree(
    datum: RootDatum, x: Sequence[Fraction], p_exclusion: int = 0
) -> Tuple[int, bool]:
    """Least e making x special once the hyperplane spacing is refined to 1/e,
    i.e. the lcm of the denominators of the root values; tameness records
    whether the excluded characteristic misses that degree."""
    point = as_point(x)
    degree = lcm_many(
        datum.pairing(root, point).denominator for root in datum.positive_roots
    )
    tame = True if p_exclusion <= 0 else (degree % p_exclusion != 0)
    return degree, tame


def type_to_alcove(
    datum: RootDatum,
    rep: QZVector,
    e: int,
    base: Sequence[Fraction],
    mode: str = "trivial",
) -> Tuple[AlcovePoint, FacetDescriptor]:
    """Alcove point and facet of the twisted stabilizer attached to a class.

    Only meaningful when the group action on the reductive quotient is the
    split untwisted one; the class representative acts as the translation
    by its coroot coordinates.
    """
    if mode != "trivial":
        raise ValueError("type_to_alcove needs the trivial (split) action mode")
    x = tuple(Fraction(b) + Fraction(t) for b, t in zip(base, rep))
    reduced, _ = reduce_to_alcove(datum, x)
    return reduced, facet_of(datum, reduced)


def apartment_orbit_types(
    datum: RootDatum,
    a: Sequence[Fraction],
    e: int,
    cap: int = DEFAULT_WEYL_CAP,
) -> List[AlcovePoint]:
    """Fundamental-alcove representatives of the W_aff-classes inside the
    orbit of a under the level-e affine group W x (1/e) Q_coroot.

    Enumerates w(a) + mu/e over the Weyl group and mu in {0..e-1}^r (coroot
    translations beyond that are already Weyl-affine), reduces each into the
    alcove and deduplicates.
    """
    elements = weyl_elements(datum, cap=cap)
    if len(elements) * e ** datum.rank > cap:
        raise EnumerationCapError(
            f"apartment orbit of size {len(elements)}*{e}^{datum.rank} exceeds cap {cap}"
        )
    point = as_point(a)
    seen = set()
    for w in elements:
        wa = w.apply(point)
        for mu in itertools.product(range(e), repeat=datum.rank):
            shifted = tuple(x + Fraction(m, e) for x, m in zip(wa, mu))
            reduced, _ = reduce_to_alcove(datum, shifted)
            seen.add(reduced)
    return sorted(seen)


# ---------------------------------------------------------------------------
# prime data of the vertices
# ---------------------------------------------------------------------------

def prime_divisors(n: int) -> FrozenSet[int]:
    out = set()
    n = abs(n)
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return frozenset(out)


@dataclass(frozen=True)
class VertexPrimeData:
    label: str
    rank: int
    mark_primes: FrozenSet[int]
    affine_aut_order: Optional[int]
    twisted_affine_aut_order: Optional[int]
    excluded_characteristics: FrozenSet[int]


def vertex_prime_data(label: str, rank: int) -> VertexPrimeData:
    """Primes of the marks, the quoted affine-diagram automorphism orders
    (untwisted A_n: 2(n+1); twisted: 2 for odd n, 1 for even n; absent for
    the other types), and the excluded characteristics."""
    datum = build_root_datum(label, rank)
    mark_primes = frozenset().union(*(prime_divisors(m) for m in datum.marks))
    label = datum.label
    if label == "A":
        affine_aut = 2 * (rank + 1)
        twisted_aut = 2 if rank % 2 == 1 else 1
        excluded = frozenset({2}) | prime_divisors(rank + 1)
    else:
        affine_aut = None
        twisted_aut = None
        if label in ("B", "C", "D"):
            excluded = frozenset({2})
        elif label == "E" and rank == 8:
            excluded = frozenset({2, 3, 5})
        else:  # E6, E7, F4, G2
            excluded = frozenset({2, 3})
    return VertexPrimeData(
        label=label,
        rank=rank,
        mark_primes=mark_primes,
        affine_aut_order=affine_aut,
        twisted_affine_aut_order=twisted_aut,
        excluded_characteristics=excluded,
    )
