"""Root data, Weyl groups and diagram automorphisms for the simple types.

Conventions (Bourbaki numbering throughout):

* the cocharacter lattice is expressed in the basis of simple coroots
  (simply-connected normalization), so a coweight is an integer or rational
  coordinate vector of length ``rank``;
* roots are stored by their coefficients on the simple roots;
* ``cartan[i][j] = <alpha_i, alpha_j_coroot>``.

Weyl elements are integer matrices acting on the coroot lattice; the group
is only ever materialized by breadth-first closure of the generators, with
a configurable cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .exactalg import (
    IntMatrix,
    IntVector,
    identity_matrix,
    mat_mul,
    mat_pow,
    mat_vec,
    matrix,
)

LABELS = ("A", "B", "C", "D", "E", "F", "G")

DEFAULT_WEYL_CAP = 10 ** 6


class EnumerationCapError(RuntimeError):
    """An enumeration would exceed the configured cap."""


def _cartan_matrix(label: str, rank: int) -> IntMatrix:
    n = rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, a=-1, b=-1):  # c[i][j] = a, c[j][i] = b
        c[i][j] = a
        c[j][i] = b

    if label == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        for i in range(n - 1):
            bond(i, i + 1)
    elif label == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -2, -1)  # alpha_n short
    elif label == "C":
        if n < 2:
            raise ValueError("C_n needs n >= 2")
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -1, -2)  # alpha_n long
    elif label == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif label == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in {6, 7, 8}")
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    elif label == "F":
        if n != 4:
            raise ValueError("F_n needs n = 4")
        bond(0, 1)
        bond(1, 2, -2, -1)
        bond(2, 3)
    elif label == "G":
        if n != 2:
            raise ValueError("G_n needs n = 2")
        bond(0, 1, -1, -3)  # alpha_1 short
    else:
        raise ValueError(f"unknown label {label!r}")
    return matrix(c)


def _positive_roots(cartan: IntMatrix) -> Tuple[IntVector, ...]:
    """Close the simple roots under simple reflections, keeping positives."""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(beta[j] * cartan[j][i] for j in range(n))
                image = tuple(
                    beta[j] - (pairing if j == i else 0) for j in range(n)
                )
                if all(x >= 0 for x in image) and image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return tuple(sorted(seen, key=lambda r: (sum(r), r)))


def _symmetrizers(cartan: IntMatrix) -> Tuple[Fraction, ...]:
    """Rational d_i proportional to half the squared root lengths, so that
    (alpha_i, alpha_j) = c_ij d_j is symmetric."""
    n = len(cartan)
    d: List[Optional[Fraction]] = [None] * n
    d[0] = Fraction(1)
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(n):
            if i != j and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * Fraction(cartan[j][i], cartan[i][j])
                frontier.append(j)
    if any(x is None for x in d):
        raise ValueError("Dynkin diagram is not connected")
    return tuple(d)  # type: ignore[arg-type]


@dataclass(frozen=True)
class RootDatum:
    """Simply-connected root datum of one simple type."""

    label: str
    rank: int
    cartan: IntMatrix
    positive_roots: Tuple[IntVector, ...]
    highest_root: IntVector
    marks: IntVector
    symmetrizers: Tuple[Fraction, ...]

    @property
    def name(self) -> str:
        return f"{self.label}{self.rank}"

    def pairing(self, root: Sequence[int], coweight: Sequence[Fraction]) -> Fraction:
        """<beta, x> for a root beta (simple-root coefficients) and coweight x."""
        n = self.rank
        return sum(
            Fraction(root[i]) * self.cartan[i][j] * Fraction(coweight[j])
            for i in range(n)
            for j in range(n)
        )

    def coroot(self, root: Sequence[int]) -> IntVector:
        """Coroot of a root, in simple-coroot coordinates."""
        d = self.symmetrizers
        half_norm = sum(
            Fraction(root[i] * root[j]) * self.cartan[i][j] * d[j]
            for i in range(self.rank)
            for j in range(self.rank)
        ) / 2
        out = []
        for j in range(self.rank):
            x = Fraction(root[j]) * d[j] / half_norm
            if x.denominator != 1:
                raise AssertionError("coroot coordinates must be integral")
            out.append(int(x))
        return tuple(out)

    def all_coroots(self) -> Tuple[IntVector, ...]:
        plus = [self.coroot(r) for r in self.positive_roots]
        return tuple(plus) + tuple(tuple(-x for x in v) for v in plus)


def build_root_datum(label: str, rank: int) -> RootDatum:
    label = label.upper()
    cartan = _cartan_matrix(label, rank)
    positives = _positive_roots(cartan)
    highest = max(positives, key=lambda r: (sum(r), r))
    datum = RootDatum(
        label=label,
        rank=rank,
        cartan=cartan,
        positive_roots=positives,
        highest_root=highest,
        marks=highest,
        symmetrizers=_symmetrizers(cartan),
    )
    return datum


# ---------------------------------------------------------------------------
# Weyl elements and lattice automorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    """An element of W as an integer matrix on the coroot lattice."""

    matrix: IntMatrix
    word: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(mat_mul(self.matrix, other.matrix), word)

    def __hash__(self) -> int:
        return hash(self.matrix)

    def apply(self, coweight: Sequence[Fraction]) -> tuple:
        return mat_vec(self.matrix, coweight)


def identity_weyl(rank: int) -> WeylElement:
    return WeylElement(identity_matrix(rank), ())


def simple_reflection(datum: RootDatum, i: int) -> WeylElement:
    """s_i on the coroot lattice: v -> v - <alpha_i, v> alpha_i_coroot."""
    if not 1 <= i <= datum.rank:
        raise ValueError(f"reflection index {i} out of range")
    k = i - 1
    rows = []
    for a in range(datum.rank):
        if a != k:
            rows.append(tuple(1 if b == a else 0 for b in range(datum.rank)))
        else:
            rows.append(
                tuple((1 if b == k else 0) - datum.cartan[k][b] for b in range(datum.rank))
            )
    return WeylElement(tuple(rows), (i,))


def weyl_generators(datum: RootDatum) -> Tuple[WeylElement, ...]:
    return tuple(simple_reflection(datum, i) for i in range(1, datum.rank + 1))


def weyl_elements(datum: RootDatum, cap: int = DEFAULT_WEYL_CAP) -> List[WeylElement]:
    """The whole Weyl group by breadth-first closure, in a deterministic order."""
    gens = weyl_generators(datum)
    ident = identity_weyl(datum.rank)
    seen: Dict[IntMatrix, WeylElement] = {ident.matrix: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                wg = w * g
                if wg.matrix not in seen:
                    if len(seen) >= cap:
                        raise EnumerationCapError(
                            f"Weyl closure for {datum.name} exceeds cap {cap}"
                        )
                    seen[wg.matrix] = wg
                    nxt.append(wg)
        frontier = nxt
    return sorted(seen.values(), key=lambda w: w.matrix)


def weyl_order(datum: RootDatum, cap: int = DEFAULT_WEYL_CAP) -> int:
    return len(weyl_elements(datum, cap=cap))


@dataclass(frozen=True)
class LatticeAutomorphism:
    """Finite-order automorphism of the coroot lattice."""

    matrix: IntMatrix
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if mat_pow(self.matrix, self.order) != identity_matrix(len(self.matrix)):
            raise ValueError("matrix does not have the declared order")

    def apply(self, coweight: Sequence[Fraction]) -> tuple:
        return mat_vec(self.matrix, coweight)


def matrix_order(M: IntMatrix, cap: int = 1000) -> int:
    n = len(M)
    P = M
    for k in range(1, cap + 1):
        if P == identity_matrix(n):
            return k
        P = mat_mul(P, M)
    raise EnumerationCapError(f"matrix order exceeds {cap}")


def identity_automorphism(rank: int) -> LatticeAutomorphism:
    return LatticeAutomorphism(identity_matrix(rank), 1)


def diagram_automorphism(datum: RootDatum, node_permutation: Sequence[int]) -> LatticeAutomorphism:
    """Automorphism induced by a Dynkin-diagram symmetry.

    ``node_permutation`` maps node i to node_permutation[i], 0-indexed.
    """
    n = datum.rank
    perm = tuple(node_permutation)
    if sorted(perm) != list(range(n)):
        raise ValueError("node_permutation is not a permutation of the nodes")
    for i in range(n):
        for j in range(n):
            if datum.cartan[perm[i]][perm[j]] != datum.cartan[i][j]:
                raise ValueError("permutation is not a Dynkin-diagram symmetry")
    M = tuple(
        tuple(1 if perm[j] == i else 0 for j in range(n)) for i in range(n)
    )
    return LatticeAutomorphism(M, matrix_order(M))


def weyl_element_automorphism(w: WeylElement, cap: int = 1000) -> LatticeAutomorphism:
    return LatticeAutomorphism(w.matrix, matrix_order(w.matrix, cap=cap))


def fixed_weyl_subgroup(
    datum: RootDatum,
    aut: LatticeAutomorphism,
    cap: int = DEFAULT_WEYL_CAP,
) -> List[WeylElement]:
    """All w in W commuting with the automorphism (i.e. A w A^-1 = w)."""
    A = aut.matrix
    return [
        w
        for w in weyl_elements(datum, cap=cap)
        if mat_mul(A, w.matrix) == mat_mul(w.matrix, A)
    ]


# ---------------------------------------------------------------------------
# orbit partition by breadth-first closure
# ---------------------------------------------------------------------------

def _as_action(gen) -> Callable[[tuple], tuple]:
    """Normalize a generator: a callable, a WeylElement (acting mod 1), or a
    (WeylElement, translation) pair for a twisted action."""
    if callable(gen):
        return gen
    if isinstance(gen, WeylElement):
        return lambda p, w=gen: tuple(x % 1 for x in w.apply(p))
    if isinstance(gen, tuple) and len(gen) == 2 and isinstance(gen[0], WeylElement):
        w, shift = gen
        return lambda p, w=w, s=tuple(shift): tuple(
            (x + dx) % 1 for x, dx in zip(w.apply(p), s)
        )
    raise TypeError(f"cannot interpret {gen!r} as a group action")


def orbit_partition(
    points: Iterable[tuple],
    actions: Sequence,
) -> List[Tuple[tuple, ...]]:
    """Partition a finite point set under the group generated by the actions.

    Generators may be callables, WeylElements (acting on torsion vectors
    modulo 1), or (WeylElement, twist) pairs.  Each action must map the set
    into itself (each generator of a finite group of bijections suffices;
    inverses are reached by iteration).  Orbits are returned sorted, each
    orbit listed with its lexicographically least point first.
    """
    actions = [_as_action(g) for g in actions]
    todo = sorted(set(points))
    point_set = set(todo)
    orbits: List[Tuple[tuple, ...]] = []
    assigned = set()
    for p in todo:
        if p in assigned:
            continue
        orbit = {p}
        frontier = [p]
        while frontier:
            nxt = []
            for q in frontier:
                for act in actions:
                    img = act(q)
                    if img not in point_set:
                        raise ValueError(
                            f"action does not preserve the point set: {q} -> {img}"
                        )
                    if img not in orbit:
                        orbit.add(img)
                        nxt.append(img)
            frontier = nxt
        assigned |= orbit
        orbits.append(tuple(sorted(orbit)))
    orbits.sort(key=lambda o: o[0])
    return orbits


def rank_range(max_rank: int) -> List[Tuple[str, int]]:
    """All valid (label, rank) pairs with rank at most ``max_rank``."""
    out: List[Tuple[str, int]] = []
    for r in range(1, max_rank + 1):
        out.append(("A", r))
        if r >= 2:
            out.append(("B", r))
            out.append(("C", r))
        if r >= 4:
            out.append(("D", r))
        if r in (6, 7, 8):
            out.append(("E", r))
        if r == 4:
            out.append(("F", r))
        if r == 2:
            out.append(("G", r))
    return out
