"""H^1 of a cyclic group on a torus, and the set of local types.

The torsion of T(k) is modeled additively: a torsion point is a vector in
(Q/Z)^r in simple-coroot coordinates.  This captures all of the cohomology
because T(k) splits as its torsion subgroup plus a uniquely divisible
group, and uniquely divisible modules are cohomologically trivial for a
finite group; for cyclic Gamma, Tate periodicity then identifies H^1 with
ker(norm)/image(augmentation ideal) on the torsion.  Over a residue field
of characteristic p only the prime-to-p torsion exists; since the cover is
tame (p does not divide e) every class has a representative of denominator
dividing e, so the p-part never enters and the exclusion is enforced by a
validity check rather than by filtering.

For Gamma cyclic of order e acting through a finite-order lattice
automorphism A, the cohomology is

    H^1 = ker(N_A on (Q/Z)^r) / image(A - 1),      N_A = 1 + A + ... + A^(e-1),

computed in two independent ways: as the finite lattice quotient
``ker(A - 1) / N_A Z^r`` (structural), and by enumerating torsion vectors
and sorting them into classes (element model).  The two must agree; a
mismatch is a hard error.

Local types are the orbits of the classes under the fixed Weyl subgroup
acting by twisted conjugation t -> w^-1(t) + t_w.  In the untwisted
(trivial-action) mode the twist t_w is zero for the standard base point; a
nonzero hyperspecial base point b contributes t_w = (w^-1 - 1)(b), i.e. the
plain W-action conjugated by the translation with offset b.  This is what
reconciles the alcove-side orbit counts with the cohomology side for every
base point on the (1/e)-grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exactalg import (
    FiniteAbelianGroup,
    ImageMembership,
    IntMatrix,
    QZVector,
    identity_matrix,
    kernel_basis,
    mat_add,
    mat_mul,
    mat_sub,
    mat_vec,
    mat_vec_qz,
    qz_add,
    qz_sub,
    qz_vector,
    qz_zero,
    quotient_structure,
    smith_normal_form,
)
from .rootdata import (
    DEFAULT_WEYL_CAP,
    EnumerationCapError,
    LatticeAutomorphism,
    RootDatum,
    WeylElement,
    fixed_weyl_subgroup,
    identity_automorphism,
    orbit_partition,
    weyl_elements,
    weyl_generators,
)

MODE_TRIVIAL = "trivial"
MODE_LATTICE = "lattice-only"
MODE_SL = "sl-matrix-model"


@dataclass(frozen=True)
class GammaAction:
    """Cyclic group of order e acting through a lattice automorphism.

    ``char_exclusion`` is the residue characteristic p (0 for none): the
    torsion model only carries prime-to-p torsion, so tameness demands
    gcd(e, p) = 1 and every representative automatically has prime-to-p
    denominator.
    """

    e: int
    automorphism: LatticeAutomorphism
    mode: str = MODE_LATTICE
    char_exclusion: int = 0

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("the order of Gamma must be positive")
        if self.mode not in (MODE_TRIVIAL, MODE_LATTICE, MODE_SL):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.e % self.automorphism.order != 0:
            raise ValueError("automorphism order must divide the order of Gamma")
        if self.char_exclusion < 0:
            raise ValueError("char_exclusion must be 0 or a positive prime")
        if self.char_exclusion > 0 and self.e % self.char_exclusion == 0:
            raise ValueError(
                f"tameness requires the order {self.e} to be prime to the "
                f"excluded characteristic {self.char_exclusion}"
            )
        n = len(self.automorphism.matrix)
        if self.mode == MODE_TRIVIAL and self.automorphism.matrix != identity_matrix(n):
            raise ValueError("trivial mode requires the identity automorphism")

    @property
    def rank(self) -> int:
        return len(self.automorphism.matrix)

    @property
    def matrix(self) -> IntMatrix:
        return self.automorphism.matrix

    def norm_matrix(self) -> IntMatrix:
        n = self.rank
        acc = identity_matrix(n)
        power = identity_matrix(n)
        for _ in range(self.e - 1):
            power = mat_mul(power, self.matrix)
            acc = mat_add(acc, power)
        return acc

    def coboundary_matrix(self) -> IntMatrix:
        return mat_sub(self.matrix, identity_matrix(self.rank))

    def gamma0_record(self) -> str:
        return (
            f"gamma_0 = the generator matching the fixed primitive root of unity "
            f"zeta_{self.e}; lattice action of order {self.automorphism.order}"
        )


def trivial_action(rank: int, e: int) -> GammaAction:
    return GammaAction(e=e, automorphism=identity_automorphism(rank), mode=MODE_TRIVIAL)


@dataclass(frozen=True)
class H1Classes:
    structure: FiniteAbelianGroup
    representatives: Tuple[QZVector, ...]
    gamma0_choice: str


@dataclass(frozen=True)
class LocalType:
    orbit_representative: QZVector
    orbit_size: int
    index: int


# ---------------------------------------------------------------------------
# the two H^1 computations
# ---------------------------------------------------------------------------

def h1_structural(datum: RootDatum, action: GammaAction) -> FiniteAbelianGroup:
    """Invariant factors of ker(A - 1) / N_A Z^r (isomorphic to H^1)."""
    if datum.rank != action.rank:
        raise ValueError("rank mismatch between datum and action")
    r = action.rank
    fixed = kernel_basis(action.coboundary_matrix())
    k = len(fixed)
    if k == 0:
        return FiniteAbelianGroup(())
    # express the norm images of the standard basis in the fixed basis
    K = tuple(tuple(fixed[j][i] for j in range(k)) for i in range(r))  # r x k
    U, D, _V = smith_normal_form(K)
    V = _V
    norm = action.norm_matrix()
    cols = []
    for j in range(r):
        b = tuple(norm[i][j] for i in range(r))
        w = mat_vec(U, b)
        y = [Fraction(0)] * k
        for i in range(r):
            d = D[i][i] if i < k else 0
            if d != 0:
                y[i] = Fraction(w[i], d)
            elif w[i] != 0:
                raise AssertionError("norm image must lie in the fixed sublattice")
        coords = mat_vec(V, tuple(y))
        if any(x.denominator != 1 for x in coords):
            raise AssertionError("norm image has non-integral fixed coordinates")
        cols.append(tuple(int(x) for x in coords))
    group = quotient_structure(k, cols)
    if group.free_rank != 0:
        raise AssertionError("H^1 of a finite cyclic group on a torus is finite")
    return group


def _torsion_grid(rank: int, e: int, cap: int) -> List[QZVector]:
    if e ** rank > cap:
        raise EnumerationCapError(f"torsion grid of size {e}^{rank} exceeds cap {cap}")
    return [
        tuple(Fraction(a, e) for a in combo)
        for combo in itertools.product(range(e), repeat=rank)
    ]


def h1_elements(datum: RootDatum, action: GammaAction, cap: int = 10 ** 6) -> H1Classes:
    """Element-model H^1: enumerate norm-killed grid vectors and sort them
    into classes modulo the image of (A - 1) on the full torsion group.

    Every class contains a representative with denominator dividing e, so the
    (1/e)-grid suffices; the class count is checked against the structural
    computation and a mismatch is a hard error.

    When A is the identity the generic pass provably returns the whole
    sorted grid (the norm kills every e-torsion vector and the coboundary
    image vanishes), so that case skips straight to the grid.
    """
    structure = h1_structural(datum, action)
    if action.matrix == identity_matrix(action.rank):
        reps = tuple(sorted(_torsion_grid(action.rank, action.e, cap)))
    else:
        norm = action.norm_matrix()
        member = ImageMembership(action.coboundary_matrix())
        classes: Dict[QZVector, QZVector] = {}
        for t in _torsion_grid(action.rank, action.e, cap):
            if not all(x == 0 for x in mat_vec_qz(norm, t)):
                continue
            key = member.invariant(t)
            best = classes.get(key)
            if best is None or t < best:
                classes[key] = t
        reps = tuple(sorted(classes.values()))
    if len(reps) != structure.order:
        raise AssertionError(
            f"element model found {len(reps)} classes but the lattice quotient "
            f"has order {structure.order}"
        )
    return H1Classes(structure=structure, representatives=reps,
                     gamma0_choice=action.gamma0_record())


def _require_norm_killed(t: QZVector, action: GammaAction) -> None:
    if not all(x == 0 for x in mat_vec_qz(action.norm_matrix(), t)):
        raise ValueError(f"vector {t} is not killed by the norm")


def classes_equal(t1: QZVector, t2: QZVector, action: GammaAction) -> bool:
    """Whether t1 and t2 give the same class, i.e. t1 - t2 is a coboundary."""
    _require_norm_killed(t1, action)
    _require_norm_killed(t2, action)
    member = ImageMembership(action.coboundary_matrix())
    return member.contains(qz_sub(t1, t2))


def cocycle_of(rep: QZVector, action: GammaAction) -> Dict[int, QZVector]:
    """The cocycle gamma_0^i -> sum_{j<i} A^j rep attached to a class rep."""
    _require_norm_killed(rep, action)
    table: Dict[int, QZVector] = {}
    acc = qz_zero(action.rank)
    power = rep
    for i in range(action.e):
        table[i] = acc
        acc = qz_add(acc, power)
        power = mat_vec_qz(action.matrix, power)
    return table


# ---------------------------------------------------------------------------
# local types: orbits under the twisted Weyl action
# ---------------------------------------------------------------------------

def _validate_grid_point(datum: RootDatum, base: Sequence[Fraction], e: int) -> None:
    for root in datum.positive_roots:
        value = datum.pairing(root, base)
        if (value * e).denominator != 1:
            name = "+".join(
                f"{c}a{i + 1}" if c != 1 else f"a{i + 1}"
                for i, c in enumerate(root) if c
            )
            raise ValueError(
                f"base point must lie on the (1/{e})-grid: the value {value} "
                f"of the root {name} is not in (1/{e})Z"
            )


def twisted_generator_maps(
    datum: RootDatum,
    action: GammaAction,
    lift_provider: Optional[Callable[[WeylElement], QZVector]] = None,
    base: Optional[Sequence[Fraction]] = None,
    weyl_cap: int = DEFAULT_WEYL_CAP,
) -> List[Callable[[QZVector], QZVector]]:
    """Generator maps t -> w^-1(t) + t_w of the twisted Weyl action on classes."""
    if action.mode == MODE_SL:
        raise ValueError("sl-matrix-model lifts live in slmodel.sl_local_types")
    if action.mode == MODE_TRIVIAL:
        gens = weyl_generators(datum)
        base_vec = tuple(Fraction(x) for x in base) if base is not None else None
        if base_vec is not None:
            _validate_grid_point(datum, base_vec, action.e)
        maps = []
        for g in gens:
            # simple reflections are involutions, so g is its own inverse
            M = g.matrix
            if base_vec is None:
                maps.append(lambda t, M=M: mat_vec_qz(M, t))
            else:
                t_w = qz_sub(qz_vector(mat_vec(M, base_vec)), qz_vector(base_vec))
                maps.append(lambda t, M=M, t_w=t_w: qz_add(mat_vec_qz(M, t), t_w))
        return maps
    # lattice-only mode: a nontrivial pinned action needs externally supplied
    # lifts; there is no general recipe for t_w
    if lift_provider is None:
        raise ValueError("lift_provider is required for a nontrivial action mode")
    if base is not None:
        raise ValueError("base twists are only defined in trivial mode")
    gens = fixed_weyl_subgroup(datum, action.automorphism, cap=weyl_cap)
    maps = []
    for w in gens:
        w_inv = _integer_inverse(w.matrix)
        t_w = qz_vector(lift_provider(w))
        maps.append(lambda t, M=w_inv, t_w=t_w: qz_add(mat_vec_qz(M, t), t_w))
    return maps


def _integer_inverse(M: IntMatrix) -> IntMatrix:
    U, D, V = smith_normal_form(M)
    n = len(M)
    if any(abs(D[i][i]) != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    scale = tuple(tuple(V[i][j] * D[j][j] for j in range(n)) for i in range(n))
    return mat_mul(scale, U)


def _trivial_orbit_partition(
    datum: RootDatum,
    e: int,
    base: Optional[Sequence[Fraction]],
) -> List[Tuple[QZVector, int]]:
    """Orbits of T[e] under t -> s_i(t + b) - b, on integer numerators mod e.

    A simple reflection changes only one coordinate, so each generator is an
    O(rank) update: tau_i -> tau_i - sum_j c_ij tau_j - e <alpha_i, b>.
    """
    r = datum.rank
    base_vec = tuple(Fraction(x) for x in base) if base is not None else qz_zero(r)
    _validate_grid_point(datum, base_vec, e)
    shifts = []
    for i in range(r):
        root = tuple(1 if k == i else 0 for k in range(r))
        value = datum.pairing(root, base_vec) * e
        shifts.append(int(value))
    cartan = datum.cartan

    def reflect(i: int, tau: Tuple[int, ...]) -> Tuple[int, ...]:
        new_i = (tau[i] - sum(cartan[i][j] * tau[j] for j in range(r))
                 - shifts[i]) % e
        return tau[:i] + (new_i,) + tau[i + 1:]

    maps = [(lambda tau, i=i: reflect(i, tau)) for i in range(r)]
    points = [tuple(c) for c in itertools.product(range(e), repeat=r)]
    orbits = orbit_partition(points, maps)
    out = []
    for orbit in orbits:
        rep = tuple(Fraction(c, e) for c in orbit[0])
        out.append((rep, len(orbit)))
    out.sort()
    return out


def local_types(
    datum: RootDatum,
    action: GammaAction,
    lift_provider: Optional[Callable[[WeylElement], QZVector]] = None,
    base: Optional[Sequence[Fraction]] = None,
    cap: int = 10 ** 6,
    weyl_cap: int = DEFAULT_WEYL_CAP,
) -> List[LocalType]:
    """Orbits of H^1 classes under the twisted Weyl action, neutral type first."""
    classes = h1_elements(datum, action, cap=cap)
    reps = classes.representatives
    if action.mode == MODE_TRIVIAL:
        keyed = _trivial_orbit_partition(datum, action.e, base)
        if sum(size for _, size in keyed) != len(reps):
            raise AssertionError("orbit sizes must add up to the class count")
    else:
        member = ImageMembership(action.coboundary_matrix())
        index_of = {member.invariant(t): i for i, t in enumerate(reps)}
        maps = twisted_generator_maps(
            datum, action, lift_provider=lift_provider, base=base,
            weyl_cap=weyl_cap
        )
        norm = action.norm_matrix()

        def class_index(t: QZVector) -> int:
            if not all(x == 0 for x in mat_vec_qz(norm, t)):
                raise AssertionError("twisted action left the norm kernel")
            i = index_of.get(member.invariant(t))
            if i is None:
                raise AssertionError("twisted action image matches no class")
            return i

        index_maps = [
            (lambda i, m=m: class_index(m(reps[i]))) for m in maps
        ]
        orbits = orbit_partition([(i,) for i in range(len(reps))],
                                 [lambda p, f=f: (f(p[0]),) for f in index_maps])
        keyed = []
        for orbit in orbits:
            members = sorted(reps[i[0]] for i in orbit)
            keyed.append((members[0], len(orbit)))
        keyed.sort()
    return [
        LocalType(orbit_representative=rep, orbit_size=size, index=i)
        for i, (rep, size) in enumerate(keyed)
    ]


def burnside_type_count(
    datum: RootDatum,
    e: int,
    base: Optional[Sequence[Fraction]] = None,
    weyl_cap: int = 10 ** 4,
) -> int:
    """Independent orbit count over W on the e-torsion by Burnside's lemma.

    Fixed points of t -> w(t + b) - b on T[e] are counted through the Smith
    form of (w - 1): each congruence d_i y_i = c_i (mod e) contributes
    gcd(d_i, e) solutions when solvable and zero otherwise.
    """
    r = datum.rank
    base_vec = tuple(Fraction(x) for x in base) if base is not None else qz_zero(r)
    _validate_grid_point(datum, base_vec, e)
    elements = weyl_elements(datum, cap=weyl_cap)
    total = 0
    from math import gcd

    for w in elements:
        M = mat_sub(w.matrix, identity_matrix(r))
        shift = tuple(
            (Fraction(x) - y) * e for x, y in zip(base_vec, mat_vec(w.matrix, base_vec))
        )
        if any(s.denominator != 1 for s in shift):
            raise AssertionError("grid base point must give an integral twist")
        U, D, _ = smith_normal_form(M)
        rhs = mat_vec(U, tuple(int(s) for s in shift))
        count = 1
        for i in range(r):
            d = abs(D[i][i])
            g = gcd(d, e)
            if rhs[i] % g == 0:
                count *= g
            else:
                count = 0
                break
        total += count
    if total % len(elements) != 0:
        raise AssertionError("Burnside sum is not divisible by |W|")
    return total // len(elements)
