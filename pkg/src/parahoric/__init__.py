"""Exact-arithmetic local types of equivariant torsors on tame covers.

The package classifies the local types of Gamma-equivariant torsors under
reductive models over a tamely ramified cover, realizes each type as a
point of the fundamental alcove (the combinatorial shadow of its twisted
parahoric group scheme), and verifies the counting identities between the
cohomological and the building-theoretic descriptions.

Layers:

* :mod:`parahoric.exactalg` - integer/rational-mod-Z linear algebra (Smith
  normal form, lattice quotients, solvability mod Z);
* :mod:`parahoric.rootdata` - root data, Weyl groups, diagram
  automorphisms, orbit closure;
* :mod:`parahoric.cohomology` - H^1 of a cyclic group on the torus in two
  independent models, twisted Weyl orbits, Burnside oracle;
* :mod:`parahoric.slmodel` - exact monomial-matrix calculus for the SL_n
  and SU_n worked examples;
* :mod:`parahoric.alcove` - alcove reduction, facets, splitting degrees,
  apartment orbits;
* :mod:`parahoric.cli` - the `parahoric` command-line tool.
"""

from .exactalg import (
    FiniteAbelianGroup,
    kernel_basis,
    qz,
    qz_vector,
    quotient_structure,
    smith_normal_form,
    solve_mod_z,
)
from .rootdata import (
    LatticeAutomorphism,
    RootDatum,
    WeylElement,
    build_root_datum,
    diagram_automorphism,
    fixed_weyl_subgroup,
    orbit_partition,
    simple_reflection,
    weyl_order,
)
from .cohomology import (
    GammaAction,
    H1Classes,
    LocalType,
    burnside_type_count,
    classes_equal,
    cocycle_of,
    h1_elements,
    h1_structural,
    local_types,
    trivial_action,
)
from .slmodel import (
    InvolutionSpec,
    MonomialMatrix,
    involution_apply,
    mm_diag,
    mm_identity,
    mm_inv,
    mm_mul,
    mm_transpose,
    sl_local_types,
    sl_torus_h1,
    standard_involution,
    su_special_vertex_types,
    t_w,
    variant_involution,
)
from .alcove import (
    FacetDescriptor,
    apartment_orbit_types,
    facet_of,
    min_split_degree,
    point_from_root_values,
    reduce_to_alcove,
    simple_root_values,
    type_to_alcove,
    vertex_prime_data,
)

__version__ = "0.1.0"
