"""Exact products on equivariant K-theory of inertia, and quantum double fusion.

Everything is computed in exact arithmetic over cyclotomic fields; there is
no floating point anywhere.  The two headline computations are the twisted
product on classes supported on the inertia of a linear quotient [V/G] and
the fusion ring of the quantum double of G, together with the machinery to
verify that the two rings agree when V = 0.
"""

from .cyclotomic import Cyclotomic, parse_value, zeta
from .errors import ContractViolation
from .groups import (
    FiniteGroup,
    Subgroup,
    ConjugacyData,
    PairOrbit,
    build_group,
    cyclic_group,
    dihedral_group,
    generated_subgroup,
    group_from_cayley_table,
    group_from_generators,
    pair_orbits,
    quaternion_group,
    symmetric_group,
)
from .characters import (
    CharacterTable,
    ClassFunction,
    adams,
    character_table,
    class_function,
    decompose,
    exterior_power,
    fixed_subspace_character,
    induce,
    inner_product,
    integer_decompose,
    is_honest,
    lambda_minus_one_dual,
    molien_check,
    regular_character,
    restrict_transport,
    trivial_character,
    zero_character,
)
from .inertia import (
    GlobalQuotient,
    GroupRep,
    InertiaClass,
    PairSector,
    Sector,
    excess_euler_class,
    pants_euler_class,
)
from .product import (
    ProductTable,
    RingReport,
    inertial_product,
    involution,
    product_table,
    relabel_to_canonical,
    ring_property_check,
    virtual_product,
)
from .drinfeld import (
    DoubleCharacter,
    DoubleSimple,
    commuting_pairs,
    double_character,
    double_dimension,
    double_simples,
    fusion_constants,
)

__version__ = "0.1.0"
