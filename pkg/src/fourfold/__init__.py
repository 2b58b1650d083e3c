"""Exact invariants for the stable classification of closed 4-manifolds.

The package computes twisted group homology, second-homotopy extension
classes, torsion invariants of twisted quotients, and the lens-family
and record-comparison decision procedures, all over exact integer
arithmetic.  A compiled reduction kernel is used when available; set
FOURFOLD_PURE=1 to force the pure Python twin.
"""

from fourfold._kernels import BACKEND
from fourfold.intmat import (
    AbelianInvariants,
    IntMatrix,
    SmithForm,
    cokernel_invariants,
    homology_invariants,
    kernel_basis,
    smith_normal_form,
    solve_integer,
)
from fourfold.groupring import (
    GroupDescriptor,
    OrientationChar,
    RingElement,
    RingMatrix,
    char_from_signs,
    cyclic_group,
    laurent_extension,
    product_group,
    ring_generator,
    ring_one,
    trivial_char,
    trivial_group,
)
from fourfold.complexes import (
    LambdaComplex,
    cross_circle,
    homology_Lambda,
    homology_Zw,
    presentation_complex,
    tensor_complex,
    twisted_dual,
    validate,
)
from fourfold.homology import (
    bar_homology_oracle,
    group_homology,
    h4_of_pi_cross_Z,
    module_homology,
    periodic_resolution,
    resolution_for,
)
from fourfold.extensions import (
    EmFamily,
    ExtClass,
    FPModule,
    baer_sum,
    em_closed_form,
    em_torsion,
    ext1,
    ext_vanishing_check,
    pi2_extension,
    pi2_sequence_check,
    psi_chase,
    recover_m,
)
from fourfold.manifolds import (
    LensSpace,
    LinkingForm,
    cp2_complex,
    fundamental_class_invariant,
    lens_complex,
    lens_homotopy_equivalent,
    lens_times_circle,
    linking_form,
    linking_isometric,
    rp4_complex,
    s4_complex,
    torus4_complex,
)
from fourfold.classify import (
    ManifoldRecord,
    aspherical_equivalent,
    bordism_group,
    classify_aspherical,
    classify_lens_family,
    hopf_check,
    kreck_equivalent,
    lens_times_circle_record,
)
from fourfold.serialize import (
    emit_complex,
    emit_group_spec,
    parse_complex,
    parse_group_spec,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    "AbelianInvariants",
    "IntMatrix",
    "SmithForm",
    "cokernel_invariants",
    "homology_invariants",
    "kernel_basis",
    "smith_normal_form",
    "solve_integer",
    "GroupDescriptor",
    "OrientationChar",
    "RingElement",
    "RingMatrix",
    "char_from_signs",
    "cyclic_group",
    "laurent_extension",
    "product_group",
    "ring_generator",
    "ring_one",
    "trivial_char",
    "trivial_group",
    "LambdaComplex",
    "cross_circle",
    "homology_Lambda",
    "homology_Zw",
    "presentation_complex",
    "tensor_complex",
    "twisted_dual",
    "validate",
    "bar_homology_oracle",
    "group_homology",
    "h4_of_pi_cross_Z",
    "module_homology",
    "periodic_resolution",
    "resolution_for",
    "EmFamily",
    "ExtClass",
    "FPModule",
    "baer_sum",
    "em_closed_form",
    "em_torsion",
    "ext1",
    "ext_vanishing_check",
    "pi2_extension",
    "pi2_sequence_check",
    "psi_chase",
    "recover_m",
    "LensSpace",
    "LinkingForm",
    "cp2_complex",
    "fundamental_class_invariant",
    "lens_complex",
    "lens_homotopy_equivalent",
    "lens_times_circle",
    "linking_form",
    "linking_isometric",
    "rp4_complex",
    "s4_complex",
    "torus4_complex",
    "ManifoldRecord",
    "aspherical_equivalent",
    "bordism_group",
    "classify_aspherical",
    "classify_lens_family",
    "hopf_check",
    "kreck_equivalent",
    "lens_times_circle_record",
    "emit_complex",
    "emit_group_spec",
    "parse_complex",
    "parse_group_spec",
]
