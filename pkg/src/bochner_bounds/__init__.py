"""Numerical certification of reverse triangle inequalities for vector-valued integrals."""

from .bounds import BoundReport, certify, coefficient, equality_holds, karamata_vs_cone
from .gridfn import (
    DEFAULT_RULE,
    GridFunction,
    Interval,
    QuadratureRule,
    evaluate,
    evaluate_many,
    gridfunction_from_dict,
    gridfunction_to_dict,
    integrate_norm,
    integrate_vector,
    refine_until,
    sample,
)
from .hilbert import (
    GramViolation,
    OrthonormalFamily,
    bessel_defect,
    check_orthonormal,
    inner,
    norm,
    span_projection,
)
from .hypotheses import (
    Cone,
    ConditionReport,
    Disk,
    Hypothesis,
    Karamata,
    KCond,
    MBounds,
    Orthonormal,
    OrthoDisk,
    OrthoMBounds,
    UnitVector,
    check,
    disk_feasible,
    disk_to_k,
    estimate_K,
    estimate_unit_vector,
    hypothesis_from_dict,
    hypothesis_to_dict,
    mM_to_k,
    mforms_agree,
)
from .witness import (
    FamilySpec,
    TightnessStats,
    WitnessSpec,
    gen_cone,
    gen_disk,
    generate,
    make_witness,
    perturb_scan,
    tightness,
)

__version__ = "0.1.0"
