"""Executable adjunctions between finitely generated classes of finite algebras.

The layers, bottom up: terms, finite algebras, class batteries (relative
consequence, free and presented algebras), matrix powers, solution
subalgebras, contextual translations and adjoints.
"""
from .adjoint import (
    apply_left_adjoint, apply_right_adjoint, apply_right_adjoint_hom, finiteness_report,
    right_adjoint_spec, verify_homset_bijection, verify_sigma_iso,
)
from .classes import (
    ClassBattery, Presentation, cgK, entails, free_algebra, parse_presentation, present, presented,
)
from .finalg import (
    Congruence, FiniteAlgebra, Homomorphism, enumerate_homs, evaluate, find_isomorphism,
    is_isomorphic, kernel, product, quotient, satisfies_quasi_equation, subalgebra_generated,
)
from .matpow import (
    MatrixLanguage, MatrixOp, full_language, matrix_power, matrix_power_hom, pointwise_language,
    sigma_check, sigma_construction,
)
from .terms import (
    App, Equation, QuasiEquation, Signature, Var, parse_equation, parse_term, print_term,
    substitute, variables_of,
)
from .thetasub import ThetaSpec, is_compatible, theta_sub, theta_sub_hom
from .xlate import (
    ContextualTranslation, Deduction, Translation, check_condition1, check_condition2,
    check_nontrivial, derive_translation, lift_equations, lift_term,
)

__version__ = "0.1.0"
