"""Nonlocal-perimeter functionals, Bessel kernels and surface quadrature.

Thin wrapper over the compiled core; see the package README for the
mathematical background and the `verify` command line tool.
"""

from ._core import (  # noqa: F401
    AccuracyError,
    ConfigError,
    FunctionalValue,
    InequalityReport,
    IoError,
    KernelContext,
    KernelValue,
    QuadratureSurface,
    VolumeSampler,
    __version__,
    a_max_for,
    abs_seminorm,
    auto_trunc_radius,
    bessel_k,
    bessel_k_prime,
    check_conjecture_5,
    check_identity_18,
    check_inequality_2,
    check_theorem_1_1,
    check_theorem_2_3,
    frac_fundamental_form_sq,
    gagliardo_seminorm_sq,
    green_g,
    green_h,
    kappa,
    kappa_tilde,
    kernel_f,
    make_ellipsoid,
    make_perturbed_sphere,
    make_sphere,
    nonlocal_perimeter_boundary,
    nonlocal_perimeter_mc,
    phi,
    phi_boundary_term,
    phi_derivative,
    run_sweep,
    sample_volume,
    solid_f_term,
    surface_from_json,
    surface_to_json,
    weight_w,
)
