"""Grayscale image restoration with an overlapping-group-sparse TV prior.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its public surface.
"""

from ._core import (
    ConvergenceLog,
    Kernel,
    LogRecord,
    apply_psf,
    average_kernel,
    bsnr,
    degrade,
    gaussian_kernel,
    grad_x,
    grad_x_adjoint,
    grad_y,
    grad_y_adjoint,
    identity_kernel,
    load_kernel,
    load_pgm,
    noise_std_for_bsnr,
    ogs_prox,
    ogs_value,
    project_box,
    psnr,
    rel_err,
    restore,
    save_kernel,
    save_pgm,
)

__all__ = [
    "ConvergenceLog",
    "Kernel",
    "LogRecord",
    "apply_psf",
    "average_kernel",
    "bsnr",
    "degrade",
    "gaussian_kernel",
    "grad_x",
    "grad_x_adjoint",
    "grad_y",
    "grad_y_adjoint",
    "identity_kernel",
    "load_kernel",
    "load_pgm",
    "noise_std_for_bsnr",
    "ogs_prox",
    "ogs_value",
    "project_box",
    "psnr",
    "rel_err",
    "restore",
    "save_kernel",
    "save_pgm",
]
