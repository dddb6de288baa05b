"""Elasticity transmission eigenvalues of 2-D domains.

Real eigenvalues come from a secant iteration on ``gamma_i(tau) - tau`` over
Argyris-discretized pencils, complex ones from a mixed Lagrange
discretization, and disk references from a Bessel determinant.
"""
from .analytic_disk import DiskProblem, Z0, bessel_j01, find_roots, radial_eigenfunction
from .argyris import (PAPER_PARAMS, PAPER_PARAMS_2, ArgyrisSpace, MaterialParams,
                      assemble_Atau, assemble_B, build_constraints, build_local_basis,
                      combine_Atau, div_sigma)
from .eigensolve import EigenResult, EigenSolveError, nonsym_near, sym_def_smallest
from .lagrange import assemble_mixed, solve_elasticity_eig1, solve_mixed_eigs
from .mesh import DomainSpec, Mesh, MeshError, generate, paper_mesh, read_mesh, \
    refine_uniform, write_mesh
from .quadrature import integrate, triangle_rule
from .smete import (SecantTrace, SmeteContext, f_h, monotone_interval, sample_f,
                    secant_solve, smallest_N)

__version__ = "0.1.0"

__all__ = [
    "ArgyrisSpace", "DiskProblem", "DomainSpec", "EigenResult", "EigenSolveError",
    "MaterialParams", "Mesh", "MeshError", "PAPER_PARAMS", "PAPER_PARAMS_2", "SecantTrace",
    "SmeteContext", "Z0", "assemble_Atau", "assemble_B", "assemble_mixed", "bessel_j01",
    "build_constraints", "build_local_basis", "combine_Atau", "div_sigma", "f_h",
    "find_roots", "generate", "integrate", "monotone_interval", "nonsym_near", "paper_mesh",
    "radial_eigenfunction", "read_mesh", "refine_uniform", "sample_f", "secant_solve",
    "smallest_N", "solve_elasticity_eig1", "solve_mixed_eigs", "sym_def_smallest",
    "triangle_rule", "write_mesh",
]
