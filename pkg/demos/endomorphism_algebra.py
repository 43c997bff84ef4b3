"""The graded endomorphism algebra of the regular module.

For a graded algebra A, collect the degree-shifted module Hom spaces
of the regular module into one graded algebra. Composition makes the
family an algebra again, and left multiplication gives an isomorphism
from A onto it. This script runs that construction on the group algebra
of S_3 (nonabelian grading group, six one-dimensional components) and
on the truncated polynomial algebra (components of dimension up to 4).
"""

from gradedtwist.enriched import endo_iso, gamma_algebra
from gradedtwist.fixtures import quantum_plane, s3_group_algebra
from gradedtwist.graded import check_algebra

for label, algebra in (
    ("group algebra of S_3", s3_group_algebra()),
    ("truncated polynomial algebra", quantum_plane()[0]),
):
    print(f"{label}:")
    gamma = gamma_algebra(algebra)
    dims_a = {g: algebra.dim(g) for g in algebra.support()}
    dims_g = {g: gamma.dim(g) for g in gamma.degrees if gamma.dim(g)}
    print(f"  component dimensions of A:        {dims_a}")
    print(f"  component dimensions of Gamma(A): {dims_g}")
    assert dims_a == dims_g

    report = check_algebra(gamma.graded)
    print(f"  Gamma(A) {report.check}: {report.status}")
    assert report.passed

    _phi, _psi, report = endo_iso(gamma)
    print(f"  left-multiplication iso {report.check}: {report.status}")
    assert report.passed
    print()
