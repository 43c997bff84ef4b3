"""Ready-made algebras and twisting systems used by the test suite,
the bundled data files, and the demos.

Everything here is deterministic. The random builders take a seed and
use it through `random.Random`, so a given seed always produces the
same structure on every platform.
"""

from __future__ import annotations

import random

from .exactmath import Matrix, PrimeField, QQ
from .graded import (
    GradedAlgebra,
    GradedMorphism,
    check_algebra,
    group_algebra,
    truncated_polynomial,
)
from .groups import cyclic_group, symmetric_group
from .twist import AUTOMORPHISM, COCYCLE, TwistingSystem

F5 = PrimeField(5)
F7 = PrimeField(7)


def z2_group_algebra(field=QQ) -> GradedAlgebra:
    return group_algebra(cyclic_group(2), field)


def z3_group_algebra(field=QQ) -> GradedAlgebra:
    return group_algebra(cyclic_group(3), field)


def s3_group_algebra(field=QQ) -> GradedAlgebra:
    return group_algebra(symmetric_group(3), field)


def z3_f7_algebra() -> GradedAlgebra:
    return group_algebra(cyclic_group(3), F7)


def sign_twist(field=QQ):
    """k[Z/2] with alpha(d, g) = -1 exactly when d = g = 1.

    The smallest twisting system that changes anything: the twisted
    algebra has m_{1,1} = [-1], i.e. k[Z/2] becomes k[i].
    """
    a = z2_group_algebra(field)
    minus = field.neg(field.one)
    alpha = {(d, g): (minus if d == 1 and g == 1 else field.one) for d in (0, 1) for g in (0, 1)}
    return a, TwistingSystem(a, COCYCLE, alpha=alpha)


def quantum_plane(maxdeg: int = 3, q=2, field=QQ):
    """Truncated k[x, y] with the scaling automorphism sigma(x) = x,
    sigma(y) = q y.

    Degree-d monomials sit at index k = (exponent of y), so sigma acts
    on degree d as diag(q^0, ..., q^d). Twisting by sigma produces the
    quantum plane relation x * y = q (y * x) in the twisted product.
    """
    a = truncated_polynomial(2, maxdeg, field)
    qval = field.coerce(q)
    comps = {}
    for d in a.support():
        n = a.dim(d)
        scale = field.one
        entries = []
        for k in range(n):
            for j in range(n):
                entries.append(scale if j == k else field.zero)
            scale = field.mul(scale, qval)
        comps[d] = Matrix(n, n, field, entries)
    sigma = GradedMorphism(a.space, a.space, comps, field)
    return a, TwistingSystem(a, AUTOMORPHISM, sigma=sigma)


def carry(a: int, b: int, n: int) -> int:
    """1 when adding a and b wraps past n (representatives in [0, n))."""
    return 1 if a + b >= n else 0


def random_cocycle_twist(seed: int):
    """A random normalized 2-cocycle on Z/3 with values in F_7.

    Built as a random coboundary times 3^(k * carry): beta(0) = 1 and
    beta(1), beta(2) random nonzero give the coboundary part, and k in
    {0, 1, 2} picks the cohomology class (3 is not a cube mod 7, so the
    three classes are genuinely distinct). Normalization
    alpha(0, -) = alpha(-, 0) = 1 comes for free from beta(0) = 1.
    """
    rng = random.Random(seed)
    field = F7
    beta = {0: 1, 1: rng.randrange(1, 7), 2: rng.randrange(1, 7)}
    k = rng.randrange(3)
    a = z3_f7_algebra()
    alpha = {}
    for x in range(3):
        for y in range(3):
            value = field.mul(beta[x], beta[y])
            value = field.mul(value, field.inv(beta[(x + y) % 3]))
            if k:
                value = field.mul(value, pow(3, k * carry(x, y, 3), 7))
            alpha[(x, y)] = value
    return a, TwistingSystem(a, COCYCLE, alpha=alpha)


_BROKEN_BASES = (
    z3_f7_algebra,
    lambda: z3_group_algebra(QQ),
    lambda: s3_group_algebra(F5),
    lambda: truncated_polynomial(2, 2, QQ),
)


def broken_algebra(seed: int) -> GradedAlgebra:
    """A deliberately non-associative or non-unital perturbation of one
    of the base fixtures. Guaranteed broken: the builder re-rolls until
    check_algebra actually fails, deterministically from the seed.
    """
    rng = random.Random(seed)
    base = _BROKEN_BASES[rng.randrange(len(_BROKEN_BASES))]()
    field = base.field
    keys = sorted(base.mult)
    while True:
        g, h = keys[rng.randrange(len(keys))]
        m = base.mult[(g, h)]
        i = rng.randrange(m.rows)
        j = rng.randrange(m.cols)
        bumped = [list(m.row(r)) for r in range(m.rows)]
        bumped[i][j] = field.add(bumped[i][j], field.one)
        mult = dict(base.mult)
        mult[(g, h)] = Matrix.from_rows(bumped, field) if m.rows else m
        candidate = GradedAlgebra(base.space, mult, base.unit, field)
        if not check_algebra(candidate).passed:
            return candidate


__all__ = [
    "F5",
    "F7",
    "z2_group_algebra",
    "z3_group_algebra",
    "s3_group_algebra",
    "z3_f7_algebra",
    "sign_twist",
    "quantum_plane",
    "carry",
    "random_cocycle_twist",
    "broken_algebra",
]
