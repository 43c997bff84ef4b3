"""Graded vector spaces, algebras, modules, and their checkers.

A graded structure is a family of finite-dimensional components indexed
by group degrees, with structure maps stored as matrices in the global
Kronecker convention of exactmath. Nothing is assumed: associativity,
unitality, and morphism identities are verified exhaustively over the
supported degrees by the check_* functions.

Storage rule: a mult/action key (g, h) must be present exactly when all
three of dims(g), dims(h), dims(g*h) are nonzero. Slots touching a
zero-dimensional component are the unique empty/zero matrix and may be
omitted (checkers treat the missing identities as vacuous). This is what
keeps integer-window data finite.
"""

from __future__ import annotations

from math import comb
from itertools import combinations_with_replacement

from .exactmath import QQ, Matrix, hstack, kron, mat_mul
from .groups import FiniteGroup, IntegerWindow, same_group
from .report import Report


class GradedVectorSpace:
    def __init__(self, group, dims: dict):
        cleaned = {}
        for g, d in dims.items():
            if d < 0:
                raise ValueError("negative dimension")
            if d == 0:
                continue
            if not group.contains(g):
                raise ValueError(f"degree {g!r} outside the group/window")
            cleaned[g] = int(d)
        self.group = group
        self.dims = cleaned

    def dim(self, g) -> int:
        return self.dims.get(g, 0)

    def support(self) -> list:
        return sorted(self.dims)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def __eq__(self, other):
        return (
            isinstance(other, GradedVectorSpace)
            and same_group(self.group, other.group)
            and self.dims == other.dims
        )

    def __hash__(self):
        return hash((frozenset(self.dims.items()),))

    def __repr__(self):
        inside = ", ".join(f"{g}:{d}" for g, d in sorted(self.dims.items()))
        return f"GradedVectorSpace({{{inside}}})"


def _require_structure_keys(space, other_dims, maps, label):
    """Enforce the storage rule and shapes for a mult/action dict."""
    checked = {}
    group = space.group
    for (g, h), m in maps.items():
        if not isinstance(m, Matrix):
            raise TypeError(f"{label}[{(g, h)}] is not a Matrix")
        target = group.mul(g, h)
        want_rows = other_dims("left", target)
        want_cols = other_dims("src_left", g) * other_dims("src_right", h)
        if (m.rows, m.cols) != (want_rows, want_cols):
            raise ValueError(
                f"{label}[{(g, h)}] has shape {m.rows}x{m.cols}, expected {want_rows}x{want_cols}"
            )
        if m.rows and m.cols:
            checked[(g, h)] = m
    return checked


class GradedAlgebra:
    """(A_g, m_{g,h}: A_g (x) A_h -> A_gh, u: 1 -> A_e) with explicit matrices."""

    def __init__(self, space: GradedVectorSpace, mult: dict, unit: Matrix, field):
        self.space = space
        self.field = field
        group = space.group
        e = group.identity

        def dims_for(_role, g):
            return space.dim(g)

        self.mult = _require_structure_keys(space, dims_for, mult, "mult")
        for g in space.support():
            for h in space.support():
                t = group.mul(g, h)
                if space.dim(t) and (g, h) not in self.mult:
                    raise ValueError(f"missing mult matrix for degrees ({g!r},{h!r})")
        if not isinstance(unit, Matrix) or unit.cols != 1 or unit.rows != space.dim(e):
            raise ValueError(f"unit must be a {space.dim(e)}x1 column")
        if unit.field != field:
            raise ValueError("unit field mismatch")
        for m in self.mult.values():
            if m.field != field:
                raise ValueError("mult field mismatch")
        self.unit = unit

    @property
    def group(self):
        return self.space.group

    def dim(self, g) -> int:
        return self.space.dim(g)

    def support(self):
        return self.space.support()

    def mult_map(self, g, h) -> Matrix:
        got = self.mult.get((g, h))
        if got is not None:
            return got
        return Matrix.zeros(self.dim(self.group.mul(g, h)), self.dim(g) * self.dim(h), self.field)

    def __eq__(self, other):
        return (
            isinstance(other, GradedAlgebra)
            and self.space == other.space
            and self.field == other.field
            and self.mult == other.mult
            and self.unit == other.unit
        )

    def __repr__(self):
        return f"GradedAlgebra(dims={dict(sorted(self.space.dims.items()))})"


class GradedModule:
    """(M_g, rho_{g,h}: M_g (x) A_h -> M_gh) over a fixed graded algebra."""

    def __init__(self, space: GradedVectorSpace, algebra: GradedAlgebra, action: dict):
        if not same_group(space.group, algebra.group):
            raise ValueError("module and algebra live over different groups")
        self.space = space
        self.algebra = algebra
        self.field = algebra.field
        group = space.group

        def dims_for(role, g):
            if role == "src_right":
                return algebra.dim(g)
            return space.dim(g)

        self.action = _require_structure_keys(space, dims_for, action, "action")
        for g in space.support():
            for h in algebra.support():
                t = group.mul(g, h)
                if space.dim(t) and (g, h) not in self.action:
                    raise ValueError(f"missing action matrix for degrees ({g!r},{h!r})")
        for m in self.action.values():
            if m.field != self.field:
                raise ValueError("action field mismatch")

    @property
    def group(self):
        return self.space.group

    def dim(self, g) -> int:
        return self.space.dim(g)

    def support(self):
        return self.space.support()

    def action_map(self, g, h) -> Matrix:
        got = self.action.get((g, h))
        if got is not None:
            return got
        return Matrix.zeros(
            self.dim(self.group.mul(g, h)), self.dim(g) * self.algebra.dim(h), self.field
        )

    def __eq__(self, other):
        return (
            isinstance(other, GradedModule)
            and self.space == other.space
            and self.algebra == other.algebra
            and self.action == other.action
        )

    def __repr__(self):
        return f"GradedModule(dims={dict(sorted(self.space.dims.items()))})"


class GradedMorphism:
    """Degree-preserving family of matrices f_g: source_g -> target_g."""

    def __init__(self, source: GradedVectorSpace, target: GradedVectorSpace, components: dict, field):
        if not same_group(source.group, target.group):
            raise ValueError("morphism endpoints live over different groups")
        self.source = source
        self.target = target
        self.field = field
        comps = {}
        for g, m in components.items():
            if not isinstance(m, Matrix):
                raise TypeError(f"component at {g!r} is not a Matrix")
            if (m.rows, m.cols) != (target.dim(g), source.dim(g)):
                raise ValueError(
                    f"component at {g!r} has shape {m.rows}x{m.cols}, "
                    f"expected {target.dim(g)}x{source.dim(g)}"
                )
            if m.field != field:
                raise ValueError("component field mismatch")
            if m.rows and m.cols:
                comps[g] = m
        for g in source.support():
            if target.dim(g) and g not in comps:
                raise ValueError(f"missing component at degree {g!r}")
        self.components = comps

    @property
    def group(self):
        return self.source.group

    def component(self, g) -> Matrix:
        got = self.components.get(g)
        if got is not None:
            return got
        return Matrix.zeros(self.target.dim(g), self.source.dim(g), self.field)

    @classmethod
    def identity(cls, space: GradedVectorSpace, field) -> "GradedMorphism":
        comps = {g: Matrix.identity(d, field) for g, d in space.dims.items()}
        return cls(space, space, comps, field)

    def then(self, other: "GradedMorphism") -> "GradedMorphism":
        """other composed after self (self first)."""
        if self.target.dims != other.source.dims:
            raise ValueError("composition endpoint mismatch")
        degrees = set(self.components) | set(other.components)
        comps = {g: other.component(g) @ self.component(g) for g in degrees}
        return GradedMorphism(self.source, other.target, comps, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, GradedMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __repr__(self):
        return f"GradedMorphism(degrees={sorted(self.components)})"


# ---------------------------------------------------------------------------
# checkers


def check_algebra(a: GradedAlgebra) -> Report:
    """Associativity and unitality over all supported degree triples."""
    group = a.group
    support = a.support()
    for g in support:
        for h in support:
            for k in support:
                gh = group.mul(g, h)
                lhs = a.mult_map(gh, k) @ kron(a.mult_map(g, h), Matrix.identity(a.dim(k), a.field))
                hk = group.mul(h, k)
                rhs = a.mult_map(g, hk) @ kron(Matrix.identity(a.dim(g), a.field), a.mult_map(h, k))
                if lhs != rhs:
                    return Report("check_algebra", False, witness=("associativity", (g, h, k)))
    e = group.identity
    for g in support:
        ident = Matrix.identity(a.dim(g), a.field)
        left = a.mult_map(e, g) @ kron(a.unit, ident)
        if left != ident:
            return Report("check_algebra", False, witness=("left-unit", g))
        right = a.mult_map(g, e) @ kron(ident, a.unit)
        if right != ident:
            return Report("check_algebra", False, witness=("right-unit", g))
    return Report("check_algebra", True)


def check_module(m: GradedModule) -> Report:
    """Action associativity against the algebra, and unit action = id."""
    group = m.group
    a = m.algebra
    for g in m.support():
        for h in a.support():
            for k in a.support():
                gh = group.mul(g, h)
                lhs = m.action_map(gh, k) @ kron(m.action_map(g, h), Matrix.identity(a.dim(k), m.field))
                hk = group.mul(h, k)
                rhs = m.action_map(g, hk) @ kron(Matrix.identity(m.dim(g), m.field), a.mult_map(h, k))
                if lhs != rhs:
                    return Report("check_module", False, witness=("associativity", (g, h, k)))
    e = group.identity
    for g in m.support():
        ident = Matrix.identity(m.dim(g), m.field)
        if m.action_map(g, e) @ kron(ident, a.unit) != ident:
            return Report("check_module", False, witness=("unit-action", g))
    return Report("check_module", True)


def check_algebra_morphism(f: GradedMorphism, a: GradedAlgebra, b: GradedAlgebra) -> Report:
    if f.source.dims != a.space.dims or f.target.dims != b.space.dims:
        raise ValueError("morphism endpoints do not match the given algebras")
    group = a.group
    for g in a.support():
        for h in a.support():
            gh = group.mul(g, h)
            lhs = b.mult_map(g, h) @ kron(f.component(g), f.component(h))
            rhs = f.component(gh) @ a.mult_map(g, h)
            if lhs != rhs:
                return Report("check_algebra_morphism", False, witness=("multiplicativity", (g, h)))
    e = group.identity
    if f.component(e) @ a.unit != b.unit:
        return Report("check_algebra_morphism", False, witness=("unit", e))
    return Report("check_algebra_morphism", True)


def check_module_morphism(f: GradedMorphism, m: GradedModule, n: GradedModule) -> Report:
    if m.algebra is not n.algebra and m.algebra != n.algebra:
        raise ValueError("modules live over different algebras")
    if f.source.dims != m.space.dims or f.target.dims != n.space.dims:
        raise ValueError("morphism endpoints do not match the given modules")
    group = m.group
    a = m.algebra
    for g in m.support():
        for h in a.support():
            gh = group.mul(g, h)
            lhs = n.action_map(g, h) @ kron(f.component(g), Matrix.identity(a.dim(h), a.field))
            rhs = f.component(gh) @ m.action_map(g, h)
            if lhs != rhs:
                return Report("check_module_morphism", False, witness=("intertwining", (g, h)))
    return Report("check_module_morphism", True)


# ---------------------------------------------------------------------------
# the Cauchy tensor product and the assembled-multiplication oracle


class TensorLayout:
    """Degree-wise block layout of a Cauchy tensor product.

    blocks[g] is a list of (p, offset, size): the block X_p (x) Y_{p^-1 g}
    starts at `offset` inside the degree-g component, in ascending order
    of p under the global element order.
    """

    def __init__(self, space: GradedVectorSpace, blocks: dict):
        self.space = space
        self.blocks = blocks

    def offset_of(self, g, p):
        for q, offset, size in self.blocks.get(g, []):
            if q == p:
                return offset, size
        raise KeyError(f"no block for p={p!r} in degree {g!r}")


def graded_tensor(x: GradedVectorSpace, y: GradedVectorSpace) -> TensorLayout:
    """(X (x)bar Y)_g = sum over p of X_p (x) Y_{p^-1 g}, with offsets."""
    if not same_group(x.group, y.group):
        raise ValueError("tensor factors live over different groups")
    group = x.group
    degrees = {}
    for p in x.support():
        for q in y.support():
            g = group.mul(p, q)
            degrees.setdefault(g, 0)
    dims = {}
    blocks = {}
    for g in sorted(degrees):
        offset = 0
        entries = []
        for p in x.support():
            pinv_g = group.mul(group.inv(p), g)
            size = x.dim(p) * y.dim(pinv_g)
            if size:
                entries.append((p, offset, size))
                offset += size
        if offset:
            dims[g] = offset
            blocks[g] = entries
    if isinstance(group, IntegerWindow) and dims:
        lo, hi = min(dims), max(dims)
        group = group.widened(lo, hi)
    return TensorLayout(GradedVectorSpace(group, dims), blocks)


def cauchy_algebra_oracle(a: GradedAlgebra) -> Report:
    """Assemble the one-map-per-degree multiplication and re-check axioms.

    The assembled multiplication at degree t is the horizontal stack of
    the component maps m_{p, p^-1 t} over the blocks of (A (x)bar A)_t.
    The oracle re-verifies associativity and unitality of that assembled
    data directly on the triple-product block layout, then confirms the
    verdict agrees with check_algebra's. It passes iff the verdicts
    agree, so it is meaningful on broken algebras too.
    """
    direct = check_algebra(a)
    assembled = _assembled_axioms(a)
    agree = direct.passed == assembled.passed
    witness = None
    if not agree or not direct.passed:
        witness = {"direct": direct.as_dict(), "assembled": assembled.as_dict()}
    return Report("cauchy_algebra_oracle", agree, witness=witness)


def _assembled_axioms(a: GradedAlgebra) -> Report:
    group = a.group
    field = a.field
    support = a.support()
    # triple space blocks (p, q) with component A_p (x) A_q (x) A_{(pq)^-1 t}
    triple_degrees = sorted(
        {group.mul(group.mul(p, q), r) for p in support for q in support for r in support}
    )
    for t in triple_degrees:
        left_blocks = []
        right_blocks = []
        nonempty = False
        for p in support:
            for q in support:
                pq = group.mul(p, q)
                r = group.mul(group.inv(pq), t)
                dp, dq, dr = a.dim(p), a.dim(q), a.dim(r)
                if dp * dq * dr == 0:
                    continue
                nonempty = True
                left = a.mult_map(pq, r) @ kron(a.mult_map(p, q), Matrix.identity(dr, field))
                qr = group.mul(q, r)
                right = a.mult_map(p, qr) @ kron(Matrix.identity(dp, field), a.mult_map(q, r))
                left_blocks.append(left)
                right_blocks.append(right)
        if nonempty and hstack(left_blocks) != hstack(right_blocks):
            for (bp, bq), lb, rb in zip(
                (
                    (p, q)
                    for p in support
                    for q in support
                    if a.dim(p) * a.dim(q) * a.dim(group.mul(group.inv(group.mul(p, q)), t))
                ),
                left_blocks,
                right_blocks,
            ):
                if lb != rb:
                    return Report(
                        "assembled_axioms",
                        False,
                        witness=("associativity", (bp, bq, group.mul(group.inv(group.mul(bp, bq)), t))),
                    )
    e = group.identity
    for g in support:
        ident = Matrix.identity(a.dim(g), field)
        if a.mult_map(e, g) @ kron(a.unit, ident) != ident:
            return Report("assembled_axioms", False, witness=("left-unit", g))
        if a.mult_map(g, e) @ kron(ident, a.unit) != ident:
            return Report("assembled_axioms", False, witness=("right-unit", g))
    return Report("assembled_axioms", True)


def assembled_mult(a: GradedAlgebra, t) -> Matrix:
    """The degree-t Cauchy multiplication (A (x)bar A)_t -> A_t."""
    layout = graded_tensor(a.space, a.space)
    group = a.group
    pieces = []
    for p, _offset, _size in layout.blocks.get(t, []):
        q = group.mul(group.inv(p), t)
        pieces.append(a.mult_map(p, q))
    if not pieces:
        return Matrix.zeros(a.dim(t), 0, a.field)
    return hstack(pieces)


# ---------------------------------------------------------------------------
# constructors


def group_algebra(group: FiniteGroup, field=QQ) -> GradedAlgebra:
    """k[G]: one-dimensional components, every multiplication map [1]."""
    if not isinstance(group, FiniteGroup):
        raise ValueError("group algebras need a finite group (integer windows have infinite support)")
    dims = {g: 1 for g in group.elements()}
    space = GradedVectorSpace(group, dims)
    one = Matrix.from_rows([[field.one]], field)
    mult = {(g, h): one for g in group.elements() for h in group.elements()}
    unit = Matrix.column([field.one], field)
    return GradedAlgebra(space, mult, unit, field)


def truncated_polynomial(nvars: int, maxdeg: int, field=QQ, window=None) -> GradedAlgebra:
    """k[x_1..x_n] / (degree > maxdeg), graded by total degree.

    The degree-d basis is the monomials in lexicographic order (powers of
    x_1 first); dims(d) = C(nvars + d - 1, d). Products that would land
    above maxdeg map to the zero component, which is an honest quotient
    and keeps associativity exact.
    """
    if nvars < 1 or maxdeg < 0:
        raise ValueError("need at least one variable and a nonnegative degree bound")
    if window is None:
        window = IntegerWindow(0, maxdeg)
    if window.lo > 0 or window.hi < maxdeg:
        raise ValueError("window too small for the requested degree bound")
    basis = {d: list(combinations_with_replacement(range(nvars), d)) for d in range(maxdeg + 1)}
    index = {d: {mono: i for i, mono in enumerate(basis[d])} for d in basis}
    dims = {d: len(basis[d]) for d in basis}
    assert all(dims[d] == comb(nvars + d - 1, d) for d in dims)
    space = GradedVectorSpace(window, dims)
    mult = {}
    for d1 in range(maxdeg + 1):
        for d2 in range(maxdeg + 1):
            target = d1 + d2
            if target > maxdeg:
                continue
            cols = []
            for mono1 in basis[d1]:
                for mono2 in basis[d2]:
                    product = tuple(sorted(mono1 + mono2))
                    col = [field.zero] * dims[target]
                    col[index[target][product]] = field.one
                    cols.append(col)
            entries = [col[i] for i in range(dims[target]) for col in cols]
            mult[(d1, d2)] = Matrix(dims[target], dims[d1] * dims[d2], field, entries)
    unit = Matrix.column([field.one], field)
    return GradedAlgebra(space, mult, unit, field)


def regular_module(a: GradedAlgebra) -> GradedModule:
    """A acting on itself by multiplication."""
    return GradedModule(a.space, a, dict(a.mult))


def shift_module(m: GradedModule, g) -> GradedModule:
    """S_g(M): degree-d component M_{g^-1 d}, action reindexed the same way."""
    group = m.group
    new_dims = {group.mul(g, d): dim for d, dim in m.space.dims.items()}
    new_group = group
    if isinstance(group, IntegerWindow):
        if new_dims:
            lo, hi = min(new_dims), max(new_dims)
            new_group = IntegerWindow(min(lo, 0), max(hi, 0))
        else:
            new_group = IntegerWindow(0, 0)
    space = GradedVectorSpace(new_group, new_dims)
    action = {}
    ginv = group.inv(g)
    for d in space.support():
        for h in m.algebra.support():
            if space.dim(group.mul(d, h)) and space.dim(d) and m.algebra.dim(h):
                action[(d, h)] = m.action_map(group.mul(ginv, d), h)
    return GradedModule(space, m.algebra, action)


def zero_module(a: GradedAlgebra) -> GradedModule:
    return GradedModule(GradedVectorSpace(a.group, {}), a, {})


def mat_from_cols(cols, rows, field) -> Matrix:
    """Pack column lists into a Matrix; convenience for tests and fixtures."""
    entries = [col[i] for i in range(rows) for col in cols]
    return Matrix(rows, len(cols), field, entries)


__all__ = [
    "GradedVectorSpace",
    "GradedAlgebra",
    "GradedModule",
    "GradedMorphism",
    "TensorLayout",
    "graded_tensor",
    "check_algebra",
    "check_module",
    "check_algebra_morphism",
    "check_module_morphism",
    "cauchy_algebra_oracle",
    "assembled_mult",
    "group_algebra",
    "truncated_polynomial",
    "regular_module",
    "shift_module",
    "zero_module",
]
