"""Twisting systems and twisted structures.

A twisting system on a graded algebra A is a family of isomorphisms
tau_d(g): A_g -> A_g indexed by two degrees, subject to the twisting
condition

    m_{g1,g2} (id (x) tau_{d g1}(g2)) (tau_d(g1) (x) id)
        = tau_d(g1 g2) m_{g1,g2} (id (x) tau_{g1}(g2))

for all d, g1, g2. Three storage kinds:

- explicit: every tau_d(g) a stored matrix. Over the integers only a
  finite d-window can be stored, so condition checks are flagged
  "window-verified".
- cocycle: tau_d(g) = alpha(d, g) * id for nonzero scalars alpha; the
  twisting condition reduces to the 2-cocycle identity.
- automorphism: tau_d(g) = sigma_g^d for a graded algebra automorphism
  sigma; only meaningful when degrees exponentiate, i.e. over the
  integers or a cyclic group (with sigma^n = id). This kind is exactly
  verifiable even over the integers: sigma being a graded algebra
  automorphism implies the twisting condition for every d.

Verification posture: non-invertible entries and failed conditions are
report failures (users probe candidates); wrong shapes and missing
stored entries are input errors and raise.
"""

from __future__ import annotations

from .exactmath import Matrix, inverse, kron, try_inverse
from .graded import (
    GradedAlgebra,
    GradedModule,
    GradedMorphism,
    check_algebra,
    check_algebra_morphism,
    check_module,
)
from .groups import IntegerWindow, is_cyclic_table
from .report import Report

EXPLICIT = "explicit"
COCYCLE = "cocycle"
AUTOMORPHISM = "automorphism"


class TwistingSystem:
    def __init__(self, algebra: GradedAlgebra, kind: str, *, maps=None, alpha=None, sigma=None, order=None):
        self.algebra = algebra
        self.kind = kind
        group = algebra.group
        if kind == EXPLICIT:
            if maps is None:
                raise ValueError("explicit twisting systems need a maps dict")
            self.maps = dict(maps)
            for (d, g), m in self.maps.items():
                if not isinstance(m, Matrix):
                    raise TypeError(f"tau[{(d, g)}] is not a Matrix")
                n = algebra.dim(g)
                if (m.rows, m.cols) != (n, n):
                    raise ValueError(f"tau[{(d, g)}] must be {n}x{n}, got {m.rows}x{m.cols}")
            if isinstance(group, IntegerWindow):
                self._d_window = sorted({d for (d, _g) in self.maps})
            else:
                for d in group.elements():
                    for g in algebra.support():
                        if (d, g) not in self.maps:
                            raise ValueError(f"missing tau for ({d!r},{g!r})")
                self._d_window = None
        elif kind == COCYCLE:
            if alpha is None:
                raise ValueError("cocycle twisting systems need an alpha dict")
            self.alpha = {k: algebra.field.coerce(v) if isinstance(v, int) else v for k, v in alpha.items()}
            if isinstance(group, IntegerWindow):
                self._d_window = sorted({d for (d, _g) in self.alpha})
            else:
                for d in group.elements():
                    for g in group.elements():
                        if (d, g) not in self.alpha:
                            raise ValueError(f"missing alpha for ({d!r},{g!r})")
                self._d_window = None
        elif kind == AUTOMORPHISM:
            if sigma is None:
                raise ValueError("automorphism twisting systems need sigma")
            if not isinstance(group, IntegerWindow):
                if not is_cyclic_table(group):
                    raise ValueError("automorphism twists need integer or cyclic-table degrees")
                if order is None:
                    order = group.order
                elif order != group.order:
                    raise ValueError("order must match the cyclic group order")
            if sigma.source.dims != algebra.space.dims or sigma.target.dims != algebra.space.dims:
                raise ValueError("sigma must be an endomorphism of the algebra's space")
            self.sigma = sigma
            self.order = order
            self._d_window = None
        else:
            raise ValueError(f"unknown twisting system kind {kind!r}")

    @property
    def group(self):
        return self.algebra.group

    def d_degrees(self) -> list:
        """Degrees d over which the condition is quantified."""
        if not isinstance(self.group, IntegerWindow):
            return list(self.group.elements())
        if self._d_window is not None:
            return list(self._d_window)
        return support_closure(self.algebra)

    def window_limited(self) -> bool:
        """True when only a stored d-window is verifiable (integer degrees, non-automorphism)."""
        return isinstance(self.group, IntegerWindow) and self.kind != AUTOMORPHISM

    def has_tau(self, d, g) -> bool:
        if self.algebra.dim(g) == 0:
            return True
        if self.kind == EXPLICIT:
            return (d, g) in self.maps
        if self.kind == COCYCLE:
            return (d, g) in self.alpha
        return True

    def tau(self, d, g) -> Matrix:
        n = self.algebra.dim(g)
        field = self.algebra.field
        if n == 0:
            return Matrix.zeros(0, 0, field)
        if self.kind == EXPLICIT:
            try:
                return self.maps[(d, g)]
            except KeyError:
                raise ValueError(f"tau not stored for ({d!r},{g!r})") from None
        if self.kind == COCYCLE:
            try:
                scalar = self.alpha[(d, g)]
            except KeyError:
                raise ValueError(f"alpha not stored for ({d!r},{g!r})") from None
            return Matrix.identity(n, field).scale(scalar)
        # automorphism: exponent is the integer d (or the index in Z/n)
        return self.sigma.component(g).power(d)

    def __repr__(self):
        return f"TwistingSystem(kind={self.kind})"


def identity_twist(algebra: GradedAlgebra) -> TwistingSystem:
    """tau_d(g) = id for all d, g (stored as the constant cocycle 1)."""
    field = algebra.field
    group = algebra.group
    if isinstance(group, IntegerWindow):
        dees = support_closure(algebra)
        alpha = {(d, g): field.one for d in dees for g in algebra.support()}
    else:
        alpha = {(d, g): field.one for d in group.elements() for g in group.elements()}
    return TwistingSystem(algebra, COCYCLE, alpha=alpha)


def support_closure(algebra: GradedAlgebra) -> list:
    """Integer degrees reachable by at most two products from the support.

    This is the default d-quantification set over ℤ: twisted algebras
    index tau by support degrees, twisted (shifted) modules by sums of
    two of them.
    """
    supp = algebra.support()
    if not supp:
        return [0]
    degrees = {0}
    degrees.update(supp)
    degrees.update(a + b for a in supp for b in supp)
    return sorted(degrees)


def check_cocycle(alpha: dict, group, field) -> Report:
    """The 2-cocycle identity alpha(gh,l) alpha(g,h) = alpha(g,hl) alpha(h,l).

    Quantified over all triples whose four lookups are stored; over the
    integers that is a window and the report says so.
    """
    for key, value in alpha.items():
        if value == field.zero:
            raise ValueError(f"cocycle value at {key} is zero")
    if isinstance(group, IntegerWindow):
        firsts = sorted({k[0] for k in alpha} | {k[1] for k in alpha})
        notes = ("window-verified",)
    else:
        firsts = list(group.elements())
        notes = ()
    for g in firsts:
        for h in firsts:
            for l in firsts:
                keys = [(group.mul(g, h), l), (g, h), (g, group.mul(h, l)), (h, l)]
                if any(k not in alpha for k in keys):
                    continue
                lhs = field.mul(alpha[keys[0]], alpha[keys[1]])
                rhs = field.mul(alpha[keys[2]], alpha[keys[3]])
                if lhs != rhs:
                    return Report("check_cocycle", False, witness=(g, h, l), notes=notes)
    return Report("check_cocycle", True, notes=notes)


def check_twist_condition(t: TwistingSystem) -> Report:
    """Verify that t is a twisting system on its algebra.

    Checks, in order: the algebra's own axioms, invertibility of every
    quantified tau_d(g), then the twisting condition. The automorphism
    kind uses the reduced criterion (sigma is a graded algebra
    automorphism, plus sigma^n = id over Z/n), which implies the
    condition for every integer d at once.
    """
    a = t.algebra
    alg_report = check_algebra(a)
    if not alg_report.passed:
        return Report(
            "check_twist_condition",
            False,
            witness={"algebra": alg_report.witness},
            notes=("underlying algebra fails its axioms",),
        )
    notes = ("window-verified",) if t.window_limited() else ()

    if t.kind == AUTOMORPHISM:
        return _check_automorphism_kind(t)

    support = a.support()
    dees = t.d_degrees()
    for d in dees:
        for g in support:
            if t.has_tau(d, g) and try_inverse(t.tau(d, g)) is None:
                return Report("check_twist_condition", False, witness=("non-invertible", (d, g)), notes=notes)
    group = a.group
    field = a.field
    for d in dees:
        for g1 in support:
            for g2 in support:
                dg1 = group.mul(d, g1)
                needed = [(d, g1), (dg1, g2), (d, group.mul(g1, g2)), (g1, g2)]
                if not all(t.has_tau(*k) for k in needed):
                    continue
                m = a.mult_map(g1, g2)
                lhs = m @ kron(t.tau(d, g1), t.tau(dg1, g2))
                rhs = t.tau(d, group.mul(g1, g2)) @ m @ kron(
                    Matrix.identity(a.dim(g1), field), t.tau(g1, g2)
                )
                if lhs != rhs:
                    return Report(
                        "check_twist_condition", False, witness=("twist-condition", (d, g1, g2)), notes=notes
                    )
    return Report("check_twist_condition", True, notes=notes)


def _check_automorphism_kind(t: TwistingSystem) -> Report:
    a = t.algebra
    notes = ("automorphism criterion: graded automorphism implies the condition for all d",)
    for g in a.support():
        if try_inverse(t.sigma.component(g)) is None:
            return Report("check_twist_condition", False, witness=("non-invertible", ("sigma", g)), notes=notes)
    morphism_report = check_algebra_morphism(t.sigma, a, a)
    if not morphism_report.passed:
        return Report(
            "check_twist_condition",
            False,
            witness={"sigma-not-an-algebra-morphism": morphism_report.witness},
            notes=notes,
        )
    if t.order is not None:
        for g in a.support():
            p = t.sigma.component(g).power(t.order)
            if not p.is_identity():
                return Report(
                    "check_twist_condition", False, witness=("sigma-order", (t.order, g)), notes=notes
                )
    return Report("check_twist_condition", True, notes=notes)


def twist_algebra(a: GradedAlgebra, t: TwistingSystem, run_checks: bool = True) -> GradedAlgebra:
    """A^tau: m^tau_{g,h} = m_{g,h} (id (x) tau_g(h)), unit tau_e(e)^-1 u."""
    if t.algebra is not a and t.algebra != a:
        raise ValueError("twisting system belongs to a different algebra")
    group = a.group
    field = a.field
    mult = {}
    for (g, h), m in a.mult.items():
        mult[(g, h)] = m @ kron(Matrix.identity(a.dim(g), field), t.tau(g, h))
    tau_ee = t.tau(group.identity, group.identity)
    if try_inverse(tau_ee) is None:
        raise ValueError("tau_e(e) is singular; not a twisting system")
    unit = inverse(tau_ee) @ a.unit
    result = GradedAlgebra(a.space, mult, unit, field)
    if run_checks:
        r = check_algebra(result)
        if not r.passed:
            raise ValueError(f"twisted algebra fails its axioms at {r.witness}; input was not a twisting system")
    return result


def twist_module(m: GradedModule, t: TwistingSystem, algebra_tw: GradedAlgebra | None = None,
                 run_checks: bool = True) -> GradedModule:
    """M^tau over A^tau: rho^tau_{g,h} = rho_{g,h} (id (x) tau_g(h))."""
    if algebra_tw is None:
        algebra_tw = twist_algebra(m.algebra, t, run_checks=False)
    field = m.field
    action = {}
    for (g, h), rho in m.action.items():
        action[(g, h)] = rho @ kron(Matrix.identity(m.dim(g), field), t.tau(g, h))
    result = GradedModule(m.space, algebra_tw, action)
    if run_checks:
        r = check_module(result)
        if not r.passed:
            raise ValueError(f"twisted module fails its axioms at {r.witness}")
    return result


def inverse_twist(t: TwistingSystem) -> TwistingSystem:
    """tau^-1, a twisting system on A^tau."""
    twisted = twist_algebra(t.algebra, t, run_checks=False)
    if t.kind == EXPLICIT:
        maps = {}
        for key, m in t.maps.items():
            mi = try_inverse(m)
            if mi is None:
                raise ValueError(f"tau at {key} is singular; cannot invert the system")
            maps[key] = mi
        return TwistingSystem(twisted, EXPLICIT, maps=maps)
    if t.kind == COCYCLE:
        field = t.algebra.field
        alpha = {k: field.inv(v) for k, v in t.alpha.items()}
        return TwistingSystem(twisted, COCYCLE, alpha=alpha)
    comps = {}
    for g in t.algebra.support():
        mi = try_inverse(t.sigma.component(g))
        if mi is None:
            raise ValueError(f"sigma at degree {g!r} is singular")
        comps[g] = mi
    sigma_inv = GradedMorphism(t.sigma.source, t.sigma.target, comps, t.algebra.field)
    return TwistingSystem(twisted, AUTOMORPHISM, sigma=sigma_inv, order=t.order)


def compose_twists(t: TwistingSystem, s: TwistingSystem) -> TwistingSystem:
    """Entrywise product tau_d(g) sigma_d(g): a twisting system on A.

    t lives on A, s on A^tau. Cocycle pairs stay cocycles; automorphism
    pairs with commuting components stay automorphisms; anything else is
    materialized explicitly over the shared d-range.
    """
    a = t.algebra
    if t.kind == COCYCLE and s.kind == COCYCLE:
        field = a.field
        shared = set(t.alpha) & set(s.alpha)
        if not isinstance(a.group, IntegerWindow):
            shared = set(t.alpha)
        alpha = {k: field.mul(t.alpha[k], s.alpha[k]) for k in shared}
        return TwistingSystem(a, COCYCLE, alpha=alpha)
    if t.kind == AUTOMORPHISM and s.kind == AUTOMORPHISM:
        commuting = all(
            t.sigma.component(g) @ s.sigma.component(g) == s.sigma.component(g) @ t.sigma.component(g)
            for g in a.support()
        )
        if commuting:
            comps = {
                g: t.sigma.component(g) @ s.sigma.component(g)
                for g in a.support()
                if a.dim(g)
            }
            sigma = GradedMorphism(a.space, a.space, comps, a.field)
            return TwistingSystem(a, AUTOMORPHISM, sigma=sigma, order=t.order)
    if isinstance(a.group, IntegerWindow):
        dees = set(support_closure(a))
        for system in (t, s):
            if system._d_window is not None:
                dees &= set(system._d_window)
        dees = sorted(dees)
    else:
        dees = list(a.group.elements())
    maps = {}
    for d in dees:
        for g in a.support():
            if t.has_tau(d, g) and s.has_tau(d, g):
                maps[(d, g)] = t.tau(d, g) @ s.tau(d, g)
    return TwistingSystem(a, EXPLICIT, maps=maps)


def check_unit_lemma(t: TwistingSystem) -> Report:
    """tau_g(e)^-1 u = tau_e(e)^-1 u for every g: a theorem for any
    twisting system, so a failure here means the system (or this
    implementation) is broken."""
    a = t.algebra
    e = a.group.identity
    notes = ("window-verified",) if t.window_limited() else ()
    tau_ee_inv = try_inverse(t.tau(e, e)) if t.has_tau(e, e) else None
    if tau_ee_inv is None:
        return Report("check_unit_lemma", False, witness=("non-invertible", (e, e)), notes=notes)
    baseline = tau_ee_inv @ a.unit
    for g in t.d_degrees():
        if not t.has_tau(g, e):
            continue
        inv_g = try_inverse(t.tau(g, e))
        if inv_g is None:
            return Report("check_unit_lemma", False, witness=("non-invertible", (g, e)), notes=notes)
        if inv_g @ a.unit != baseline:
            return Report("check_unit_lemma", False, witness=("unit-mismatch", g), notes=notes)
    return Report("check_unit_lemma", True, notes=notes)


# ---------------------------------------------------------------------------
# phi families (the isomorphism-level characterization of twists)


class PhiFamily:
    """Invertible maps phi_d(g): B_g -> A_g, doubly indexed by degree."""

    def __init__(self, source: GradedAlgebra, target: GradedAlgebra, maps: dict):
        if source.field != target.field:
            raise ValueError("phi family endpoints have different fields")
        self.source = source
        self.target = target
        self.maps = dict(maps)
        for (d, g), m in self.maps.items():
            want = (target.dim(g), source.dim(g))
            if (m.rows, m.cols) != want:
                raise ValueError(f"phi[{(d, g)}] must be {want[0]}x{want[1]}, got {m.rows}x{m.cols}")
        if isinstance(source.group, IntegerWindow):
            self._d_window = sorted({d for (d, _g) in self.maps})
        else:
            for d in source.group.elements():
                for g in source.support():
                    if (d, g) not in self.maps:
                        raise ValueError(f"missing phi for ({d!r},{g!r})")
            self._d_window = None

    def d_degrees(self):
        if self._d_window is not None:
            return list(self._d_window)
        return list(self.source.group.elements())

    def has(self, d, g):
        return self.source.dim(g) == 0 or (d, g) in self.maps

    def map(self, d, g) -> Matrix:
        if self.source.dim(g) == 0 and (d, g) not in self.maps:
            return Matrix.zeros(self.target.dim(g), 0, self.source.field)
        try:
            return self.maps[(d, g)]
        except KeyError:
            raise ValueError(f"phi not stored for ({d!r},{g!r})") from None

    def window_limited(self):
        return isinstance(self.source.group, IntegerWindow)


def check_phi_family(p: PhiFamily) -> Report:
    """Conditions for a phi family to present a twist equivalence:

    m^A_{g1,g2} (phi_d(g1) (x) phi_{d g1}(g2)) = phi_d(g1 g2) m^B_{g1,g2}
    and the unit triangle phi_e(e) u^B = u^A.
    """
    a, b = p.target, p.source
    if a.space.dims != b.space.dims:
        return Report("check_phi_family", False, witness=("dims-mismatch",))
    group = a.group
    notes = ("window-verified",) if p.window_limited() else ()
    for d in p.d_degrees():
        for g in b.support():
            if p.has(d, g) and try_inverse(p.map(d, g)) is None:
                return Report("check_phi_family", False, witness=("non-invertible", (d, g)), notes=notes)
    for d in p.d_degrees():
        for g1 in b.support():
            for g2 in b.support():
                dg1 = group.mul(d, g1)
                g1g2 = group.mul(g1, g2)
                if not (p.has(d, g1) and p.has(dg1, g2) and p.has(d, g1g2)):
                    continue
                lhs = a.mult_map(g1, g2) @ kron(p.map(d, g1), p.map(dg1, g2))
                rhs = p.map(d, g1g2) @ b.mult_map(g1, g2)
                if lhs != rhs:
                    return Report("check_phi_family", False, witness=("multiplicativity", (d, g1, g2)), notes=notes)
    e = group.identity
    if p.has(e, e) and p.map(e, e) @ b.unit != a.unit:
        return Report("check_phi_family", False, witness=("unit", e), notes=notes)
    return Report("check_phi_family", True, notes=notes)


def phi_from_twist(t: TwistingSystem, iso: GradedMorphism | None = None,
                   source_algebra: GradedAlgebra | None = None) -> PhiFamily:
    """phi_d(g) = tau_d(g) iso_g for an algebra iso iso: B -> A^tau.

    With no iso given, B is taken to be A^tau itself and iso = id.
    """
    a = t.algebra
    twisted = twist_algebra(a, t, run_checks=False)
    if iso is None:
        source_algebra = twisted
        iso = GradedMorphism.identity(twisted.space, a.field)
    else:
        if source_algebra is None:
            raise ValueError("an explicit iso needs its source algebra")
        r = check_algebra_morphism(iso, source_algebra, twisted)
        if not r.passed:
            raise ValueError(f"iso is not an algebra morphism into the twisted algebra: {r.witness}")
        for g in source_algebra.support():
            if try_inverse(iso.component(g)) is None:
                raise ValueError(f"iso component at {g!r} is singular")
    maps = {}
    for d in t.d_degrees():
        for g in a.support():
            if t.has_tau(d, g):
                maps[(d, g)] = t.tau(d, g) @ iso.component(g)
    return PhiFamily(source_algebra, a, maps)


def twist_from_phi(p: PhiFamily):
    """Recover (twisting system on A, algebra iso B -> A^tau) from a family.

    tau_d(g) = phi_d(g) phi_e(g)^-1 and the iso has components phi_e(g).
    Both outputs are re-verified; a family that fails check_phi_family is
    rejected up front.
    """
    family_report = check_phi_family(p)
    if not family_report.passed:
        raise ValueError(f"phi family fails its conditions at {family_report.witness}")
    a, b = p.target, p.source
    e = a.group.identity
    maps = {}
    for d in p.d_degrees():
        for g in a.support():
            if not (p.has(d, g) and p.has(e, g)):
                continue
            base = try_inverse(p.map(e, g))
            if base is None:
                raise ValueError(f"phi_e({g!r}) is singular")
            maps[(d, g)] = p.map(d, g) @ base
    t = TwistingSystem(a, EXPLICIT, maps=maps)
    condition = check_twist_condition(t)
    if not condition.passed:
        raise ValueError(f"recovered system fails the twisting condition at {condition.witness}")
    twisted = twist_algebra(a, t, run_checks=False)
    comps = {g: p.map(e, g) for g in b.support() if b.dim(g)}
    morphism = GradedMorphism(b.space, twisted.space, comps, a.field)
    morphism_report = check_algebra_morphism(morphism, b, twisted)
    if not morphism_report.passed:
        raise ValueError(f"recovered morphism fails at {morphism_report.witness}")
    return t, morphism


__all__ = [
    "EXPLICIT",
    "COCYCLE",
    "AUTOMORPHISM",
    "TwistingSystem",
    "PhiFamily",
    "identity_twist",
    "support_closure",
    "check_cocycle",
    "check_twist_condition",
    "twist_algebra",
    "twist_module",
    "inverse_twist",
    "compose_twists",
    "check_unit_lemma",
    "check_phi_family",
    "phi_from_twist",
    "twist_from_phi",
]
