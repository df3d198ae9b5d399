"""Multiplicity-free coverings of graded domains: construction, lifts,
the universal property as an executable check, and the demonstration that
no covering exists inside the n-fold vector bundle category itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraSpec, Polynomial, weight_monomials
from .linalg import solve_exact
from .morphism import GradedMorphism, compose, morphisms_equal
from .weights import (
    EVEN,
    PARITY_NAMES,
    QuotientLabel,
    Weight,
    WeightSystem,
    is_sn_invariant,
    quotient_label,
)


@dataclass(frozen=True)
class CoveringData:
    """A graded domain, its multiplicity-free covering, and the projection.

    The projection is the space map total -> base; its pullback sends every
    length-k coordinate to the sum of the covering coordinates of that
    length.
    """

    base: AlgebraSpec
    total: AlgebraSpec
    projection: GradedMorphism


def _covering_projection(total: AlgebraSpec, base: AlgebraSpec) -> GradedMorphism:
    base_images = [Polynomial.base(total, i) for i in range(1, base.base_dim + 1)]
    fibers = {}
    for key, j in base.fiber_variables():
        k = key.length
        image = Polynomial.zero(total)
        for delta in total.grading.members_of_length(k):
            image = image + Polynomial.fiber(total, delta, j)
        fibers[(key, j)] = image
    return GradedMorphism(total, base, base_images, fibers)


def build_covering(base: AlgebraSpec, system: WeightSystem) -> CoveringData:
    """Covering of a length-type domain by the quotient algebra of a type."""
    if base.is_delta:
        raise ValueError("the covered domain must be length-type")
    if not is_sn_invariant(system):
        raise ValueError("the covering type must be an S_n-invariant weight system")
    if system.generator_parity != base.gen_parity:
        raise ValueError("generator parity of the type differs from the domain parity")
    label = quotient_label(system)
    if not base.grading.lengths <= label.lengths:
        raise ValueError(
            f"type supports lengths {label}, domain needs {base.grading}"
        )
    restricted = WeightSystem(
        system.n,
        system.generator_parity,
        frozenset(w for w in system.members if w.length in base.grading.lengths),
    )
    dims = {
        w: base.dim_at(Weight((w.length,)))
        for w in restricted.members
        if not w.is_zero
    }
    total = AlgebraSpec.delta_type(restricted, base.base_dim, dims, quotient=True)
    return CoveringData(base, total, _covering_projection(total, base))


def canonical_covering(total: AlgebraSpec) -> CoveringData:
    """The covering structure a symmetric quotient algebra carries by itself.

    Requires an S_n-invariant grading with fiber dimensions constant on
    length classes; the covered domain keeps one coordinate per length and
    index.
    """
    if not (total.is_delta and total.quotient):
        raise ValueError("expected a vector-weight quotient algebra")
    if not is_sn_invariant(total.grading):
        raise ValueError("the weight system must be S_n-invariant")
    dims_by_len = total.dims_by_length()
    label = QuotientLabel(total.grading.lengths, total.gen_parity)
    base = AlgebraSpec.l_type(label, total.base_dim, dims_by_len)
    return CoveringData(base, total, _covering_projection(total, base))


def lift(psi: GradedMorphism, cov: CoveringData) -> GradedMorphism:
    """The unique weight-preserving morphism through the covering.

    Each covering coordinate receives the homogeneous component of the
    matching length coordinate's image.
    """
    if psi.target != cov.base:
        raise ValueError("the morphism does not map into the covered domain")
    source = psi.source
    if not (source.is_delta and source.quotient):
        raise ValueError("lifts start from multiplicity-free (quotient) algebras")
    if source.n != cov.total.n:
        raise ValueError("lattice rank mismatch between source and covering")
    fibers = {}
    for delta, j in cov.total.fiber_variables():
        image = psi.fiber_images[(Weight((delta.length,)), j)]
        fibers[(delta, j)] = image.homogeneous_component(delta)
    return GradedMorphism(source, cov.total, psi.base_images, fibers)


def lift_graded_morphism(
    phi: GradedMorphism, cov_src: CoveringData, cov_dst: CoveringData
) -> GradedMorphism:
    """Lift of a morphism of graded domains to the coverings."""
    if phi.source != cov_src.base or phi.target != cov_dst.base:
        raise ValueError("the morphism does not connect the covered domains")
    psi = compose(phi, cov_src.projection)
    return lift(psi, cov_dst)


@dataclass
class UniversalityReport:
    commutes: bool
    unique: bool
    details: list[str] = field(default_factory=list)
    lifted: GradedMorphism | None = None

    def __str__(self) -> str:
        lines = [
            "commutes: " + ("yes" if self.commutes else "no"),
            "unique: " + ("yes" if self.unique else "no"),
        ]
        lines += self.details
        return "\n".join(lines)


def verify_universal(
    psi: GradedMorphism, cov: CoveringData, candidate: GradedMorphism | None = None
) -> UniversalityReport:
    """Check the covering triangle and the forced-component uniqueness.

    With no candidate the computed lift is checked.  Uniqueness holds when
    the weight components of each coordinate image add back up to the image:
    any solution of the triangle must then coincide with the lift.
    """
    lifted = lift(psi, cov)
    if candidate is None:
        candidate = lifted
    details = []

    commutes = True
    for i, img in enumerate(psi.base_images):
        through = candidate.pullback(cov.projection.base_images[i])
        if through != img:
            commutes = False
            details.append(f"triangle fails at {cov.base.base_var_name(i + 1)}")
    for key, j in cov.base.fiber_variables():
        projected = cov.projection.fiber_images[(key, j)]
        through = candidate.pullback(projected)
        if through != psi.fiber_images[(key, j)]:
            commutes = False
            details.append(f"triangle fails at {cov.base.fiber_var_name(key, j)}")

    unique = True
    for key, j in cov.base.fiber_variables():
        k = key.length
        total_image = Polynomial.zero(psi.source)
        for delta in cov.total.grading.members_of_length(k):
            total_image = total_image + lifted.fiber_images[(delta, j)]
        if total_image != psi.fiber_images[(key, j)]:
            unique = False
            details.append(
                f"components of {cov.base.fiber_var_name(key, j)} do not exhaust the image"
            )
    if unique and candidate is not lifted and not morphisms_equal(candidate, lifted):
        unique = False
        details.append("candidate differs from the forced component lift")
    return UniversalityReport(commutes, unique, details, lifted)


@dataclass
class VbCoveringReport:
    """Outcome of the feasibility check for a covering of 2-fold vector bundles."""

    parity: int
    unit_cross_coefficient: bool
    zero_quadratic_target: bool
    feasible: bool
    forced: list[str]
    equation: str
    conclusion: str
    solution: list[Fraction] | None = None

    def __str__(self) -> str:
        head = (
            f"parity={PARITY_NAMES[self.parity]}"
            f" cross-coefficient={'1' if self.unit_cross_coefficient else 'unknown'}"
            f" quadratic-target={'0' if self.zero_quadratic_target else 'eta[a,1]*eta[a,2]'}"
        )
        lines = [head]
        lines += ["  forced: " + s for s in self.forced]
        lines.append("  equation: " + self.equation)
        lines.append("  " + self.conclusion)
        return "\n".join(lines)


def double_vb_fixture(parity: int = EVEN, zero_quadratic_target: bool = False):
    """Specs and the test morphism for the 2-fold vector bundle obstruction.

    N is a graded domain with coordinates x, xi^1, xi^2; D a double vector
    bundle with two weight-a coordinates eta; the morphism kills xi^1 and
    sends xi^2 to eta[a,1]*eta[a,2] (or to 0 for the control variant).
    """
    a = Weight.unit(2, 1)
    b = Weight.unit(2, 2)
    names = ("a", "b")
    q_sys = WeightSystem.full(2, parity)
    q_spec = AlgebraSpec.delta_type(
        q_sys, 1, {a: 1, b: 1, a + b: 1}, gen_names=names
    )
    d_sys = WeightSystem(2, parity, frozenset({Weight.zero(2), a}))
    d_spec = AlgebraSpec.delta_type(d_sys, 1, {a: 2}, fiber_var="eta", gen_names=names)
    label = QuotientLabel(frozenset({0, 1, 2}), parity)
    n_spec = AlgebraSpec.l_type(label, 1, {1: 1, 2: 1})
    if zero_quadratic_target:
        quad = Polynomial.zero(d_spec)
    else:
        quad = Polynomial.fiber(d_spec, a, 1) * Polynomial.fiber(d_spec, a, 2)
    phi = GradedMorphism(
        d_spec,
        n_spec,
        [Polynomial.base(d_spec, 1)],
        {
            (Weight((1,)), 1): Polynomial.zero(d_spec),
            (Weight((2,)), 1): quad,
        },
    )
    return n_spec, d_spec, q_spec, phi


def verify_no_vb_covering(
    parity: int = EVEN,
    unit_cross_coefficient: bool = True,
    zero_quadratic_target: bool = False,
) -> VbCoveringReport:
    """Decide whether the universal property can hold for a 2-fold vector
    bundle covering of the fixture domain.

    The assumed projection must reduce to the standard covering projection
    modulo the multiplicity ideal, so its quadratic coordinate image is
    t[a+b,1] plus unknown multiples of the weight-2a and weight-2b monomial
    bases.  The weight-preserving lift is forced coordinate by coordinate;
    the residual constraint is a linear system over Q whose inconsistency
    is the obstruction.
    """
    n_spec, d_spec, q_spec, phi = double_vb_fixture(parity, zero_quadratic_target)
    a = Weight.unit(2, 1)
    b = Weight.unit(2, 2)
    forced: list[str] = []

    # Weight bookkeeping forces the lift on every covering coordinate: the
    # linear coordinate equation splits into homogeneous components, and a
    # coordinate whose weight has no monomials in D can only go to zero.
    phi_xi1 = phi.fiber_images[(Weight((1,)), 1)]
    lift_images: dict[Weight, Polynomial] = {}
    for delta in (a, b, a + b):
        if not weight_monomials(d_spec, delta):
            image = Polynomial.zero(d_spec)
            reason = f"the target has no monomials of weight {q_spec.weight_str(delta)}"
        elif delta.length == 1:
            image = phi_xi1.homogeneous_component(delta)
            reason = (
                f"weight-{q_spec.weight_str(delta)} component of the xi[1,1] image"
            )
        else:
            raise AssertionError("fixture has dimension-free quadratic coordinates")
        lift_images[delta] = image
        forced.append(f"Phi*({q_spec.fiber_var_name(delta, 1)}) = {image} ({reason})")

    # Ansatz for the projection on xi^2: unknown scalars on each monomial of
    # the squared-length components, plus the distinguished cross term.
    unknowns: list[str] = []
    columns: list[Polynomial] = []

    def substituted(mono_factors) -> Polynomial:
        out = Polynomial.one(d_spec)
        for w, j, e in mono_factors:
            if j != 1:
                raise AssertionError("fixture is one-dimensional per weight")
            out = out * (lift_images[w] ** e)
        return out

    for heavy in (a.scaled(2), b.scaled(2)):
        for mono in weight_monomials(q_spec, heavy):
            unknowns.append(f"coefficient of {_mono_str(q_spec, mono)}")
            columns.append(substituted(mono.factors))
    cross = substituted(((a + b, 1, 1),))
    if not unit_cross_coefficient:
        unknowns.append(f"coefficient of {q_spec.fiber_var_name(a + b, 1)}")
        columns.append(cross)
        fixed_part = Polynomial.zero(d_spec)
    else:
        fixed_part = cross

    rhs_poly = phi.fiber_images[(Weight((2,)), 1)] - fixed_part
    solution = solve_exact([c.as_vector() for c in columns], rhs_poly.as_vector())
    lhs_desc = " + ".join(
        f"x{i + 1}*({col})" for i, (col, _) in enumerate(zip(columns, unknowns))
    )
    if unit_cross_coefficient:
        lhs_desc = (lhs_desc + " + " if lhs_desc else "") + f"({cross})"
    equation = f"{lhs_desc or '0'} = {phi.fiber_images[(Weight((2,)), 1)]}"

    if solution is None:
        conclusion = "infeasible: no weight-preserving lift exists for any coefficients"
    else:
        assignment = ", ".join(
            f"{name} = {value}" for name, value in zip(unknowns, solution)
        )
        conclusion = "feasible: " + (assignment if assignment else "the zero lift works")
    return VbCoveringReport(
        parity=parity,
        unit_cross_coefficient=unit_cross_coefficient,
        zero_quadratic_target=zero_quadratic_target,
        feasible=solution is not None,
        forced=forced,
        equation=equation,
        conclusion=conclusion,
        solution=solution,
    )


def _mono_str(spec: AlgebraSpec, mono) -> str:
    return str(Polynomial.monomial(spec, mono.factors))


def quotient_category_lift(
    parity: int = EVEN, zero_quadratic_target: bool = False
) -> UniversalityReport:
    """The same fixture succeeds after passing to multiplicity-free algebras."""
    n_spec, d_spec, _, phi = double_vb_fixture(parity, zero_quadratic_target)
    d_hat = d_spec.with_quotient(True)
    psi = GradedMorphism(
        d_hat,
        n_spec,
        [img.with_quotient_flag(True) for img in phi.base_images],
        {key: img.with_quotient_flag(True) for key, img in phi.fiber_images.items()},
    )
    cov = build_covering(n_spec, WeightSystem.full(2, parity))
    return verify_universal(psi, cov)


def enumerate_lifts_bruteforce(
    psi: GradedMorphism, cov: CoveringData, coefficients
) -> list[GradedMorphism]:
    """Search oracle: all constant-coefficient morphisms satisfying the triangle.

    Exponential in the number of covering coordinates; meant for dimension-1
    fixtures only.  Candidate images are spanned by the source monomials of
    the right weight with coefficients drawn from the given finite set.
    """
    from itertools import product

    source = psi.source
    coords = cov.total.fiber_variables()
    spans = [weight_monomials(source, delta) for delta, _ in coords]
    choices = []
    for span in spans:
        images = []
        for coeffs in product(list(coefficients), repeat=len(span)):
            img = Polynomial.zero(source)
            for c, mono in zip(coeffs, span):
                img = img + c * Polynomial.monomial(source, mono.factors)
            images.append(img)
        choices.append(images)
    found = []
    for picks in product(*choices):
        fibers = dict(zip(coords, picks))
        candidate = GradedMorphism(source, cov.total, psi.base_images, fibers)
        report = verify_universal(psi, cov, candidate)
        if report.commutes:
            found.append(candidate)
    return found
