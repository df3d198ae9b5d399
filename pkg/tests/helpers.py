"""Shared builders for the test suite: small specs, random elements,
random graded morphisms, and a corpus of hand-built atlases."""

from __future__ import annotations

import random
from fractions import Fraction

from mfcover import (
    EVEN,
    ODD,
    AlgebraSpec,
    Atlas,
    GradedMorphism,
    Polynomial,
    QuotientLabel,
    Weight,
    WeightSystem,
    compose,
    weight_monomials,
)


def full_system(n: int, parity: int) -> WeightSystem:
    return WeightSystem.full(n, parity)


def delta_quotient_spec(n: int, parity: int, dims_by_length: dict[int, int],
                        base_dim: int = 0, quotient: bool = True) -> AlgebraSpec:
    """Quotient algebra over the S_n-invariant system with the given lengths."""
    system = WeightSystem.from_lengths(n, parity, set(dims_by_length) | {0})
    dims = {w: dims_by_length[w.length] for w in system.members if not w.is_zero}
    return AlgebraSpec.delta_type(system, base_dim, dims, quotient=quotient)


def l_spec(parity: int, dims_by_length: dict[int, int], base_dim: int = 0) -> AlgebraSpec:
    label = QuotientLabel(frozenset(set(dims_by_length) | {0}), parity)
    return AlgebraSpec.l_type(label, base_dim, dims_by_length)


def z_degree_monomials(spec: AlgebraSpec, k: int):
    """All fiber monomials of Z-degree k over the spec."""
    out = []
    seen = set()
    if spec.is_delta:
        targets = [
            w for w in _all_weights_of_length(spec.n, k)
            if not spec.quotient or w.is_multiplicity_free
        ]
    else:
        targets = [Weight((k,))]
    for gamma in targets:
        for mono in weight_monomials(spec, gamma):
            if mono not in seen:
                seen.add(mono)
                out.append(mono)
    return out


def _all_weights_of_length(n: int, k: int):
    # multiplicity-free only: quotient algebras carry no other weights
    import itertools

    for comb in itertools.combinations(range(n), k):
        yield Weight(tuple(1 if i in comb else 0 for i in range(n)))


def random_base_poly(rng: random.Random, spec: AlgebraSpec, max_degree: int = 1) -> Polynomial:
    out = Polynomial.scalar(spec, rng.randint(-2, 2))
    for i in range(1, spec.base_dim + 1):
        if rng.random() < 0.5:
            out = out + rng.randint(-2, 2) * Polynomial.base(spec, i, rng.randint(1, max_degree))
    return out


def random_z_homogeneous(rng: random.Random, spec: AlgebraSpec, k: int,
                         max_terms: int = 2, with_base: bool = True) -> Polynomial:
    """Random polynomial of Z-degree k (degree-0 base factors allowed)."""
    if k == 0:
        return random_base_poly(rng, spec) if with_base else Polynomial.scalar(
            spec, rng.randint(-2, 2)
        )
    monos = z_degree_monomials(spec, k)
    out = Polynomial.zero(spec)
    if not monos:
        return out
    for _ in range(rng.randint(1, max_terms)):
        mono = rng.choice(monos)
        coeff = Fraction(rng.randint(-2, 2))
        if coeff == 0:
            continue
        term = coeff * Polynomial.monomial(spec, mono.factors)
        if with_base and spec.base_dim and rng.random() < 0.4:
            term = term * Polynomial.base(spec, rng.randint(1, spec.base_dim))
        out = out + term
    return out


def random_graded_morphism(rng: random.Random, source: AlgebraSpec,
                           target: AlgebraSpec) -> GradedMorphism:
    """Random Z-graded morphism source -> target (pullback fills target coords)."""
    base_images = []
    for _ in range(target.base_dim):
        img = Polynomial.zero(source)
        for i in range(1, source.base_dim + 1):
            img = img + rng.randint(-2, 2) * Polynomial.base(source, i)
        if source.base_dim:
            img = img + rng.randint(-1, 1)
        base_images.append(img)
    fibers = {}
    for w, j in target.fiber_variables():
        fibers[(w, j)] = random_z_homogeneous(rng, source, w.length)
    return GradedMorphism(source, target, base_images, fibers)


def scaling_morphism(spec: AlgebraSpec, factors_by_length: dict[int, Fraction]) -> GradedMorphism:
    """xi^k -> c_k * xi^k on a length-type spec (or t^delta likewise)."""
    base = [Polynomial.base(spec, i) for i in range(1, spec.base_dim + 1)]
    fibers = {
        (w, j): factors_by_length[w.length] * Polynomial.fiber(spec, w, j)
        for w, j in spec.fiber_variables()
    }
    return GradedMorphism(spec, spec, base, fibers)


def shear_morphism(spec: AlgebraSpec, c: Fraction) -> GradedMorphism:
    """xi^2 -> xi^2 + c*(xi^1)^2 on an L={0,1,2} spec with dims 1."""
    base = [Polynomial.base(spec, i) for i in range(1, spec.base_dim + 1)]
    one, two = Weight((1,)), Weight((2,))
    fibers = {
        (one, 1): Polynomial.fiber(spec, one, 1),
        (two, 1): Polynomial.fiber(spec, two, 1)
        + c * Polynomial.fiber(spec, one, 1) ** 2,
    }
    return GradedMorphism(spec, spec, base, fibers)


def atlas_corpus() -> list[Atlas]:
    """Hand-built graded atlases: 1-3 charts, linear and quadratic transitions."""
    atlases = []

    u1 = l_spec(EVEN, {1: 1}, base_dim=1)
    atlases.append(Atlas((u1,), {}))
    atlases.append(Atlas((u1,), {(1, 1): GradedMorphism.identity(u1)}))

    # two charts, linear scaling transitions, both parities
    for parity in (EVEN, ODD):
        u = l_spec(parity, {1: 2}, base_dim=1)
        fwd = scaling_morphism(u, {1: Fraction(3)})
        bwd = scaling_morphism(u, {1: Fraction(1, 3)})
        atlases.append(Atlas((u, u), {(1, 2): fwd, (2, 1): bwd}))

    # two charts with a quadratic shear, both parities
    for parity in (EVEN, ODD):
        u = l_spec(parity, {1: 1, 2: 1}, base_dim=1)
        fwd = shear_morphism(u, Fraction(1))
        bwd = shear_morphism(u, Fraction(-1))
        atlases.append(Atlas((u, u), {(1, 2): fwd, (2, 1): bwd}))

    # two charts mixing scaling and shear
    u = l_spec(EVEN, {1: 1, 2: 1})
    fwd_parts = scaling_morphism(u, {1: Fraction(2), 2: Fraction(1)})
    shear = shear_morphism(u, Fraction(1, 2))
    fwd = compose(shear, fwd_parts)
    bwd_parts = scaling_morphism(u, {1: Fraction(1, 2), 2: Fraction(1)})
    unshear = shear_morphism(u, Fraction(-1, 2))
    bwd = compose(bwd_parts, unshear)
    atlases.append(Atlas((u, u), {(1, 2): fwd, (2, 1): bwd}))

    # three charts, identity transitions, with a triple assertion
    u3 = l_spec(EVEN, {1: 1, 2: 2}, base_dim=1)
    ident = GradedMorphism.identity(u3)
    atlases.append(
        Atlas(
            (u3, u3, u3),
            {(i, j): ident for i in (1, 2, 3) for j in (1, 2, 3)},
            triples=((1, 2, 3),),
        )
    )

    # three charts, consistent scalings c_ij = c_i / c_j, with triple
    u = l_spec(ODD, {1: 1})
    weights = {1: Fraction(1), 2: Fraction(2), 3: Fraction(4)}
    trans = {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            trans[(i, j)] = scaling_morphism(u, {1: weights[j] / weights[i]})
    atlases.append(Atlas((u, u, u), trans, triples=((1, 2, 3), (3, 2, 1))))

    # base-affine transition: x -> x + 1 together with a fiber scaling
    u = l_spec(EVEN, {1: 1}, base_dim=1)
    fwd = GradedMorphism(
        u, u,
        [Polynomial.base(u, 1) + 1],
        {(Weight((1,)), 1): 2 * Polynomial.fiber(u, Weight((1,)), 1)},
    )
    bwd = GradedMorphism(
        u, u,
        [Polynomial.base(u, 1) - 1],
        {(Weight((1,)), 1): Fraction(1, 2) * Polynomial.fiber(u, Weight((1,)), 1)},
    )
    atlases.append(Atlas((u, u), {(1, 2): fwd, (2, 1): bwd}))

    # base-coefficient shear: xi^2 -> xi^2 + x*(xi^1)^2
    u = l_spec(EVEN, {1: 1, 2: 1}, base_dim=1)
    x = Polynomial.base(u, 1)
    one, two = Weight((1,)), Weight((2,))
    fwd = GradedMorphism(
        u, u,
        [x],
        {
            (one, 1): Polynomial.fiber(u, one, 1),
            (two, 1): Polynomial.fiber(u, two, 1) + x * Polynomial.fiber(u, one, 1) ** 2,
        },
    )
    bwd = GradedMorphism(
        u, u,
        [x],
        {
            (one, 1): Polynomial.fiber(u, one, 1),
            (two, 1): Polynomial.fiber(u, two, 1) - x * Polynomial.fiber(u, one, 1) ** 2,
        },
    )
    atlases.append(Atlas((u, u), {(1, 2): fwd, (2, 1): bwd}))

    return atlases
