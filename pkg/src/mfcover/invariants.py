"""S_n-invariant multiplicity-free polynomials.

Orbit sums of primitive monomials form a basis of the invariants; this
module provides symmetrization, the primitive normal form, the
orbit-vanishing criterion, the unique decomposition of an invariant into
primitive orbit sums, and the inverse of the covering pullback on
invariants.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algebra import (
    AlgebraSpec,
    FiberMonomial,
    Polynomial,
    canonical_monomial,
    transport_base,
)
from .covering import CoveringData
from .weights import ODD, Permutation, Weight, lambda_decompositions


def symmetrize(f: Polynomial) -> Polynomial:
    """Sum of s.f over all n! permutations."""
    n = f.spec.n
    out = Polynomial.zero(f.spec)
    for s in Permutation.all(n):
        out = out + f.act(s)
    return out


def is_invariant(f: Polynomial) -> bool:
    """Invariance under the adjacent transpositions, which generate S_n."""
    n = f.spec.n
    for i in range(1, n):
        if f.act(Permutation.transposition(n, i, i + 1)) != f:
            return False
    return True


def is_primitive(mono: FiberMonomial, spec: AlgebraSpec) -> bool:
    """Block decomposition with non-decreasing lengths and ordered index ties.

    The factor sequence must tile a_1..a_k by consecutive blocks belonging
    to the weight system, with equal-length neighbours carrying
    non-decreasing variable indices.
    """
    n = spec.n
    if not mono.weight(n).is_multiplicity_free:
        raise ValueError("primitivity is defined for multiplicity-free monomials")
    pos = 1
    prev_len = 0
    prev_idx = 0
    for w, j, e in mono.factors:
        if e != 1:
            return False
        plen = w.length
        if w != Weight.block(n, pos, pos + plen - 1):
            return False
        if plen < prev_len:
            return False
        if plen == prev_len and j < prev_idx:
            return False
        if w not in spec.grading.members:
            return False
        pos += plen
        prev_len = plen
        prev_idx = j
    return True


def primitivize(mono, spec: AlgebraSpec) -> tuple[int, FiberMonomial]:
    """Permutation normal form of a multiplicity-free monomial.

    Accepts a canonical FiberMonomial or a raw ordered factor sequence;
    sorts the factors by (length, index), relabels their disjoint supports
    onto consecutive blocks, and applies the resulting permutation.  The
    returned sign collects every Koszul transposition on the way, so that
    symmetrize(input) = sign * symmetrize(result).
    """
    pre_sign = 1
    if not isinstance(mono, FiberMonomial):
        pre_sign, mono = canonical_monomial(spec.gen_parity, mono)
        if pre_sign == 0:
            raise ValueError("the factor sequence multiplies to zero")
    n = spec.n
    if not mono.weight(n).is_multiplicity_free:
        raise ValueError("cannot primitivize a non-multiplicity-free monomial")
    if mono.is_one:
        return pre_sign, mono
    factors = list(mono.factors)
    order = sorted(
        range(len(factors)),
        key=lambda i: (factors[i][0].length, factors[i][1], factors[i][0].sort_key()),
    )
    images = [0] * n
    pos = 1
    for idx in order:
        for gen in factors[idx][0].support():
            images[gen - 1] = pos
            pos += 1
    leftovers = [g for g in range(1, n + 1) if images[g - 1] == 0]
    for gen, target in zip(leftovers, range(pos, n + 1)):
        images[gen - 1] = target
    s = Permutation(tuple(images))

    acted = Polynomial.monomial(spec, mono.factors).act(s)
    terms = acted.terms()
    if len(terms) != 1:
        raise AssertionError("relabelling a monomial must yield a single monomial")
    new_mono, _, coeff = terms[0]
    if not is_primitive(new_mono, spec):
        raise AssertionError(f"primitivize produced a non-primitive monomial {new_mono}")
    return pre_sign * int(coeff), new_mono


def orbit_vanishes(mono: FiberMonomial, spec: AlgebraSpec) -> bool:
    """Does the orbit sum of a primitive monomial cancel to zero?

    Happens exactly when two odd factors share their length and their
    variable index.
    """
    if not is_primitive(mono, spec):
        raise ValueError("the vanishing criterion applies to primitive monomials")
    seen = set()
    for w, j, _ in mono.factors:
        if spec.var_parity(w) == ODD:
            key = (w.length, j)
            if key in seen:
                return True
            seen.add(key)
    return False


def decompose_invariant(f: Polynomial) -> list[tuple[Polynomial, FiberMonomial]]:
    """Write an invariant as sum of A_j(y) * symmetrize(T_j), T_j primitive.

    Scans leading terms, primitivizes, and peels off whole orbits; the
    result (base coefficient, primitive monomial) list reconstructs the
    input exactly and is unique by the orbit-basis property.
    """
    spec = f.spec
    if not is_invariant(f):
        raise ValueError("polynomial is not S_n-invariant")
    for w in f.total_weights():
        if not w.is_multiplicity_free:
            raise ValueError("decomposition applies to multiplicity-free polynomials")
    zero_base = (0,) * spec.base_dim
    out = []
    rem = f
    while not rem.is_zero:
        mono = rem.fiber_monomials()[0]
        coeff_poly = rem.fiber_coefficient(mono)
        _, prim = primitivize(mono, spec)
        orbit = symmetrize(Polynomial.monomial(spec, prim.factors))
        anchor = orbit.coefficient(mono, zero_base)
        if anchor == 0:
            raise ValueError(
                "invariant polynomial contains a monomial with vanishing orbit"
            )
        a_j = coeff_poly * (Fraction(1) / anchor)
        rem = rem - a_j * orbit
        out.append((a_j, prim))
    n = spec.n
    out.sort(key=lambda pair: pair[1].sort_key(n))
    return out


def push_down(f: Polynomial, cov: CoveringData) -> Polynomial:
    """The unique graded function whose covering pullback is the invariant f.

    Each primitive orbit corresponds to one monomial in the length-type
    coordinates; its normalizing constant is read off by expanding the
    projection pullback of that monomial.
    """
    if f.spec != cov.total:
        raise ValueError("polynomial does not live on the covering total space")
    zero_base = (0,) * cov.total.base_dim
    out = Polynomial.zero(cov.base)
    for a_j, prim in decompose_invariant(f):
        factors = [(Weight((w.length,)), j, 1) for w, j, _ in prim.factors]
        ximono = Polynomial.monomial(cov.base, factors)
        if ximono.is_zero:
            raise AssertionError("nonvanishing orbit paired with a vanishing monomial")
        orbit = symmetrize(Polynomial.monomial(cov.total, prim.factors))
        c_orbit = orbit.coefficient(prim, zero_base)
        pulled = cov.projection.pullback(ximono)
        c_pulled = pulled.coefficient(prim, zero_base)
        if c_pulled == 0:
            raise AssertionError("projection pullback is missing the primitive monomial")
        out = out + transport_base(a_j, cov.base) * ((c_orbit / c_pulled) * ximono)
    if cov.projection.pullback(out) != f:
        raise ValueError("push-down failed to invert the projection pullback")
    return out


def primitive_monomials(spec: AlgebraSpec, k: int) -> list[FiberMonomial]:
    """All primitive monomials of Z-degree k over the spec's weight system."""
    out = []
    for decomp in lambda_decompositions(k, spec.grading):
        parts = decomp.parts
        runs: list[tuple[int, list[Weight]]] = []
        for part in parts:
            if runs and runs[-1][0] == part.length:
                runs[-1][1].append(part)
            else:
                runs.append((part.length, [part]))
        per_run = []
        for plen, blocks in runs:
            dim = spec.dim_at(blocks[0])
            per_run.append(
                list(itertools.combinations_with_replacement(range(1, dim + 1), len(blocks)))
            )
        for pick in itertools.product(*per_run):
            factors = []
            for (plen, blocks), indices in zip(runs, pick):
                factors.extend((w, j, 1) for w, j in zip(blocks, indices))
            out.append(FiberMonomial(tuple(factors)))
    n = spec.n
    return sorted(out, key=lambda m: m.sort_key(n))


def invariant_dimension(spec: AlgebraSpec, k: int) -> int:
    """Dimension of the degree-k invariants over the base functions."""
    return sum(
        1 for mono in primitive_monomials(spec, k) if not orbit_vanishes(mono, spec)
    )
