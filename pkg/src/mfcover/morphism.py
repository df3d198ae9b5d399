"""Graded morphisms between algebra specs, stored as coordinate pullbacks.

A morphism points from a source space to a target space; its data is the
pullback, which sends every target coordinate to a polynomial over the
source.  Depending on the grading modes the pullback preserves the vector
weight (between two vector-weight algebras) or only the Z-degree given by
weight length (into a length-type algebra).
"""

from __future__ import annotations

from .algebra import AlgebraSpec, Polynomial
from .weights import Weight


class GradedMorphism:
    """Weight-compatible coordinate assignment; composition is contravariant
    on pullbacks."""

    def __init__(self, source: AlgebraSpec, target: AlgebraSpec,
                 base_images, fiber_images, validate: bool = True):
        self.source = source
        self.target = target
        self.base_images: tuple[Polynomial, ...] = tuple(base_images)
        self.fiber_images: dict[tuple[Weight, int], Polynomial] = dict(fiber_images)
        if not source.is_delta and target.is_delta:
            raise ValueError(
                "no graded morphisms from a length-type space to a vector-weight space"
            )
        if source.gen_parity != target.gen_parity:
            raise ValueError("source and target generator parities differ")
        if source.is_delta and target.is_delta and source.n != target.n:
            raise ValueError("vector-weight morphisms need equal lattice rank")
        if validate:
            ok, problems = check_weights(self)
            if not ok:
                raise ValueError("ill-graded morphism: " + "; ".join(problems))

    @property
    def preserves_vector_weights(self) -> bool:
        return self.source.is_delta and self.target.is_delta

    @staticmethod
    def identity(spec: AlgebraSpec) -> GradedMorphism:
        base = [Polynomial.base(spec, i) for i in range(1, spec.base_dim + 1)]
        fibers = {(w, j): Polynomial.fiber(spec, w, j) for w, j in spec.fiber_variables()}
        return GradedMorphism(spec, spec, base, fibers)

    def pullback(self, f: Polynomial) -> Polynomial:
        """Substitute coordinate images into a polynomial over the target."""
        if f.spec != self.target:
            raise ValueError("polynomial does not live on the morphism target")
        out = Polynomial.zero(self.source)
        for mono, base, coeff in f.terms():
            acc = Polynomial.scalar(self.source, coeff)
            for i, e in enumerate(base):
                if e:
                    acc = acc * (self.base_images[i] ** e)
            for w, j, e in mono.factors:
                acc = acc * (self.fiber_images[(w, j)] ** e)
            out = out + acc
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedMorphism):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return morphisms_equal(self, other)

    def __hash__(self):
        return hash((self.source, self.target))

    def __repr__(self):
        lines = [f"{self.target.base_var_name(i + 1)} <- {p}"
                 for i, p in enumerate(self.base_images)]
        lines += [f"{self.target.fiber_var_name(w, j)} <- {self.fiber_images[(w, j)]}"
                  for w, j in self.target.fiber_variables()]
        return "<morphism " + "; ".join(lines) + ">"


def check_weights(m: GradedMorphism) -> tuple[bool, list[str]]:
    """Diagnostic: is every coordinate image homogeneous of the mapped weight?"""
    problems = []
    if len(m.base_images) != m.target.base_dim:
        problems.append(
            f"expected {m.target.base_dim} base images, got {len(m.base_images)}"
        )
    for i, img in enumerate(m.base_images):
        if img.spec != m.source:
            problems.append(f"base image {i + 1} lives on the wrong algebra")
        elif not img.is_base_only():
            problems.append(f"image of {m.target.base_var_name(i + 1)} is not weight 0")
    for w, j in m.target.fiber_variables():
        img = m.fiber_images.get((w, j))
        name = m.target.fiber_var_name(w, j)
        if img is None:
            problems.append(f"missing image of {name}")
            continue
        if img.spec != m.source:
            problems.append(f"image of {name} lives on the wrong algebra")
            continue
        if m.preserves_vector_weights:
            if not img.is_homogeneous(w):
                problems.append(f"image of {name} is not homogeneous of weight {m.target.weight_str(w)}")
        else:
            if not img.is_z_homogeneous(w.length):
                problems.append(f"image of {name} is not Z-homogeneous of degree {w.length}")
    return (not problems, problems)


def compose(outer: GradedMorphism, inner: GradedMorphism) -> GradedMorphism:
    """Composite space map inner;outer, so pullbacks compose the other way."""
    if inner.target != outer.source:
        raise ValueError("composition mismatch: inner target differs from outer source")
    base = [inner.pullback(p) for p in outer.base_images]
    fibers = {key: inner.pullback(p) for key, p in outer.fiber_images.items()}
    return GradedMorphism(inner.source, outer.target, base, fibers)


def morphisms_equal(m1: GradedMorphism, m2: GradedMorphism) -> bool:
    """Coordinate-wise canonical-form equality of pullback data."""
    if m1.source != m2.source or m1.target != m2.target:
        raise ValueError("morphisms between different algebras are not comparable")
    if m1.base_images != m2.base_images:
        return False
    keys = set(m1.fiber_images) | set(m2.fiber_images)
    zero = Polynomial.zero(m1.source)
    return all(
        m1.fiber_images.get(k, zero) == m2.fiber_images.get(k, zero) for k in keys
    )
