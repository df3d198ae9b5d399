"""Formal chart graphs for graded and multiplicity-free manifolds.

An atlas is a finite list of chart algebras with transition morphisms on
formal overlaps and explicit triple assertions for the cocycle condition.
Covering an atlas chart by chart and descending a symmetric atlas are the
executable versions of the equivalence between graded manifolds and
symmetric multiplicity-free manifolds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraSpec
from .covering import (
    CoveringData,
    build_covering,
    canonical_covering,
    lift_graded_morphism,
)
from .invariants import push_down
from .morphism import GradedMorphism, compose, morphisms_equal
from .weights import Permutation, WeightSystem, act


@dataclass
class Atlas:
    """Charts are numbered from 1; transitions[(i, j)] is the space map from
    chart i to chart j, so its pullback carries chart-j coordinates to
    chart-i polynomials."""

    charts: tuple[AlgebraSpec, ...]
    transitions: dict[tuple[int, int], GradedMorphism] = field(default_factory=dict)
    triples: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        self.charts = tuple(self.charts)
        self.triples = tuple(tuple(t) for t in self.triples)
        modes = {spec.is_delta for spec in self.charts}
        if len(modes) > 1:
            raise ValueError("atlas charts must share one grading mode")
        for (i, j), m in self.transitions.items():
            self._check_id(i)
            self._check_id(j)
            if m.source != self.chart(i) or m.target != self.chart(j):
                raise ValueError(f"transition {i} -> {j} does not match its charts")
        for i, j, k in self.triples:
            for c in (i, j, k):
                self._check_id(c)

    def _check_id(self, i: int):
        if not 1 <= i <= len(self.charts):
            raise ValueError(f"chart id {i} out of range 1..{len(self.charts)}")

    @property
    def size(self) -> int:
        return len(self.charts)

    def chart(self, i: int) -> AlgebraSpec:
        self._check_id(i)
        return self.charts[i - 1]

    def sorted_transitions(self):
        return sorted(self.transitions.items())

    def __eq__(self, other):
        if not isinstance(other, Atlas):
            return NotImplemented
        return (
            self.charts == other.charts
            and set(self.transitions) == set(other.transitions)
            and all(self.transitions[k] == other.transitions[k] for k in self.transitions)
            and sorted(self.triples) == sorted(other.triples)
        )


@dataclass
class CocycleReport:
    ok: bool
    failures: list[str]

    def __str__(self) -> str:
        if self.ok:
            return "cocycle: yes"
        return "cocycle: no\n" + "\n".join("  " + f for f in self.failures)


def check_cocycle(a: Atlas) -> CocycleReport:
    """Identity, inverse-pair, and triple conditions on the listed data."""
    failures = []
    for (i, j), m in a.sorted_transitions():
        if i == j and not morphisms_equal(m, GradedMorphism.identity(a.chart(i))):
            failures.append(f"transition {i} -> {i} is not the identity")
    for (i, j), m in a.sorted_transitions():
        if i >= j or (j, i) not in a.transitions:
            continue
        back = a.transitions[(j, i)]
        if not morphisms_equal(compose(back, m), GradedMorphism.identity(a.chart(i))):
            failures.append(f"transitions {i} -> {j} -> {i} do not compose to the identity")
        if not morphisms_equal(compose(m, back), GradedMorphism.identity(a.chart(j))):
            failures.append(f"transitions {j} -> {i} -> {j} do not compose to the identity")
    for i, j, k in a.triples:
        needed = [(i, k), (k, j), (j, i)]
        if any(key not in a.transitions for key in needed):
            failures.append(f"triple ({i},{j},{k}) lacks a listed transition")
            continue
        loop = compose(
            a.transitions[(j, i)],
            compose(a.transitions[(k, j)], a.transitions[(i, k)]),
        )
        if not morphisms_equal(loop, GradedMorphism.identity(a.chart(i))):
            failures.append(f"cocycle fails on triple ({i},{j},{k})")
    return CocycleReport(not failures, failures)


@dataclass
class CoveredAtlas:
    atlas: Atlas
    coverings: dict[int, CoveringData]
    base_atlas: Atlas


def cover_atlas(a: Atlas, system: WeightSystem) -> CoveredAtlas:
    """Chartwise covering with lifted transitions; re-verifies the cocycle
    and the compatibility of the projections with the transitions."""
    report = check_cocycle(a)
    if not report.ok:
        raise ValueError("input atlas fails the cocycle check: " + "; ".join(report.failures))
    if a.charts and a.charts[0].is_delta:
        raise ValueError("only length-type atlases can be covered")
    coverings = {i: build_covering(a.chart(i), system) for i in range(1, a.size + 1)}
    lifted = {
        (i, j): lift_graded_morphism(m, coverings[i], coverings[j])
        for (i, j), m in a.transitions.items()
    }
    covered = Atlas(
        tuple(coverings[i].total for i in range(1, a.size + 1)), lifted, a.triples
    )
    again = check_cocycle(covered)
    if not again.ok:
        raise AssertionError("lifted transitions broke the cocycle: " + "; ".join(again.failures))
    for (i, j), m in a.transitions.items():
        left = compose(coverings[j].projection, lifted[(i, j)])
        right = compose(m, coverings[i].projection)
        if not morphisms_equal(left, right):
            raise AssertionError(f"projection square fails for transition {i} -> {j}")
    return CoveredAtlas(covered, coverings, a)


def check_symmetric(a: Atlas) -> bool:
    """Do all transitions commute with the permutation action on coordinates?"""
    if not a.charts:
        return True
    if not a.charts[0].is_delta:
        raise ValueError("symmetry is a property of vector-weight atlases")
    n = a.charts[0].n
    for (i, j), m in a.sorted_transitions():
        target = a.chart(j)
        for step in range(1, n):
            s = Permutation.transposition(n, step, step + 1)
            for w, idx in target.fiber_variables():
                if m.fiber_images[(w, idx)].act(s) != m.fiber_images[(act(s, w), idx)]:
                    return False
    return True


def descend(a: Atlas) -> tuple[Atlas, dict[int, CoveringData]]:
    """Quotient a symmetric multiplicity-free atlas down to a graded atlas.

    Each chart becomes the length-type domain it canonically covers; each
    transition descends through push-down, and the descended morphism is
    re-verified to lift back to the original one.
    """
    if not check_symmetric(a):
        raise ValueError("descent needs S_n-invariant transitions")
    coverings = {i: canonical_covering(a.chart(i)) for i in range(1, a.size + 1)}
    descended = {}
    for (i, j), m in a.transitions.items():
        cov_i, cov_j = coverings[i], coverings[j]
        base_images = [
            push_down(m.pullback(cov_j.projection.base_images[c]), cov_i)
            for c in range(cov_j.base.base_dim)
        ]
        fiber_images = {
            key: push_down(m.pullback(img), cov_i)
            for key, img in cov_j.projection.fiber_images.items()
        }
        phi = GradedMorphism(cov_i.base, cov_j.base, base_images, fiber_images)
        if not morphisms_equal(lift_graded_morphism(phi, cov_i, cov_j), m):
            raise AssertionError(f"descended transition {i} -> {j} does not lift back")
        descended[(i, j)] = phi
    graded = Atlas(
        tuple(coverings[i].base for i in range(1, a.size + 1)), descended, a.triples
    )
    report = check_cocycle(graded)
    if not report.ok:
        raise AssertionError("descent broke the cocycle: " + "; ".join(report.failures))
    return graded, coverings


def roundtrip(a: Atlas, system: WeightSystem) -> tuple[bool, list[str]]:
    """Cover, then descend, and compare with the input atlas."""
    covered = cover_atlas(a, system)
    if not check_symmetric(covered.atlas):
        return False, ["covered atlas is not symmetric"]
    back, _ = descend(covered.atlas)
    details = []
    if back.charts != a.charts:
        details.append("charts differ after the round trip")
    for key, m in a.transitions.items():
        other = back.transitions.get(key)
        if other is None or not morphisms_equal(other, m):
            details.append(f"transition {key[0]} -> {key[1]} differs after the round trip")
    return (not details, details)


def lift_atlas_morphism(
    phis: dict[int, GradedMorphism], src: CoveredAtlas, dst: CoveredAtlas
) -> dict[int, GradedMorphism]:
    """Chartwise lift of an atlas morphism given as compatible chart maps.

    Compatibility with the transitions is checked before lifting and again
    on the lifted side; a failure names the offending chart pair.
    """
    src_a, dst_a = src.atlas, dst.atlas
    if set(phis) != set(range(1, src_a.size + 1)):
        raise ValueError("need one chart morphism per source chart")
    for (i, j), m in src.base_atlas.transitions.items():
        if (i, j) not in dst.base_atlas.transitions:
            raise ValueError(f"target atlas lacks the transition {i} -> {j}")
        left = compose(phis[j], m)
        right = compose(dst.base_atlas.transitions[(i, j)], phis[i])
        if not morphisms_equal(left, right):
            raise ValueError(f"chart morphisms are incompatible on the pair ({i}, {j})")
    lifted = {
        i: lift_graded_morphism(phis[i], src.coverings[i], dst.coverings[i])
        for i in phis
    }
    for (i, j), m in src_a.transitions.items():
        left = compose(lifted[j], m)
        right = compose(dst_a.transitions[(i, j)], lifted[i])
        if not morphisms_equal(left, right):
            raise AssertionError(f"lifted morphisms are incompatible on the pair ({i}, {j})")
    return lifted
