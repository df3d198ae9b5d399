"""Canonical-form arithmetic in graded supercommutative polynomial algebras.

An algebra is described by an `AlgebraSpec`: base variables of weight zero,
fiber variables carrying formal weights, and optionally the quotient by the
ideal of non-multiplicity-free weights.  Elements are kept in a canonical
sparse form (fiber monomial, base monomial) -> rational coefficient, with
Koszul signs resolved eagerly, so equality of values is equality of dicts
and printing is deterministic.

Both gradings use the same machinery: a Z^n-graded algebra has fiber
variables weighted by vectors in Z^n, while a Z-graded (length-type) algebra
is the n=1 case whose single generator is the formal length unit.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction

from .weights import (
    EVEN,
    ODD,
    Permutation,
    QuotientLabel,
    Weight,
    WeightSystem,
    act,
    is_sn_invariant,
)


@dataclass(frozen=True)
class AlgebraSpec:
    """Variable table and grading mode of one polynomial algebra.

    `grading` is a WeightSystem (vector weights, n-fold vector bundle style)
    or a QuotientLabel (length weights, graded manifold style).  `fiber_dims`
    assigns a positive dimension to every nonzero weight of the grading set;
    length k of a length-type algebra is keyed by the 1-vector (k,).

    Naming fields only affect printing and parsing and are excluded from
    equality.
    """

    grading: WeightSystem | QuotientLabel
    base_dim: int
    fiber_dims: tuple[tuple[Weight, int], ...]
    quotient: bool = False
    base_var: str = field(default="", compare=False)
    fiber_var: str = field(default="", compare=False)
    gen_names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.base_dim < 0:
            raise ValueError("base_dim must be >= 0")
        dims = dict(self.fiber_dims)
        if self.is_delta:
            expected = {w for w in self.grading.members if not w.is_zero}
        else:
            if self.quotient:
                raise ValueError("length-type algebras carry no multiplicity ideal")
            expected = {Weight((k,)) for k in self.grading.lengths if k > 0}
        if set(dims) != expected:
            raise ValueError(
                "fiber_dims keys must be exactly the nonzero weights of the grading set"
            )
        for w, d in dims.items():
            if d < 1:
                raise ValueError(f"dimension at {w} must be >= 1")
        canonical = tuple(sorted(dims.items(), key=lambda kv: kv[0].sort_key()))
        object.__setattr__(self, "fiber_dims", canonical)
        if not self.base_var:
            object.__setattr__(self, "base_var", "y" if self.is_delta else "x")
        if not self.fiber_var:
            object.__setattr__(self, "fiber_var", "t" if self.is_delta else "xi")
        if self.is_delta and not self.gen_names:
            names = tuple(f"a{i}" for i in range(1, self.grading.n + 1))
            object.__setattr__(self, "gen_names", names)

    @staticmethod
    def delta_type(
        system: WeightSystem,
        base_dim: int,
        dims,
        quotient: bool = False,
        base_var: str = "",
        fiber_var: str = "",
        gen_names: tuple[str, ...] = (),
    ) -> AlgebraSpec:
        return AlgebraSpec(
            system, base_dim, tuple(dict(dims).items()), quotient,
            base_var, fiber_var, gen_names,
        )

    @staticmethod
    def l_type(
        label: QuotientLabel,
        base_dim: int,
        dims,
        base_var: str = "",
        fiber_var: str = "",
    ) -> AlgebraSpec:
        keyed = {Weight((k,)): d for k, d in dict(dims).items()}
        return AlgebraSpec(label, base_dim, tuple(keyed.items()), False, base_var, fiber_var)

    @property
    def is_delta(self) -> bool:
        return isinstance(self.grading, WeightSystem)

    @property
    def gen_parity(self) -> int:
        if self.is_delta:
            return self.grading.generator_parity
        return self.grading.beta_parity

    @property
    def n(self) -> int:
        """Dimension of the weight lattice the fiber variables live in."""
        return self.grading.n if self.is_delta else 1

    def dim_at(self, w: Weight) -> int:
        for key, d in self.fiber_dims:
            if key == w:
                return d
        return 0

    def fiber_keys(self) -> list[Weight]:
        return [w for w, _ in self.fiber_dims]

    def fiber_variables(self) -> list[tuple[Weight, int]]:
        return [(w, j) for w, d in self.fiber_dims for j in range(1, d + 1)]

    def var_parity(self, w: Weight) -> int:
        return (w.length * self.gen_parity) % 2

    def dims_constant_on_lengths(self) -> bool:
        by_len: dict[int, int] = {}
        for w, d in self.fiber_dims:
            if by_len.setdefault(w.length, d) != d:
                return False
        return True

    def dims_by_length(self) -> dict[int, int]:
        if not self.dims_constant_on_lengths():
            raise ValueError("fiber dimensions are not constant on length classes")
        return {w.length: d for w, d in self.fiber_dims}

    def with_quotient(self, flag: bool) -> AlgebraSpec:
        return dataclasses.replace(self, quotient=flag)

    # -- presentation helpers -------------------------------------------------

    def weight_str(self, w: Weight) -> str:
        if not self.is_delta:
            return str(w.length)
        parts = []
        for i, e in enumerate(w.exponents):
            if e == 1:
                parts.append(self.gen_names[i])
            elif e > 1:
                parts.append(f"{e}*{self.gen_names[i]}")
        return "+".join(parts) if parts else "0"

    def base_var_name(self, i: int) -> str:
        return f"{self.base_var}{i}"

    def fiber_var_name(self, w: Weight, j: int) -> str:
        return f"{self.fiber_var}[{self.weight_str(w)},{j}]"


@dataclass(frozen=True)
class FiberMonomial:
    """Product of fiber variables in canonical order.

    Factors are (weight, index, exponent) triples sorted by the variable key
    (weight length, descending weight, index); odd variables never carry an
    exponent above 1.
    """

    factors: tuple[tuple[Weight, int, int], ...]

    @property
    def is_one(self) -> bool:
        return not self.factors

    @property
    def degree(self) -> int:
        return sum(e for _, _, e in self.factors)

    def weight(self, n: int) -> Weight:
        total = Weight.zero(n)
        for w, _, e in self.factors:
            total = total + w.scaled(e)
        return total

    def sort_key(self, n: int):
        w = self.weight(n)
        return (w.sort_key(), tuple((f[0].sort_key(), f[1], f[2]) for f in self.factors))

    def variables(self) -> list[tuple[Weight, int]]:
        return [(w, j) for w, j, _ in self.factors]


MONOMIAL_ONE = FiberMonomial(())


def _var_key(w: Weight, j: int):
    return (w.sort_key(), j)


def canonical_monomial(gen_parity: int, factors) -> tuple[int, FiberMonomial]:
    """Sort a factor sequence into canonical order, tracking the Koszul sign.

    Returns (sign, monomial); sign 0 means the product vanished because some
    odd variable appeared twice.
    """
    units = []
    for w, j, e in factors:
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            continue
        p = (w.length * gen_parity) % 2
        if p == ODD and e > 1:
            return 0, MONOMIAL_ONE
        units.append((_var_key(w, j), w, j, e, (e * p) % 2))

    # Koszul sign: one transposition of two odd factors per odd-odd inversion.
    sign = 1
    odd_keys = [key for key, _, _, _, p in units if p == ODD]
    for a in range(len(odd_keys)):
        for b in range(a + 1, len(odd_keys)):
            if odd_keys[a] == odd_keys[b]:
                return 0, MONOMIAL_ONE
            if odd_keys[a] > odd_keys[b]:
                sign = -sign

    units.sort(key=lambda u: u[0])
    merged: list[list] = []
    for key, w, j, e, _ in units:
        if merged and merged[-1][0] == key:
            merged[-1][3] += e
        else:
            merged.append([key, w, j, e])
    for _, w, _, e in merged:
        if (w.length * gen_parity) % 2 == ODD and e > 1:
            return 0, MONOMIAL_ONE
    return sign, FiberMonomial(tuple((w, j, e) for _, w, j, e in merged))


def _base_key(base: tuple[int, ...]):
    return (sum(base), base)


class Polynomial:
    """Element of an AlgebraSpec's function algebra, in canonical form."""

    __slots__ = ("spec", "_terms")

    def __init__(self, spec: AlgebraSpec, terms: dict | None = None):
        self.spec = spec
        self._terms: dict[tuple[FiberMonomial, tuple[int, ...]], Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                self._insert(key, Fraction(coeff))

    def _insert(self, key, coeff: Fraction):
        if coeff == 0:
            return
        mono, base = key
        if self.spec.quotient and not mono.weight(self.spec.n).is_multiplicity_free:
            return
        cur = self._terms.get(key)
        total = coeff if cur is None else cur + coeff
        if total == 0:
            self._terms.pop(key, None)
        else:
            self._terms[key] = total

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(spec: AlgebraSpec) -> Polynomial:
        return Polynomial(spec)

    @staticmethod
    def scalar(spec: AlgebraSpec, value) -> Polynomial:
        zero_base = (0,) * spec.base_dim
        return Polynomial(spec, {(MONOMIAL_ONE, zero_base): Fraction(value)})

    @staticmethod
    def one(spec: AlgebraSpec) -> Polynomial:
        return Polynomial.scalar(spec, 1)

    @staticmethod
    def base(spec: AlgebraSpec, i: int, exp: int = 1) -> Polynomial:
        if not 1 <= i <= spec.base_dim:
            raise ValueError(f"base variable index {i} out of range 1..{spec.base_dim}")
        if exp < 0:
            raise ValueError("negative exponent")
        mono = tuple(exp if k == i - 1 else 0 for k in range(spec.base_dim))
        return Polynomial(spec, {(MONOMIAL_ONE, mono): Fraction(1)})

    @staticmethod
    def fiber(spec: AlgebraSpec, w: Weight, j: int, exp: int = 1) -> Polynomial:
        dim = spec.dim_at(w)
        if dim == 0:
            raise ValueError(f"no fiber variable of weight {spec.weight_str(w)}")
        if not 1 <= j <= dim:
            raise ValueError(
                f"fiber index {j} out of range 1..{dim} at weight {spec.weight_str(w)}"
            )
        sign, mono = canonical_monomial(spec.gen_parity, [(w, j, exp)])
        if sign == 0:
            return Polynomial.zero(spec)
        zero_base = (0,) * spec.base_dim
        return Polynomial(spec, {(mono, zero_base): Fraction(sign)})

    @staticmethod
    def monomial(spec: AlgebraSpec, factors, base=None, coeff=1) -> Polynomial:
        """Product of fiber variables (with Koszul normalization) times a base monomial."""
        sign, mono = canonical_monomial(spec.gen_parity, factors)
        if sign == 0:
            return Polynomial.zero(spec)
        for w, j, _ in mono.factors:
            dim = spec.dim_at(w)
            if not 1 <= j <= dim:
                raise ValueError(f"unknown fiber variable {spec.fiber_var_name(w, j)}")
        base = tuple(base) if base is not None else (0,) * spec.base_dim
        if len(base) != spec.base_dim:
            raise ValueError("base exponent tuple has wrong length")
        return Polynomial(spec, {(mono, base): sign * Fraction(coeff)})

    # -- inspection -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self):
        """Canonically ordered (fiber monomial, base exponents, coefficient)."""
        n = self.spec.n
        keys = sorted(self._terms, key=lambda k: (k[0].sort_key(n), _base_key(k[1])))
        return [(mono, base, self._terms[(mono, base)]) for mono, base in keys]

    def fiber_monomials(self) -> list[FiberMonomial]:
        n = self.spec.n
        monos = {mono for mono, _ in self._terms}
        return sorted(monos, key=lambda m: m.sort_key(n))

    def coefficient(self, mono: FiberMonomial, base: tuple[int, ...]) -> Fraction:
        return self._terms.get((mono, base), Fraction(0))

    def fiber_coefficient(self, mono: FiberMonomial) -> Polynomial:
        """The base-variable polynomial multiplying one fiber monomial."""
        out = {}
        for (m, base), c in self._terms.items():
            if m == mono:
                out[(MONOMIAL_ONE, base)] = c
        return Polynomial(self.spec, out)

    def as_vector(self) -> dict:
        """Sparse (fiber monomial, base monomial) -> coefficient view."""
        return dict(self._terms)

    def scalar_value(self) -> Fraction:
        """Value of a constant polynomial."""
        if self.is_zero:
            return Fraction(0)
        zero_base = (0,) * self.spec.base_dim
        if set(self._terms) != {(MONOMIAL_ONE, zero_base)}:
            raise ValueError("polynomial is not a scalar")
        return self._terms[(MONOMIAL_ONE, zero_base)]

    def is_base_only(self) -> bool:
        return all(mono.is_one for mono, _ in self._terms)

    def total_weights(self) -> list[Weight]:
        n = self.spec.n
        return sorted({m.weight(n) for m, _ in self._terms}, key=Weight.sort_key)

    def parity(self) -> int | None:
        """Common Z_2-parity of all terms (EVEN for zero), None for a mixed element."""
        if self.is_zero:
            return EVEN
        seen = {(m.weight(self.spec.n).length * self.spec.gen_parity) % 2
                for m, _ in self._terms}
        return seen.pop() if len(seen) == 1 else None

    # -- arithmetic -----------------------------------------------------------

    def _require_same_spec(self, other: Polynomial):
        if self.spec != other.spec:
            raise ValueError("operands belong to different algebras")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.scalar(self.spec, other)
        self._require_same_spec(other)
        out = Polynomial(self.spec)
        out._terms = dict(self._terms)
        for key, c in other._terms.items():
            out._insert(key, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial(self.spec)
        out._terms = {k: -c for k, c in self._terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.scalar(self.spec, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            out = Polynomial(self.spec)
            if other != 0:
                q = Fraction(other)
                out._terms = {k: c * q for k, c in self._terms.items()}
            return out
        self._require_same_spec(other)
        gp = self.spec.gen_parity
        out = Polynomial(self.spec)
        for (m1, b1), c1 in self._terms.items():
            for (m2, b2), c2 in other._terms.items():
                sign, mono = canonical_monomial(gp, m1.factors + m2.factors)
                if sign == 0:
                    continue
                base = tuple(x + y for x, y in zip(b1, b2))
                out._insert((mono, base), sign * c1 * c2)
        return out

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if exp < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.spec)
        for _ in range(exp):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.spec == other.spec and self._terms == other._terms

    def __hash__(self):
        return hash((self.spec.base_dim, frozenset(self._terms.items())))

    # -- graded structure -----------------------------------------------------

    def reduce_mod_multiplicity(self) -> Polynomial:
        """Drop every term of non-multiplicity-free total weight; idempotent."""
        if not self.spec.is_delta:
            raise ValueError("the multiplicity ideal lives in vector-weight algebras")
        n = self.spec.n
        out = Polynomial(self.spec)
        out._terms = {
            (m, b): c
            for (m, b), c in self._terms.items()
            if m.weight(n).is_multiplicity_free
        }
        return out

    def with_quotient_flag(self, flag: bool) -> Polynomial:
        """The same element regarded in the quotient (or full) algebra."""
        spec = self.spec.with_quotient(flag)
        return Polynomial(spec, self._terms)

    def homogeneous_component(self, gamma: Weight) -> Polynomial:
        n = self.spec.n
        out = Polynomial(self.spec)
        out._terms = {
            (m, b): c for (m, b), c in self._terms.items() if m.weight(n) == gamma
        }
        return out

    def z_degree_component(self, k: int) -> Polynomial:
        n = self.spec.n
        out = Polynomial(self.spec)
        out._terms = {
            (m, b): c
            for (m, b), c in self._terms.items()
            if m.weight(n).length == k
        }
        return out

    def is_homogeneous(self, gamma: Weight) -> bool:
        n = self.spec.n
        return all(m.weight(n) == gamma for m, _ in self._terms)

    def is_z_homogeneous(self, k: int) -> bool:
        n = self.spec.n
        return all(m.weight(n).length == k for m, _ in self._terms)

    def act(self, s: Permutation) -> Polynomial:
        """Relabel t_j^delta -> t_j^{s.delta} and re-canonicalize."""
        spec = self.spec
        if not spec.is_delta:
            raise ValueError("the permutation action is defined on vector-weight algebras")
        if not spec.dims_constant_on_lengths():
            raise ValueError(
                "the permutation action needs fiber dimensions constant on lengths"
            )
        if not is_sn_invariant(spec.grading):
            raise ValueError("the permutation action needs an S_n-invariant weight system")
        gp = spec.gen_parity
        out = Polynomial(spec)
        for (mono, base), c in self._terms.items():
            moved = [(act(s, w), j, e) for w, j, e in mono.factors]
            sign, new_mono = canonical_monomial(gp, moved)
            if sign == 0:
                continue
            out._insert((new_mono, base), sign * c)
        return out

    # -- printing -------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        chunks = []
        for mono, base, coeff in self.terms():
            body = []
            for i, e in enumerate(base):
                if e:
                    body.append(self.spec.base_var_name(i + 1) + (f"^{e}" if e > 1 else ""))
            for w, j, e in mono.factors:
                body.append(self.spec.fiber_var_name(w, j) + (f"^{e}" if e > 1 else ""))
            mag = abs(coeff)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = "*".join(body)
            else:
                text = f"{mag}*" + "*".join(body)
            chunks.append((coeff < 0, text))
        out = ("-" if chunks[0][0] else "") + chunks[0][1]
        for neg, text in chunks[1:]:
            out += (" - " if neg else " + ") + text
        return out

    def __repr__(self) -> str:
        return f"<{self}>"


def transport_base(poly: Polynomial, spec: AlgebraSpec) -> Polynomial:
    """Move a base-only polynomial to another algebra with the same base."""
    if not poly.is_base_only():
        raise ValueError("only base-variable polynomials can be transported")
    if poly.spec.base_dim != spec.base_dim:
        raise ValueError("base dimensions differ")
    out = Polynomial(spec)
    for (_, base), c in poly._terms.items():
        out._insert((MONOMIAL_ONE, base), c)
    return out


def weight_monomials(spec: AlgebraSpec, gamma: Weight) -> list[FiberMonomial]:
    """All canonical fiber monomials of total weight gamma, in canonical order.

    Odd variables are capped at exponent one; in a quotient algebra only
    multiplicity-free targets have any monomials at all.
    """
    if gamma.n != spec.n:
        raise ValueError("weight dimension mismatch")
    if spec.quotient and not gamma.is_multiplicity_free:
        return []
    variables = spec.fiber_variables()
    out: list[FiberMonomial] = []

    def fits(w: Weight, e: int, remaining: Weight) -> bool:
        return all(e * a <= b for a, b in zip(w.exponents, remaining.exponents))

    def recurse(idx: int, remaining: Weight, chosen: list):
        if remaining.is_zero:
            out.append(FiberMonomial(tuple(chosen)))
            return
        if idx == len(variables):
            return
        w, j = variables[idx]
        max_exp = 0
        while fits(w, max_exp + 1, remaining):
            max_exp += 1
        if spec.var_parity(w) == ODD:
            max_exp = min(max_exp, 1)
        for e in range(0, max_exp + 1):
            if e:
                chosen.append((w, j, e))
            rest = Weight(tuple(b - e * a for a, b in zip(w.exponents, remaining.exponents)))
            recurse(idx + 1, rest, chosen)
            if e:
                chosen.pop()

    recurse(0, gamma, [])
    n = spec.n
    return sorted(out, key=lambda m: m.sort_key(n))
