"""Multiplicity-free weight systems in Z^n and the S_n machinery on them.

Weights are dense vectors of non-negative integer exponents over n formal
generators a_1..a_n of a common parity.  A weight system is a finite set of
0/1-weights containing zero; quotienting an S_n-invariant system by the
permutation action leaves only the lengths, which is what `QuotientLabel`
records.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

EVEN = 0
ODD = 1

PARITY_NAMES = {EVEN: "even", ODD: "odd"}


def parity_from_name(name: str) -> int:
    try:
        return {"even": EVEN, "odd": ODD}[name]
    except KeyError:
        raise ValueError(f"unknown parity {name!r}, expected 'even' or 'odd'") from None


@dataclass(frozen=True)
class Weight:
    """Exponent vector of a formal Z^n weight."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"weight entries must be >= 0, got {self.exponents}")

    @staticmethod
    def zero(n: int) -> Weight:
        return Weight((0,) * n)

    @staticmethod
    def unit(n: int, i: int) -> Weight:
        """The generator a_i, 1-based."""
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range 1..{n}")
        return Weight(tuple(1 if k == i - 1 else 0 for k in range(n)))

    @staticmethod
    def block(n: int, start: int, stop: int) -> Weight:
        """a_start + a_{start+1} + ... + a_stop (inclusive, 1-based)."""
        return Weight(tuple(1 if start <= k + 1 <= stop else 0 for k in range(n)))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def length(self) -> int:
        return sum(self.exponents)

    @property
    def is_zero(self) -> bool:
        return self.length == 0

    @property
    def is_multiplicity_free(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def support(self) -> tuple[int, ...]:
        """1-based indices of generators with nonzero exponent."""
        return tuple(i + 1 for i, e in enumerate(self.exponents) if e)

    def __add__(self, other: Weight) -> Weight:
        if self.n != other.n:
            raise ValueError("weight dimension mismatch")
        return Weight(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def scaled(self, k: int) -> Weight:
        return Weight(tuple(k * e for e in self.exponents))

    def sort_key(self):
        # Length first, then descending lexicographic; a_1 sorts before a_2,
        # and the block a_1+a_2 before a_3+a_4.
        return (self.length, tuple(-e for e in self.exponents))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"a{i + 1}")
            elif e > 1:
                parts.append(f"{e}*a{i + 1}")
        return "+".join(parts)


def length(delta: Weight) -> int:
    """Number of generators in delta, counted with exponents."""
    return delta.length


def chi(gamma: Weight) -> int:
    """The Z-valued sum-of-exponents homomorphism on Z^n."""
    return sum(gamma.exponents)


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..n}; images[i-1] = s(i)."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @staticmethod
    def identity(n: int) -> Permutation:
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def transposition(n: int, i: int, j: int) -> Permutation:
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return Permutation(tuple(images))

    @staticmethod
    def all(n: int):
        for images in itertools.permutations(range(1, n + 1)):
            yield Permutation(images)

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def __mul__(self, other: Permutation) -> Permutation:
        # (s*t)(i) = s(t(i))
        if self.n != other.n:
            raise ValueError("permutation size mismatch")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            k = self(start)
            while k != start:
                cyc.append(k)
                seen.add(k)
                k = self(k)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "id"
        return "".join("(" + " ".join(str(i) for i in c) + ")" for c in cycs)

    def __str__(self) -> str:
        return self.cycle_string()


def act(s: Permutation, delta: Weight) -> Weight:
    """s.(a_{i_1}+...+a_{i_p}) = a_{s(i_1)}+...+a_{s(i_p)}."""
    if s.n != delta.n:
        raise ValueError(f"permutation on {s.n} letters applied to weight in Z^{delta.n}")
    out = [0] * delta.n
    for i, e in enumerate(delta.exponents):
        out[s(i + 1) - 1] = e
    return Weight(tuple(out))


@dataclass(frozen=True)
class WeightSystem:
    """Finite set of multiplicity-free weights containing 0."""

    n: int
    generator_parity: int
    members: frozenset[Weight]

    def __post_init__(self):
        if self.generator_parity not in (EVEN, ODD):
            raise ValueError("generator_parity must be EVEN (0) or ODD (1)")
        if Weight.zero(self.n) not in self.members:
            raise ValueError("weight system must contain the zero weight")
        for w in self.members:
            if w.n != self.n:
                raise ValueError(f"weight {w} does not live in Z^{self.n}")
            if not w.is_multiplicity_free:
                raise ValueError(f"weight {w} is not multiplicity-free")

    @staticmethod
    def full(n: int, parity: int) -> WeightSystem:
        """Delta_n: all 0/1-vectors of length n."""
        members = frozenset(Weight(bits) for bits in itertools.product((0, 1), repeat=n))
        return WeightSystem(n, parity, members)

    @staticmethod
    def from_lengths(n: int, parity: int, lengths) -> WeightSystem:
        """All multiplicity-free weights whose length lies in the given set."""
        wanted = set(lengths) | {0}
        members = frozenset(
            Weight(bits)
            for bits in itertools.product((0, 1), repeat=n)
            if sum(bits) in wanted
        )
        return WeightSystem(n, parity, members)

    @property
    def lengths(self) -> frozenset[int]:
        return frozenset(w.length for w in self.members)

    def sorted_members(self) -> list[Weight]:
        return sorted(self.members, key=Weight.sort_key)

    def members_of_length(self, k: int) -> list[Weight]:
        return [w for w in self.sorted_members() if w.length == k]

    def weight_parity(self, delta: Weight) -> int:
        return (delta.length * self.generator_parity) % 2

    def has_all_generators(self) -> bool:
        return all(Weight.unit(self.n, i) in self.members for i in range(1, self.n + 1))

    def __str__(self) -> str:
        inner = ", ".join(str(w) for w in self.sorted_members())
        return "{" + inner + "}"


def parity(delta: Weight, sys: WeightSystem) -> int:
    """Parity of a weight: its length times the shared generator parity."""
    return sys.weight_parity(delta)


def is_sn_invariant(sys: WeightSystem) -> bool:
    """Closure under adjacent transpositions, which generate S_n."""
    if sys.n <= 1:
        return True
    for i in range(1, sys.n):
        s = Permutation.transposition(sys.n, i, i + 1)
        for w in sys.members:
            if act(s, w) not in sys.members:
                return False
    return True


@dataclass(frozen=True)
class QuotientLabel:
    """Image of an S_n-invariant weight system under taking lengths."""

    lengths: frozenset[int]
    beta_parity: int

    def __post_init__(self):
        if 0 not in self.lengths:
            raise ValueError("quotient label must contain length 0")
        if any(k < 0 for k in self.lengths):
            raise ValueError("lengths must be non-negative")
        if self.beta_parity not in (EVEN, ODD):
            raise ValueError("beta_parity must be EVEN (0) or ODD (1)")

    def sorted_lengths(self) -> list[int]:
        return sorted(self.lengths)

    def length_parity(self, k: int) -> int:
        return (k * self.beta_parity) % 2

    def __str__(self) -> str:
        return "{" + ", ".join(str(k) for k in self.sorted_lengths()) + "}"


def quotient_label(sys: WeightSystem) -> QuotientLabel:
    """L = Delta/S_n, recorded as the set of member lengths."""
    if not is_sn_invariant(sys):
        raise ValueError("quotient label is only defined for S_n-invariant systems")
    return QuotientLabel(frozenset(w.length for w in sys.members), sys.generator_parity)


def deck_group(sys: WeightSystem) -> list[Permutation]:
    """All lattice automorphisms commuting with chi and preserving the system.

    Any such automorphism fixes the generator set when every a_i belongs to
    the system, hence is a permutation matrix; enumerating permutations is
    then exhaustive.  Systems missing a generator are refused.
    """
    if not sys.has_all_generators():
        raise ValueError(
            "deck group enumeration requires every generator a_i in the system"
        )
    out = []
    for s in Permutation.all(sys.n):
        if frozenset(act(s, w) for w in sys.members) == sys.members:
            out.append(s)
    return out


@dataclass(frozen=True)
class LambdaDecomposition:
    """Tiling of a_1+...+a_k into consecutive blocks of non-decreasing length."""

    parts: tuple[Weight, ...]

    def __post_init__(self):
        pos = 1
        prev_len = 0
        for part in self.parts:
            plen = part.length
            if plen == 0:
                raise ValueError("decomposition parts must be nonzero")
            if part != Weight.block(part.n, pos, pos + plen - 1):
                raise ValueError(f"part {part} is not the consecutive block at {pos}")
            if plen < prev_len:
                raise ValueError("part lengths must be non-decreasing")
            pos += plen
            prev_len = plen

    @property
    def total_length(self) -> int:
        return sum(p.length for p in self.parts)

    def part_lengths(self) -> tuple[int, ...]:
        return tuple(p.length for p in self.parts)

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


def _ascending_partitions(k: int, allowed: list[int], minimum: int):
    # Non-decreasing sequences of allowed part sizes summing to k,
    # emitted in lexicographic order.
    if k == 0:
        yield ()
        return
    for part in allowed:
        if part < minimum or part > k:
            continue
        for rest in _ascending_partitions(k - part, allowed, part):
            yield (part,) + rest


def lambda_decompositions(k: int, sys: WeightSystem) -> list[LambdaDecomposition]:
    """All block decompositions of a_1+...+a_k with part lengths in L\\{0}."""
    label = quotient_label(sys)
    if k not in label.lengths:
        raise ValueError(f"length {k} is not in the quotient label {label}")
    allowed = sorted(x for x in label.lengths if x > 0)
    out = []
    for lens in _ascending_partitions(k, allowed, 1):
        parts = []
        pos = 1
        for plen in lens:
            parts.append(Weight.block(sys.n, pos, pos + plen - 1))
            pos += plen
        out.append(LambdaDecomposition(tuple(parts)))
    return out


def orbit_of(delta: Weight) -> frozenset[Weight]:
    """S_n-orbit of a multiplicity-free weight: all weights of equal length."""
    n, k = delta.n, delta.length
    return frozenset(
        Weight(tuple(1 if i in comb else 0 for i in range(n)))
        for comb in itertools.combinations(range(n), k)
    )
