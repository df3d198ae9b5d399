"""Exact linear algebra over the rationals for term-keyed vectors."""

from __future__ import annotations

from fractions import Fraction


def _to_matrix(vectors: list[dict]) -> list[list[Fraction]]:
    keys = sorted({k for v in vectors for k in v}, key=repr)
    return [[Fraction(v.get(k, 0)) for k in keys] for v in vectors]


def rational_rank(vectors: list[dict]) -> int:
    """Rank of the span of sparse vectors (any hashable keys)."""
    rows = _to_matrix(vectors)
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def solve_exact(columns: list[dict], rhs: dict) -> list[Fraction] | None:
    """One solution of sum_i x_i * columns[i] = rhs, or None if inconsistent."""
    keys = sorted({k for v in columns for k in v} | set(rhs), key=repr)
    nvars = len(columns)
    rows = [
        [Fraction(col.get(k, 0)) for col in columns] + [Fraction(rhs.get(k, 0))]
        for k in keys
    ]
    pivots: list[int] = []
    rank = 0
    for col in range(nvars):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(rows)):
        if rows[r][nvars] != 0:
            return None
    solution = [Fraction(0)] * nvars
    for r, col in enumerate(pivots):
        solution[col] = rows[r][nvars]
    return solution
