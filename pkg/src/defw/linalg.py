"""Sparse exact linear algebra over Q.

Vectors are ``dict[int, Fraction]`` keyed by column index (no zero entries).
:class:`Echelon` keeps a subspace in reduced row echelon form with the
pivot of each row at its leftmost nonzero column, so the stored basis is
unique for the subspace.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = dict  # dict[int, Fraction]


def axpy(y: Vector, a: Fraction, x: Vector) -> None:
    """In place y += a*x."""
    if not a:
        return
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scaled(x: Vector, a) -> Vector:
    a = Fraction(a)
    if not a:
        return {}
    return {k: v * a for k, v in x.items()}


def add(x: Vector, y: Vector) -> Vector:
    out = dict(x)
    axpy(out, Fraction(1), y)
    return out


def sub(x: Vector, y: Vector) -> Vector:
    out = dict(x)
    axpy(out, Fraction(-1), y)
    return out


class Echelon:
    """Incremental RREF basis of a subspace of Q^n."""

    def __init__(self, rows: Iterable[Vector] = ()):
        self._rows: dict[int, Vector] = {}
        for r in rows:
            self.add(r)

    def copy(self) -> Echelon:
        e = Echelon()
        e._rows = {p: dict(r) for p, r in self._rows.items()}
        return e

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def rows(self) -> list[Vector]:
        return [self._rows[p] for p in sorted(self._rows)]

    def row(self, pivot: int) -> Vector:
        return self._rows[pivot]

    def reduce(self, v: Vector) -> Vector:
        """Eliminate every pivot column from ``v`` (coset normal form)."""
        out = dict(v)
        hits = [p for p in v if p in self._rows]
        for p in hits:
            a = out.get(p)
            if a:
                axpy(out, -a, self._rows[p])
        return out

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def add(self, v: Vector) -> bool:
        """Add ``v`` to the span; returns True if the rank grew."""
        w = self.reduce(v)
        if not w:
            return False
        p = min(w)
        lead = w[p]
        if lead != 1:
            w = {k: x / lead for k, x in w.items()}
        for q, row in self._rows.items():
            a = row.get(p)
            if a:
                axpy(row, -a, w)
        self._rows[p] = w
        return True

    def extend(self, vectors: Iterable[Vector]) -> None:
        for v in vectors:
            self.add(v)

    def coordinates(self, v: Vector) -> dict[int, Fraction] | None:
        """Coefficients of ``v`` on the RREF rows (keyed by pivot), or None if outside the span."""
        coords = {p: v[p] for p in v if p in self._rows}
        rest = dict(v)
        for p, a in coords.items():
            axpy(rest, -a, self._rows[p])
        if rest:
            return None
        return coords

    def contains_space(self, other: Echelon) -> bool:
        return all(self.contains(r) for r in other.rows())

    def __eq__(self, other):
        if not isinstance(other, Echelon):
            return NotImplemented
        return self._rows == other._rows


def kernel(images: Sequence[Vector], n_target: int | None = None) -> list[Vector]:
    """Kernel of the linear map sending basis vector j to ``images[j]``.

    Returns an RREF basis of the kernel as vectors over source indices.
    """
    if n_target is None:
        n_target = 1 + max((k for img in images for k in img), default=-1)
    shift = n_target
    e = Echelon()
    for j, img in enumerate(images):
        row = dict(img)
        row[shift + j] = Fraction(1)
        e.add(row)
    ker = Echelon()
    for p in e.pivots:
        if p >= shift:
            r = e.row(p)
            ker.add({k - shift: v for k, v in r.items()})
    return ker.rows()


def image(images: Sequence[Vector]) -> Echelon:
    return Echelon(images)


def apply(images: Sequence[Vector], x: Vector) -> Vector:
    """Apply the map given by column images to a source vector."""
    out: Vector = {}
    for j, a in x.items():
        axpy(out, a, images[j])
    return out


def compose(second: Sequence[Vector], first: Sequence[Vector]) -> list[Vector]:
    return [apply(second, col) for col in first]


def identity(n: int) -> list[Vector]:
    return [{j: Fraction(1)} for j in range(n)]


def lin_comb(maps: Iterable[tuple[Fraction, Sequence[Vector]]], n: int) -> list[Vector]:
    out: list[Vector] = [{} for _ in range(n)]
    for a, m in maps:
        for j in range(n):
            axpy(out[j], Fraction(a), m[j])
    return out


def solve_in_span(basis: Sequence[Vector], v: Vector) -> list[Fraction] | None:
    """Coefficients expressing ``v`` in the (independent) list ``basis``, or None."""
    ker = kernel(list(basis) + [scaled(v, -1)])
    for k in ker:
        last = k.get(len(basis))
        if last:
            return [k.get(j, Fraction(0)) / last for j in range(len(basis))]
    return None
