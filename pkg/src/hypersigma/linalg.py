"""Exact sparse Gauss-Jordan elimination over the rationals.

A constraint is a sparse row ``{unknown_id: coefficient}``; the unknowns are
the integers ``0 .. n-1``.  Pivots are always taken at the smallest remaining
unknown id, so the reduced form and the nullspace basis are deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import InconsistencyError

Row = dict  # dict[int, Fraction]


class EchelonForm:
    """Incrementally maintained reduced row echelon form.

    Rows may carry a right-hand side; ``consistent`` turns false as soon as a
    row reduces to ``0 = c`` with ``c != 0``.
    """

    def __init__(self, n_unknowns: int):
        self.n = n_unknowns
        self.rows: dict[int, tuple[Row, Fraction]] = {}
        self.consistent = True

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def add(self, row: Mapping[int, Fraction], rhs: Fraction = Fraction(0)) -> None:
        r = {j: Fraction(c) for j, c in row.items() if c}
        rhs = Fraction(rhs)
        for p in sorted(set(r) & set(self.rows)):
            c = r.get(p)
            if not c:
                continue
            prow, prhs = self.rows[p]
            for j, v in prow.items():
                s = r.get(j, 0) - c * v
                if s:
                    r[j] = s
                else:
                    r.pop(j, None)
            rhs -= c * prhs
        # eliminating one pivot never reintroduces another, since stored rows are reduced
        if not r:
            if rhs:
                self.consistent = False
            return
        p = min(r)
        inv = 1 / r[p]
        r = {j: v * inv for j, v in r.items()}
        rhs *= inv
        for q, (qrow, qrhs) in list(self.rows.items()):
            c = qrow.get(p)
            if not c:
                continue
            for j, v in r.items():
                s = qrow.get(j, 0) - c * v
                if s:
                    qrow[j] = s
                else:
                    qrow.pop(j, None)
            self.rows[q] = (qrow, qrhs - c * rhs)
        self.rows[p] = (r, rhs)

    def nullspace(self) -> list[list[Fraction]]:
        free = [j for j in range(self.n) if j not in self.rows]
        basis = []
        for f in free:
            vec = [Fraction(0)] * self.n
            vec[f] = Fraction(1)
            for p, (row, _) in self.rows.items():
                c = row.get(f)
                if c:
                    vec[p] = -c
            basis.append(vec)
        return basis

    def particular(self) -> list[Fraction]:
        """A solution with all free unknowns set to zero."""
        if not self.consistent:
            raise InconsistencyError("linear system has no solution")
        vec = [Fraction(0)] * self.n
        for p, (_, rhs) in self.rows.items():
            vec[p] = rhs
        return vec


def exact_nullspace(constraints: Iterable[Mapping[int, Fraction]], n_unknowns: int
                    ) -> list[list[Fraction]]:
    """Basis of {x : row . x = 0 for every row}.  An empty list means only zero."""
    ech = EchelonForm(n_unknowns)
    for row in constraints:
        ech.add(row)
    return ech.nullspace()


def solve_exact(constraints: Iterable[tuple[Mapping[int, Fraction], Fraction]],
                n_unknowns: int) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Solve row . x = rhs; returns a particular solution and the nullspace basis."""
    ech = EchelonForm(n_unknowns)
    for row, rhs in constraints:
        ech.add(row, rhs)
    return ech.particular(), ech.nullspace()


def residuals(constraints: Iterable[Mapping[int, Fraction]], x: Sequence[Fraction]
              ) -> list[Fraction]:
    return [sum((c * x[j] for j, c in row.items()), Fraction(0)) for row in constraints]
