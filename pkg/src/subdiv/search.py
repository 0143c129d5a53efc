"""Grid exploration of palindromic mask families.

Each width 2..8 is parameterized by its free coefficients after imposing
the palindromic symmetry and the necessary conditions s(1) = 2, s(-1) = 0:

    width 2m+1 (primal): distinct coefficients a_0 .. a_m with
        a_1 = 1/2 - (a_3 + a_5 + ...)   and   a_0 = 1 - 2(a_2 + a_4 + ...);
        free parameters (a_m, ..., a_2), outermost first.
    width 2m (dual): distinct coefficients a_1 .. a_m with
        a_1 = 1 - (a_2 + ... + a_m);
        free parameters (a_m, ..., a_2), outermost first.

For width 5 this is the single parameter a = a_2 with a_1 = 1/2,
a_0 = 1 - 2a; for width 6 the pair (a, b) = (a_3, a_2) with inner
coefficient 1 - a - b.  Widths 2 and 3 have no free parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, TextIO

from .localmatrix import (eigenvalues, matrix_from_coeffs, w6_discriminant)
from .symbols import LaurentPoly

_DEGENERATE_D_TOL = Fraction(1, 10 ** 10)


@dataclass(frozen=True)
class GridRange:
    lo: Fraction
    hi: Fraction
    step: Fraction

    def __post_init__(self):
        lo, hi, step = Fraction(self.lo), Fraction(self.hi), Fraction(self.step)
        if not lo < hi:
            raise ValueError("grid range needs lo < hi")
        if step <= 0:
            raise ValueError("grid step must be > 0")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "step", step)

    def values(self) -> list[Fraction]:
        out = []
        v = self.lo
        while v <= self.hi:
            out.append(v)
            v = v + self.step
        return out


def free_param_count(width: int) -> int:
    if not 2 <= width <= 8:
        raise ValueError("width must be in 2..8")
    return (width + 1) // 2 - 2 if width % 2 else width // 2 - 1


def palindromic_coeffs(width: int, params: Sequence[Fraction]) -> tuple[int, tuple[Fraction, ...]]:
    """(support_min, nominal coefficient run) for a family member.

    End coefficients may be zero; the run keeps the nominal width so that
    grid cells of one family share a matrix size.
    """
    params = [Fraction(p) for p in params]
    if len(params) != free_param_count(width):
        raise ValueError("width %d needs %d free parameters, got %d"
                         % (width, free_param_count(width), len(params)))
    if width % 2 == 1:
        m = (width - 1) // 2
        a = {i: Fraction(0) for i in range(m + 1)}
        for k, p in enumerate(params):   # params are (a_m, ..., a_2)
            a[m - k] = p
        a[1] = Fraction(1, 2) - sum((a[i] for i in range(3, m + 1, 2)), Fraction(0))
        a[0] = 1 - 2 * sum((a[i] for i in range(2, m + 1, 2)), Fraction(0))
        run = tuple(a[abs(i)] for i in range(-m, m + 1))
        return -m, run
    m = width // 2
    a = {i: Fraction(0) for i in range(1, m + 1)}
    for k, p in enumerate(params):       # params are (a_m, ..., a_2)
        a[m - k] = p
    a[1] = 1 - sum((a[i] for i in range(2, m + 1)), Fraction(0))
    run = tuple(a[i if i >= 1 else 1 - i] for i in range(-m + 1, m + 1))
    return -m + 1, run


def family_symbol(width: int, params: Sequence[Fraction]) -> LaurentPoly:
    support_min, run = palindromic_coeffs(width, params)
    return LaurentPoly.from_coeffs(run, support_min)


class CellClass(Enum):
    REAL_CONVERGENT = "RealConvergent"
    COMPLEX_CONVERGENT = "ComplexConvergent"
    REAL_OTHER = "RealOther"
    COMPLEX_OTHER = "ComplexOther"


@dataclass(frozen=True)
class Cell:
    params: tuple[Fraction, ...]
    cls: CellClass
    max_imag: float
    degenerate: bool = False  # width-6 boundary cells with |D| < 1e-10


@dataclass(frozen=True)
class SearchSpec:
    width: int
    param_ranges: tuple[GridRange, ...]
    convergence_filter: bool = True

    def __post_init__(self):
        if len(self.param_ranges) != free_param_count(self.width):
            raise ValueError("width %d needs %d grid ranges, got %d"
                             % (self.width, free_param_count(self.width), len(self.param_ranges)))


@dataclass
class SearchResult:
    width: int
    cells: list[Cell]
    counts: dict[str, int] = field(default_factory=dict)
    witnesses: dict[str, Cell] = field(default_factory=dict)

    def complex_convergent_params(self) -> list[tuple[Fraction, ...]]:
        return [c.params for c in self.cells
                if c.cls is CellClass.COMPLEX_CONVERGENT and not c.degenerate]


def _is_contractive(width: int, params: Sequence[Fraction]) -> bool:
    s = family_symbol(width, params)
    if not s or s(1) != 2 or s(-1) != 0:
        return False
    b = s.div_exact(LaurentPoly({0: 1, 1: 1}))
    return max(b.parity_sums()) < 1


def scan(spec: SearchSpec, imag_tol: float = 1e-7, max_cells: int = 10 ** 6) -> SearchResult:
    """Classify every grid cell of the family by spectrum and contractivity."""
    grids = [r.values() for r in spec.param_ranges]
    n_cells = math.prod(len(g) for g in grids) if grids else 1
    if n_cells > max_cells:
        raise ValueError("grid has %d cells, cap is %d" % (n_cells, max_cells))

    cells: list[Cell] = []
    counts = {c.value: 0 for c in CellClass}
    witnesses: dict[str, Cell] = {}
    for params in (product(*grids) if grids else [()]):
        support_min, run = palindromic_coeffs(spec.width, params)
        M = matrix_from_coeffs(support_min, run)
        sp = eigenvalues(M, tol=imag_tol)
        max_imag = max(abs(v.imag) for v in sp.eigenvalues)
        is_complex = max_imag > imag_tol
        # Theorem-1 conditions hold by construction; the filter adds the
        # contractivity requirement for the Convergent classes.
        convergent = _is_contractive(spec.width, params) if spec.convergence_filter else True
        if is_complex:
            cls = CellClass.COMPLEX_CONVERGENT if convergent else CellClass.COMPLEX_OTHER
        else:
            cls = CellClass.REAL_CONVERGENT if convergent else CellClass.REAL_OTHER
        degenerate = False
        if spec.width == 6:
            degenerate = abs(w6_discriminant(params[0], params[1])) < _DEGENERATE_D_TOL
        cell = Cell(tuple(params), cls, max_imag, degenerate)
        cells.append(cell)
        counts[cls.value] += 1
        witnesses.setdefault(cls.value, cell)
    return SearchResult(spec.width, cells, counts, witnesses)


def negativity_lemma_check(lo=Fraction(-5), hi=Fraction(5), step=Fraction(1, 1000)) -> tuple[float, Fraction]:
    """Grid maximum of g(b) = 1 + b - 2 sqrt(2 (1 - 5b + 8b^2)) and its argmax."""
    best_v, best_b = -math.inf, None
    for b in GridRange(lo, hi, step).values():
        radicand = 2 * (1 - 5 * b + 8 * b * b)
        g = float(1 + b) - 2.0 * math.sqrt(float(radicand))
        if g > best_v:
            best_v, best_b = g, b
    return best_v, best_b


def c1_w6_obstruction(lo=Fraction(-1), hi=Fraction(1), step=Fraction(1, 100)) -> bool:
    """Check exactly that on b = a + 1/4 the width-6 discriminant is the
    perfect square (2a + 1/4)^2, hence never negative (all eigenvalues real)."""
    q = Fraction(1, 4)
    for a in GridRange(lo, hi, step).values():
        if w6_discriminant(a, a + q) != (2 * a + q) ** 2:
            return False
    return True


@dataclass(frozen=True)
class MinWidthReport:
    min_width: Optional[int]  # None when no complex convergent cell was found
    witnesses: tuple[tuple[Fraction, ...], ...]
    counts_by_width: tuple[tuple[int, dict[str, int]], ...]


def default_grid(width: int) -> tuple[GridRange, ...]:
    half = Fraction(1, 2)
    table = {
        2: (),
        3: (),
        4: (GridRange(Fraction(-1), Fraction(1), Fraction(1, 100)),),
        5: (GridRange(Fraction(-1), Fraction(1), Fraction(1, 200)),),
        6: (GridRange(-half, half, Fraction(1, 50)),) * 2,
        7: (GridRange(-half, half, Fraction(1, 20)),) * 2,
        8: (GridRange(Fraction(-1, 4), Fraction(1, 4), Fraction(1, 10)),) * 3,
    }
    return table[width]


def min_width_report(max_width: int,
                     grids: Optional[dict[int, tuple[GridRange, ...]]] = None) -> MinWidthReport:
    """Smallest width whose default (or supplied) grid contains a
    ComplexConvergent cell, with all witness parameter tuples."""
    if max_width < 2:
        raise ValueError("max_width must be >= 2")
    counts = []
    for w in range(2, min(max_width, 8) + 1):
        g = (grids or {}).get(w, default_grid(w))
        result = scan(SearchSpec(w, tuple(g), convergence_filter=True))
        counts.append((w, result.counts))
        witnesses = result.complex_convergent_params()
        if witnesses:
            return MinWidthReport(w, tuple(witnesses), tuple(counts))
    return MinWidthReport(None, (), tuple(counts))


# -- exports -------------------------------------------------------------

def write_search_csv(result: SearchResult, f: TextIO) -> None:
    n_params = free_param_count(result.width)
    header = ["p%d" % i for i in range(n_params)] + ["class", "max_imag", "degenerate"]
    f.write(",".join(header) + "\n")
    for cell in result.cells:
        row = [str(p) for p in cell.params]
        row += [cell.cls.value, "%.12g" % cell.max_imag, "1" if cell.degenerate else "0"]
        f.write(",".join(row) + "\n")


def search_summary_json(result: SearchResult) -> dict:
    return {
        "width": result.width,
        "cells": len(result.cells),
        "counts": result.counts,
        "degenerate_cells": sum(1 for c in result.cells if c.degenerate),
        "witnesses": {
            cls: {"params": [str(p) for p in cell.params], "max_imag": cell.max_imag}
            for cls, cell in sorted(result.witnesses.items())
        },
    }
