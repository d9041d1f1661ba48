"""Fitting ideals of a presentation, multiple-point schemes and numeric
singularity invariants.

Determinants are computed by cofactor expansion with memoized sub-minors
keyed by (row set, column set); all minors of one call share the table.
Before taking minors, rows/columns meeting at a nonzero constant entry
are contracted away (row operations over the local ring scale minors by
units only, so every Fitting ideal is unchanged)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import ContextMismatchError, PushforwardError
from .ring import Polynomial, QQ_ZERO, RingContext
from .stdbasis import (
    INFINITE,
    Ideal,
    ideal_power,
    ideal_quotient,
    interreduce_generators,
    vdim,
)


def _minor_memo(rows_of_entries, ctx):
    zero = ctx.zero()
    memo = {}

    def det(rows, cols):
        if len(rows) == 1:
            return rows_of_entries[rows[0]][cols[0]]
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        # Expand along the row with the fewest nonzero entries.
        best_row, best_count = 0, len(cols) + 1
        for a, r in enumerate(rows):
            count = sum(1 for c in cols if not rows_of_entries[r][c].is_zero())
            if count < best_count:
                best_row, best_count = a, count
        if best_count == 0:
            memo[key] = zero
            return zero
        r = rows[best_row]
        sub_rows = rows[:best_row] + rows[best_row + 1:]
        acc = zero
        sign = 1 if best_row % 2 == 0 else -1
        for b, c in enumerate(cols):
            entry = rows_of_entries[r][c]
            term_sign = sign if b % 2 == 0 else -sign
            if not entry.is_zero():
                sub = det(sub_rows, cols[:b] + cols[b + 1:])
                if not sub.is_zero():
                    acc = acc + entry * sub * term_sign
        memo[key] = acc
        return acc

    return det


def _determinant(rows, ctx):
    n = len(rows)
    if n == 0:
        return ctx.one()
    det = _minor_memo(rows, ctx)
    return det(tuple(range(n)), tuple(range(n)))


def _as_rows(matrix):
    if hasattr(matrix, "rows"):
        return matrix.rows, matrix.problem.target
    rows = tuple(tuple(row) for row in matrix)
    ctx = rows[0][0].context
    return rows, ctx


def contract_constant_pivots(rows, ctx):
    """Remove rows/columns meeting at nonzero constant entries.

    Row operations with rational pivots keep all minor ideals equal (as
    ideals of the local target ring), and shrink the matrix, which makes
    the combinatorial minor expansion dramatically cheaper.
    """
    rows = [list(r) for r in rows]
    while True:
        pivot = None
        for i, row in enumerate(rows):
            for j, entry in enumerate(row):
                if entry.is_constant() and not entry.is_zero():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        c = rows[i][j].constant_coeff()
        for a in range(len(rows)):
            if a == i:
                continue
            f = rows[a][j]
            if f.is_zero():
                continue
            factor = f * (1 / c)
            rows[a] = [
                rows[a][b] - factor * rows[i][b] for b in range(len(rows[a]))
            ]
        rows = [
            [row[b] for b in range(len(row)) if b != j]
            for a, row in enumerate(rows)
            if a != i
        ]
        if not rows or not rows[0]:
            break
    return tuple(tuple(r) for r in rows)


def minors(matrix, order, context=None):
    """Ideal generated by all minors of the given order.

    Accepts a PresentationMatrix or a nested sequence of polynomials.
    """
    rows, ctx = _as_rows(matrix)
    if context is not None:
        ctx = context
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if order < 1 or order > min(nrows, ncols):
        raise ValueError(f"minor order {order} out of range for {nrows}x{ncols}")
    det = _minor_memo(rows, ctx)
    gens = []
    for rsel in itertools.combinations(range(nrows), order):
        for csel in itertools.combinations(range(ncols), order):
            m = det(rsel, csel)
            if not m.is_zero():
                gens.append(m)
    return Ideal(ctx, interreduce_generators(gens))


def fitting_ideal(pm, k):
    """k-th Fitting ideal of the presented module: zero for k < 0, minors
    of order size-k in the middle range, the unit ideal from k = size on."""
    ctx = pm.problem.target
    if k < 0:
        return Ideal(ctx, [])
    if k >= pm.size:
        return Ideal(ctx, [ctx.one()])
    rows = contract_constant_pivots(pm.rows, ctx)
    size = len(rows)
    order = size - k
    if order < 1:
        return Ideal(ctx, [ctx.one()])
    return minors(rows, order, ctx)


@dataclass(frozen=True)
class FittingChain:
    """Ascending chain F_0 <= F_1 <= ... over the target ring."""

    ideals: tuple
    matrix: object

    def __getitem__(self, k):
        if k < 0:
            return Ideal(self.matrix.problem.target, [])
        if k >= len(self.ideals):
            ctx = self.matrix.problem.target
            return Ideal(ctx, [ctx.one()])
        return self.ideals[k]

    def __len__(self):
        return len(self.ideals)


def fitting_chain(pm, upto=None):
    upto = pm.size if upto is None else upto
    return FittingChain(
        tuple(fitting_ideal(pm, k) for k in range(upto + 1)), pm
    )


def multiple_point_scheme(pm, k):
    """Defining ideal of the k-fold locus in the target (k >= 1)."""
    if k < 1:
        raise ValueError("multiple-point index starts at 1")
    return fitting_ideal(pm, k - 1)


def milnor_number(g, deadline=None):
    """Dimension of the local quotient by the Jacobian ideal of g, or
    INFINITE for a non-isolated singularity."""
    if g.constant_coeff() != 0:
        raise PushforwardError("Milnor number needs a germ vanishing at 0")
    ctx = g.context
    if not all(kind == "negdegrevlex" for _, kind in ctx.ordering.blocks):
        ctx = RingContext.local(ctx.variables)
        g = Polynomial(ctx, g.terms)
    partials = [_partial(g, i) for i in range(ctx.nvars)]
    jac = Ideal(ctx, partials)
    return vdim(jac, deadline=deadline)


def _partial(p, i):
    out = {}
    for mono, coeff in p.terms.items():
        e = mono[i]
        if e:
            m = mono[:i] + (e - 1,) + mono[i + 1:]
            out[m] = out.get(m, QQ_ZERO) + coeff * e
    return Polynomial(p.context, out)


@dataclass(frozen=True)
class InvariantReport:
    """Numeric invariants of a plane map germ restricted to its singular
    set: node-plus-cusp count, Milnor numbers of the singular and
    discriminant curves, and optional multiple-point counts."""

    vdim_f1: object
    mu_sigma: object
    mu_delta: object
    vdim_f2: object = None
    triple_points: object = None


def plane_map_invariants(pm, sigma_equation, deadline=None):
    """Assemble the invariant report from a presentation of the germ
    restricted to its singular set.

    vdim_f1 counts nodes plus cusps; when it and the Milnor number of the
    singular curve are finite, the discriminant Milnor number is
    2 * vdim_f1 + mu_sigma.
    """
    f1 = fitting_ideal(pm, 1)
    d = vdim(f1, deadline=deadline)
    mu_sigma = milnor_number(sigma_equation, deadline=deadline)
    if d is INFINITE or mu_sigma is INFINITE:
        mu_delta = INFINITE
    else:
        mu_delta = 2 * d + mu_sigma
    return InvariantReport(vdim_f1=d, mu_sigma=mu_sigma, mu_delta=mu_delta)


def triple_point_count(f0, i_a11, deadline=None):
    """Number of ordinary triple points: the dimension of the quotient by
    the colon ideal (I(double points)^2 : F_0)."""
    if f0.context != i_a11.context:
        raise ContextMismatchError("ideals from different contexts")
    colon = ideal_quotient(ideal_power(i_a11, 2), f0, deadline=deadline)
    return vdim(colon, deadline=deadline)
