"""Presentation matrices of pushforward modules by degree-increasing ansatz.

Given a finite map germ represented by source ideal I and polynomial
components f_1..f_{n+1}, the coordinate ring of the source becomes a
module over the target ring via substitution.  Each matrix row is found
by the smallest ansatz degree at which a generic row with the prescribed
Y-structure solves the rewriting equation modulo I; the linear systems
are exact over Q.

Row systems are assembled from canonical truncated normal forms of the
per-monomial products, which is linear in the unknown coefficients.  A
solved row is accepted only after an exact membership check of the full
relation (Mora normal form), and the truncation is enlarged if the check
fails; truncation never hides a genuine solution, so advancing the degree
on an inconsistent system is always legitimate.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import (
    ContextMismatchError,
    DegreeCapError,
    NotFiniteMapError,
    PushforwardError,
    TimeLimitError,
)
from .ring import Polynomial, QQ_ONE, QQ_ZERO, RingMap
from .stdbasis import (
    INFINITE,
    Ideal,
    _prepare,
    ideal_sum,
    kbase,
    mora_normal_form,
    truncated_normal_form,
)


class MapGermProblem:
    """A finite map germ: local source ring with ideal I, and polynomial
    components into a target whose last variable is distinguished."""

    __slots__ = ("source", "source_ideal", "components", "target", "_phi")

    def __init__(self, source, source_ideal, components, target):
        components = tuple(components)
        if source_ideal is None:
            source_ideal = Ideal(source, [])
        if source_ideal.context != source:
            raise ContextMismatchError("source ideal lives in a different context")
        if len(components) != target.nvars:
            raise ContextMismatchError(
                f"{target.nvars} target variables need {target.nvars} components, "
                f"got {len(components)}"
            )
        if len(components) - 1 > source.nvars:
            raise ContextMismatchError(
                "more target variables than the source can support"
            )
        for f in components:
            if f.context != source:
                raise ContextMismatchError("component outside the source context")
            if f.constant_coeff() != 0:
                raise PushforwardError(
                    f"component {f} does not vanish at the origin"
                )
        self.source = source
        self.source_ideal = source_ideal
        self.components = components
        self.target = target
        self._phi = None

    @property
    def phi(self):
        """Target-to-source substitution X_i -> f_i, Y -> f_{n+1}."""
        if self._phi is None:
            self._phi = RingMap(self.target, self.source, self.components)
        return self._phi

    def restricted_ideal(self):
        """I together with the pullbacks of the non-distinguished targets."""
        return ideal_sum(
            self.source_ideal, Ideal(self.source, self.components[:-1])
        )

    def __repr__(self):
        comps = ", ".join(str(f) for f in self.components)
        return f"MapGermProblem(({comps}); I = {self.source_ideal!r})"


@dataclass(frozen=True)
class GeneratorSet:
    """Monomial representatives of a basis of the pushforward modulo the
    target maximal ideal; the first generator is always 1."""

    generators: tuple

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def pullback_generators(problem, deadline=None):
    """Module generators: the staircase of I + <f_1..f_n> in the source.

    Raises NotFiniteMapError when that ideal is not zero-dimensional,
    i.e. when dropping the distinguished component is not a finite germ.
    """
    qb = kbase(problem.restricted_ideal(), deadline=deadline)
    if not qb.finite_flag:
        raise NotFiniteMapError(
            "restricted germ is not finite: the staircase is unbounded"
        )
    return GeneratorSet(tuple(qb.polynomials()))


@dataclass(frozen=True)
class AnsatzRow:
    """Support of one generic matrix row at a given degree bound.

    The diagonal slot carries the distinguished variable with coefficient
    fixed to one, no constant and (by default) no higher pure powers of
    it; off-diagonal slots exclude all pure powers of the distinguished
    variable but keep a free constant.  Mixed monomials are allowed
    everywhere up to the total degree bound.
    """

    row: int
    degree: int
    support: tuple  # ((column, exponent tuple), ...) free coefficients
    fixed: tuple  # (column, exponent tuple) with coefficient 1


def _target_monomials(nvars, degree):
    for total in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), total):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            yield tuple(exps)


def ansatz_row(row, degree, size, n_base_vars, allow_higher_diag_y=False):
    """Free support of row `row` for an ansatz of total degree <= degree.

    n_base_vars counts the non-distinguished target variables; the
    distinguished one is the last exponent slot.
    """
    if degree < 1:
        raise ValueError("ansatz degree must be at least 1")
    nvars = n_base_vars + 1
    y_slot = nvars - 1
    support = []
    for col in range(size):
        for mono in _target_monomials(nvars, degree):
            total = sum(mono)
            pure_y = total == mono[y_slot]
            if col == row:
                if total == 0:
                    continue  # no diagonal constant
                if pure_y and mono[y_slot] == 1:
                    continue  # fixed, not free
                if pure_y and not allow_higher_diag_y:
                    continue
            else:
                if pure_y and total >= 1:
                    continue
            support.append((col, mono))
    y_mono = tuple(0 if i != y_slot else 1 for i in range(nvars))
    return AnsatzRow(
        row=row,
        degree=degree,
        support=tuple(support),
        fixed=(row, y_mono),
    )


class _ResidueCache:
    """Canonical residues of phi(monomial) * generator, keyed by
    (target monomial, generator index, truncation)."""

    def __init__(self, problem, generators):
        self.problem = problem
        self.generators = generators
        self.data = {}

    def residue(self, mono, col, cutoff):
        key = (mono, col, cutoff)
        hit = self.data.get(key)
        if hit is not None:
            return hit
        product = self.problem.phi.monomial_image(mono) * self.generators.generators[col]
        reducers = self.problem.source_ideal._reducers()
        if not reducers:
            r = product
        else:
            r = truncated_normal_form(product, reducers, cutoff=cutoff)
        self.data[key] = r
        return r


def build_row_system(problem, generators, row, cache=None, cutoff=None):
    """Linear system over Q whose solutions are the admissible rows.

    Unknowns follow the ansatz support order; one equation per residual
    source monomial; the right-hand side is the negated residue of the
    fixed distinguished-variable term.  Returns (columns, rhs, equations)
    where columns[u] and rhs are dicts source-monomial -> coefficient.
    """
    if cache is None:
        cache = _ResidueCache(problem, generators)
    columns = []
    for col, mono in row.support:
        columns.append(cache.residue(mono, col, cutoff).terms)
    fixed_col, fixed_mono = row.fixed
    rhs = {m: -c for m, c in cache.residue(fixed_mono, fixed_col, cutoff).terms.items()}
    monos = set(rhs)
    for terms in columns:
        monos.update(terms)
    key = problem.source.key
    equations = sorted(monos, key=key, reverse=True)
    return columns, rhs, equations


def solve_exact(columns, rhs, equations):
    """Exact sparse Gaussian elimination over Q.

    Unknowns are eliminated in index order; underdetermined systems get
    the canonical minimal-support solution (free unknowns set to 0).
    Returns the assignment vector, or None when inconsistent.
    """
    nunk = len(columns)
    rows = []
    for mono in equations:
        coeffs = {}
        for u, terms in enumerate(columns):
            c = terms.get(mono)
            if c is not None:
                coeffs[u] = c
        b = rhs.get(mono, QQ_ZERO)
        if coeffs or b:
            rows.append((coeffs, b))

    pivots = {}
    remaining = list(range(len(rows)))
    for u in range(nunk):
        best = None
        for ridx in remaining:
            coeffs, _ = rows[ridx]
            if u in coeffs:
                size = len(coeffs)
                if best is None or (size, ridx) < best[0]:
                    best = ((size, ridx), ridx)
        if best is None:
            continue
        pidx = best[1]
        remaining.remove(pidx)
        pcoeffs, pb = rows[pidx]
        pivots[u] = (pcoeffs, pb)
        pc = pcoeffs[u]
        for ridx in remaining:
            coeffs, b = rows[ridx]
            c = coeffs.get(u)
            if c is None:
                continue
            f = c / pc
            for v, pv in pcoeffs.items():
                s = coeffs.get(v, QQ_ZERO) - f * pv
                if s:
                    coeffs[v] = s
                else:
                    coeffs.pop(v, None)
            b = b - f * pb
            rows[ridx] = (coeffs, b)

    for ridx in remaining:
        coeffs, b = rows[ridx]
        if not coeffs and b:
            return None

    solution = [QQ_ZERO] * nunk
    for u in sorted(pivots, reverse=True):
        coeffs, b = pivots[u]
        s = b
        for v, c in coeffs.items():
            if v != u:
                s -= c * solution[v]
        solution[u] = s / coeffs[u]
    return solution


@dataclass(frozen=True)
class PresentationMatrix:
    """Square polynomial matrix over the target ring presenting the
    pushforward module on the recorded generators."""

    rows: tuple  # tuple of tuples of Polynomial (target context)
    generators: GeneratorSet
    problem: MapGermProblem
    found_degrees: tuple = ()

    @property
    def size(self):
        return len(self.rows)

    def entry(self, i, j):
        return self.rows[i][j]

    def row_relation(self, i):
        """Pullback of row i paired against the generators."""
        phi = self.problem.phi
        acc = self.problem.source.zero()
        for j, entry in enumerate(self.rows[i]):
            if not entry.is_zero():
                acc = acc + phi(entry) * self.generators.generators[j]
        return acc

    def determinant_pullback_vanishes(self):
        from .fitting import _determinant

        det = _determinant(self.rows, self.problem.target)
        return self.problem.source_ideal.contains(self.problem.phi(det))

    def __str__(self):
        body = []
        for row in self.rows:
            body.append("[" + ", ".join(str(e) for e in row) + "]")
        return "[" + ",\n ".join(body) + "]"


def verify_row_relations(pm, deadline=None):
    """Every row annihilates the generator vector modulo the source ideal."""
    for i in range(pm.size):
        if not pm.problem.source_ideal.contains(pm.row_relation(i), deadline):
            return False
    return True


def verify_y_structure(pm):
    """Diagonal entries restricted to the distinguished axis are that
    variable times a unit (after dropping constants); off-diagonal
    entries have constant restriction."""
    target = pm.problem.target
    n = target.nvars
    y_slot = n - 1
    x_slots = tuple(range(n - 1))
    for i in range(pm.size):
        for j in range(pm.size):
            pure = pm.rows[i][j].substitute_zero(x_slots)
            pure = pure - target.const(pure.constant_coeff())
            if i == j:
                y_mono = tuple(0 if s != y_slot else 1 for s in range(n))
                if pure.coeff(y_mono) == 0:
                    return False
            else:
                if not pure.is_zero():
                    return False
    return True


def _row_candidate(problem, generators, row, solution):
    """Assemble the row polynomials from a solved coefficient vector."""
    target = problem.target
    h = len(generators)
    entries = [dict() for _ in range(h)]
    for (col, mono), value in zip(row.support, solution):
        if value:
            entries[col][mono] = value
    fixed_col, fixed_mono = row.fixed
    entries[fixed_col][fixed_mono] = entries[fixed_col].get(fixed_mono, QQ_ZERO) + QQ_ONE
    return tuple(Polynomial(target, terms) for terms in entries)


def _row_is_relation(problem, generators, entries):
    phi = problem.phi
    acc = problem.source.zero()
    for j, entry in enumerate(entries):
        if not entry.is_zero():
            acc = acc + phi(entry) * generators.generators[j]
    if acc.is_zero():
        return True
    reducers = problem.source_ideal._reducers()
    if not reducers:
        return False
    return mora_normal_form(acc, reducers, membership_only=True).is_zero()


_MAX_TRUNCATION_DOUBLINGS = 12


def _solve_row(problem, generators, i, max_degree, cache, base_cutoff,
               allow_higher_diag_y, deadline):
    n_base = problem.target.nvars - 1
    h = len(generators)
    exact = problem.source_ideal.is_zero_ideal()
    for k in range(1, max_degree + 1):
        if deadline is not None and time.monotonic() > deadline:
            raise TimeLimitError("time limit exceeded")
        row = ansatz_row(i, k, h, n_base, allow_higher_diag_y)
        cutoff = None if exact else base_cutoff
        for _ in range(_MAX_TRUNCATION_DOUBLINGS):
            columns, rhs, equations = build_row_system(
                problem, generators, row, cache, cutoff
            )
            solution = solve_exact(columns, rhs, equations)
            if solution is None:
                break  # truncation never loses true solutions: go to k+1
            entries = _row_candidate(problem, generators, row, solution)
            if _row_is_relation(problem, generators, entries):
                return entries, k
            if cutoff is None:
                raise PushforwardError(
                    "exact system produced a non-relation row"
                )
            cutoff *= 2  # spurious solution of the truncated system
        else:
            raise PushforwardError(
                f"row {i}: truncation kept admitting spurious solutions"
            )
    raise DegreeCapError(i, max_degree)


def presentation_matrix(problem, max_degree=30, threads=None,
                        allow_higher_diag_y=False, deadline=None):
    """Smallest-degree presentation matrix with the prescribed structure.

    Rows are independent searches (optionally run on a thread pool; the
    result is identical for any thread count).  The returned matrix has
    passed the row-relation and diagonal-structure checks.
    """
    generators = pullback_generators(problem, deadline=deadline)
    h = len(generators)
    if h == 0:
        return PresentationMatrix((), generators, problem, ())
    problem.source_ideal.std(deadline=deadline)

    base_cutoff = _initial_cutoff(problem, generators)
    cache = _ResidueCache(problem, generators)

    def solve(i):
        return _solve_row(
            problem, generators, i, max_degree, cache, base_cutoff,
            allow_higher_diag_y, deadline,
        )

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(solve, range(h)))
    else:
        results = [solve(i) for i in range(h)]

    rows = tuple(entries for entries, _ in results)
    degrees = tuple(k for _, k in results)
    pm = PresentationMatrix(rows, generators, problem, degrees)
    if not verify_row_relations(pm, deadline) or not verify_y_structure(pm):
        raise PushforwardError("constructed matrix failed verification")
    return pm


def _initial_cutoff(problem, generators):
    """Truncation degree for row systems: generous enough that genuine
    low-degree relations survive, doubled on demand otherwise."""
    image_deg = max((f.total_degree() for f in problem.components), default=1)
    gen_deg = max((g.total_degree() for g in generators), default=0)
    ideal_deg = max(
        (g.total_degree() for g in problem.source_ideal.generators), default=0
    )
    return 2 * image_deg + gen_deg + ideal_deg + 8
