"""Problem builders: singular-set restrictions, divided differences, the
lifted double-point ideal and the source double-point pipeline."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ContextMismatchError,
    ExactDivisionError,
    UnsupportedConfigurationError,
)
from .fitting import _determinant, _partial, fitting_ideal
from .presentation import MapGermProblem, presentation_matrix
from .ring import Polynomial, RingContext, RingMap
from .stdbasis import Ideal, exact_divide, interreduce_generators


def jacobian_matrix(components, context):
    return [
        [_partial(f, i) for i in range(context.nvars)] for f in components
    ]


def jacobian_determinant(components, context=None):
    """Determinant of the Jacobian matrix of an equidimensional germ."""
    components = tuple(components)
    if context is None:
        context = components[0].context
    for f in components:
        if f.context != context:
            raise ContextMismatchError("component outside the given context")
    if len(components) != context.nvars:
        raise UnsupportedConfigurationError(
            f"Jacobian determinant needs {context.nvars} components, "
            f"got {len(components)}"
        )
    rows = jacobian_matrix(components, context)
    return _determinant(tuple(tuple(r) for r in rows), context)


def singular_restriction(components, context=None, source_ideal=None,
                         target_names=None):
    """Problem for the germ restricted to its singular set.

    For an equidimensional germ the source ideal is augmented by the
    Jacobian determinant, the target keeps one variable per component
    with the last one distinguished.
    """
    components = tuple(components)
    if context is None:
        context = components[0].context
    jac = jacobian_determinant(components, context)
    extra = [] if source_ideal is None else list(source_ideal.generators)
    ideal = Ideal(context, extra + [jac])
    if target_names is None:
        n = len(components)
        target_names = tuple(f"X{i+1}" for i in range(n - 1)) + ("Y",)
    target = RingContext.local(target_names)
    return MapGermProblem(context, ideal, components, target)


@dataclass(frozen=True)
class DividedDifferenceMatrix:
    """Slot-wise divided differences: entry (i, j) divides the increment
    of component j along variable i after substituting the first i-1
    primed variables, so that summing entry * (x_i - x_i') over i
    telescopes to f_j(x) - f_j(x')."""

    entries: tuple  # n rows (variable slots) x (n+1) columns (components)
    context: object  # doubled ring context


def doubled_context(source, primed_names=None):
    """Context with the source variables followed by their primed copies."""
    if primed_names is None:
        primed_names = tuple(v + "'" for v in source.variables)
    primed_names = tuple(primed_names)
    if len(primed_names) != source.nvars:
        raise ContextMismatchError("need one primed name per source variable")
    return RingContext.local(source.variables + primed_names)


def _embed(p, doubled):
    n2 = doubled.nvars
    terms = {m + (0,) * (n2 - len(m)): c for m, c in p.terms.items()}
    return Polynomial(doubled, terms, _clean=False)


def swap_map(doubled):
    """Involution of a doubled context exchanging x_i and x_i'."""
    n = doubled.nvars // 2
    images = [doubled.var(doubled.variables[(i + n) % (2 * n)]) for i in range(2 * n)]
    return RingMap(doubled, doubled, images)


def _substitute_prefix(p, doubled, n, upto):
    """Replace x_1..x_upto by their primed copies inside the doubled ring."""
    images = []
    for i in range(2 * n):
        if i < upto:
            images.append(doubled.var(doubled.variables[i + n]))
        else:
            images.append(doubled.var(doubled.variables[i]))
    return RingMap(doubled, doubled, images)(p)


def _divide_by_linear(p, i, n, doubled):
    """Exact division by (x_i - x_i')."""
    divisor = doubled.var(doubled.variables[i]) - doubled.var(doubled.variables[i + n])
    return exact_divide(p, divisor)


def divided_differences(components, context=None, primed_names=None):
    """Matrix of divided differences in the doubled ring; the telescoping
    identity is verified exactly before returning."""
    components = tuple(components)
    if context is None:
        context = components[0].context
    n = context.nvars
    doubled = doubled_context(context, primed_names)
    lifted = [_embed(f, doubled) for f in components]
    entries = []
    for i in range(n):
        row = []
        upper = [_substitute_prefix(f, doubled, n, i) for f in lifted]
        lower = [_substitute_prefix(f, doubled, n, i + 1) for f in lifted]
        for j in range(len(components)):
            diff = upper[j] - lower[j]
            if diff.is_zero():
                row.append(doubled.zero())
                continue
            row.append(_divide_by_linear(diff, i, n, doubled))
        entries.append(tuple(row))

    swap_diff = [
        _embed(f, doubled) - _substitute_prefix(_embed(f, doubled), doubled, n, n)
        for f in components
    ]
    for j in range(len(components)):
        acc = doubled.zero()
        for i in range(n):
            xi = doubled.var(doubled.variables[i])
            xpi = doubled.var(doubled.variables[i + n])
            acc = acc + entries[i][j] * (xi - xpi)
        if acc != swap_diff[j]:
            raise ExactDivisionError(
                "divided differences failed the telescoping identity"
            )
    return DividedDifferenceMatrix(tuple(entries), doubled)


def double_point_ideal(components, context=None, primed_names=None):
    """Lifted double-point ideal: component increments f_j(x) - f_j(x')
    together with the maximal minors of the divided-difference matrix."""
    components = tuple(components)
    if context is None:
        context = components[0].context
    n = context.nvars
    if len(components) != n + 1:
        raise UnsupportedConfigurationError(
            "double points need n source variables and n+1 components"
        )
    dd = divided_differences(components, context, primed_names)
    doubled = dd.context
    gens = []
    for f in components:
        lifted = _embed(f, doubled)
        gens.append(lifted - _substitute_prefix(lifted, doubled, n, n))
    from .fitting import minors

    alpha_minors = minors(dd.entries, n, doubled)
    gens.extend(alpha_minors.generators)
    return Ideal(doubled, interreduce_generators(gens))


def source_double_points(components, context=None, max_degree=30, y_var=None,
                         primed_names=None, threads=None, deadline=None):
    """Presentation of the projection restricted to the lifted double
    points, plus the source double-point ideal (its zeroth Fitting ideal),
    expressed directly in the source variables.

    y_var names the source variable whose projection slot is the
    distinguished coordinate (default: the last variable); the remaining
    slots must make the restricted projection finite.
    """
    components = tuple(components)
    if context is None:
        context = components[0].context
    n = context.nvars
    i2 = double_point_ideal(components, context, primed_names)
    doubled = i2.context

    order = list(context.variables)
    if y_var is not None:
        if y_var not in order:
            raise ContextMismatchError(f"unknown source variable {y_var!r}")
        order.remove(y_var)
        order.append(y_var)
    target = RingContext.local(order)
    proj = tuple(doubled.var(v) for v in order)
    problem = MapGermProblem(doubled, i2, proj, target)
    pm = presentation_matrix(
        problem, max_degree=max_degree, threads=threads, deadline=deadline
    )
    d_ideal = fitting_ideal(pm, 0)
    return pm, d_ideal
