"""Standard/Groebner bases, normal forms and the quotient-ring toolkit.

Global orderings use classical Buchberger reduction.  Local (and mixed
block) orderings use Mora's weak normal form: reducers of minimal ecart
are preferred and intermediate results join the reducer set, which is
what makes localization-at-the-origin semantics correct.

Two reduction flavours coexist on purpose:

* ``mora_normal_form`` decides localized ideal membership exactly; its
  nonzero residues are canonical only up to a unit.
* ``truncated_normal_form`` is the canonical linear projection modulo
  (I + m^cutoff); with a large enough cutoff it is the unique normal
  form onto standard monomials and in particular Q-linear.
"""

from __future__ import annotations

import heapq
import itertools
import math
import threading
import time

from .errors import (
    ContextMismatchError,
    ExactDivisionError,
    TimeLimitError,
    UnsupportedConfigurationError,
)
from .ring import (
    GLOBAL_DEGREVLEX,
    HOMOGENIZED_LOCAL,
    LOCAL_NEGDEGREVLEX,
    MonomialOrdering,
    Polynomial,
    QQ,
    QQ_ONE,
    QQ_ZERO,
    RingContext,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

INFINITE = math.inf


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise TimeLimitError("time limit exceeded")


def content_normalized(p):
    """Scale by a rational so coefficients are coprime integers with a
    positive leading coefficient."""
    if p.is_zero():
        return p
    nums = [c.numerator for c in p.terms.values()]
    dens = [c.denominator for c in p.terms.values()]
    g = 0
    for n in nums:
        g = math.gcd(g, int(n))
    l = 1
    for d in dens:
        l = l * int(d) // math.gcd(l, int(d))
    scale = QQ(l, g)
    if p.leading_coeff() < 0:
        scale = -scale
    return p * scale


def monic(p):
    return p * (QQ_ONE / p.leading_coeff())


class _Reducer:
    """Prepared divisor: leading data split off for the reduction loops."""

    __slots__ = ("lm", "lc", "tail", "ecart", "poly")

    def __init__(self, p):
        lm, lc = p.leading_term()
        self.lm = lm
        self.lc = lc
        self.tail = tuple((m, c) for m, c in p.terms.items() if m != lm)
        self.ecart = p.ecart()
        self.poly = p


def _prepare(polys):
    return [_Reducer(p) for p in polys if not p.is_zero()]


def truncated_normal_form(p, reducers, cutoff=None):
    """Canonical remainder of p under the reducer set.

    Every processed monomial is either dropped (total degree >= cutoff),
    moved to the remainder (no leading monomial divides it) or rewritten
    by the lowest-degree matching reducer.  For a standard basis and a
    local degree-compatible ordering the result is the unique
    representative modulo (ideal + m^cutoff) supported on standard
    monomials; a cutoff is required for termination whenever the
    ordering is not global.
    """
    ctx = p.context
    neg_key = ctx.neg_key
    ordered = sorted(
        (red for red in reducers),
        key=lambda red: (sum(red.lm), ctx.key(red.lm)),
    )
    lm_degrees = [sum(red.lm) for red in ordered]
    coeffs = dict(p.terms)
    heap = [(neg_key(m), m) for m in coeffs]
    heapq.heapify(heap)
    out = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = coeffs.pop(m, None)
        if c is None:
            continue
        deg = sum(m)
        if cutoff is not None and deg >= cutoff:
            continue
        hit = None
        for red, rdeg in zip(ordered, lm_degrees):
            if rdeg > deg:
                break
            if mono_divides(red.lm, m):
                hit = red
                break
        if hit is None:
            out[m] = c
            continue
        q = mono_div(m, hit.lm)
        f = c / hit.lc
        for tm, tc in hit.tail:
            t = mono_mul(q, tm)
            prev = coeffs.get(t)
            if prev is None:
                coeffs[t] = -f * tc
                heapq.heappush(heap, (neg_key(t), t))
            else:
                s = prev - f * tc
                if s:
                    coeffs[t] = s
                else:
                    del coeffs[t]
    return Polynomial(ctx, out, _clean=False)


def _poly_ecart(terms, lead_mono):
    top = max(sum(m) for m in terms)
    return top - sum(lead_mono)


def mora_normal_form(p, reducers, head_only=False, membership_only=False):
    """Mora weak normal form of p against the reducer list.

    The returned polynomial is 0 exactly when p lies in the localized
    ideal generated by the reducers, provided they form a standard basis.
    With ``membership_only`` the routine stops at the first irreducible
    head term (enough to refute membership).  Intermediate results are
    appended to a local copy of the reducer list per Mora's rule.
    """
    ctx = p.context
    key = ctx.key
    local = list(reducers)
    work = dict(p.terms)
    result = {}
    while work:
        hm = max(work, key=key)
        hc = work[hm]
        candidates = [r for r in local if mono_divides(r.lm, hm)]
        if not candidates:
            if membership_only:
                return p  # any nonzero value refutes membership
            result[hm] = hc
            del work[hm]
            if head_only:
                result.update(work)
                return Polynomial(ctx, result, _clean=False)
            continue
        best = min(range(len(candidates)), key=lambda i: candidates[i].ecart)
        red = candidates[best]
        h_ecart = _poly_ecart(work, hm)
        if red.ecart > h_ecart:
            local.append(_Reducer(Polynomial(ctx, dict(work), _clean=False)))
        q = mono_div(hm, red.lm)
        f = hc / red.lc
        del work[hm]
        for tm, tc in red.tail:
            t = mono_mul(q, tm)
            prev = work.get(t)
            if prev is None:
                work[t] = -f * tc
            else:
                s = prev - f * tc
                if s:
                    work[t] = s
                else:
                    del work[t]
    return Polynomial(ctx, result, _clean=False)


def _spoly(a, b, ctx):
    lcm = mono_lcm(a.lm, b.lm)
    qa = mono_div(lcm, a.lm)
    qb = mono_div(lcm, b.lm)
    pa = Polynomial(ctx, {mono_mul(qa, m): c / a.lc for m, c in a.poly.terms.items()}, _clean=False)
    pb = Polynomial(ctx, {mono_mul(qb, m): c / b.lc for m, c in b.poly.terms.items()}, _clean=False)
    return pa - pb


def _minimalize(prepared, ctx):
    """Drop elements whose leading monomial another one divides (ties on
    equal leading monomials resolved by list position)."""
    minimal = []
    for idx, red in enumerate(prepared):
        dominated = False
        for odx, other in enumerate(prepared):
            if odx == idx or not mono_divides(other.lm, red.lm):
                continue
            if other.lm != red.lm or odx < idx:
                dominated = True
                break
        if not dominated:
            minimal.append(red)
    minimal.sort(key=lambda red: ctx.key(red.lm), reverse=True)
    return minimal


class _PairQueue:
    """Critical pairs under the Gebauer-Moeller criteria.

    New pairs are pruned by the chain (M), duplicate-lcm (F) and product
    (B) criteria; surviving old pairs whose lcm the new leading monomial
    strictly refines are discarded.
    """

    def __init__(self, ctx, degree_bound=None):
        self.ctx = ctx
        self.heap = []
        self.alive = set()
        self.degree_bound = degree_bound

    def __bool__(self):
        return bool(self.alive)

    def push_element(self, reducers, t):
        lt = reducers[t].lm
        lcms = [mono_lcm(reducers[i].lm, lt) for i in range(t)]
        for (i, j) in list(self.alive):
            lij = mono_lcm(reducers[i].lm, reducers[j].lm)
            if (
                mono_divides(lt, lij)
                and lcms[i] != lij
                and lcms[j] != lij
            ):
                self.alive.discard((i, j))
        classes = {}
        for i in range(t):
            li = lcms[i]
            dominated = False
            for j in range(t):
                lj = lcms[j]
                if lj != li and mono_divides(lj, li):
                    dominated = True
                    break
            if dominated:
                continue
            classes.setdefault(li, []).append(i)
        key = self.ctx.key
        for li, members in classes.items():
            if self.degree_bound is not None and sum(li) >= self.degree_bound:
                continue  # S-polynomial lives beyond the truncation
            if any(li == mono_mul(reducers[i].lm, lt) for i in members):
                continue  # product criterion kills the whole class
            i = members[0]
            pair = (i, t)
            self.alive.add(pair)
            heapq.heappush(self.heap, (sum(li), key(li), i, t))

    def pop(self):
        while self.heap:
            _, _, i, j = heapq.heappop(self.heap)
            if (i, j) in self.alive:
                self.alive.discard((i, j))
                return i, j
        return None


def _truncate(p, cutoff):
    if cutoff is None:
        return p
    terms = {m: c for m, c in p.terms.items() if sum(m) < cutoff}
    return Polynomial(p.context, terms, _clean=False)


def _buchberger(gens, ctx, deadline=None, interreduce=True, divide_out=None,
                cutoff=None):
    """Buchberger completion with Gebauer-Moeller pair management.

    Requires either a global ordering (plain division terminates) or a
    ``cutoff``: with a cutoff everything of total degree >= cutoff is
    dropped, so the result is a basis of the input ideal plus the cutoff
    power of the maximal ideal (this keeps the combinatorics finite for
    local orderings and is exact below the cutoff).

    ``divide_out`` optionally names a variable index whose powers are
    stripped from every new basis element (used for the homogenizing
    variable, where saturation does not change the dehomogenized ideal).
    """
    seen = set()
    basis = []
    for g in gens:
        g = content_normalized(_truncate(g, cutoff))
        if g.is_zero():
            continue
        fp = frozenset(g.terms.items())
        if fp not in seen:
            seen.add(fp)
            basis.append(g)

    reducers = []
    active = []
    queue = _PairQueue(ctx, degree_bound=cutoff)

    def insert(p):
        red = _Reducer(p)
        t = len(reducers)
        reducers.append(red)
        for i in range(t):
            if active[i] and mono_divides(red.lm, reducers[i].lm):
                active[i] = False
        active.append(True)
        queue.push_element(reducers, t)

    def strip(p):
        if divide_out is None or p.is_zero():
            return p
        i = divide_out
        shift = min(m[i] for m in p.terms)
        if shift == 0:
            return p
        return Polynomial(
            ctx,
            {m[:i] + (m[i] - shift,) + m[i + 1:]: c for m, c in p.terms.items()},
            _clean=False,
        )

    for g in basis:
        insert(strip(g))

    while queue:
        _check_deadline(deadline)
        pair = queue.pop()
        if pair is None:
            break
        i, j = pair
        current = [r for r, a in zip(reducers, active) if a]
        r = truncated_normal_form(
            _spoly(reducers[i], reducers[j], ctx), current, cutoff=cutoff
        )
        if r.is_zero():
            continue
        insert(strip(content_normalized(r)))

    minimal = _minimalize([r for r, a in zip(reducers, active) if a], ctx)
    if not interreduce:
        return [red.poly for red in minimal]
    reduced = []
    for idx, red in enumerate(minimal):
        others = [r for k, r in enumerate(minimal) if k != idx]
        nf = truncated_normal_form(red.poly, others, cutoff=cutoff)
        reduced.append(content_normalized(nf))
    return [g for g in reduced if not g.is_zero()]


def _homogenize(p, hom_ctx, degree=None):
    if degree is None:
        degree = p.total_degree()
    terms = {}
    for m, c in p.terms.items():
        terms[(degree - sum(m),) + m] = c
    return Polynomial(hom_ctx, terms, _clean=False)


def _dehomogenize(p, ctx):
    terms = {}
    for m, c in p.terms.items():
        base = m[1:]
        terms[base] = terms.get(base, QQ_ZERO) + c
    return Polynomial(ctx, terms)


def _lazard_local(gens, ctx, deadline=None):
    """Standard basis for a single-block local ordering via homogenization.

    The homogenized generators get a Groebner basis under a global
    ordering that restricts to the local one on equal total degrees;
    setting the homogenizing variable to 1 yields a standard basis.
    Classical Buchberger termination applies, so no Mora loop is needed.
    """
    taken = set(ctx.variables)
    hname = _fresh_name("h0", taken)
    hom_ctx = RingContext(
        (hname,) + ctx.variables,
        MonomialOrdering(((ctx.nvars + 1, HOMOGENIZED_LOCAL),)),
    )
    hom_gens = [_homogenize(g, hom_ctx) for g in gens]
    basis = _buchberger(
        hom_gens, hom_ctx, deadline=deadline, interreduce=True, divide_out=0
    )
    dehom = [content_normalized(_dehomogenize(g, ctx)) for g in basis]
    prepared = [_Reducer(g) for g in dehom if not g.is_zero()]
    return [red.poly for red in _minimalize(prepared, ctx)]


def _mora_completion(gens, ctx, deadline=None):
    """Buchberger loop with Mora weak normal forms; fallback for mixed
    block orderings (can be slow: reduction tails are not trimmed)."""
    basis = []
    for g in gens:
        g = content_normalized(g)
        if all(g.terms != b.terms for b in basis):
            basis.append(g)
    prepared = [_Reducer(g) for g in basis]
    pairs = {}

    def pair_priority(i, j):
        lcm = mono_lcm(prepared[i].lm, prepared[j].lm)
        return (sum(lcm), ctx.key(lcm), i, j)

    for i, j in itertools.combinations(range(len(prepared)), 2):
        pairs[(i, j)] = pair_priority(i, j)

    while pairs:
        _check_deadline(deadline)
        (i, j) = min(pairs, key=pairs.get)
        del pairs[(i, j)]
        a, b = prepared[i], prepared[j]
        lcm = mono_lcm(a.lm, b.lm)
        skip = False
        for l in range(len(prepared)):
            if l == i or l == j:
                continue
            if not mono_divides(prepared[l].lm, lcm):
                continue
            p1 = (min(i, l), max(i, l))
            p2 = (min(j, l), max(j, l))
            if p1 not in pairs and p2 not in pairs:
                skip = True
                break
        if skip:
            continue
        r = mora_normal_form(_spoly(a, b, ctx), prepared, head_only=True)
        if r.is_zero():
            continue
        r = content_normalized(r)
        new_index = len(prepared)
        prepared.append(_Reducer(r))
        for l in range(new_index):
            pairs[(l, new_index)] = pair_priority(l, new_index)

    return [red.poly for red in _minimalize(prepared, ctx)]


def standard_basis(generators, deadline=None):
    """Standard basis under the generators' context ordering.

    Global orderings run classical Buchberger; single-block local
    orderings run Buchberger on the homogenization (Lazard); anything
    else falls back to the Mora completion.  The result is minimal (no
    leading monomial divides another) and every S-polynomial of it
    reduces to zero.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return []
    ctx = gens[0].context
    for g in gens:
        if g.context != ctx:
            raise ContextMismatchError("generators from different contexts")
    if ctx.ordering.is_global():
        return _buchberger(gens, ctx, deadline=deadline)
    if (
        len(ctx.ordering.blocks) == 1
        and ctx.ordering.blocks[0][1] == LOCAL_NEGDEGREVLEX
    ):
        return _lazard_local(gens, ctx, deadline=deadline)
    return _mora_completion(gens, ctx, deadline=deadline)


def interreduce_generators(gens):
    """Shrink a generator list without changing the ideal it generates.

    Simplest generators first; a generator is dropped when it visibly
    reduces to zero against the kept ones.  Keeping (rather than
    replacing by) residues matters: under local orderings a weak normal
    form can be much larger than its input.
    """
    seen = set()
    unique = []
    for g in gens:
        if g.is_zero():
            continue
        g = content_normalized(g)
        fingerprint = frozenset(g.terms.items())
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        unique.append(g)
    unique.sort(key=lambda g: (g.total_degree(), len(g.terms), str(g)))
    out = []
    for g in unique:
        if out:
            r = mora_normal_form(g, _prepare(out), membership_only=True)
            if r.is_zero():
                continue
        out.append(g)
    return out


class Ideal:
    """Generator list with a lazily computed, cached standard basis."""

    def __init__(self, context, generators):
        self.context = context
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = context.poly(g)
            if g.context != context:
                raise ContextMismatchError("generator from a different context")
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)
        self._std = None
        self._prepared = None
        self._stairs = False  # False = not computed (None means infinite)
        self._lock = threading.RLock()

    def __repr__(self):
        inner = ", ".join(str(g) for g in self.generators) or "0"
        return f"Ideal({inner})"

    def std(self, deadline=None):
        """Cached standard basis (single-writer; reads are lock-free)."""
        if self._std is None:
            with self._lock:
                if self._std is None:
                    basis = standard_basis(self.generators, deadline=deadline)
                    for g in self.generators:
                        r = mora_normal_form(g, _prepare(basis), membership_only=True)
                        if not r.is_zero():
                            raise ExactDivisionError(
                                "standard basis failed the membership check"
                            )
                    self._prepared = _prepare(basis)
                    self._std = tuple(basis)
        return self._std

    def _reducers(self, deadline=None):
        self.std(deadline=deadline)
        return self._prepared

    def _staircase_cached(self, deadline=None):
        if self._stairs is False:
            with self._lock:
                if self._stairs is False:
                    self._stairs = _local_staircase(self, deadline)
        return self._stairs

    def contains(self, p, deadline=None):
        if p.context != self.context:
            raise ContextMismatchError("polynomial from a different context")
        if p.is_zero():
            return True
        r = mora_normal_form(p, self._reducers(deadline), membership_only=True)
        return r.is_zero()

    def is_zero_ideal(self):
        return not self.generators

    def is_unit_ideal(self):
        basis = self.std()
        return any(sum(g.leading_monomial()) == 0 for g in basis)

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.std()]


def normal_form(p, ideal, deadline=None):
    """Normal form of p modulo the ideal in the localized ring.

    The result is 0 exactly when p belongs to the localized ideal.  For
    zero-dimensional ideals the canonical truncated projection is used,
    which is Q-linear; otherwise the Mora weak normal form is returned
    (nonzero residues then carry a hidden unit factor).
    """
    if p.context != ideal.context:
        raise ContextMismatchError("polynomial from a different context")
    if not ideal.generators:
        return p
    reducers = ideal._reducers(deadline)
    if ideal.context.ordering.is_global():
        return truncated_normal_form(p, reducers, cutoff=None)
    d = vdim(ideal)
    if d is not INFINITE:
        return truncated_normal_form(p, reducers, cutoff=int(d) + 1)
    return mora_normal_form(p, reducers)


class QuotientBasis:
    """Monomials under the staircase of a standard basis."""

    __slots__ = ("monomials", "finite_flag", "context")

    def __init__(self, context, monomials, finite_flag):
        self.context = context
        self.monomials = tuple(monomials)
        self.finite_flag = finite_flag

    def __len__(self):
        return len(self.monomials)

    def polynomials(self):
        return [self.context.monomial(m) for m in self.monomials]


def _enumerate_staircase(lms, n, deadline=None):
    """Standard monomials of the monomial ideal, or None when some
    variable has no pure power (infinite staircase)."""
    if any(sum(m) == 0 for m in lms):
        return []
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if sum(m) == m[i]]
        if not pure:
            return None
        bounds.append(min(pure))

    out = []

    def descend(prefix, i):
        if deadline is not None:
            _check_deadline(deadline)
        if i == n:
            out.append(tuple(prefix))
            return
        for e in range(bounds[i]):
            prefix.append(e)
            padded = tuple(prefix) + (0,) * (n - i - 1)
            if not any(mono_divides(lm, padded) for lm in lms):
                descend(prefix, i + 1)
            prefix.pop()

    descend([], 0)
    return out


_STAIRCASE_DOUBLINGS = 7


def _local_staircase(ideal, deadline=None):
    """Standard monomials of a single-block local ideal, or None when the
    quotient is infinite-dimensional.

    Works with degree-truncated bases: leading terms below the cutoff
    agree with the exact ones, and once no standard monomial reaches
    cutoff-1 the staircase is certified complete (staircases are closed
    under divisibility).  Falls back to the exact basis when the
    truncation refuses to stabilize.
    """
    ctx = ideal.context
    n = ctx.nvars
    if ideal._std is not None:
        lms = [g.leading_monomial() for g in ideal._std]
        return _enumerate_staircase(lms, n, deadline)
    if not ideal.generators:
        return [] if n == 0 else None
    cutoff = max(4, 2 + max(g.total_degree() for g in ideal.generators))
    for _ in range(_STAIRCASE_DOUBLINGS):
        basis = _buchberger(
            ideal.generators, ctx, deadline=deadline, interreduce=False,
            cutoff=cutoff,
        )
        lms = [g.leading_monomial() for g in basis]
        stairs = _enumerate_staircase(lms, n, deadline)
        if stairs is not None and (
            not stairs or max(sum(m) for m in stairs) < cutoff - 1
        ):
            return stairs
        cutoff *= 2
    lms = [g.leading_monomial() for g in ideal.std(deadline=deadline)]
    return _enumerate_staircase(lms, n, deadline)


def kbase(ideal, deadline=None):
    """Monomial basis of the quotient by the ideal as a Q-vector space.

    Finite exactly when every variable has a pure power among the leading
    monomials; in that case the full staircase is enumerated, sorted
    with 1 first (descending local order / ascending degree).
    """
    ctx = ideal.context
    is_local = (
        len(ctx.ordering.blocks) == 1
        and ctx.ordering.blocks[0][1] == LOCAL_NEGDEGREVLEX
    )
    if is_local:
        out = ideal._staircase_cached(deadline)
    else:
        lms = ideal.leading_monomials()
        out = _enumerate_staircase(lms, ctx.nvars, deadline)
    if out is None:
        return QuotientBasis(ctx, [], False)
    out = list(out)
    reverse = ctx.ordering.blocks[0][1] != GLOBAL_DEGREVLEX
    out.sort(key=ctx.key, reverse=reverse)
    return QuotientBasis(ctx, out, True)


def vdim(ideal, deadline=None):
    """Vector-space dimension of the quotient, or INFINITE."""
    qb = kbase(ideal, deadline=deadline)
    if not qb.finite_flag:
        return INFINITE
    return len(qb)


# ---------------------------------------------------------------------------
# Ideal-theoretic operations (localized semantics throughout).
# ---------------------------------------------------------------------------

def ideal_sum(a, b):
    _same_context(a, b)
    return Ideal(a.context, a.generators + b.generators)


def ideal_product(a, b):
    _same_context(a, b)
    gens = [g * h for g in a.generators for h in b.generators]
    return Ideal(a.context, interreduce_generators(gens))


def ideal_power(a, k):
    if k < 0:
        raise ValueError("negative ideal power")
    result = Ideal(a.context, [a.context.one()])
    for _ in range(k):
        result = ideal_product(result, a)
    return result


def ideal_equal(a, b, deadline=None):
    _same_context(a, b)
    return all(b.contains(g, deadline) for g in a.generators) and all(
        a.contains(g, deadline) for g in b.generators
    )


def ideal_contains(a, b, deadline=None):
    """True when the ideal a contains the ideal b."""
    _same_context(a, b)
    return all(a.contains(g, deadline) for g in b.generators)


def _same_context(a, b):
    if a.context != b.context:
        raise ContextMismatchError("ideals from different contexts")


def _fresh_name(base, taken):
    name = base
    while name in taken:
        name += "_"
    return name


def _lift(p, ext_ctx, offset):
    terms = {(0,) * offset + m: c for m, c in p.terms.items()}
    return Polynomial(ext_ctx, terms, _clean=False)


def _drop(p, ctx, offset):
    terms = {m[offset:]: c for m, c in p.terms.items()}
    return Polynomial(ctx, terms, _clean=False)


def eliminate(ideal, var_names, deadline=None):
    """Generators of the ideal's intersection with the subring omitting
    the named variables.

    Computed in a polynomial (global) twin ring with an elimination block
    for the dropped variables; localization is exact, so reading the
    result back in a local context gives the localized intersection of
    the corresponding localized ideals.
    """
    ctx = ideal.context
    if not var_names:
        return Ideal(ctx, ideal.generators)
    drop_idx = [ctx.index(v) for v in var_names]
    keep_idx = [i for i in range(ctx.nvars) if i not in drop_idx]
    width = len(drop_idx)
    ordering = MonomialOrdering(
        ((width, GLOBAL_DEGREVLEX), (len(keep_idx), GLOBAL_DEGREVLEX))
    )
    perm = drop_idx + keep_idx
    ext_ctx = RingContext(tuple(ctx.variables[i] for i in perm), ordering)

    def permute(p):
        return Polynomial(
            ext_ctx,
            {tuple(m[old] for old in perm): c for m, c in p.terms.items()},
            _clean=False,
        )

    gens = [permute(g) for g in ideal.generators if not g.is_zero()]
    basis = _buchberger(gens, ext_ctx, deadline=deadline) if gens else []
    kept_kind = (
        ctx.ordering.blocks[0][1]
        if len(ctx.ordering.blocks) == 1
        else GLOBAL_DEGREVLEX
    )
    kept_ctx = RingContext(
        tuple(ctx.variables[i] for i in keep_idx),
        MonomialOrdering(((len(keep_idx), kept_kind),)),
    )
    kept = []
    for g in basis:
        if all(all(m[i] == 0 for i in range(width)) for m in g.terms):
            kept.append(Polynomial(
                kept_ctx, {m[width:]: c for m, c in g.terms.items()}, _clean=False
            ))
    return Ideal(kept_ctx, kept)


def _global_intersection_generators(a, b, deadline=None):
    """Generators of the polynomial intersection via the classical
    t-trick, computed entirely under global orderings."""
    ctx = a.context
    taken = set(ctx.variables)
    tname = _fresh_name("t", taken)
    ordering = MonomialOrdering(
        ((1, GLOBAL_DEGREVLEX), (ctx.nvars, GLOBAL_DEGREVLEX))
    )
    ext = RingContext((tname,) + ctx.variables, ordering)
    t = ext.var(tname)
    one_minus_t = ext.one() - t
    gens = [t * _lift(g, ext, 1) for g in a.generators]
    gens += [one_minus_t * _lift(g, ext, 1) for g in b.generators]
    basis = _buchberger(gens, ext, deadline=deadline)
    return [
        _drop(g, ctx, 1)
        for g in basis
        if all(m[0] == 0 for m in g.terms)
    ]


def ideal_intersect(a, b, deadline=None):
    """Intersection of ideals (localized semantics when the context is
    local: localization commutes with finite intersections)."""
    _same_context(a, b)
    ctx = a.context
    if a.is_zero_ideal() or b.is_zero_ideal():
        return Ideal(ctx, [])
    kept = _global_intersection_generators(a, b, deadline)
    return Ideal(ctx, interreduce_generators(kept))


def exact_divide(p, q):
    """Exact polynomial quotient p/q; raises when the division leaves a
    remainder."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ctx = p.context
    qlm, qlc = q.leading_term()
    qtail = [(m, c) for m, c in q.terms.items() if m != qlm]
    work = dict(p.terms)
    quot = {}
    key = ctx.key
    while work:
        hm = max(work, key=key)
        hc = work[hm]
        qm = mono_div(hm, qlm)
        if qm is None:
            raise ExactDivisionError(f"({p}) is not divisible by ({q})")
        f = hc / qlc
        quot[qm] = f
        del work[hm]
        for tm, tc in qtail:
            t = mono_mul(qm, tm)
            prev = work.get(t)
            if prev is None:
                work[t] = -f * tc
            else:
                s = prev - f * tc
                if s:
                    work[t] = s
                else:
                    del work[t]
    return Polynomial(ctx, quot, _clean=False)


def ideal_quotient(a, b, deadline=None):
    """Colon ideal a : b, as the intersection of the single-divisor
    quotients (a : g) computed via intersect-and-divide."""
    _same_context(a, b)
    ctx = a.context
    if b.is_zero_ideal():
        return Ideal(ctx, [ctx.one()])
    result = None
    for g in b.generators:
        inter = ideal_intersect(a, Ideal(ctx, [g]), deadline=deadline)
        gens = [exact_divide(w, g) for w in inter.generators]
        part = Ideal(ctx, interreduce_generators(gens))
        result = part if result is None else ideal_intersect(result, part, deadline)
    return result
