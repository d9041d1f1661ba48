"""Exact sparse multivariate polynomials over Q with global/local monomial orderings.

Coefficients are arbitrary-precision rationals (gmpy2.mpq when available,
fractions.Fraction otherwise); both keep values reduced with positive
denominator.  Monomials are exponent tuples sized to their ring context.
Local rings are modelled as polynomial rings carrying a local ordering;
the localization semantics live in the normal-form routines (stdbasis).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ContextMismatchError, PolynomialParseError

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as QQ

QQ_ZERO = QQ(0)
QQ_ONE = QQ(1)

# Ordering kinds for a single block of variables.
GLOBAL_DEGREVLEX = "degrevlex"
LOCAL_NEGDEGREVLEX = "negdegrevlex"
# Internal: global ordering on a homogenizing variable (first slot) plus
# base variables; on monomials of equal total degree it restricts to
# negdegrevlex on the base part, which is what Lazard's method needs.
HOMOGENIZED_LOCAL = "homogenized-local"

LT, EQ, GT = -1, 0, 1


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    """Exponent vector of b/a, or None when a does not divide b."""
    q = tuple(x - y for x, y in zip(b, a))
    if any(e < 0 for e in q):
        return None
    return q


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(m):
    return sum(m)


@dataclass(frozen=True)
class MonomialOrdering:
    """A product of contiguous blocks, each degrevlex (global) or
    negdegrevlex (local).  Single-block orderings are the common case;
    multi-block orderings realize elimination (outer block eliminated)."""

    blocks: tuple  # ((width, kind), ...), widths cover the variable list

    @staticmethod
    def degrevlex(nvars):
        return MonomialOrdering(((nvars, GLOBAL_DEGREVLEX),))

    @staticmethod
    def negdegrevlex(nvars):
        return MonomialOrdering(((nvars, LOCAL_NEGDEGREVLEX),))

    @staticmethod
    def elimination_block(outer_width, inner):
        """Global outer block stacked in front of an existing ordering."""
        return MonomialOrdering(((outer_width, GLOBAL_DEGREVLEX),) + inner.blocks)

    @property
    def nvars(self):
        return sum(w for w, _ in self.blocks)

    def is_global(self):
        return all(kind != LOCAL_NEGDEGREVLEX for _, kind in self.blocks)

    def key_function(self):
        """Monomial -> tuple; larger tuple means larger monomial.

        Per block: signed total degree first (negated for local blocks so
        that 1 beats every variable), then negated exponents in reverse
        variable order, which is exactly the degrevlex tie-break.
        """
        blocks = self.blocks
        if len(blocks) == 1:
            kind = blocks[0][1]
            if kind == GLOBAL_DEGREVLEX:
                def key(m):
                    return (sum(m),) + tuple(-e for e in reversed(m))
            elif kind == HOMOGENIZED_LOCAL:
                def key(m):
                    return (sum(m), m[0]) + tuple(-e for e in reversed(m[1:]))
            else:
                def key(m):
                    return (-sum(m),) + tuple(-e for e in reversed(m))
            return key

        spans = []
        pos = 0
        for width, kind in blocks:
            spans.append((pos, pos + width, kind))
            pos += width

        def key(m):
            out = []
            for lo, hi, kind in spans:
                seg = m[lo:hi]
                d = sum(seg)
                if kind == HOMOGENIZED_LOCAL:
                    out.append(d)
                    out.append(seg[0])
                    out.extend(-e for e in reversed(seg[1:]))
                    continue
                out.append(d if kind == GLOBAL_DEGREVLEX else -d)
                out.extend(-e for e in reversed(seg))
            return tuple(out)

        return key


def compare(m1, m2, ordering):
    """Total order on monomials: returns LT, EQ or GT."""
    n = ordering.nvars
    if len(m1) != n or len(m2) != n:
        raise ContextMismatchError(
            f"monomial length mismatch: {len(m1)}, {len(m2)} vs {n} variables"
        )
    key = ordering.key_function()
    k1, k2 = key(m1), key(m2)
    if k1 < k2:
        return LT
    if k1 > k2:
        return GT
    return EQ


class RingContext:
    """Ordered variable list plus monomial ordering; immutable."""

    __slots__ = (
        "variables", "ordering", "key", "_index", "_hash", "_neg_memo",
    )

    def __init__(self, variables, ordering=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ContextMismatchError(f"duplicate variable names in {variables}")
        if ordering is None:
            ordering = MonomialOrdering.negdegrevlex(len(variables))
        if ordering.nvars != len(variables):
            raise ContextMismatchError(
                f"ordering covers {ordering.nvars} variables, context has {len(variables)}"
            )
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "ordering", ordering)
        object.__setattr__(self, "key", ordering.key_function())
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(variables)})
        object.__setattr__(self, "_hash", hash((variables, ordering)))
        object.__setattr__(self, "_neg_memo", {})

    def neg_key(self, m):
        """Negated ordering key (ascending heap order = descending
        monomial order); memoized, monomials recur heavily in reductions."""
        memo = self._neg_memo
        nk = memo.get(m)
        if nk is None:
            nk = tuple(-v for v in self.key(m))
            memo[m] = nk
        return nk

    def __setattr__(self, name, value):
        raise AttributeError("RingContext is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, RingContext)
            and self.variables == other.variables
            and self.ordering == other.ordering
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        kinds = ",".join(f"{w}:{k}" for w, k in self.ordering.blocks)
        return f"RingContext({', '.join(self.variables)}; {kinds})"

    @staticmethod
    def local(variables):
        return RingContext(variables, MonomialOrdering.negdegrevlex(len(tuple(variables))))

    @staticmethod
    def graded(variables):
        return RingContext(variables, MonomialOrdering.degrevlex(len(tuple(variables))))

    @property
    def nvars(self):
        return len(self.variables)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ContextMismatchError(f"unknown variable {name!r}") from None

    def unit_monomial(self):
        return (0,) * self.nvars

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {self.unit_monomial(): QQ_ONE})

    def const(self, c):
        c = QQ(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {self.unit_monomial(): c})

    def var(self, name):
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): QQ_ONE})

    def monomial(self, exponents, coeff=1):
        exponents = tuple(exponents)
        if len(exponents) != self.nvars:
            raise ContextMismatchError("exponent vector has wrong length")
        coeff = QQ(coeff)
        if coeff == 0:
            return self.zero()
        return Polynomial(self, {exponents: coeff})

    def poly(self, text):
        return parse_polynomial(text, self)


class Polynomial:
    """Sparse exact-rational polynomial tied to its ring context.

    Values are treated as immutable; all operations return fresh objects.
    """

    __slots__ = ("context", "terms", "_lt")

    def __init__(self, context, terms, _clean=True):
        self.context = context
        if _clean:
            n = context.nvars
            clean = {}
            for mono, coeff in terms.items():
                if len(mono) != n:
                    raise ContextMismatchError("monomial sized for a different context")
                coeff = coeff if type(coeff) is type(QQ_ZERO) else QQ(coeff)
                if coeff != 0:
                    clean[mono] = coeff
            self.terms = clean
        else:
            self.terms = terms
        self._lt = None

    def _check(self, other):
        if self.context != other.context:
            raise ContextMismatchError("polynomials from different ring contexts")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.context == other.context and self.terms == other.terms
        if isinstance(other, (int, type(QQ_ZERO))):
            return self == self.context.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, type(QQ_ZERO))):
            other = self.context.const(other)
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = out.get(mono, QQ_ZERO) + coeff
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial(self.context, out, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(
            self.context, {m: -c for m, c in self.terms.items()}, _clean=False
        )

    def __sub__(self, other):
        if isinstance(other, (int, type(QQ_ZERO))):
            other = self.context.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, type(QQ_ZERO))):
            c = QQ(other)
            if c == 0:
                return self.context.zero()
            return Polynomial(
                self.context, {m: cf * c for m, cf in self.terms.items()}, _clean=False
            )
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                s = out.get(m, QQ_ZERO) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.context, out, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = self.context.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def leading_term(self):
        """(monomial, coefficient) maximal under the context ordering."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lt is None:
            key = self.context.key
            m = max(self.terms, key=key)
            self._lt = (m, self.terms[m])
        return self._lt

    def leading_monomial(self):
        return self.leading_term()[0]

    def leading_coeff(self):
        return self.leading_term()[1]

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)

    def ecart(self):
        """total degree minus degree of the leading monomial (>= 0)."""
        return self.total_degree() - sum(self.leading_monomial())

    def constant_coeff(self):
        return self.terms.get(self.context.unit_monomial(), QQ_ZERO)

    def is_constant(self):
        return all(sum(m) == 0 for m in self.terms)

    def coeff(self, exponents):
        return self.terms.get(tuple(exponents), QQ_ZERO)

    def degree_in(self, var_index):
        if not self.terms:
            return 0
        return max(m[var_index] for m in self.terms)

    def substitute_zero(self, var_indices):
        """Set the given variables to 0 (keep only terms without them)."""
        idx = tuple(var_indices)
        out = {m: c for m, c in self.terms.items() if all(m[i] == 0 for i in idx)}
        return Polynomial(self.context, out, _clean=False)

    def sorted_terms(self):
        key = self.context.key
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"<{self} over {self.context!r}>"


class RingMap:
    """Ring morphism determined by one image polynomial per source variable."""

    __slots__ = ("source", "target", "images", "_powers")

    def __init__(self, source, target, images):
        images = tuple(images)
        if len(images) != source.nvars:
            raise ContextMismatchError(
                f"need {source.nvars} images, got {len(images)}"
            )
        for im in images:
            if im.context != target:
                raise ContextMismatchError("image lies outside the target context")
        self.source = source
        self.target = target
        self.images = images
        self._powers = [{0: target.one(), 1: im} for im in images]

    @staticmethod
    def identity(context):
        return RingMap(context, context, [context.var(v) for v in context.variables])

    def _power(self, i, e):
        cache = self._powers[i]
        known = max(k for k in cache if k <= e)
        p = cache[known]
        base = cache[1]
        for k in range(known + 1, e + 1):
            p = p * base
            cache[k] = p
        return cache[e]

    def monomial_image(self, mono):
        out = self.target.one()
        for i, e in enumerate(mono):
            if e:
                out = out * self._power(i, e)
        return out

    def __call__(self, p):
        if p.context != self.source:
            raise ContextMismatchError("polynomial not in the map's source context")
        acc = self.target.zero()
        for mono, coeff in p.terms.items():
            acc = acc + self.monomial_image(mono) * coeff
        return acc


# ---------------------------------------------------------------------------
# Canonical text format: terms in decreasing order, rational coefficients as
# p/q (/1 omitted), ^ for powers, * for products.  The parser accepts the
# same grammar plus whitespace, parentheses and unary signs.
# ---------------------------------------------------------------------------

def _render_monomial(mono, variables):
    parts = []
    for name, e in zip(variables, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_polynomial(p):
    if not p.terms:
        return "0"
    chunks = []
    for mono, coeff in p.sorted_terms():
        mono_str = _render_monomial(mono, p.context.variables)
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if mono_str and mag == 1:
            body = mono_str
        elif mono_str:
            body = f"{mag}*{mono_str}"
        else:
            body = str(mag)
        if not chunks:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(chunks)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|([-+*/^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            tail = text[pos:].strip()
            if not tail:
                break
            raise PolynomialParseError(f"unexpected character at: {tail[:20]!r}")
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, context):
        self.tokens = tokens
        self.pos = 0
        self.ctx = context

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, value = self.take()
        if kind != "op" or value != op:
            raise PolynomialParseError(f"expected {op!r}, found {value!r}")

    def parse_expr(self):
        p = self.parse_term()
        while True:
            kind, value = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                q = self.parse_term()
                p = p + q if value == "+" else p - q
            else:
                return p

    def parse_term(self):
        p = self.parse_factor()
        while True:
            kind, value = self.peek()
            if kind == "op" and value == "*":
                self.take()
                p = p * self.parse_factor()
            elif kind == "op" and value == "/":
                self.take()
                q = self.parse_factor()
                if not q.is_constant() or q.is_zero():
                    raise PolynomialParseError("division only by nonzero constants")
                p = p * (QQ_ONE / q.constant_coeff())
            else:
                return p

    def parse_factor(self):
        base = self.parse_base()
        kind, value = self.peek()
        if kind == "op" and value == "^":
            self.take()
            ekind, evalue = self.take()
            if ekind != "num":
                raise PolynomialParseError("exponent must be a nonnegative integer")
            return base ** evalue
        return base

    def parse_base(self):
        kind, value = self.take()
        if kind == "num":
            return self.ctx.const(value)
        if kind == "name":
            return self.ctx.var(value)
        if kind == "op" and value == "(":
            p = self.parse_expr()
            self.expect_op(")")
            return p
        if kind == "op" and value == "-":
            return -self.parse_factor()
        if kind == "op" and value == "+":
            return self.parse_factor()
        raise PolynomialParseError(f"unexpected token {value!r}")


def parse_polynomial(text, context):
    parser = _Parser(_tokenize(text), context)
    p = parser.parse_expr()
    kind, value = parser.peek()
    if kind != "end":
        raise PolynomialParseError(f"trailing input near {value!r}")
    return p
