"""Truncated h-adic super-Weyl algebra with normal-ordered elements.

Generators per spacetime index mu: a coordinate x_mu, a derivative d_mu and
an anticommuting one-form dx_mu.  The defining relations are

    [d_mu, x_nu] = eta_mu_nu,   eta = diag(-1, +1, ..., +1),
    [dx_mu, x_nu] = [dx_mu, d_nu] = 0,   {dx_mu, dx_nu} = 0.

Elements are finite maps from normal-ordered monomials (x's, then dx's in
ascending index, then d's) to truncated series in the deformation parameter
a0.  All values are immutable and all operations pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import comb, factorial

from .scalars import GaussScalar, MINUS_I
from .series import SeriesError, TruncSeries


class AlgebraError(ValueError):
    pass


class ContextMismatch(AlgebraError):
    pass


class ParityError(AlgebraError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Context:
    """Shared, immutable build context: dimension, truncation order in a0 and
    the rational direction of the deformation vector a_mu = a0 * e_mu."""

    dim: int
    order: int
    direction: tuple

    def __post_init__(self):
        if self.dim < 2:
            raise AlgebraError("dimension must be >= 2")
        if self.order < 1:
            raise AlgebraError("truncation order must be >= 1")
        e = tuple(_frac(v) for v in self.direction)
        if len(e) != self.dim:
            raise AlgebraError("direction vector length must equal the dimension")
        object.__setattr__(self, "direction", e)

    def metric(self, mu: int) -> int:
        return -1 if mu == 0 else 1

    def is_timelike_axis(self) -> bool:
        return self.direction == (Fraction(1),) + (Fraction(0),) * (self.dim - 1)


# A monomial key is (xexp: tuple[int], dxmask: int, dexp: tuple[int]).


@lru_cache(maxsize=None)
def _mul_mono(dim: int, m1, m2):
    """Normal-ordered product of two monomials; returns a tuple of
    ((monomial, int_factor)) pairs, or () if the product vanishes."""
    x1, dx1, d1 = m1
    x2, dx2, d2 = m2
    if dx1 & dx2:
        return ()
    # Koszul sign from merging the two ascending dx words.
    sign = 1
    if dx1 and dx2:
        inv = 0
        for i in range(dim):
            if dx1 >> i & 1:
                inv += bin(dx2 & ((1 << i) - 1)).count("1")
        if inv % 2:
            sign = -1
    mask = dx1 | dx2
    per_coord = []
    for mu in range(dim):
        b, a = d1[mu], x2[mu]
        if b == 0 or a == 0:
            per_coord.append(((0, 1),))
            continue
        eta = -1 if mu == 0 else 1
        opts = []
        for k in range(min(a, b) + 1):
            f = comb(a, k) * comb(b, k) * factorial(k)
            if eta < 0 and k % 2:
                f = -f
            opts.append((k, f))
        per_coord.append(tuple(opts))
    out = []
    for combo in iproduct(*per_coord):
        coef = sign
        xexp = list(x1)
        dexp = list(d2)
        for mu, (k, f) in enumerate(combo):
            coef *= f
            xexp[mu] += x2[mu] - k
            dexp[mu] += d1[mu] - k
        out.append(((tuple(xexp), mask, tuple(dexp)), coef))
    return tuple(out)


def _mono_sort_key(m):
    x, dx, d = m
    return (sum(x) + bin(dx).count("1") + sum(d), x, dx, d)


class AlgElement:
    __slots__ = ("ctx", "order", "terms")

    def __init__(self, ctx: Context, terms: dict, order: int):
        self.ctx = ctx
        self.order = order
        clean = {}
        for key, s in terms.items():
            if s.order != order:
                s = s.truncate(order)
            if not s.is_zero():
                clean[key] = s
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx: Context, order: int | None = None) -> "AlgElement":
        return cls(ctx, {}, order if order is not None else ctx.order)

    @classmethod
    def scalar(cls, ctx: Context, value, order: int | None = None) -> "AlgElement":
        order = order if order is not None else ctx.order
        key = ((0,) * ctx.dim, 0, (0,) * ctx.dim)
        return cls(ctx, {key: TruncSeries.const(value, order)}, order)

    @classmethod
    def one(cls, ctx: Context, order: int | None = None) -> "AlgElement":
        return cls.scalar(ctx, 1, order)

    @classmethod
    def from_series(cls, ctx: Context, s: TruncSeries) -> "AlgElement":
        key = ((0,) * ctx.dim, 0, (0,) * ctx.dim)
        return cls(ctx, {key: s}, s.order)

    @classmethod
    def x(cls, ctx: Context, mu: int, order: int | None = None) -> "AlgElement":
        order = order if order is not None else ctx.order
        e = tuple(1 if i == mu else 0 for i in range(ctx.dim))
        key = (e, 0, (0,) * ctx.dim)
        return cls(ctx, {key: TruncSeries.one(order)}, order)

    @classmethod
    def d(cls, ctx: Context, mu: int, order: int | None = None) -> "AlgElement":
        order = order if order is not None else ctx.order
        e = tuple(1 if i == mu else 0 for i in range(ctx.dim))
        key = ((0,) * ctx.dim, 0, e)
        return cls(ctx, {key: TruncSeries.one(order)}, order)

    @classmethod
    def dx(cls, ctx: Context, mu: int, order: int | None = None) -> "AlgElement":
        order = order if order is not None else ctx.order
        key = ((0,) * ctx.dim, 1 << mu, (0,) * ctx.dim)
        return cls(ctx, {key: TruncSeries.one(order)}, order)

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return (self.ctx == other.ctx and self.order == other.order
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx, self.order, frozenset(self.terms.items())))

    def _check_ctx(self, other: "AlgElement"):
        if self.ctx != other.ctx:
            raise ContextMismatch("elements built in different contexts")

    def truncate(self, order: int) -> "AlgElement":
        if order > self.order:
            raise AlgebraError(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        return AlgElement(self.ctx, {k: s.truncate(order)
                                     for k, s in self.terms.items()}, order)

    def parity(self) -> int:
        """0 or 1 for homogeneous elements; raises on mixed parity."""
        ps = {bin(k[1]).count("1") % 2 for k in self.terms}
        if len(ps) > 1:
            raise ParityError("element has mixed parity")
        return ps.pop() if ps else 0

    def is_homogeneous(self) -> bool:
        return len({bin(k[1]).count("1") % 2 for k in self.terms}) <= 1

    def is_momentum_only(self) -> bool:
        return all(sum(k[0]) == 0 and k[1] == 0 for k in self.terms)

    def is_derivative_free(self) -> bool:
        return all(sum(k[2]) == 0 for k in self.terms)

    def min_a0_degree(self) -> int:
        if not self.terms:
            return self.order + 1
        return min(s.valuation() for s in self.terms.values())

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._check_ctx(other)
        order = min(self.order, other.order)
        out = {k: s.truncate(order) for k, s in self.terms.items()}
        for k, s in other.terms.items():
            s = s.truncate(order)
            if k in out:
                t = out[k] + s
                if t.is_zero():
                    del out[k]
                else:
                    out[k] = t
            else:
                out[k] = s
        return AlgElement(self.ctx, out, order)

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + (-other)

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.ctx, {k: -s for k, s in self.terms.items()},
                          self.order)

    def __mul__(self, other: "AlgElement") -> "AlgElement":
        self._check_ctx(other)
        order = min(self.order, other.order)
        dim = self.ctx.dim
        out: dict = {}
        for k1, s1 in self.terms.items():
            s1t = s1.truncate(order)
            for k2, s2 in other.terms.items():
                prod = s1t * s2.truncate(order)
                if prod.is_zero():
                    continue
                for key, coef in _mul_mono(dim, k1, k2):
                    contrib = prod if coef == 1 else prod.scale(coef)
                    if key in out:
                        t = out[key] + contrib
                        if t.is_zero():
                            del out[key]
                        else:
                            out[key] = t
                    else:
                        out[key] = contrib
        return AlgElement(self.ctx, out, order)

    def scale(self, scalar) -> "AlgElement":
        """Multiply by a GaussScalar/rational or a TruncSeries in a0."""
        if isinstance(scalar, TruncSeries):
            order = min(self.order, scalar.order)
            st = scalar.truncate(order)
            return AlgElement(self.ctx,
                              {k: s.truncate(order) * st
                               for k, s in self.terms.items()}, order)
        s = GaussScalar.coerce(scalar)
        return AlgElement(self.ctx, {k: c.scale(s)
                                     for k, c in self.terms.items()}, self.order)

    def pow(self, k: int) -> "AlgElement":
        if k < 0:
            raise AlgebraError("negative powers are not defined on elements")
        out = AlgElement.one(self.ctx, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- deformation-specific operations --------------------------------------

    def divide_by_a0(self, k: int = 1) -> "AlgElement":
        out = {}
        for key, s in self.terms.items():
            try:
                out[key] = s.div_by_t(k)
            except SeriesError as exc:
                raise AlgebraError(
                    f"element not divisible by a0^{k} at monomial {key}") from exc
        return AlgElement(self.ctx, out, self.order - k)

    def vacuum_project(self) -> "AlgElement":
        """Action on the unit: every derivative annihilates 1."""
        zero_d = (0,) * self.ctx.dim
        return AlgElement(self.ctx,
                          {k: s for k, s in self.terms.items() if k[2] == zero_d},
                          self.order)

    def classical_limit(self) -> "AlgElement":
        return AlgElement(self.ctx,
                          {k: TruncSeries.const(s[0], self.order)
                           for k, s in self.terms.items()}, self.order)

    # -- rendering ------------------------------------------------------------

    def coefficient(self, key) -> TruncSeries:
        return self.terms.get(key, TruncSeries.zero(self.order))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=_mono_sort_key):
            x, dx, d = key
            gens = []
            for mu, e in enumerate(x):
                if e:
                    gens.append(f"x{mu}" if e == 1 else f"x{mu}^{e}")
            for mu in range(self.ctx.dim):
                if dx >> mu & 1:
                    gens.append(f"dx{mu}")
            for mu, e in enumerate(d):
                if e:
                    gens.append(f"d{mu}" if e == 1 else f"d{mu}^{e}")
            coeff = self.terms[key].render("a0")
            body = "*".join(gens)
            if not gens:
                parts.append(f"({coeff})")
            elif coeff == "1":
                parts.append(body)
            else:
                parts.append(f"({coeff})*{body}")
        return " + ".join(parts)

    def to_data(self) -> dict:
        terms = []
        for key in sorted(self.terms, key=_mono_sort_key):
            x, dx, d = key
            s = self.terms[key]
            terms.append({
                "x": list(x),
                "dx": [mu for mu in range(self.ctx.dim) if dx >> mu & 1],
                "d": list(d),
                "coeff": [[str(c.re), str(c.im)] for c in s.coeffs],
            })
        return {"order": self.order, "terms": terms}

    def __repr__(self):
        return f"AlgElement[{self.order}]({self.render()})"


# -- operations on elements ---------------------------------------------------


def commutator(a: AlgElement, b: AlgElement) -> AlgElement:
    return a * b - b * a


def anticommutator(a: AlgElement, b: AlgElement) -> AlgElement:
    return a * b + b * a


def graded_commutator(a: AlgElement, b: AlgElement) -> AlgElement:
    """ab - (-1)^{|a||b|} ba for homogeneous a, b."""
    if a.parity() == 1 and b.parity() == 1:
        return anticommutator(a, b)
    return commutator(a, b)


def lift_in_A(ctx: Context, f: TruncSeries,
              order: int | None = None) -> AlgElement:
    """f(A) with A = -i a0 d0, expanded into a0^k d0^k terms."""
    order = order if order is not None else f.order
    if f.order < order:
        raise AlgebraError("series order too low for requested element order")
    terms = {}
    zero = (0,) * ctx.dim
    for k in range(order + 1):
        if f[k].is_zero():
            continue
        dexp = tuple(k if mu == 0 else 0 for mu in range(ctx.dim))
        terms[(zero, 0, dexp)] = TruncSeries.monomial(f[k] * MINUS_I ** k, k, order)
    return AlgElement(ctx, terms, order)


def substitute_series(f: TruncSeries, elem: AlgElement) -> AlgElement:
    """f evaluated on a momentum-only element whose coefficients all vanish
    at a0 = 0, so the sum terminates at the truncation order."""
    if not elem.is_momentum_only():
        raise AlgebraError("substitution argument must be momentum-only")
    if elem.min_a0_degree() < 1:
        raise AlgebraError("substitution argument must vanish at a0 = 0")
    if f.order < elem.order:
        raise AlgebraError("series order too low for substitution")
    out = AlgElement.scalar(elem.ctx, f[0], elem.order)
    pw = AlgElement.one(elem.ctx, elem.order)
    for k in range(1, elem.order + 1):
        pw = pw * elem
        if pw.is_zero():
            break
        if not f[k].is_zero():
            out = out + pw.scale(f[k])
    return out


def act_on(a: AlgElement, f: AlgElement) -> AlgElement:
    """Module action a |> f = (a f) |> 1, i.e. the vacuum projection of the
    normal-ordered product."""
    return (a * f).vacuum_project()


# -- tensor products ----------------------------------------------------------


class TensorElement:
    """k-legged tensor product of one-form-free elements."""

    __slots__ = ("ctx", "legs", "order", "terms")

    def __init__(self, ctx: Context, legs: int, terms: dict, order: int):
        self.ctx = ctx
        self.legs = legs
        self.order = order
        clean = {}
        for key, s in terms.items():
            for mono in key:
                if mono[1]:
                    raise AlgebraError("tensor legs cannot carry one-forms")
            if s.order != order:
                s = s.truncate(order)
            if not s.is_zero():
                clean[key] = s
        self.terms = clean

    @classmethod
    def zero(cls, ctx: Context, legs: int, order: int | None = None):
        return cls(ctx, legs, {}, order if order is not None else ctx.order)

    @classmethod
    def outer(cls, elems) -> "TensorElement":
        elems = list(elems)
        ctx = elems[0].ctx
        order = min(e.order for e in elems)
        terms = {(): TruncSeries.one(order)}
        for e in elems:
            nxt = {}
            for key, s in terms.items():
                for mono, s2 in e.terms.items():
                    prod = s * s2.truncate(order)
                    if prod.is_zero():
                        continue
                    k2 = key + (mono,)
                    if k2 in nxt:
                        nxt[k2] = nxt[k2] + prod
                    else:
                        nxt[k2] = prod
            terms = nxt
        return cls(ctx, len(elems), terms, order)

    @classmethod
    def scalar(cls, ctx: Context, legs: int, value, order: int | None = None):
        order = order if order is not None else ctx.order
        unit = ((0,) * ctx.dim, 0, (0,) * ctx.dim)
        return cls(ctx, legs, {(unit,) * legs: TruncSeries.const(value, order)},
                   order)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.ctx == other.ctx and self.legs == other.legs
                and self.order == other.order and self.terms == other.terms)

    def truncate(self, order: int) -> "TensorElement":
        if order > self.order:
            raise AlgebraError(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        return TensorElement(self.ctx, self.legs,
                             {k: s.truncate(order) for k, s in self.terms.items()},
                             order)

    def _check(self, other: "TensorElement"):
        if self.ctx != other.ctx or self.legs != other.legs:
            raise ContextMismatch("tensor shape mismatch")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        order = min(self.order, other.order)
        out = {k: s.truncate(order) for k, s in self.terms.items()}
        for k, s in other.terms.items():
            s = s.truncate(order)
            if k in out:
                t = out[k] + s
                if t.is_zero():
                    del out[k]
                else:
                    out[k] = t
            else:
                out[k] = s
        return TensorElement(self.ctx, self.legs, out, order)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorElement(self.ctx, self.legs,
                             {k: -s for k, s in self.terms.items()}, self.order)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        order = min(self.order, other.order)
        dim = self.ctx.dim
        out: dict = {}
        for k1, s1 in self.terms.items():
            s1t = s1.truncate(order)
            for k2, s2 in other.terms.items():
                prod = s1t * s2.truncate(order)
                if prod.is_zero():
                    continue
                leg_products = [_mul_mono(dim, k1[i], k2[i])
                                for i in range(self.legs)]
                if any(not lp for lp in leg_products):
                    continue
                for combo in iproduct(*leg_products):
                    coef = 1
                    key = []
                    for mono, c in combo:
                        coef *= c
                        key.append(mono)
                    key = tuple(key)
                    contrib = prod if coef == 1 else prod.scale(coef)
                    if key in out:
                        t = out[key] + contrib
                        if t.is_zero():
                            del out[key]
                        else:
                            out[key] = t
                    else:
                        out[key] = contrib
        return TensorElement(self.ctx, self.legs, out, order)

    def scale(self, scalar) -> "TensorElement":
        if isinstance(scalar, TruncSeries):
            order = min(self.order, scalar.order)
            st = scalar.truncate(order)
            return TensorElement(self.ctx, self.legs,
                                 {k: s.truncate(order) * st
                                  for k, s in self.terms.items()}, order)
        s = GaussScalar.coerce(scalar)
        return TensorElement(self.ctx, self.legs,
                             {k: c.scale(s) for k, c in self.terms.items()},
                             self.order)

    def divide_by_a0(self, k: int = 1) -> "TensorElement":
        out = {}
        for key, s in self.terms.items():
            try:
                out[key] = s.div_by_t(k)
            except SeriesError as exc:
                raise AlgebraError(
                    f"tensor not divisible by a0^{k} at {key}") from exc
        return TensorElement(self.ctx, self.legs, out, self.order - k)

    def classical_limit(self) -> "TensorElement":
        return TensorElement(self.ctx, self.legs,
                             {k: TruncSeries.const(s[0], self.order)
                              for k, s in self.terms.items()}, self.order)

    def render(self) -> str:
        if not self.terms:
            return "0"
        dim = self.ctx.dim
        parts = []
        for key in sorted(self.terms,
                          key=lambda k: tuple(_mono_sort_key(m) for m in k)):
            legs = []
            for mono in key:
                x, _, d = mono
                gens = []
                for mu, e in enumerate(x):
                    if e:
                        gens.append(f"x{mu}" if e == 1 else f"x{mu}^{e}")
                for mu, e in enumerate(d):
                    if e:
                        gens.append(f"d{mu}" if e == 1 else f"d{mu}^{e}")
                legs.append("*".join(gens) if gens else "1")
            coeff = self.terms[key].render("a0")
            body = " (x) ".join(legs)
            parts.append(body if coeff == "1" else f"({coeff})*[{body}]")
        return " + ".join(parts)

    def to_data(self) -> dict:
        dim = self.ctx.dim
        terms = []
        for key in sorted(self.terms,
                          key=lambda k: tuple(_mono_sort_key(m) for m in k)):
            s = self.terms[key]
            terms.append({
                "legs": [{"x": list(m[0]), "d": list(m[2])} for m in key],
                "coeff": [[str(c.re), str(c.im)] for c in s.coeffs],
            })
        return {"order": self.order, "legs": self.legs, "terms": terms}

    def __repr__(self):
        return f"TensorElement[{self.legs} legs, {self.order}]({self.render()})"


def tensor_commutator(a: TensorElement, b: TensorElement) -> TensorElement:
    return a * b - b * a
