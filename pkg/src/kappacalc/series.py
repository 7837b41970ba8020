"""Truncated one-variable Taylor series over the Gaussian rationals.

A series carries coefficients c0..cN exactly; every operation agrees with
the untruncated result through order N.  Division by the variable reduces
the usable order instead of padding, so the order of a series is an honest
statement of what is known.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import GaussScalar, ONE, ZERO


class SeriesError(ValueError):
    pass


class OrderMismatch(SeriesError):
    pass


def _gs(x) -> GaussScalar:
    return GaussScalar.coerce(x)


class TruncSeries:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs):
        cs = tuple(_gs(c) for c in coeffs)
        if not cs:
            raise SeriesError("series needs at least a constant coefficient")
        self.coeffs = cs
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls([ZERO] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls([ONE] + [ZERO] * order)

    @classmethod
    def const(cls, value, order: int) -> "TruncSeries":
        return cls([_gs(value)] + [ZERO] * order)

    @classmethod
    def t(cls, order: int) -> "TruncSeries":
        if order < 1:
            raise SeriesError("order must be >= 1 to hold t")
        return cls([ZERO, ONE] + [ZERO] * (order - 1))

    @classmethod
    def monomial(cls, value, k: int, order: int) -> "TruncSeries":
        cs = [ZERO] * (order + 1)
        if k <= order:
            cs[k] = _gs(value)
        return cls(cs)

    # -- basic structure ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> GaussScalar:
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient; order+1 if zero."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return self.order + 1

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        return TruncSeries(self.coeffs[:order + 1])

    def _same_order(self, other: "TruncSeries"):
        if self.order != other.order:
            raise OrderMismatch(f"order mismatch: {self.order} vs {other.order}")

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        # hashing Fractions is costly (modular inverse); compute once
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._same_order(other)
        return TruncSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._same_order(other)
        return TruncSeries(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(-c for c in self.coeffs)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._same_order(other)
        n = self.order
        out = [ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(out)

    def scale(self, scalar) -> "TruncSeries":
        s = _gs(scalar)
        return TruncSeries(c * s for c in self.coeffs)

    def pow(self, k: int) -> "TruncSeries":
        if k < 0:
            return self.recip().pow(-k)
        out = TruncSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- analytic operations --------------------------------------------------

    def recip(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise SeriesError("recip requires nonzero constant term")
        n = self.order
        inv0 = ONE / c0
        out = [inv0] + [ZERO] * n
        for k in range(1, n + 1):
            acc = ZERO
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out[k] = -inv0 * acc
        return TruncSeries(out)

    def exp(self) -> "TruncSeries":
        if not self.coeffs[0].is_zero():
            raise SeriesError("exp requires zero constant term")
        n = self.order
        out = TruncSeries.one(n)
        term = TruncSeries.one(n)
        fact = Fraction(1)
        for k in range(1, n + 1):
            term = term * self
            if term.is_zero():
                break
            fact *= k
            out = out + term.scale(Fraction(1, 1) / fact)
        return out

    def log(self) -> "TruncSeries":
        if self.coeffs[0] != ONE:
            raise SeriesError("log requires constant term 1")
        n = self.order
        u = self - TruncSeries.one(n)
        out = TruncSeries.zero(n)
        term = TruncSeries.one(n)
        for k in range(1, n + 1):
            term = term * u
            if term.is_zero():
                break
            sign = Fraction(1, k) if k % 2 == 1 else Fraction(-1, k)
            out = out + term.scale(sign)
        return out

    def sqrt(self) -> "TruncSeries":
        if self.coeffs[0] != ONE:
            raise SeriesError("sqrt requires constant term 1")
        return self.log().scale(Fraction(1, 2)).exp()

    # -- calculus -------------------------------------------------------------

    def derivative(self) -> "TruncSeries":
        """Term-wise derivative; the result order drops by one since the top
        coefficient of the derivative is not determined by a truncated input."""
        if self.order == 0:
            raise SeriesError("cannot differentiate an order-0 series")
        return TruncSeries(self.coeffs[k] * k for k in range(1, self.order + 1))

    def integrate(self) -> "TruncSeries":
        """Antiderivative with zero constant term, at the same order."""
        out = [ZERO]
        for k in range(1, self.order + 1):
            out.append(self.coeffs[k - 1] * Fraction(1, k))
        return TruncSeries(out)

    # -- composition ----------------------------------------------------------

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner(t)); inner must have zero constant term."""
        self._same_order(inner)
        if not inner.coeffs[0].is_zero():
            raise SeriesError("composition requires inner constant term 0")
        n = self.order
        out = TruncSeries.const(self.coeffs[0], n)
        pw = TruncSeries.one(n)
        for k in range(1, n + 1):
            pw = pw * inner
            if pw.is_zero():
                break
            if not self.coeffs[k].is_zero():
                out = out + pw.scale(self.coeffs[k])
        return out

    def comp_inverse(self) -> "TruncSeries":
        """Compositional inverse: self o result = result o self = t."""
        if not self.coeffs[0].is_zero():
            raise SeriesError("compositional inverse requires constant term 0")
        c1 = self.coeffs[1]
        if c1.is_zero():
            raise SeriesError("compositional inverse requires nonzero linear term")
        n = self.order
        inv1 = ONE / c1
        out = [ZERO, inv1] + [ZERO] * (n - 1)
        for k in range(2, n + 1):
            trial = TruncSeries(out)
            r = self.compose(trial)
            out[k] = -r.coeffs[k] * inv1
        return TruncSeries(out)

    # -- division by powers of the variable -----------------------------------

    def div_by_t(self, k: int = 1) -> "TruncSeries":
        if k < 1:
            raise SeriesError("k must be a positive integer")
        if self.order - k < 0:
            raise SeriesError("division would exhaust the known order")
        for j in range(k):
            if not self.coeffs[j].is_zero():
                raise SeriesError(
                    f"not divisible by t^{k}: coefficient c{j} is nonzero")
        return TruncSeries(self.coeffs[k:])

    # -- rendering ------------------------------------------------------------

    def render(self, var: str = "t") -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = c.render()
            if "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"
            if k == 0:
                parts.append(cs)
            else:
                pw = var if k == 1 else f"{var}^{k}"
                parts.append(pw if cs == "1" else f"{cs}*{pw}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"TruncSeries[{self.order}]({self.render()})"


class BiSeries:
    """Truncated series in two commuting variables u, v with total degree
    bounded by `order`.  Used for coproducts of functions of a0*p0, where the
    two variables are A (x) 1 and 1 (x) A."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms=None):
        self.order = order
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = _gs(c)
                if not c.is_zero() and key[0] + key[1] <= order:
                    self.terms[key] = c

    @classmethod
    def from_uni(cls, f: TruncSeries, leg: int, order: int) -> "BiSeries":
        terms = {}
        for k in range(min(f.order, order) + 1):
            if not f[k].is_zero():
                terms[(k, 0) if leg == 0 else (0, k)] = f[k]
        return cls(order, terms)

    def __add__(self, other: "BiSeries") -> "BiSeries":
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return BiSeries(self.order, out)

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        out = {}
        for (j1, k1), c1 in self.terms.items():
            for (j2, k2), c2 in other.terms.items():
                j, k = j1 + j2, k1 + k2
                if j + k > self.order:
                    continue
                key = (j, k)
                s = out.get(key, ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return BiSeries(self.order, out)

    def scale(self, scalar) -> "BiSeries":
        s = _gs(scalar)
        return BiSeries(self.order, {k: c * s for k, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    @classmethod
    def compose_uni(cls, f: TruncSeries, g: "BiSeries") -> "BiSeries":
        """f(g(u, v)); g must vanish at the origin."""
        if (0, 0) in g.terms:
            raise SeriesError("bivariate composition requires g(0,0) = 0")
        order = g.order
        out = cls(order, {(0, 0): f[0]} if not f[0].is_zero() else {})
        pw = cls(order, {(0, 0): ONE})
        for k in range(1, order + 1):
            pw = pw * g
            if pw.is_zero():
                break
            if k <= f.order and not f[k].is_zero():
                out = out + pw.scale(f[k])
        return out
