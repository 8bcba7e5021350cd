"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Every structure constant and R-matrix coefficient in this package lives in
some Q(zeta_N), N = lcm of the input denominators, the exponent of the group
and 4.  Values are stored in canonical form: a coefficient vector of exact
rationals reduced modulo the N-th cyclotomic polynomial Phi_N, so two values
are equal iff their canonical vectors agree (after lifting to a common
order).  Complex floats exist only for printing, never as a source of truth.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

_F0 = Fraction(0)
_F1 = Fraction(1)


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (dense, constant term first)

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod(p, q):
    p = _poly_trim([Fraction(c) for c in p])
    q = _poly_trim([Fraction(c) for c in q])
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [_F0] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        c = p[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            p[shift + i] -= c * b
        _poly_trim(p)
    return quot, p


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as an integer coefficient tuple, constant term first.

    Computed by dividing x^n - 1 by the product of Phi_d over the proper
    divisors d of n.
    """
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    den = [1]
    for d in divisors(n)[:-1]:
        den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    quot, rem = _poly_divmod(num, den)
    assert not rem and all(c.denominator == 1 for c in quot)
    return tuple(int(c) for c in quot)


@functools.lru_cache(maxsize=None)
def _phi_degree(order: int) -> int:
    return len(cyclotomic_polynomial(order)) - 1


@functools.lru_cache(maxsize=None)
def _power_table(order: int) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical vectors of zeta^k mod Phi_order for k = 0 .. 2*order-2."""
    deg = _phi_degree(order)
    phi = cyclotomic_polynomial(order)
    row = [_F0] * order
    row[0] = _F1
    rows = [tuple(row)]
    for _ in range(1, 2 * order - 1):
        prev = rows[-1]
        vec = [_F0] + list(prev[:-1])  # multiply by x; support moves into 1..deg
        top = vec[deg] if deg < order else _F0
        if deg < order and top:
            vec[deg] = _F0
            for i in range(deg):
                vec[i] -= top * phi[i]
        rows.append(tuple(vec))
    return tuple(rows)


def _reduce_vector(order: int, conv) -> list[Fraction]:
    table = _power_table(order)
    out = [_F0] * order
    for k, c in enumerate(conv):
        if c:
            for i, r in enumerate(table[k]):
                if r:
                    out[i] += c * r
    return out


# ---------------------------------------------------------------------------
# roots of unity as exact exponent pairs

@dataclass(frozen=True)
class RootOfUnity:
    """exp(2*pi*i*num/den), normalized so gcd(num, den) = 1 and 0 <= num < den."""

    num: int
    den: int

    def __post_init__(self):
        if self.den < 1:
            raise ValueError("denominator must be positive")
        n = self.num % self.den
        g = gcd(n, self.den)
        object.__setattr__(self, "num", n // g)
        object.__setattr__(self, "den", self.den // g)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        d = lcm(self.den, other.den)
        return RootOfUnity(self.num * (d // self.den) + other.num * (d // other.den), d)

    def inv(self) -> "RootOfUnity":
        return RootOfUnity(-self.num, self.den)

    def __truediv__(self, other: "RootOfUnity") -> "RootOfUnity":
        return self * other.inv()

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.num * k, self.den)

    def order(self) -> int:
        return self.den

    def to_cyclotomic(self, order: int | None = None) -> "Cyclotomic":
        return Cyclotomic.root(self.num, self.den, order)

    def approx(self) -> complex:
        from cmath import exp, pi

        return exp(2j * pi * self.num / self.den)


ONE = RootOfUnity(0, 1)
MINUS_ONE = RootOfUnity(1, 2)


def nth_roots(c: RootOfUnity, n: int) -> list[RootOfUnity]:
    """All n distinct x with x**n == c, in ascending order of angle."""
    if n < 1:
        raise ValueError("n must be positive")
    return [RootOfUnity(c.num + j * c.den, n * c.den) for j in range(n)]


# ---------------------------------------------------------------------------
# general cyclotomic values

class Cyclotomic:
    """Element of Q(zeta_N) in canonical (mod Phi_N) coefficient form.

    Immutable.  Binary operations lift both operands to the lcm of their
    orders first.  A cached (num, den) tag is kept when the value is known
    to be a root of unity; products of tagged values skip the convolution.
    """

    __slots__ = ("order", "coeffs", "_rou", "_hash")

    def __init__(self, order: int, coeffs, rou: RootOfUnity | None = None):
        deg = _phi_degree(order)
        vec = [Fraction(c) for c in coeffs]
        if len(vec) < order:
            vec += [_F0] * (order - len(vec))
        if len(vec) != order or any(vec[k] for k in range(deg, order)):
            raise ValueError("coefficients not in canonical form")
        self.order = order
        self.coeffs = tuple(vec)
        self._rou = rou
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(order: int = 1) -> "Cyclotomic":
        return Cyclotomic(order, [])

    @staticmethod
    def from_rational(q, order: int = 1) -> "Cyclotomic":
        q = Fraction(q)
        vec = [_F0] * order
        vec[0] = q
        rou = ONE if q == 1 else MINUS_ONE if q == -1 else None
        return Cyclotomic(order, vec, rou)

    @staticmethod
    def one(order: int = 1) -> "Cyclotomic":
        return Cyclotomic.from_rational(1, order)

    @staticmethod
    def root(num: int, den: int, order: int | None = None) -> "Cyclotomic":
        """zeta_den**num represented at the given field order."""
        r = RootOfUnity(num, den)
        if order is None:
            order = r.den
        if (r.num * order) % r.den == 0:
            k = (r.num * order) // r.den % order
            vec = [_F0] * order
            vec[k] = _F1
            return Cyclotomic(order, _reduce_vector(order, vec), r)
        # otherwise try value = -zeta_order^j
        t = Fraction(r.num, r.den) - Fraction(1, 2)
        if (t.numerator * order) % t.denominator == 0:
            j = (t.numerator * order) // t.denominator % order
            vec = [_F0] * order
            vec[j] = _F1
            red = _reduce_vector(order, vec)
            return Cyclotomic(order, [-c for c in red], r)
        raise ValueError(f"zeta_{r.den}^{r.num} does not live in Q(zeta_{order})")

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def lift(self, order: int) -> "Cyclotomic":
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValueError("can only lift to a multiple of the current order")
        step = order // self.order
        table = _power_table(order)
        acc = [_F0] * order
        for k, c in enumerate(self.coeffs):
            if c:
                for i, r in enumerate(table[k * step]):
                    if r:
                        acc[i] += c * r
        return Cyclotomic(order, acc, self._rou)

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        elif isinstance(other, RootOfUnity):
            other = other.to_cyclotomic()
        if not isinstance(other, Cyclotomic):
            return None, None
        n = lcm(self.order, other.order)
        return self.lift(n), other.lift(n)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return Cyclotomic(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        rou = self._rou * MINUS_ONE if self._rou is not None else None
        return Cyclotomic(self.order, [-c for c in self.coeffs], rou)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return Cyclotomic(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RootOfUnity):
            other = other.to_cyclotomic()
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                return Cyclotomic.zero(self.order)
            rou = None
            if self._rou is not None and q in (1, -1):
                rou = self._rou if q == 1 else self._rou * MINUS_ONE
            return Cyclotomic(self.order, [c * q for c in self.coeffs], rou)
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if a._rou is not None and b._rou is not None:
            r = a._rou * b._rou
            return Cyclotomic.root(r.num, r.den, a.order)
        deg = _phi_degree(a.order)
        conv = [_F0] * (2 * deg - 1 if deg else 1)
        for i in range(deg):
            ci = a.coeffs[i]
            if ci:
                for j in range(deg):
                    cj = b.coeffs[j]
                    if cj:
                        conv[i + j] += ci * cj
        return Cyclotomic(a.order, _reduce_vector(a.order, conv))

    __rmul__ = __mul__

    def inv(self) -> "Cyclotomic":
        """Multiplicative inverse, via extended gcd with Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self._rou is not None:
            return Cyclotomic.root(-self._rou.num, self._rou.den, self.order)
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = _poly_trim(list(self.coeffs))
        r0, r1 = phi, a
        s0, s1 = [_F0], [_F1]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            qs = _poly_mul(q, s1)
            width = max(len(s0), len(qs))
            s0, s1 = s1, _poly_trim(
                [(s0[i] if i < len(s0) else _F0) - (qs[i] if i < len(qs) else _F0)
                 for i in range(width)]
            )
        assert len(r0) == 1, "residue must be coprime to the irreducible Phi_N"
        inv_poly = [x / r0[0] for x in s0]
        _, rem = _poly_divmod(inv_poly, phi)
        return Cyclotomic(self.order, rem)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        elif isinstance(other, RootOfUnity):
            other = other.to_cyclotomic()
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int) -> "Cyclotomic":
        if self._rou is not None:
            return Cyclotomic.root(self._rou.num * k, self._rou.den, self.order)
        if k < 0:
            return self.inv() ** (-k)
        out = Cyclotomic.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # -- equality / canonical form ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        elif isinstance(other, RootOfUnity):
            other = other.to_cyclotomic()
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def as_root_of_unity(self) -> RootOfUnity | None:
        """The (num, den) pair when this value is a root of unity, else None."""
        if self._rou is not None:
            return self._rou
        if self.is_zero():
            return None
        n = self.order
        for k in range(n):
            cand = Cyclotomic.root(k, n, n)
            if cand.coeffs == self.coeffs:
                self._rou = RootOfUnity(k, n)
                return self._rou
            if all(x == -y for x, y in zip(self.coeffs, cand.coeffs)):
                self._rou = RootOfUnity(k, n) * MINUS_ONE
                return self._rou
        return None

    def _descend(self, target: int) -> "Cyclotomic | None":
        """Rewrite at a divisor order if the value lies in Q(zeta_target)."""
        n = self.order
        deg_t = _phi_degree(target)
        deg_n = _phi_degree(n)
        cols = []
        for k in range(deg_t):
            vec = [_F0] * target
            vec[k] = _F1
            cols.append(Cyclotomic(target, vec).lift(n).coeffs)
        aug = [[cols[k][i] for k in range(deg_t)] + [self.coeffs[i]]
               for i in range(deg_n)]
        piv = 0
        pivots = []
        for col in range(deg_t):
            sel = next((r for r in range(piv, deg_n) if aug[r][col]), None)
            if sel is None:
                continue
            aug[piv], aug[sel] = aug[sel], aug[piv]
            lead = aug[piv][col]
            aug[piv] = [x / lead for x in aug[piv]]
            for r in range(deg_n):
                if r != piv and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[piv])]
            pivots.append(col)
            piv += 1
        for r in range(deg_n):
            if not any(aug[r][:deg_t]) and aug[r][deg_t]:
                return None  # inconsistent: value not in the subfield
        sol = [_F0] * deg_t
        for r, col in enumerate(pivots):
            sol[col] = aug[r][deg_t]
        cand = Cyclotomic(target, sol)
        return cand if cand.lift(n).coeffs == self.coeffs else None

    def canonical(self) -> "Cyclotomic":
        """Equal value at the smallest possible order (the conductor)."""
        for d in divisors(self.order)[:-1]:
            down = self._descend(d)
            if down is not None:
                return down
        return self

    def __hash__(self):
        if self._hash is None:
            r = self.as_root_of_unity()
            if r is not None:
                self._hash = hash(("rou", r.num, r.den))
            else:
                c = self.canonical()
                self._hash = hash((c.order, c.coeffs))
        return self._hash

    # -- display -------------------------------------------------------------

    def approx(self) -> complex:
        from cmath import exp, pi

        z = exp(2j * pi / self.order)
        return sum((complex(c) * z ** k for k, c in enumerate(self.coeffs) if c),
                   complex(0))

    def __repr__(self):
        r = self.as_root_of_unity()
        if r is not None:
            if r.den == 1:
                return "Cyc(1)"
            if (r.num, r.den) == (1, 2):
                return "Cyc(-1)"
            return f"Cyc(zeta_{r.den}^{r.num})"
        terms = [f"{c}*z{self.order}^{k}" for k, c in enumerate(self.coeffs) if c]
        return "Cyc(" + (" + ".join(terms) or "0") + ")"
