"""Finite abelian groups, involutions and generator presentations.

The group G = Z_{d1} x ... x Z_{dm} is held as its factor orders; elements
are exponent vectors reduced componentwise.  An involution is the image of
the standard generators under the order-two automorphism; from it we split
G into the fixed set S (always a subgroup) and its complement T, locate the
distinguished square-one element b with t*x = t*b on T, and derive the
presentation G = <s_1..s_n, a> with S the internal direct product of the
<s_i> and T = a*S.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factor_orders: tuple[int, ...]

    def __post_init__(self):
        if not all(isinstance(d, int) and d >= 1 for d in self.factor_orders):
            raise ValueError("factor orders must be positive integers")
        object.__setattr__(self, "factor_orders", tuple(self.factor_orders))

    @property
    def order(self) -> int:
        n = 1
        for d in self.factor_orders:
            n *= d
        return n

    @property
    def rank(self) -> int:
        return len(self.factor_orders)

    def exponent(self) -> int:
        e = 1
        for d in self.factor_orders:
            e = e // gcd(e, d) * d
        return e

    def element(self, exps) -> "GroupElement":
        return GroupElement(self, tuple(exps))

    def identity(self) -> "GroupElement":
        return self.element((0,) * self.rank)

    def generator(self, i: int) -> "GroupElement":
        exps = [0] * self.rank
        exps[i] = 1
        return self.element(exps)

    @cached_property
    def elements(self) -> tuple["GroupElement", ...]:
        """All elements in lexicographic exponent order."""
        ranges = [range(d) for d in self.factor_orders]
        return tuple(self.element(e) for e in itertools.product(*ranges))

    def __repr__(self):
        return "Z" + "xZ".join(str(d) for d in self.factor_orders)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        red = tuple(e % d for e, d in zip(self.exponents, self.group.factor_orders))
        if len(self.exponents) != self.group.rank:
            raise ValueError("exponent vector has wrong length")
        object.__setattr__(self, "exponents", red)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise ValueError("elements of different groups")
        return GroupElement(
            self.group,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def inv(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-e for e in self.exponents))

    def __pow__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple(e * k for e in self.exponents))

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def order(self) -> int:
        n = 1
        for e, d in zip(self.exponents, self.group.factor_orders):
            if e:
                n = n // gcd(n, d // gcd(e, d)) * (d // gcd(e, d))
        return n

    def __repr__(self):
        return "(" + ",".join(str(e) for e in self.exponents) + ")"


@dataclass(frozen=True)
class Involution:
    """An order-two automorphism of G given by the generator images."""

    group: FiniteAbelianGroup
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "images", tuple(tuple(row) for row in self.images)
        )
        if len(self.images) != self.group.rank:
            raise ValueError("need one image per standard generator")

    @cached_property
    def table(self) -> dict[GroupElement, GroupElement]:
        imgs = [self.group.element(row) for row in self.images]
        out = {}
        for g in self.group.elements:
            h = self.group.identity()
            for e, im in zip(g.exponents, imgs):
                if e:
                    h = h * im ** e
            out[g] = h
        return out

    def apply(self, g: GroupElement) -> GroupElement:
        return self.table[g]

    def problems(self) -> list[str]:
        """Reasons this is not a valid non-identity involution, if any."""
        issues = []
        for i, row in enumerate(self.images):
            im = self.group.element(row)
            d = self.group.factor_orders[i]
            if not (im ** d).is_identity():
                issues.append(f"image of generator {i} has order not dividing {d}")
        if issues:
            return issues
        tab = self.table
        if len(set(tab.values())) != self.group.order:
            issues.append("generator images do not define a bijection")
            return issues
        if all(tab[g] == g for g in self.group.elements):
            issues.append("action is the identity map")
        if any(tab[tab[g]] != g for g in self.group.elements):
            issues.append("applying the action twice is not the identity")
        return issues


def split_fixed(group: FiniteAbelianGroup, inv: Involution):
    """(S, T): fixed points of the involution and their complement."""
    S = [g for g in group.elements if inv.apply(g) == g]
    T = [g for g in group.elements if inv.apply(g) != g]
    return S, T


@dataclass
class FindBResult:
    b: GroupElement | None
    reasons: list[str]

    @property
    def found(self) -> bool:
        return self.b is not None


def find_b(group: FiniteAbelianGroup, inv: Involution) -> FindBResult:
    """The unique b in S with t*x = t*b for all moved t and b^2 = 1.

    Reported as absent, with the failing conditions, when the sizes of S and
    T differ or the displacement t^-1 (t*x) is not a single square-one fixed
    element.
    """
    S, T = split_fixed(group, inv)
    reasons = []
    if len(S) != len(T):
        reasons.append(f"|S| = {len(S)} differs from |T| = {len(T)}")
    if not T:
        reasons.append("action moves no element")
        return FindBResult(None, reasons)
    disp = {t.inv() * inv.apply(t) for t in T}
    if len(disp) != 1:
        reasons.append(
            f"displacement t^-1(t<x) is not constant on T ({len(disp)} values)"
        )
        return FindBResult(None, reasons)
    b = next(iter(disp))
    if b not in S:
        reasons.append("displacement b is itself moved by the action")
    if not (b * b).is_identity():
        reasons.append("displacement b does not square to the identity")
    if reasons:
        return FindBResult(None, reasons)
    return FindBResult(b, [])


@dataclass(frozen=True)
class Presentation:
    """G = <s_1..s_n, a | s_i^{k_i}=1, a^2 = s^m-word>, with b = s^p-word.

    S is the internal direct product of the <s_i> and every element of G is
    uniquely s_1^{i_1}..s_n^{i_n} a^eps with 0 <= i_j < k_j, eps in {0,1}.
    """

    s_gens: tuple[GroupElement, ...]
    orders: tuple[int, ...]
    a_gen: GroupElement
    m_exps: tuple[int, ...]
    p_exps: tuple[int, ...]
    b: GroupElement

    @property
    def n(self) -> int:
        return len(self.s_gens)

    def s_word(self, exps) -> GroupElement:
        g = self.a_gen.group.identity()
        for s, e in zip(self.s_gens, exps):
            if e:
                g = g * s ** e
        return g

    @cached_property
    def s_exponent_vectors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*[range(k) for k in self.orders]))

    @cached_property
    def s_log(self) -> dict[GroupElement, tuple[int, ...]]:
        """Discrete log on S by an exhaustive word table."""
        out = {}
        for exps in self.s_exponent_vectors:
            g = self.s_word(exps)
            if g in out:
                raise ValueError("generators do not give a direct product")
            out[g] = exps
        return out

    def decompose(self, g: GroupElement) -> tuple[tuple[int, ...], int]:
        """(exponent vector, eps) with g = s-word * a^eps."""
        if g in self.s_log:
            return self.s_log[g], 0
        h = g * self.a_gen.inv()
        if h in self.s_log:
            return self.s_log[h], 1
        raise ValueError(f"{g} is not reachable from the presentation")


def _abelian_basis(elements: list[GroupElement]) -> list[GroupElement]:
    """Independent generators of the subgroup formed by `elements`.

    Primary decomposition first, then inside each p-part greedily take the
    element of largest order whose cyclic span meets the current span only
    trivially.  The direct-product property is certified by the caller via
    the word table.
    """
    if not elements:
        return []
    size = len(elements)
    group = elements[0].group
    primes = []
    m = size
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    per_prime: list[list[GroupElement]] = []
    for p in primes:
        component = [g for g in elements if _is_p_power(g.order(), p)]
        span = {group.identity()}
        chosen = []
        while len(span) < len(component):
            cands = [
                g for g in component
                if g not in span
                and all((g ** k) not in span for k in range(1, g.order()))
            ]
            cands.sort(key=lambda g: (-g.order(), component.index(g)))
            g = cands[0]
            chosen.append(g)
            span = {h * g ** k for h in span for k in range(g.order())}
        per_prime.append(chosen)  # orders descending by construction
    # merge coprime parts into invariant factors, largest first
    width = max(len(c) for c in per_prime)
    basis = []
    for j in range(width):
        g = group.identity()
        for chosen in per_prime:
            if j < len(chosen):
                g = g * chosen[j]
        basis.append(g)
    return basis


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def derive_presentation(
    group: FiniteAbelianGroup,
    inv: Involution,
    a_choice: GroupElement | None = None,
    s_gens: list[GroupElement] | None = None,
) -> Presentation:
    """Generators-and-relations data for (G, inv).

    `a_choice` pins the coset representative a (default: least element of T
    in enumeration order); `s_gens` pins the generators of S, e.g. the pair
    (a^2, b) used for the K family.  Both are validated.
    """
    S, T = split_fixed(group, inv)
    res = find_b(group, inv)
    if not res.found:
        raise ValueError("no valid b: " + "; ".join(res.reasons))
    b = res.b
    if not T:
        raise ValueError("action is trivial; no presentation with a in T")
    sset = set(S)
    if s_gens is None:
        gens = _abelian_basis(S)
    else:
        gens = list(s_gens)
        if any(g not in sset for g in gens):
            raise ValueError("pinned generators must lie in S")
    orders = tuple(g.order() for g in gens)
    if a_choice is None:
        a = T[0]
    else:
        if a_choice not in set(T):
            raise ValueError("a_choice must be a moved element")
        a = a_choice
    pres = Presentation(tuple(gens), orders, a, (), (), b)
    log = pres.s_log  # certifies the direct product; raises otherwise
    if len(log) != len(S):
        raise ValueError("generators span a proper subgroup of S")
    m_exps = log[a * a]
    p_exps = log[b]
    pres = Presentation(tuple(gens), orders, a, m_exps, p_exps, b)
    count = 1
    for k in orders:
        count *= k
    assert 2 * count == group.order
    return pres
