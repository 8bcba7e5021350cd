"""The extension datum (G, action, sigma, tau) and its derived quantities.

sigma is an action-invariant unital map G -> k^x and tau a unital 2-cocycle
on G, linked by the compatibility identity
    sigma(gh) sigma(g)^-1 sigma(h)^-1 = tau(g,h) tau(g<x, h<x).
Validation checks every identity with witnesses.  From valid data we derive
S, T, b, the presentation, the bicharacter eta(g,h) = tau(g,h)/tau(h,g) and
the P-constants accumulated from tau along canonical generator words.
"""

from __future__ import annotations

from functools import cached_property

from .groups import (
    FiniteAbelianGroup,
    GroupElement,
    Involution,
    Presentation,
    derive_presentation,
    find_b,
    split_fixed,
)
from .reports import Report
from .scalar import ONE, Cyclotomic, RootOfUnity, lcm


class ExtensionData:
    """Input tables plus caches; treat as immutable after construction.

    sigma and tau are stored as RootOfUnity tables (every scalar of the
    classification is a root of unity); Cyclotomic views are materialized on
    demand at the ambient order.
    """

    def __init__(
        self,
        group: FiniteAbelianGroup,
        action: Involution,
        sigma: dict[GroupElement, RootOfUnity],
        tau: dict[tuple[GroupElement, GroupElement], RootOfUnity],
        name: str = "",
    ):
        self.group = group
        self.action = action
        self.sigma = dict(sigma)
        self.tau = dict(tau)
        self.name = name or repr(group)

    # -- basic access --------------------------------------------------------

    def act(self, g: GroupElement) -> GroupElement:
        return self.action.table[g]

    def sigma_rou(self, g: GroupElement) -> RootOfUnity:
        return self.sigma[g]

    def tau_rou(self, g: GroupElement, h: GroupElement) -> RootOfUnity:
        return self.tau[(g, h)]

    def eta_rou(self, g: GroupElement, h: GroupElement) -> RootOfUnity:
        return self.tau[(g, h)] / self.tau[(h, g)]

    @cached_property
    def ambient_order(self) -> int:
        n = lcm(4, self.group.exponent())
        for r in self.sigma.values():
            n = lcm(n, r.den)
        for r in self.tau.values():
            n = lcm(n, r.den)
        return n

    def scalar(self, r: RootOfUnity) -> Cyclotomic:
        return Cyclotomic.root(r.num, r.den, lcm(self.ambient_order, r.den))

    def sigma_c(self, g) -> Cyclotomic:
        return self.scalar(self.sigma[g])

    def tau_c(self, g, h) -> Cyclotomic:
        return self.scalar(self.tau[(g, h)])

    def eta_c(self, g, h) -> Cyclotomic:
        return self.scalar(self.eta_rou(g, h))

    # -- derived structure ----------------------------------------------------

    @cached_property
    def S(self) -> list[GroupElement]:
        return split_fixed(self.group, self.action)[0]

    @cached_property
    def T(self) -> list[GroupElement]:
        return split_fixed(self.group, self.action)[1]

    @cached_property
    def b(self) -> GroupElement:
        res = find_b(self.group, self.action)
        if not res.found:
            raise ValueError("no distinguished b: " + "; ".join(res.reasons))
        return res.b

    @cached_property
    def presentation(self) -> Presentation:
        return derive_presentation(self.group, self.action)

    def pin_presentation(self, pres: Presentation) -> "ExtensionData":
        """A copy of this datum using the given presentation."""
        other = ExtensionData(self.group, self.action, self.sigma, self.tau, self.name)
        other.__dict__["presentation"] = pres
        return other

    def untwisted(self) -> "ExtensionData":
        """Companion datum on the same (G, action) with sigma = tau = 1."""
        sigma = {g: ONE for g in self.group.elements}
        tau = {(g, h): ONE for g in self.group.elements for h in self.group.elements}
        out = ExtensionData(self.group, self.action, sigma, tau,
                            name=self.name + "#untwisted")
        if "presentation" in self.__dict__:
            out.__dict__["presentation"] = self.__dict__["presentation"]
        return out

    def is_untwisted(self) -> bool:
        return all(r == ONE for r in self.sigma.values()) and \
            all(r == ONE for r in self.tau.values())

    # -- P-constants -----------------------------------------------------------

    def p_word_rou(self, exps: tuple[int, ...]) -> RootOfUnity:
        """P-constant of the canonical word s_1^{j_1}..s_n^{j_n}."""
        key = tuple(exps)
        cache = self.__dict__.setdefault("_p_cache", {})
        if key not in cache:
            word = [(s, j) for s, j in zip(self.presentation.s_gens, key)]
            cache[key] = p_constant_rou(self, word)
        return cache[key]

    def eta_table(self) -> dict[tuple[GroupElement, GroupElement], Cyclotomic]:
        els = self.group.elements
        return {(g, h): self.eta_c(g, h) for g in els for h in els}

    def __repr__(self):
        return f"ExtensionData({self.name})"


def eta(data: ExtensionData, g: GroupElement, h: GroupElement) -> Cyclotomic:
    """tau(g,h) / tau(h,g)."""
    return data.eta_c(g, h)


def p_constant_rou(data: ExtensionData, word) -> RootOfUnity:
    """P for an arbitrary word [(g_1, j_1), ..], accumulated left to right
    with the dual relation X_g X_h = tau(g,h) X_{gh}."""
    acc = data.group.identity()
    p = ONE
    for g, j in word:
        for _ in range(j):
            p = p * data.tau_rou(acc, g)
            acc = acc * g
    return p


def p_constant(data: ExtensionData, word) -> Cyclotomic:
    return data.scalar(p_constant_rou(data, word))


def validate(data: ExtensionData) -> Report:
    """Check every defining identity of the datum; failures carry witnesses."""
    rep = Report(f"validate {data.name}")
    G = data.group
    els = G.elements

    for issue in data.action.problems():
        rep.fail("action", issue)
    rep.tick()

    for g in els:
        if (g, g) not in data.tau or g not in data.sigma:
            rep.fail("tables", "sigma/tau tables are not total", g)
            return rep

    one = G.identity()
    if data.sigma[one] != ONE:
        rep.fail("sigma-unital", "sigma(1) != 1", one)
    rep.tick()

    act_ok = not data.action.problems()
    if act_ok:
        for g in els:
            rep.tick()
            if data.sigma[data.act(g)] != data.sigma[g]:
                rep.fail("sigma-invariant", "sigma(g<x) != sigma(g)", g)

    for g in els:
        rep.tick(2)
        if data.tau[(one, g)] != ONE:
            rep.fail("tau-unital", "tau(1,g) != 1", g)
        if data.tau[(g, one)] != ONE:
            rep.fail("tau-unital", "tau(g,1) != 1", g)

    for g in els:
        for h in els:
            for k in els:
                rep.tick()
                lhs = data.tau[(g, h)] * data.tau[(g * h, k)]
                rhs = data.tau[(h, k)] * data.tau[(g, h * k)]
                if lhs != rhs:
                    rep.fail("tau-cocycle", "2-cocycle identity fails", (g, h, k))

    if act_ok:
        for g in els:
            for h in els:
                rep.tick()
                lhs = data.sigma[g * h] / (data.sigma[g] * data.sigma[h])
                rhs = data.tau[(g, h)] * data.tau[(data.act(g), data.act(h))]
                if lhs != rhs:
                    rep.fail("compatibility",
                             "sigma(gh)/sigma(g)sigma(h) != tau(g,h)tau(g<x,h<x)",
                             (g, h))
    return rep


def check_necessary(data: ExtensionData) -> Report:
    """The three necessary conditions for a non-trivial structure to exist:
    (i) |S| = |T|; (ii) the distinguished square-one b with t<x = tb exists;
    (iii) tau is symmetric on S x S."""
    rep = Report(f"necessary-conditions {data.name}")
    S, T = split_fixed(data.group, data.action)
    rep.tick()
    if len(S) != len(T):
        rep.fail("clause-i", f"|S| = {len(S)} but |T| = {len(T)}")
    res = find_b(data.group, data.action)
    rep.tick()
    if not res.found:
        for r in res.reasons:
            rep.fail("clause-ii", r)
    for s1 in S:
        for s2 in S:
            rep.tick()
            if data.tau[(s1, s2)] != data.tau[(s2, s1)]:
                rep.fail("clause-iii", "tau(s1,s2) != tau(s2,s1) on S", (s1, s2))
    return rep


def bicharacter_report(data: ExtensionData) -> Report:
    """eta is multiplicative in each slot and eta(g,h) eta(h,g) = 1."""
    rep = Report("eta-bicharacter")
    els = data.group.elements
    for g in els:
        for h in els:
            rep.tick()
            if data.eta_rou(g, h) * data.eta_rou(h, g) != ONE:
                rep.fail("eta-antisym", "eta(g,h)eta(h,g) != 1", (g, h))
            for k in els:
                rep.tick(2)
                if data.eta_rou(g * k, h) != data.eta_rou(g, h) * data.eta_rou(k, h):
                    rep.fail("eta-left", "eta not multiplicative in slot 1", (g, k, h))
                if data.eta_rou(g, h * k) != data.eta_rou(g, h) * data.eta_rou(g, k):
                    rep.fail("eta-right", "eta not multiplicative in slot 2", (g, h, k))
    return rep
