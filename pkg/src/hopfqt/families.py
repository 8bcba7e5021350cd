"""The two dimension-8n families and the Kac-Paljutkin algebra.

K(8n): G = Z_{2n} x Z_2 = <a, b>, a<x = ab, b<x = b.
A(8n): G = Z_{4n} = <a>,          a<x = a^{2n+1}.

Builders accept arbitrary valid sigma/tau tables on the family group; the
named presets provide the standard choices (untwisted, the Kac-Paljutkin
tables at K(8), and the (-1)^{ij} cocycle on A(8n)).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cocycle import ExtensionData, validate
from .groups import FiniteAbelianGroup, Involution, derive_presentation
from .reports import Report
from .scalar import MINUS_ONE, ONE, RootOfUnity


@dataclass(frozen=True)
class FamilySpec:
    family: str  # "K" or "A"
    n: int
    sigma_table: dict | None = None
    tau_table: dict | None = None

    def __post_init__(self):
        if self.family not in ("K", "A"):
            raise ValueError("family must be 'K' or 'A'")
        if self.n < 1:
            raise ValueError("n must be positive")


def _k_group(n: int):
    G = FiniteAbelianGroup((2 * n, 2))
    inv = Involution(G, ((1, 1), (0, 1)))
    return G, inv


def _a_group(n: int):
    G = FiniteAbelianGroup((4 * n,))
    inv = Involution(G, ((2 * n + 1,),))
    return G, inv


def _ones(G: FiniteAbelianGroup):
    sigma = {g: ONE for g in G.elements}
    tau = {(g, h): ONE for g in G.elements for h in G.elements}
    return sigma, tau


def make_family(spec: FamilySpec) -> ExtensionData:
    """Validated extension datum for the requested family member."""
    if spec.family == "K":
        G, inv = _k_group(spec.n)
    else:
        G, inv = _a_group(spec.n)
    sigma, tau = _ones(G)
    if spec.sigma_table is not None:
        sigma = dict(spec.sigma_table)
    if spec.tau_table is not None:
        tau = dict(spec.tau_table)
    data = ExtensionData(G, inv, sigma, tau,
                         name=f"{spec.family}({8 * spec.n})")
    rep = validate(data)
    if not rep.ok:
        raise ValueError(str(rep))
    # pin the family presentation: s_1 = a^2 (and s_2 = b for K), a = a
    a = G.element((1,) + (0,) * (G.rank - 1))
    if spec.family == "K":
        gens = [a * a, G.element((0, 1))]
    else:
        gens = [a * a]
    pres = derive_presentation(G, inv, a_choice=a, s_gens=gens)
    return data.pin_presentation(pres)


def make_K(n: int, sigma_table=None, tau_table=None) -> ExtensionData:
    return make_family(FamilySpec("K", n, sigma_table, tau_table))


def make_A(n: int, sigma_table=None, tau_table=None) -> ExtensionData:
    return make_family(FamilySpec("A", n, sigma_table, tau_table))


def kac_paljutkin_tables(G: FiniteAbelianGroup):
    """sigma(a^i b^j) = (-1)^{(i-j)j}, tau(a^i b^j, a^k b^l) = (-1)^{j(k-l)}."""
    def sgn(e):
        return MINUS_ONE if e % 2 else ONE

    sigma = {g: sgn((g.exponents[0] - g.exponents[1]) * g.exponents[1])
             for g in G.elements}
    tau = {(g, h): sgn(g.exponents[1] * (h.exponents[0] - h.exponents[1]))
           for g in G.elements for h in G.elements}
    return sigma, tau


def make_kac_paljutkin() -> ExtensionData:
    G, _ = _k_group(1)
    sigma, tau = kac_paljutkin_tables(G)
    data = make_family(FamilySpec("K", 1, sigma, tau))
    data.name = "K8(Kac-Paljutkin)"
    return data


def a_paper_tables(G: FiniteAbelianGroup):
    """sigma = 1, tau(a^i, a^j) = (-1)^{ij} on Z_{4n}."""
    sigma = {g: ONE for g in G.elements}
    tau = {(g, h): (MINUS_ONE if (g.exponents[0] * h.exponents[0]) % 2 else ONE)
           for g in G.elements for h in G.elements}
    return sigma, tau


def make_A_paper(n: int) -> ExtensionData:
    G, _ = _a_group(n)
    sigma, tau = a_paper_tables(G)
    data = make_family(FamilySpec("A", n, sigma, tau))
    data.name = f"A({8 * n})#paper"
    return data


@dataclass
class ClassifiedSolution:
    """One member of a family classification: the defining root-of-unity
    parameters and the resulting R-matrix."""

    params: tuple[RootOfUnity, ...]
    tup: "object"
    rmatrix: "object"


def classify_K(data: ExtensionData) -> list[ClassifiedSolution]:
    """All non-trivial structures on a K-family member, by the closed form:
    beta1^n = P_{s1^n}, beta2^2 = P_{s2^2} = tau(b,b),
    delta^2 = [tau(a,a)tau(b,a) / (tau(b,b)sigma(a))] beta1 beta2,
    with s1 = a^2, s2 = b pinned and gamma_i = beta_i eta(a, s_i)."""
    from .cocycle import p_constant_rou
    from .scalar import nth_roots
    from .solver import SolutionTuple, tuple_to_rmatrix_special

    n = _family_n(data, "K")
    G = data.group
    a, b = G.element((1, 0)), G.element((0, 1))
    s1, s2 = a * a, b
    pres = data.presentation
    if tuple(pres.s_gens) != (s1, s2) or pres.a_gen != a:
        raise ValueError("K classification needs the pinned (a^2, b) presentation")

    p_s1n = p_constant_rou(data, [(s1, n)])
    p_s22 = p_constant_rou(data, [(s2, 2)])
    bracket = (data.tau_rou(a, a) * data.tau_rou(b, a)
               / (data.tau_rou(b, b) * data.sigma_rou(a)))
    eta_ab = data.eta_rou(a, b)
    out = []
    for beta1 in nth_roots(p_s1n, n):
        for beta2 in nth_roots(p_s22, 2):
            alpha = (
                (beta1 ** 2 * data.sigma_rou(s1), ONE),
                (ONE, eta_ab),
            )
            beta = (beta1, beta2)
            gamma = (beta1, beta2 * eta_ab)  # eta(a, a^2) = 1
            for delta in nth_roots(bracket * beta1 * beta2, 2):
                tup = SolutionTuple("special", alpha, beta, gamma, delta)
                R = tuple_to_rmatrix_special(data, tup)
                out.append(ClassifiedSolution((beta1, beta2, delta), tup, R))
    return out


def classify_A(data: ExtensionData) -> list[ClassifiedSolution]:
    """All non-trivial structures on an A-family member:
    beta^{2n} = P_{s^{2n}},
    delta^2 = [tau(a,a)tau(b,a) / (tau(b,b)sigma(a))] P_{s^n} beta^{1+n},
    with s = a^2 pinned, gamma = beta."""
    from .cocycle import p_constant_rou
    from .scalar import nth_roots
    from .solver import SolutionTuple, tuple_to_rmatrix_special

    n = _family_n(data, "A")
    G = data.group
    a = G.element((1,))
    s = a * a
    pres = data.presentation
    if tuple(pres.s_gens) != (s,) or pres.a_gen != a:
        raise ValueError("A classification needs the pinned (a^2,) presentation")
    b = data.b

    p_s2n = p_constant_rou(data, [(s, 2 * n)])
    p_sn = p_constant_rou(data, [(s, n)])
    bracket = (data.tau_rou(a, a) * data.tau_rou(b, a)
               / (data.tau_rou(b, b) * data.sigma_rou(a)))
    out = []
    for beta in nth_roots(p_s2n, 2 * n):
        alpha = ((beta ** 2 * data.sigma_rou(s),),)
        for delta in nth_roots(bracket * p_sn * beta ** (1 + n), 2):
            tup = SolutionTuple("special", alpha, (beta,), (beta,), delta)
            R = tuple_to_rmatrix_special(data, tup)
            out.append(ClassifiedSolution((beta, delta), tup, R))
    return out


def _family_n(data: ExtensionData, family: str) -> int:
    G = data.group
    if family == "K":
        if G.rank != 2 or G.factor_orders[1] != 2 or G.factor_orders[0] % 2:
            raise ValueError("not a K-family group")
        n = G.factor_orders[0] // 2
        want = Involution(G, ((1, 1), (0, 1)))
        if data.action.images != want.images:
            raise ValueError("not the K-family action")
        return n
    if G.rank != 1 or G.factor_orders[0] % 4:
        raise ValueError("not an A-family group")
    n = G.factor_orders[0] // 4
    want = Involution(G, ((2 * n + 1,),))
    if data.action.images != want.images:
        raise ValueError("not the A-family action")
    return n


# ---------------------------------------------------------------------------
# quotients

@dataclass
class QuotientMap:
    """Surjection onto the datum restricted to a stable subgroup H:
    e_h -> e_h, e_g -> 0 (g outside H), and likewise with x attached."""

    source: ExtensionData
    target: ExtensionData
    embed_h: dict  # target group element -> source group element
    project: dict  # source group element -> target group element or None

    def apply_basis(self, b):
        from .hopf import BasisElement, TensorElement

        h = self.project.get(b.g)
        if h is None:
            return TensorElement(self.target, 1)
        return TensorElement.basis(self.target, BasisElement(h, b.eps))


def quotient_map(data: ExtensionData, subgroup_elements) -> tuple[QuotientMap, Report]:
    """Build the restriction map onto <subgroup_elements> and certify it is
    a morphism for multiplication, unit, coproduct and counit by exhaustive
    check over the source basis."""
    from .groups import _abelian_basis
    from .hopf import BasisElement, TensorElement, basis_elements, coproduct_basis
    from .hopf import counit as hopf_counit

    G = data.group
    H = sorted(set(subgroup_elements), key=lambda g: g.exponents)
    hset = set(H)
    for h1 in H:
        for h2 in H:
            if h1 * h2 not in hset:
                raise ValueError("subgroup_elements is not closed under product")
    for h in H:
        if data.act(h) not in hset:
            raise ValueError("subgroup is not stable under the action")

    gens = _abelian_basis(H)
    orders = tuple(g.order() for g in gens)
    Hgrp = FiniteAbelianGroup(orders or (1,))
    embed_h = {}
    if gens:
        import itertools as _it

        for exps in _it.product(*[range(k) for k in orders]):
            g = G.identity()
            for s, e in zip(gens, exps):
                g = g * s ** e
            embed_h[Hgrp.element(exps)] = g
    else:
        embed_h[Hgrp.identity()] = G.identity()
    if len(embed_h) != len(H):
        raise ValueError("generator derivation failed for the subgroup")
    project = {g: None for g in G.elements}
    for hg, g in embed_h.items():
        project[g] = hg

    # transported action and tables
    images = []
    inv_table = {g: hg for hg, g in embed_h.items()}
    for i in range(Hgrp.rank):
        src = embed_h[Hgrp.generator(i)] if gens else G.identity()
        images.append(inv_table[data.act(src)].exponents)
    action_h = Involution(Hgrp, tuple(images))
    sigma_h = {hg: data.sigma_rou(g) for hg, g in embed_h.items()}
    tau_h = {
        (h1, h2): data.tau_rou(embed_h[h1], embed_h[h2])
        for h1 in Hgrp.elements for h2 in Hgrp.elements
    }
    target = ExtensionData(Hgrp, action_h, sigma_h, tau_h,
                           name=data.name + f"/H{len(H)}")
    qm = QuotientMap(data, target, embed_h, project)

    from .hopf import mul_basis

    rep = Report("quotient-morphism")
    basis = basis_elements(data)
    for b1 in basis:
        t1 = qm.apply_basis(b1)
        for b2 in basis:
            rep.tick()
            hit = mul_basis(data, b1, b2)
            lhs = TensorElement(target, 1)
            if hit is not None:
                s, b = hit
                lhs = qm.apply_basis(b)
                if s is not None:
                    lhs = lhs.scale(target.scalar(s))
            rhs = t1 * qm.apply_basis(b2)
            if lhs != rhs:
                rep.fail("algebra", "psi(uv) != psi(u)psi(v)", (b1, b2))
    for b in basis:
        rep.tick()
        lhs = TensorElement(target, 2)
        for (u1, u2), c in coproduct_basis(data, b).terms.items():
            p1, p2 = qm.apply_basis(u1), qm.apply_basis(u2)
            if p1.is_zero() or p2.is_zero():
                continue
            (k1,) = list(p1.terms)
            (k2,) = list(p2.terms)
            lhs = lhs + TensorElement(target, 2, {(k1[0], k2[0]): c})
        img = qm.apply_basis(b)
        rhs = TensorElement(target, 2)
        for (k,), c in img.terms.items():
            rhs = rhs + coproduct_basis(target, k).scale(c)
        if lhs != rhs:
            rep.fail("coalgebra", "(psi x psi)Delta != Delta psi", b)
        src_e = hopf_counit(TensorElement.basis(data, b))
        img_e = hopf_counit(img) if not img.is_zero() else None
        if img_e is not None and src_e != img_e:
            rep.fail("counit", "eps(psi(u)) != eps(u)", b)
        if img.is_zero() and not src_e.is_zero():
            rep.fail("counit", "psi kills an element with nonzero counit", b)
    return qm, rep


def find_quotient_family(data: ExtensionData):
    """(tag, n, family datum): the canonical K- or A-shaped quotient on
    H = <a, b>, with a the least moved element.

    Only the structural conditions are needed (|S| = |T| and the square-one
    displacement b); tau-symmetry on S is irrelevant to the quotient shape.
    """
    from .groups import find_b

    res = find_b(data.group, data.action)
    if not res.found:
        raise ValueError("no quotient family: " + "; ".join(res.reasons))
    a = data.T[0]
    b = data.b
    cyc_a = {a ** i for i in range(1, a.order() + 1)}
    if b in cyc_a:
        n, r = divmod(a.order(), 4)
        assert r == 0 and b == a ** (2 * n)
        tag = "A"
        std = _a_group(n)[0]
        corr = {std.element((i,)): a ** i for i in range(4 * n)}
    else:
        n = a.order() // 2
        tag = "K"
        std = _k_group(n)[0]
        corr = {std.element((i, j)): a ** i * b ** j
                for i in range(2 * n) for j in (0, 1)}
        assert len(set(corr.values())) == 4 * n
    # the correspondence must intertwine the actions
    std_inv = (_a_group(n)[1] if tag == "A" else _k_group(n)[1])
    for h in std.elements:
        assert data.act(corr[h]) == corr[std_inv.apply(h)]
    sigma = {h: data.sigma_rou(corr[h]) for h in std.elements}
    tau = {(h1, h2): data.tau_rou(corr[h1], corr[h2])
           for h1 in std.elements for h2 in std.elements}
    family = make_family(FamilySpec(tag, n, sigma, tau))
    family.name = data.name + f"->{tag}({8 * n})"
    return tag, n, family


def preset(name: str) -> ExtensionData:
    """Presets addressable by name.

    "kac-paljutkin", "K8n:n=<k>:untwisted", "A8n:n=<k>:paper",
    "A8n:n=<k>:untwisted".
    """
    if name == "kac-paljutkin":
        return make_kac_paljutkin()
    parts = name.split(":")
    if len(parts) == 3 and parts[0] in ("K8n", "A8n") and parts[1].startswith("n="):
        try:
            n = int(parts[1][2:])
        except ValueError:
            raise ValueError(f"bad preset {name!r}") from None
        flavor = parts[2]
        if parts[0] == "K8n" and flavor == "untwisted":
            return make_K(n)
        if parts[0] == "A8n" and flavor == "untwisted":
            return make_A(n)
        if parts[0] == "A8n" and flavor == "paper":
            return make_A_paper(n)
    raise ValueError(f"unknown preset {name!r}")
