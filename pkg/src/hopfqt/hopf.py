"""Sparse exact-coefficient elements of H, H (x) H and H (x) H (x) H.

H has basis {e_g, e_g x}_{g in G} and is a monomial algebra: the product of
two basis elements is a scalar times a basis element or zero,

    e_g e_h        = [g == h]      e_g
    (e_g x) e_h    = [g == h<x]    e_g x
    e_g (e_h x)    = [g == h]      e_g x
    (e_g x)(e_h x) = [g == h<x]    sigma(g) e_g

all derived from x e_g = e_{g<x} x and x^2 = sum_g sigma(g) e_g.  Tensor
powers multiply slotwise, so sparse products only ever probe the handful of
keys that can match.  The dual algebra relations E_g E_h = E_{gh},
E_g X_h = X_h E_g = 0, X_g X_h = tau(g,h) X_{gh} are implemented alongside.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple

from .cocycle import ExtensionData
from .groups import GroupElement
from .reports import Report
from .scalar import ONE, Cyclotomic


class BasisElement(NamedTuple):
    g: GroupElement
    eps: int  # 0 -> e_g, 1 -> e_g x

    def __repr__(self):
        return f"e{self.g}" + ("x" if self.eps else "")


def basis_elements(data: ExtensionData) -> list[BasisElement]:
    out = []
    for g in data.group.elements:
        out.append(BasisElement(g, 0))
        out.append(BasisElement(g, 1))
    return out


def mul_basis(data: ExtensionData, x: BasisElement, y: BasisElement):
    """(scalar, basis) for the product of two basis elements, or None."""
    g, e1 = x
    h, e2 = y
    if e1 == 0:
        if g != h:
            return None
        return (None, BasisElement(g, e2))
    if h != data.act(g):
        return None
    if e2 == 1:
        return (data.sigma_rou(g), BasisElement(g, 0))
    return (None, BasisElement(g, 1))


class TensorElement:
    """Sparse element of a tensor power of H; zero coefficients are dropped."""

    __slots__ = ("data", "arity", "terms")

    def __init__(self, data: ExtensionData, arity: int, terms=None):
        if arity not in (1, 2, 3):
            raise ValueError("arity must be 1, 2 or 3")
        self.data = data
        self.arity = arity
        self.terms: dict[tuple[BasisElement, ...], Cyclotomic] = {}
        if terms:
            for k, v in terms.items():
                if not v.is_zero():
                    self.terms[k] = v

    # -- construction ----------------------------------------------------

    @staticmethod
    def basis(data, *parts: BasisElement) -> "TensorElement":
        one = Cyclotomic.one(data.ambient_order)
        return TensorElement(data, len(parts), {tuple(parts): one})

    @staticmethod
    def zero(data, arity: int) -> "TensorElement":
        return TensorElement(data, arity)

    def copy_with(self, terms) -> "TensorElement":
        return TensorElement(self.data, self.arity, terms)

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return self.copy_with(out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + other.scale(Cyclotomic.from_rational(-1))

    def scale(self, c: Cyclotomic) -> "TensorElement":
        if c.is_zero():
            return TensorElement(self.data, self.arity)
        return self.copy_with({k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        if self.arity != other.arity:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        n = len(self.terms)
        return f"Tensor(arity={self.arity}, {n} terms)"

    def _check(self, other):
        # same datum expected; the group comparison guards the common
        # mistakes without paying for a full table comparison per product
        if self.arity != other.arity or self.data is not other.data:
            if self.arity != other.arity or self.data.group != other.data.group:
                raise ValueError("arity/data mismatch")

    # -- multiplication ------------------------------------------------------

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        data = self.data
        act = data.act
        out: dict = {}
        eps_combos = list(itertools.product((0, 1), repeat=self.arity))
        if len(self.terms) <= len(other.terms):
            for lkey, lc in self.terms.items():
                forced = tuple(b.g if b.eps == 0 else act(b.g) for b in lkey)
                for combo in eps_combos:
                    rkey = tuple(BasisElement(gg, e) for gg, e in zip(forced, combo))
                    rc = other.terms.get(rkey)
                    if rc is None:
                        continue
                    _accumulate(data, out, lkey, lc, rkey, rc)
        else:
            for rkey, rc in other.terms.items():
                for combo in eps_combos:
                    lkey = tuple(
                        BasisElement(b.g if e == 0 else act(b.g), e)
                        for b, e in zip(rkey, combo)
                    )
                    lc = self.terms.get(lkey)
                    if lc is None:
                        continue
                    _accumulate(data, out, lkey, lc, rkey, rc)
        return self.copy_with(out)


def _accumulate(data, out, lkey, lc, rkey, rc):
    key = []
    srou = None
    for lb, rb in zip(lkey, rkey):
        hit = mul_basis(data, lb, rb)
        if hit is None:
            return
        s, b = hit
        if s is not None:
            srou = s if srou is None else srou * s
        key.append(b)
    c = lc * rc
    if srou is not None:
        c = c * data.scalar(srou)
    key = tuple(key)
    if key in out:
        s = out[key] + c
        if s.is_zero():
            del out[key]
        else:
            out[key] = s
    elif not c.is_zero():
        out[key] = c


def unit(data: ExtensionData, arity: int = 1) -> TensorElement:
    """The identity sum_g e_g, tensored with itself `arity` times."""
    one = Cyclotomic.one(data.ambient_order)
    terms = {}
    for combo in itertools.product(data.group.elements, repeat=arity):
        terms[tuple(BasisElement(g, 0) for g in combo)] = one
    return TensorElement(data, arity, terms)


# ---------------------------------------------------------------------------
# structure maps

def _delta_x(data: ExtensionData) -> TensorElement:
    cache = data.__dict__.setdefault("_hopf_cache", {})
    if "delta_x" not in cache:
        terms = {}
        for g in data.group.elements:
            for h in data.group.elements:
                terms[(BasisElement(g, 1), BasisElement(h, 1))] = data.tau_c(g, h)
        cache["delta_x"] = TensorElement(data, 2, terms)
    return cache["delta_x"]


def _antipode_x(data: ExtensionData) -> TensorElement:
    cache = data.__dict__.setdefault("_hopf_cache", {})
    if "antipode_x" not in cache:
        terms = {}
        for g in data.group.elements:
            c = (data.sigma_rou(g).inv() * data.tau_rou(g, g.inv()).inv())
            terms[(BasisElement(data.act(g), 1),)] = data.scalar(c)
        cache["antipode_x"] = TensorElement(data, 1, terms)
    return cache["antipode_x"]


def coproduct_basis(data: ExtensionData, b: BasisElement) -> TensorElement:
    """Delta(e_g) = sum_{hk=g} e_h (x) e_k; Delta(e_g x) = Delta(e_g) Delta(x)."""
    cache = data.__dict__.setdefault("_hopf_cache", {})
    key = ("delta", b)
    if key not in cache:
        one = Cyclotomic.one(data.ambient_order)
        terms = {}
        for h in data.group.elements:
            k = h.inv() * b.g
            terms[(BasisElement(h, 0), BasisElement(k, 0))] = one
        plain = TensorElement(data, 2, terms)
        cache[key] = plain if b.eps == 0 else plain * _delta_x(data)
    return cache[key]


def coproduct(u: TensorElement) -> TensorElement:
    if u.arity != 1:
        raise ValueError("coproduct takes an arity-1 element")
    out = TensorElement(u.data, 2)
    for (b,), c in u.terms.items():
        out = out + coproduct_basis(u.data, b).scale(c)
    return out


def coproduct_op(u: TensorElement) -> TensorElement:
    return flip(coproduct(u))


def flip(u: TensorElement) -> TensorElement:
    if u.arity != 2:
        raise ValueError("flip takes an arity-2 element")
    return u.copy_with({(b2, b1): c for (b1, b2), c in u.terms.items()})


def counit(u: TensorElement) -> Cyclotomic:
    if u.arity != 1:
        raise ValueError("counit takes an arity-1 element")
    total = Cyclotomic.zero(u.data.ambient_order)
    one = u.data.group.identity()
    for (b,), c in u.terms.items():
        if b.g == one:
            total = total + c
    return total


def antipode(u: TensorElement) -> TensorElement:
    """S(e_g) = e_{g^-1}; S(e_g x) = S(x) S(e_g), evaluated linearly."""
    if u.arity != 1:
        raise ValueError("antipode takes an arity-1 element")
    data = u.data
    out = TensorElement(data, 1)
    for (b,), c in u.terms.items():
        target = TensorElement.basis(data, BasisElement(b.g.inv(), 0))
        if b.eps:
            target = _antipode_x(data) * target
        out = out + target.scale(c)
    return out


def embed(u: TensorElement, slots: int) -> TensorElement:
    """Insert the unit sum_g e_g in the omitted slot: 12, 13 or 23."""
    if u.arity != 2:
        raise ValueError("embed takes an arity-2 element")
    data = u.data
    one_terms = {}
    for (b1, b2), c in u.terms.items():
        for g in data.group.elements:
            e = BasisElement(g, 0)
            if slots == 12:
                one_terms[(b1, b2, e)] = c
            elif slots == 13:
                one_terms[(b1, e, b2)] = c
            elif slots == 23:
                one_terms[(e, b1, b2)] = c
            else:
                raise ValueError("slots must be 12, 13 or 23")
    return TensorElement(data, 3, one_terms)


def apply_slot(u: TensorElement, slot: int, f) -> TensorElement:
    """Apply a basis-to-tensor linear map to one slot of an arity-2 element."""
    if u.arity != 2:
        raise ValueError("apply_slot takes an arity-2 element")
    out = TensorElement(u.data, 3)
    for (b1, b2), c in u.terms.items():
        expanded = f(b1 if slot == 1 else b2)
        terms = {}
        for key, v in expanded.terms.items():
            full = key + (b2,) if slot == 1 else (b1,) + key
            terms[full] = v * c
        out = out + TensorElement(u.data, 3, terms)
    return out


# ---------------------------------------------------------------------------
# dual algebra

class DualElement:
    """Element of H^*, spanned by {E_g, X_g}; kind 0 is E, kind 1 is X."""

    __slots__ = ("data", "terms")

    def __init__(self, data: ExtensionData, terms=None):
        self.data = data
        self.terms: dict[tuple[GroupElement, int], Cyclotomic] = {}
        if terms:
            for k, v in terms.items():
                if not v.is_zero():
                    self.terms[k] = v

    @staticmethod
    def E(data, g: GroupElement) -> "DualElement":
        return DualElement(data, {(g, 0): Cyclotomic.one(data.ambient_order)})

    @staticmethod
    def X(data, g: GroupElement) -> "DualElement":
        return DualElement(data, {(g, 1): Cyclotomic.one(data.ambient_order)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            out[k] = v if s is None else s + v
            if out[k].is_zero():
                del out[k]
        return DualElement(self.data, out)

    def __eq__(self, other):
        if not isinstance(other, DualElement):
            return NotImplemented
        return set(self.terms) == set(other.terms) and all(
            self.terms[k] == other.terms[k] for k in self.terms
        )

    def is_zero(self):
        return not self.terms

    def evaluate(self, b: BasisElement) -> Cyclotomic:
        """Pairing against a basis element of H."""
        c = self.terms.get((b.g, b.eps))
        return c if c is not None else Cyclotomic.zero(self.data.ambient_order)

    def __repr__(self):
        bits = []
        for (g, kind), c in self.terms.items():
            bits.append(f"{c!r}*{'X' if kind else 'E'}{g}")
        return "Dual(" + (" + ".join(bits) or "0") + ")"


def dual_multiply(f: DualElement, g: DualElement) -> DualElement:
    """Products in H^*: E_g E_h = E_{gh}, E_g X_h = X_h E_g = 0,
    X_g X_h = tau(g,h) X_{gh}."""
    data = f.data
    out: dict = {}
    for (g1, k1), c1 in f.terms.items():
        for (g2, k2), c2 in g.terms.items():
            if k1 != k2:
                continue
            c = c1 * c2
            if k1 == 1:
                c = c * data.tau_c(g1, g2)
            key = (g1 * g2, k1)
            s = out.get(key)
            out[key] = c if s is None else s + c
            if out[key].is_zero():
                del out[key]
    return DualElement(data, out)


def dual_convolution_oracle(f: DualElement, g: DualElement) -> DualElement:
    """(f*g)(u) = sum f(u_(1)) g(u_(2)) computed from the coproduct; the
    independent check that dual_multiply matches functional convolution."""
    data = f.data
    out: dict = {}
    for b in basis_elements(data):
        total = Cyclotomic.zero(data.ambient_order)
        for (b1, b2), c in coproduct_basis(data, b).terms.items():
            v = f.evaluate(b1)
            if v.is_zero():
                continue
            w = g.evaluate(b2)
            if w.is_zero():
                continue
            total = total + c * v * w
        if not total.is_zero():
            out[(b.g, b.eps)] = total
    return DualElement(data, out)


# ---------------------------------------------------------------------------
# axiom checker

def verify_hopf_axioms(data: ExtensionData, check_coassoc: bool = True) -> Report:
    """Exhaustive check that the structure maps really form a Hopf algebra."""
    rep = Report(f"hopf-axioms {data.name}")
    basis = basis_elements(data)
    one_t = unit(data, 1)

    # unit is a two-sided identity
    for b in basis:
        t = TensorElement.basis(data, b)
        rep.tick(2)
        if one_t * t != t:
            rep.fail("unit", "1*u != u", b)
        if t * one_t != t:
            rep.fail("unit", "u*1 != u", b)

    # associativity on all basis triples, via the monomial product
    for b1 in basis:
        for b2 in basis:
            left = mul_basis(data, b1, b2)
            for b3 in basis:
                rep.tick()
                right = mul_basis(data, b2, b3)
                lhs = None
                if left is not None:
                    hit = mul_basis(data, left[1], b3)
                    if hit is not None:
                        lhs = (_combine(left[0], hit[0]), hit[1])
                rhs = None
                if right is not None:
                    hit = mul_basis(data, b1, right[1])
                    if hit is not None:
                        rhs = (_combine(right[0], hit[0]), hit[1])
                if lhs != rhs:
                    rep.fail("assoc", "associativity fails", (b1, b2, b3))

    if check_coassoc:
        for b in basis:
            d = coproduct_basis(data, b)
            rep.tick()
            lhs = apply_slot(d, 1, lambda bb: coproduct_basis(data, bb))
            rhs = apply_slot(d, 2, lambda bb: coproduct_basis(data, bb))
            if lhs != rhs:
                rep.fail("coassoc", "coassociativity fails", b)

    # counit laws
    for b in basis:
        rep.tick()
        d = coproduct_basis(data, b)
        left = TensorElement(data, 1)
        right = TensorElement(data, 1)
        for (b1, b2), c in d.terms.items():
            e1 = counit(TensorElement(data, 1, {(b1,): c}))
            if not e1.is_zero():
                left = left + TensorElement(data, 1, {(b2,): e1})
            e2 = counit(TensorElement(data, 1, {(b2,): c}))
            if not e2.is_zero():
                right = right + TensorElement(data, 1, {(b1,): e2})
        target = TensorElement.basis(data, b)
        if left != target or right != target:
            rep.fail("counit", "(eps x id)Delta != id or (id x eps)Delta != id", b)

    # bialgebra: Delta and eps are algebra maps
    for b1 in basis:
        t1 = TensorElement.basis(data, b1)
        d1 = coproduct_basis(data, b1)
        for b2 in basis:
            rep.tick()
            prod = t1 * TensorElement.basis(data, b2)
            lhs = coproduct(prod)
            rhs = d1 * coproduct_basis(data, b2)
            if lhs != rhs:
                rep.fail("bialgebra", "Delta(uv) != Delta(u)Delta(v)", (b1, b2))
            e_prod = counit(prod)
            e_split = counit(t1) * counit(TensorElement.basis(data, b2))
            if e_prod != e_split:
                rep.fail("bialgebra", "eps(uv) != eps(u)eps(v)", (b1, b2))

    # antipode axiom: m(S x id)Delta = eta eps = m(id x S)Delta
    for b in basis:
        rep.tick()
        d = coproduct_basis(data, b)
        left = TensorElement(data, 1)
        right = TensorElement(data, 1)
        for (b1, b2), c in d.terms.items():
            left = left + (antipode(TensorElement.basis(data, b1))
                           * TensorElement.basis(data, b2)).scale(c)
            right = right + (TensorElement.basis(data, b1)
                             * antipode(TensorElement.basis(data, b2))).scale(c)
        target = one_t.scale(counit(TensorElement.basis(data, b)))
        if left != target:
            rep.fail("antipode", "m(S x id)Delta != eps(.)1", b)
        if right != target:
            rep.fail("antipode", "m(id x S)Delta != eps(.)1", b)

    return rep


def _combine(s1, s2):
    s1 = ONE if s1 is None else s1
    s2 = ONE if s2 is None else s2
    return s1 * s2
