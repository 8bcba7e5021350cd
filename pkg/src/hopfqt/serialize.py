"""Wire formats: scalars, data files, R-matrix files, exports.

Scalar literals are the pair [num, den] meaning exp(2*pi*i*num/den), or the
literal 0; values that are not roots of unity are exported exactly as
{"order": N, "coeffs": [[p, q], ...]}.  Element enumeration order is fixed
bit-exactly everywhere: lexicographic exponent vectors (leftmost factor most
significant), with S and T listed in that same order.  See docs/formats.md.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .cocycle import ExtensionData
from .groups import FiniteAbelianGroup, Involution
from .hopf import BasisElement, TensorElement
from .reports import Report
from .rmatrix import NONTRIVIAL, TRIVIAL, RMatrix
from .scalar import Cyclotomic, RootOfUnity


def scalar_to_json(c):
    if isinstance(c, RootOfUnity):
        return [c.num, c.den]
    if c.is_zero():
        return 0
    r = c.as_root_of_unity()
    if r is not None:
        return [r.num, r.den]
    cc = c.canonical()
    return {
        "order": cc.order,
        "coeffs": [[q.numerator, q.denominator] for q in cc.coeffs],
    }


def scalar_from_json(obj) -> Cyclotomic:
    if obj == 0:
        return Cyclotomic.zero()
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return Cyclotomic.root(int(obj[0]), int(obj[1]))
    if isinstance(obj, dict):
        coeffs = [Fraction(int(p), int(q)) for p, q in obj["coeffs"]]
        return Cyclotomic(int(obj["order"]), coeffs)
    raise ValueError(f"bad scalar literal: {obj!r}")


def rou_from_json(obj) -> RootOfUnity:
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2):
        raise ValueError(f"input scalars must be [num, den] pairs, got {obj!r}")
    return RootOfUnity(int(obj[0]), int(obj[1]))


def data_to_json(data: ExtensionData) -> dict:
    els = data.group.elements
    return {
        "group": {"factor_orders": list(data.group.factor_orders)},
        "action": [list(row) for row in data.action.images],
        "sigma": [scalar_to_json(data.sigma[g]) for g in els],
        "tau": [[scalar_to_json(data.tau[(g, h)]) for h in els] for g in els],
        "name": data.name,
    }


def data_from_json(obj: dict) -> ExtensionData:
    group = FiniteAbelianGroup(tuple(int(d) for d in obj["group"]["factor_orders"]))
    action = Involution(group, tuple(tuple(int(e) for e in row)
                                     for row in obj["action"]))
    els = group.elements
    sigma_list = obj["sigma"]
    tau_rows = obj["tau"]
    if len(sigma_list) != len(els) or len(tau_rows) != len(els):
        raise ValueError("sigma/tau tables must cover G in enumeration order")
    sigma = {g: rou_from_json(v) for g, v in zip(els, sigma_list)}
    tau = {}
    for g, row in zip(els, tau_rows):
        if len(row) != len(els):
            raise ValueError("tau rows must cover G in enumeration order")
        for h, v in zip(els, row):
            tau[(g, h)] = rou_from_json(v)
    return ExtensionData(group, action, sigma, tau,
                         name=obj.get("name", repr(group)))


def data_fingerprint(data: ExtensionData) -> str:
    blob = json.dumps(data_to_json(data), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def rmatrix_to_json(R: RMatrix) -> dict:
    data = R.data
    out = {"form": R.form}
    if R.form == TRIVIAL:
        els = data.group.elements
        out["w1"] = [[scalar_to_json(R.w1[(g, h)]) for h in els] for g in els]
    else:
        S, T = data.S, data.T
        out["w1"] = [[scalar_to_json(R.w1[(s1, s2)]) for s2 in S] for s1 in S]
        out["w2"] = [[scalar_to_json(R.w2[(s, t)]) for t in T] for s in S]
        out["w3"] = [[scalar_to_json(R.w3[(t, s)]) for s in S] for t in T]
        out["w4"] = [[scalar_to_json(R.w4[(t1, t2)]) for t2 in T] for t1 in T]
    return out


def rmatrix_from_json(data: ExtensionData, obj: dict) -> RMatrix:
    form = obj.get("form")
    if form == TRIVIAL:
        els = data.group.elements
        w1 = {(g, h): scalar_from_json(v)
              for g, row in zip(els, obj["w1"]) for h, v in zip(els, row)}
        return RMatrix(data, TRIVIAL, w1)
    if form != NONTRIVIAL:
        raise ValueError(f"unknown R-matrix form {form!r}")
    S, T = data.S, data.T
    w1 = {(s1, s2): scalar_from_json(v)
          for s1, row in zip(S, obj["w1"]) for s2, v in zip(S, row)}
    w2 = {(s, t): scalar_from_json(v)
          for s, row in zip(S, obj["w2"]) for t, v in zip(T, row)}
    w3 = {(t, s): scalar_from_json(v)
          for t, row in zip(T, obj["w3"]) for s, v in zip(S, row)}
    w4 = {(t1, t2): scalar_from_json(v)
          for t1, row in zip(T, obj["w4"]) for t2, v in zip(T, row)}
    return RMatrix(data, form, w1, w2, w3, w4)


def tensor_to_json(u: TensorElement) -> list:
    entries = []
    for key in sorted(u.terms, key=lambda k: tuple((b.g.exponents, b.eps)
                                                   for b in k)):
        entries.append({
            "basis": [[list(b.g.exponents), b.eps] for b in key],
            "value": scalar_to_json(u.terms[key]),
        })
    return entries


def tensor_to_dense(u: TensorElement, approx: bool = False):
    """Dense matrix over the ordered basis (g in enumeration order, then the
    x-part), for arity 1 or 2.  With approx=True entries are complex floats
    and NOT authoritative."""
    if u.arity > 2:
        raise ValueError("dense rendering is available for arity <= 2 only")
    data = u.data
    basis = [BasisElement(g, e) for g in data.group.elements for e in (0, 1)]
    index = {b: i for i, b in enumerate(basis)}
    dim = len(basis)

    def cell(c):
        if c is None:
            return 0 if not approx else [0.0, 0.0]
        if approx:
            z = c.approx()
            return [z.real, z.imag]
        return scalar_to_json(c)

    if u.arity == 1:
        row = [None] * dim
        for (b,), c in u.terms.items():
            row[index[b]] = c
        return [cell(c) for c in row]
    mat = [[None] * dim for _ in range(dim)]
    for (b1, b2), c in u.terms.items():
        mat[index[b1]][index[b2]] = c
    return [[cell(c) for c in row] for row in mat]


def solution_set_to_json(data: ExtensionData, solutions: dict,
                         verified: bool | None = None) -> dict:
    """The enumeration export: counts by kind, data fingerprint, R-matrices."""
    out = {
        "data_fingerprint": data_fingerprint(data),
        "data_name": data.name,
        "counts": {kind: len(rs) for kind, rs in solutions.items()},
        "solutions": {
            kind: [rmatrix_to_json(R) for R in rs] for kind, rs in solutions.items()
        },
    }
    if verified is not None:
        out["verified"] = verified
    return out


def report_to_json(rep: Report) -> dict:
    return {
        "title": rep.title,
        "ok": rep.ok,
        "checked": rep.checked,
        "failures": [
            {"code": f.code, "message": f.message, "witness": repr(f.witness)}
            for f in rep.failures
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
