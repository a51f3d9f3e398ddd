"""JSON documents for algebras and verification reports.

Rationals are written as "num/den" strings; key order and formatting are
fixed so the same input always produces the same bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .clifford import even_module, format_blocks
from .epa import ALTERNATING, EPA, SYMMETRIC, canonical_b, kernel_pi
from .errors import DocumentError, QuatPoincareError
from .exactla import QMatrix, fmt_rational

SCHEMA_VERSION = 1


def _parse_rational(s) -> Fraction:
    if not isinstance(s, str):
        raise DocumentError(f"rational must be a 'num/den' string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rational {s!r}") from exc


def algebra_to_dict(alg: EPA, coefficients=None) -> dict:
    m = alg.W.dim
    sign = -1 if alg.variant == ALTERNATING else 1
    tensor = []
    for s in range(m):
        for t in range(s if sign == 1 else s + 1, m):
            for k, Pk in enumerate(alg.P):
                v = Pk[s, t]
                if v:
                    tensor.append([s, t, k, fmt_rational(v)])
    sc = []
    for (a, b) in sorted(alg.structure):
        for c in sorted(alg.structure[(a, b)]):
            sc.append([a, b, c, fmt_rational(alg.structure[(a, b)][c])])
    b = None
    if alg.p >= 3 and m:
        b = [[fmt_rational(x) for x in row] for row in canonical_b(alg).tolist()]
    ker = kernel_pi(alg).shape[1] if m else 0
    return {
        "schema_version": SCHEMA_VERSION,
        "signature": {"p": alg.p, "q": alg.q},
        "variant": alg.variant,
        "module": {"blocks": list(alg.W.blocks), "spec": format_blocks(alg.W.blocks)},
        "pi": {"coefficients": None if coefficients is None else [fmt_rational(c) for c in coefficients],
               "tensor": tensor},
        "dim_ker_pi": ker,
        "degenerate": ker > 0,
        "dim": alg.dim,
        "basis_labels": alg.labels,
        "parity": alg.parity,
        "structure_constants": sc,
        "b": b,
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def algebra_from_dict(doc: dict) -> EPA:
    try:
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schema_version {doc.get('schema_version')!r}")
        p = int(doc["signature"]["p"])
        q = int(doc["signature"]["q"])
        variant = doc["variant"]
        if variant not in (ALTERNATING, SYMMETRIC):
            raise DocumentError(f"unknown variant {variant!r}")
        W = even_module(p, q, list(doc["module"]["blocks"]))
        n, m = p + q, W.dim
        sign = -1 if variant == ALTERNATING else 1
        ents = [dict() for _ in range(n)]
        for s, t, k, v in doc["pi"]["tensor"]:
            if not (0 <= s < m and 0 <= t < m and 0 <= k < n):
                raise DocumentError(f"Pi entry {(s, t, k)} out of range")
            v = _parse_rational(v)
            ents[k][(s, t)] = v
            if s != t:
                ents[k][(t, s)] = sign * v
        P = [QMatrix.from_dict(e, (m, m)) for e in ents]
        structure: dict = {}
        dim = int(doc["dim"])
        for a, b, c, v in doc["structure_constants"]:
            if not (0 <= a < dim and 0 <= b < dim and 0 <= c < dim):
                raise DocumentError(f"structure constant index {(a, b, c)} out of range")
            structure.setdefault((a, b), {})[c] = _parse_rational(v)
        alg = EPA(W, P, variant, structure=structure)
        if alg.dim != dim:
            raise DocumentError(f"dimension {dim} does not match the module ({alg.dim})")
        return alg
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError, QuatPoincareError) as exc:
        raise DocumentError(f"malformed algebra document: {exc}") from exc


def loads_algebra(text: str) -> EPA:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("algebra document must be a JSON object")
    return algebra_from_dict(doc)


def coefficients_of(doc_text: str):
    return json.loads(doc_text)["pi"]["coefficients"]
