"""JSON formats for series, maps, pairs and witnesses.

Every number is a string: rationals as ``"p/q"``.  Coefficients in a
quadratic field are objects ``{"a": "p/q", "b": "p/q"}`` over a radicand
given once at the enclosing level.
"""
import json

from gmpy2 import mpq

from ._numbers import qstr
from .errors import PhylonError
from .group import PairInstance, PhylonMap
from .qext import QuadExtScalar
from .series import TruncatedSeries


class FormatError(PhylonError):
    """Malformed JSON instance."""


def _rational(text, where):
    if not isinstance(text, str):
        raise FormatError(f"{where}: numbers must be strings, got {text!r}")
    try:
        return mpq(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: cannot read {text!r} as a rational") from exc


def _coeff_to_json(c):
    if isinstance(c, QuadExtScalar):
        return c.to_json()
    return qstr(c)


def series_to_json(s):
    return {
        "dim": s.dim,
        "trunc": s.trunc,
        "terms": [{"alpha": list(a), "coeff": _coeff_to_json(c)} for a, c in s.terms()],
    }


def series_from_json(obj, radicand=None, where="series"):
    try:
        dim, trunc, terms = int(obj["dim"]), int(obj["trunc"]), obj.get("terms", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{where}: needs integer 'dim', 'trunc' and a 'terms' list") from exc
    if dim < 1 or trunc < 0:
        raise FormatError(f"{where}: dim must be >= 1 and trunc >= 0")
    coeffs = {}
    for n, t in enumerate(terms):
        alpha = t.get("alpha") if isinstance(t, dict) else None
        if (not isinstance(alpha, list) or len(alpha) != dim
                or not all(isinstance(e, int) and e >= 0 for e in alpha)):
            raise FormatError(f"{where}: term {n} needs 'alpha', a list of {dim} non-negative integers")
        if sum(alpha) > trunc:
            raise FormatError(f"{where}: term {alpha} has degree above trunc {trunc}")
        raw = t.get("coeff")
        if isinstance(raw, dict):
            if radicand is None:
                raise FormatError(f"{where}: field coefficient without a radicand")
            c = QuadExtScalar(_rational(raw.get("a", "0"), where), _rational(raw.get("b", "0"), where),
                              radicand)
        else:
            c = _rational(raw, where)
        if tuple(alpha) in coeffs:
            raise FormatError(f"{where}: duplicate term {alpha}")
        coeffs[tuple(alpha)] = c
    return TruncatedSeries(dim, trunc, coeffs)


def map_to_json(psi, radicand=None):
    out = {"dim": psi.dim, "trunc": psi.trunc,
           "components": [series_to_json(s) for s in psi.components]}
    if radicand is not None:
        out["radicand"] = qstr(radicand)
    return out


def map_from_json(obj, where="psi"):
    try:
        comps = obj["components"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{where}: needs a 'components' list") from exc
    rad = _rational(obj["radicand"], where) if "radicand" in obj else None
    series = [series_from_json(c, rad, f"{where}.components[{i}]") for i, c in enumerate(comps)]
    if "dim" in obj and int(obj["dim"]) != len(series):
        raise FormatError(f"{where}: dim {obj['dim']} but {len(series)} components")
    return PhylonMap(series)


def witness_to_json(witness):
    out = map_to_json(witness.psi)
    out["verified_to"] = witness.verified_to
    return out


def pair_to_json(pair, psi=None):
    out = {"dim": pair.dim, "trunc": max(pair.f.trunc, pair.b.trunc),
           "f": series_to_json(pair.f), "b": series_to_json(pair.b)}
    if psi is not None:
        out["psi"] = map_to_json(psi)
    return out


def pair_from_json(obj):
    """``(PairInstance, psi or None)`` from a problem instance."""
    if not isinstance(obj, dict) or "f" not in obj or "b" not in obj:
        raise FormatError("instance needs 'f' and 'b' series")
    f = series_from_json(obj["f"], where="f")
    b = series_from_json(obj["b"], where="b")
    if "dim" in obj and int(obj["dim"]) != f.dim:
        raise FormatError(f"instance dim {obj['dim']} but f has {f.dim} variables")
    pair = PairInstance(f, b)
    psi = map_from_json(obj["psi"]) if obj.get("psi") is not None else None
    return pair, psi


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def dump_json(obj, fh=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if fh is not None:
        fh.write(text + "\n")
    return text
