"""Drazin inverses and hypothesis-checked representation formulas.

Matrices are interchange documents (dicts with rows, cols, backend, entries);
`matrix()` builds one from nested lists.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    BackendMismatch,
    DimensionError,
    Error,
    GeneratorBudgetExhausted,
    HypothesisViolation,
    NotIdempotent,
    ParseError,
    RankAmbiguity,
    SeriesCapExceeded,
    ValueError,
)

__version__ = _core.version()

THEOREMS = ("L23", "T24", "T31", "C32", "T33", "C34", "T41", "C42", "T43", "C44")


def _exact_entry(v):
    if isinstance(v, str):
        return v
    if isinstance(v, complex):
        re, im = Fraction(v.real), Fraction(v.imag)
    else:
        re, im = Fraction(v), Fraction(0)
    out = f"{re.numerator}/{re.denominator}"
    if im:
        sign = "-" if im < 0 else "+"
        out += f"{sign}{abs(im.numerator)}/{im.denominator}i"
    return out


def matrix(rows, backend="exact"):
    """Matrix document from nested lists of ints, Fractions, complex numbers or scalar strings."""
    rows = [list(r) for r in rows]
    n_cols = len(rows[0]) if rows else 0
    if any(len(r) != n_cols for r in rows):
        raise DimensionError("ragged rows")
    flat = [v for r in rows for v in r]
    if backend == "exact":
        entries = [_exact_entry(v) for v in flat]
    else:
        entries = [[complex(v).real, complex(v).imag] for v in flat]
    return {"rows": len(rows), "cols": n_cols, "backend": backend, "entries": entries}


def to_complex_rows(doc):
    """Nested lists of complex numbers from a matrix document."""
    vals = []
    for e in doc["entries"]:
        if isinstance(e, list):
            vals.append(complex(e[0], e[1]))
        else:
            vals.append(_parse_exact(e))
    c = doc["cols"]
    return [vals[i * c:(i + 1) * c] for i in range(doc["rows"])]


def _parse_exact(s):
    s = s.replace(" ", "")
    if not s.endswith("i"):
        return complex(float(Fraction(s)), 0)
    body = s[:-1]
    cut = max(body.rfind("+", 1), body.rfind("-", 1))
    re = Fraction(body[:cut]) if cut > 0 else Fraction(0)
    im_txt = body[cut:] if cut > 0 else body
    if im_txt in ("", "+", "-"):
        im_txt += "1"
    return complex(float(re), float(Fraction(im_txt)))


def drazin(m, backend="exact", eps_rank=1e-10, eps_eq=1e-9):
    """Index, Drazin inverse and spectral idempotent of a matrix document."""
    return json.loads(_core.drazin(json.dumps(m), backend, eps_rank, eps_eq))


def check(bundle, lambda_=None, backend="exact", eps_rank=1e-10, eps_eq=1e-9):
    """Hypothesis report for an instance bundle."""
    return json.loads(_core.check(json.dumps(bundle), lambda_, backend, eps_rank, eps_eq))


def apply(bundle, lambda_=None, backend="exact", route="direct", series_cap=0, eps_rank=1e-10, eps_eq=1e-9):
    """Formula result for a bundle with the oracle comparison. Raises HypothesisViolation."""
    return json.loads(_core.apply(json.dumps(bundle), lambda_, backend, route, series_cap, eps_rank, eps_eq))


def generate(family, seed=0, dim=4, target=None, lambda_=None, budget=10000):
    return json.loads(_core.generate(family, seed, dim, target, lambda_, budget))


def verify(families, count=10, seed=0, dim_min=2, dim_max=6, backend="exact", jobs=1):
    return json.loads(_core.verify(list(families), count, seed, dim_min, dim_max, backend, jobs))
