"""Problem files and machine-readable reports.

A problem file is JSON::

    {
      "fields": [{"poly": ["0", "1"]}, {"poly": [3, 0, 1]}],
      "order": {"generators": [["1", "0", "0"], ["0", "0", "2"]]}
    }

``poly`` lists coefficients from the constant term up (monic).  Integers may
be JSON numbers or decimal strings; exact rationals are "num/den" strings.
``order`` is ``"maximal"``, ``{"generators": [...]}`` (coordinates over the
integral basis of the maximal order) or ``{"preset": "fiber-product", "p": 7}``.
Components of degree >= 3 carry a ``supplied_data`` object with the keys
degree, disc, r1, r2, w, h, regulator, integral_basis, unit_generators and
torsion_generator.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import FieldSpec, _as_int, build_algebra
from .errors import InputError
from .oracle import fiber_product_order
from .order import maximal_order, order_from_generators


@dataclass(frozen=True)
class ProblemFile:
    fields: tuple
    order: object


def parse_problem(doc):
    if not isinstance(doc, dict):
        raise InputError("problem file must be a JSON object")
    order = doc.get("order", "maximal")
    fields = doc.get("fields")
    preset = isinstance(order, dict) and "preset" in order
    if fields is None and not preset:
        raise InputError("problem file needs a 'fields' array")
    specs = []
    for i, f in enumerate(fields or []):
        if not isinstance(f, dict) or "poly" not in f or not isinstance(f["poly"], list):
            raise InputError(f"fields[{i}] must be an object with a 'poly' array")
        data = f.get("supplied_data")
        if data is not None and not isinstance(data, dict):
            raise InputError(f"fields[{i}].supplied_data must be an object")
        specs.append(FieldSpec(tuple(_as_int(c, f"fields[{i}].poly") for c in f["poly"]), data))
    if order != "maximal" and not (isinstance(order, dict) and ("generators" in order or preset)):
        raise InputError("order must be \"maximal\", {\"generators\": [...]} or {\"preset\": ...}")
    return ProblemFile(tuple(specs), order)


def load_problem(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None
    return parse_problem(doc)


def build_order(problem):
    order = problem.order
    if isinstance(order, dict) and "preset" in order:
        if order["preset"] != "fiber-product":
            raise InputError(f"unknown preset {order['preset']!r}")
        return fiber_product_order(_as_int(order.get("p"), "order.p"))
    algebra = build_algebra(problem.fields)
    if order == "maximal":
        return maximal_order(algebra)
    gens = order["generators"]
    if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
        raise InputError("order.generators must be an array of coordinate arrays")
    return order_from_generators(algebra, [tuple(_as_int(a, "order.generators") for a in g)
                                           for g in gens])


def jsonable(obj):
    """Exact rationals as "num/den", integers as decimal strings, floats as-is."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    return json.dumps(jsonable(obj), indent=2, sort_keys=True)
