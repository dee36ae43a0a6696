"""JSON encoding of every data type and report.

Each ``*_from_json`` inverts the matching ``to_json`` exactly.  Malformed input
raises :class:`SchemaError` naming the JSON path and field.
"""

from __future__ import annotations

import json
from typing import Any

from .phases import Phase


class SchemaError(ValueError):
    def __init__(self, path: str, field: str, message: str):
        super().__init__(f"{path}.{field}: {message}" if field else f"{path}: {message}")
        self.path = path
        self.field = field


def _need(obj, key: str, path: str, kind=None):
    if not isinstance(obj, dict):
        raise SchemaError(path, key, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaError(path, key, "missing field")
    val = obj[key]
    if kind is not None:
        ok = isinstance(val, kind) and not (kind is int and isinstance(val, bool))
        if not ok:
            name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
            raise SchemaError(path, key, f"expected {name}, got {type(val).__name__}")
    return val


def _wrap(path: str, field: str, fn, *args):
    """Run a constructor, reporting domain errors against ``path.field``."""
    try:
        return fn(*args)
    except SchemaError:
        raise
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        raise SchemaError(path, field, str(exc)) from exc


# -- labels ---------------------------------------------------------------------------


def label_to_json(label):
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    if isinstance(label, (int, str)) and not isinstance(label, bool):
        return label
    raise TypeError(f"unsupported input label {label!r}")


def label_from_json(obj, path: str = "$"):
    if isinstance(obj, list):
        return tuple(label_from_json(x, f"{path}[{k}]") for k, x in enumerate(obj))
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return obj
    raise SchemaError(path, "", f"labels are integers, strings or lists, got {type(obj).__name__}")


# -- algebraic objects ----------------------------------------------------------------


def phase_from_json(obj, path: str = "$") -> Phase:
    num = _need(obj, "num", path, int)
    den = _need(obj, "den", path, int)
    return _wrap(path, "den", Phase, num, den)


def monomial_from_json(obj, path: str = "$"):
    from .monomial import MonomialOp

    d = _need(obj, "d", path, int)
    perm = _need(obj, "perm", path, list)
    phases = _need(obj, "phases", path, list)
    if len(perm) != d:
        raise SchemaError(path, "perm", f"length {len(perm)} differs from d = {d}")
    if len(phases) != d:
        raise SchemaError(path, "phases", f"length {len(phases)} differs from d = {d}")
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in perm):
        raise SchemaError(path, "perm", "entries must be integers")
    phs = [phase_from_json(ph, f"{path}.phases[{k}]") for k, ph in enumerate(phases)]
    return _wrap(path, "perm", MonomialOp, tuple(perm), phs)


def tensor_from_json(obj, path: str = "$"):
    from .tensorops import TensorOp

    factors = _need(obj, "factors", path, list)
    fs = tuple(monomial_from_json(f, f"{path}.factors[{k}]") for k, f in enumerate(factors))
    g = phase_from_json(_need(obj, "global_phase", path), f"{path}.global_phase")
    return _wrap(path, "factors", TensorOp, fs, g)


def state_from_json(obj, path: str = "$"):
    from .tensorops import SparseState

    d = _need(obj, "d", path, int)
    n = _need(obj, "n", path, int)
    sup = {}
    for k, entry in enumerate(_need(obj, "support", path, list)):
        p = f"{path}.support[{k}]"
        basis = _need(entry, "basis", p, list)
        sup[tuple(basis)] = phase_from_json(_need(entry, "phase", p), f"{p}.phase")
    return _wrap(path, "support", SparseState, d, n, sup)


# -- constraint systems ---------------------------------------------------------------


def lcs_from_json(obj, path: str = "$"):
    from .lcs import Lcs
    from .zpfield import ZpMatrix

    p = _need(obj, "p", path, int)
    names = _need(obj, "var_names", path, list)
    rows = _need(obj, "rows", path, list)
    A, b = [], []
    for j, row in enumerate(rows):
        rp = f"{path}.rows[{j}]"
        line = [0] * len(names)
        for t, pair in enumerate(_need(row, "coeffs", rp, list)):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)):
                raise SchemaError(f"{rp}.coeffs[{t}]", "", "expected [column, coefficient]")
            col, a = pair
            if not 0 <= col < len(names):
                raise SchemaError(f"{rp}.coeffs[{t}]", "", f"column {col} out of range")
            line[col] = a
        A.append(tuple(line))
        b.append(_need(row, "rhs", rp, int))
    if not rows:
        raise SchemaError(path, "rows", "a system needs at least one row")
    M = _wrap(path, "p", ZpMatrix, tuple(A), p)
    return _wrap(path, "var_names", Lcs, p, M, tuple(b), tuple(names))


def assignment_from_json(obj, path: str = "$"):
    from .lcs import QuantumAssignment

    ops = _need(obj, "ops", path, dict)
    parsed = {name: tensor_from_json(t, f"{path}.ops[{name!r}]") for name, t in ops.items()}
    return _wrap(path, "ops", QuantumAssignment, parsed)


# -- computations ---------------------------------------------------------------------


def mbqc_to_json(spec) -> dict:
    entries = []
    for k in range(spec.n):
        for i in spec.inputs:
            e = {
                "site": k,
                "input": label_to_json(i),
                "op": spec.local_ops[(k, i)].to_json(),
                "c": spec.c[(k, i)],
            }
            if spec.settings and (k, i) in spec.settings:
                e["setting"] = spec.settings[(k, i)]
            entries.append(e)
    return {
        "d": spec.d,
        "n": spec.n,
        "inputs": [label_to_json(i) for i in spec.inputs],
        "local_ops": entries,
        "resource": spec.resource.to_json(),
    }


def mbqc_from_json(obj, path: str = "$"):
    from .mbqc import MbqcSpec

    d = _need(obj, "d", path, int)
    n = _need(obj, "n", path, int)
    inputs = tuple(label_from_json(x, f"{path}.inputs[{k}]")
                   for k, x in enumerate(_need(obj, "inputs", path, list)))
    ops, cs, settings = {}, {}, {}
    for t, e in enumerate(_need(obj, "local_ops", path, list)):
        p = f"{path}.local_ops[{t}]"
        key = (_need(e, "site", p, int), label_from_json(_need(e, "input", p), f"{p}.input"))
        if key in ops:
            raise SchemaError(p, "input", f"duplicate entry for site {key[0]}")
        ops[key] = monomial_from_json(_need(e, "op", p), f"{p}.op")
        cs[key] = e.get("c", 1)
        if not isinstance(cs[key], int) or isinstance(cs[key], bool):
            raise SchemaError(p, "c", "expected int")
        if "setting" in e:
            settings[key] = _need(e, "setting", p, str)
    resource = state_from_json(_need(obj, "resource", path), f"{path}.resource")
    return _wrap(path, "local_ops", MbqcSpec, d, n, inputs, ops, cs, resource, settings or None)


def output_table_from_json(obj, path: str = "$"):
    from .mbqc import OutputTable

    d = _need(obj, "d", path, int)
    vals = {}
    for k, e in enumerate(_need(obj, "outputs", path, list)):
        p = f"{path}.outputs[{k}]"
        vals[label_from_json(_need(e, "input", p), f"{p}.input")] = _need(e, "o", p, int)
    return _wrap(path, "outputs", OutputTable, d, vals)


# -- reports --------------------------------------------------------------------------


def _opt_phase(obj, path):
    return None if obj is None else phase_from_json(obj, path)


def verification_report_from_json(obj, path: str = "$"):
    from .lcs import VerificationReport

    p = _need(obj, "p", path, int)
    tors = tuple((e["var"], e["order"]) for e in _need(obj, "torsion_failures", path, list))
    viol = tuple((e["row"], e["pair"][0], e["pair"][1])
                 for e in _need(obj, "commutativity_violations", path, list))
    res = tuple(
        (e["row"], _opt_phase(e["achieved"], f"{path}.constraint_residuals[{k}].achieved"),
         phase_from_json(e["expected"], f"{path}.constraint_residuals[{k}].expected"))
        for k, e in enumerate(_need(obj, "constraint_residuals", path, list))
    )
    skipped = tuple(_need(obj, "skipped_rows", path, list))
    prods = tuple((e["row"], _opt_phase(e["product"], f"{path}.row_products[{k}].product"))
                  for k, e in enumerate(_need(obj, "row_products", path, list)))
    return VerificationReport(p, tors, viol, res, skipped, prods)


def audit_report_from_json(obj, path: str = "$"):
    from .homs import AuditReport

    return AuditReport(
        map_name=_need(obj, "map", path, str),
        domain=_need(obj, "domain", path, str),
        p=_need(obj, "p", path, int),
        m=_need(obj, "phase_exp", path, int),
        predicate=_need(obj, "predicate", path, str),
        exhaustive=_need(obj, "exhaustive", path, bool),
        seed=_need(obj, "seed", path),
        pairs_checked=_need(obj, "pairs_checked", path, int),
        failure_count=_need(obj, "failure_count", path, int),
        failures=list(_need(obj, "failures", path, list)),
        domain_size=_need(obj, "domain_size", path),
    )


def census_from_json(obj, path: str = "$"):
    from .homs import CensusEntry, SubgroupCensus
    from .perms import perm_power

    p = _need(obj, "p", path, int)
    entries = []
    for k, e in enumerate(_need(obj, "subgroups", path, list)):
        ep = f"{path}.subgroups[{k}]"
        g = tuple(_need(e, "generator", ep, list))
        tau = tuple(_need(e, "conjugator", ep, list))
        elems = frozenset(perm_power(g, j) for j in range(1, p))
        entries.append(CensusEntry(_need(e, "id", ep, int), g, tau, elems))
    return SubgroupCensus(p, tuple(entries))


# -- documents ------------------------------------------------------------------------


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str, path: str = "$"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(path, "", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def bundle_to_json(mbqc=None, lcs=None, assignment=None, extra: dict | None = None) -> dict:
    out = {"kind": "bundle"}
    if mbqc is not None:
        out["mbqc"] = mbqc.to_json()
    if lcs is not None:
        out["lcs"] = lcs.to_json()
    if assignment is not None:
        out["assignment"] = assignment.to_json()
    if extra:
        out.update(extra)
    return out


def pick(doc, key: str, parser, path: str = "$"):
    """Parse ``doc`` itself, or ``doc[key]`` when ``doc`` is a bundle."""
    if isinstance(doc, dict) and doc.get("kind") == "bundle":
        if key not in doc:
            raise SchemaError(path, key, "bundle has no such member")
        return parser(doc[key], f"{path}.{key}")
    return parser(doc, path)
