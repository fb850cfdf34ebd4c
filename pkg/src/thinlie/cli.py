"""Command line front end: verify | switch | analyze | oracle.

verify   exhaustive algebra, derivation and pre-switch grading checks
switch   grading switch via truncated Laguerre series, closed-basis
         comparison, product tables, serialization round trip
analyze  loop expansion and the diamond-pattern report
oracle   brute-force cross checks of the fast arithmetic paths

Exit codes: 0 all enabled checks pass, 1 check failure or run error,
2 usage error.
"""

import argparse
import dataclasses
import json
import math
import sys

from .dpalgebra import Heights
from .ffield import FieldParams, lucas_binomial
from .grading import (GradedBasis, GradingCase, GradingSpec, Label, SwitchConfig,
                      build_closed_basis, check_graded, monomial_grading_violations,
                      switch_grading, verify_product_tables)
from .liealg import (AlgebraDescriptor, Family, anticommutativity_violations,
                     build_derivation, closure_violations,
                     derivation_power_violations, jacobi_violations,
                     leibniz_violations, realization_violations)
from .loopalg import CheckResult, render_text, run_analysis


class UsageError(Exception):
    pass


@dataclasses.dataclass
class RunConfig:
    command: str
    p: int
    n: int
    s: int
    n1: int
    family: Family
    case: str
    field: FieldParams
    pi: object
    sigma: object
    pi_hat: int
    max_degree: int | None
    fmt: str
    seed: int
    allow_negative_control: bool

    @property
    def heights(self) -> Heights:
        return Heights(self.p, self.n1, self.n)


def standard_modulus(p: int) -> tuple:
    """Low-to-high coefficients of t^p - t - 1."""
    return tuple([p - 1, p - 1] + [0] * (p - 2) + [1])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="thinlie",
        description="exact construction and verification of thin graded "
                    "Lie algebra patterns",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, blurb in (
        ("verify", "algebra axioms, derivation laws, pre-switch grading"),
        ("switch", "grading switch, closed basis, product tables"),
        ("analyze", "loop expansion and diamond-pattern report"),
        ("oracle", "brute-force cross checks"),
    ):
        sp = sub.add_parser(name, help=blurb)
        sp.add_argument("--p", type=int, required=True, help="odd prime")
        sp.add_argument("--n", type=int, required=True, help="second exponent height")
        sp.add_argument("--s", type=int, default=None, help="derivation step")
        sp.add_argument("--n1", type=int, default=None,
                        help="first exponent height (defaults per command)")
        sp.add_argument("--family", choices=[f.value for f in Family], default=None)
        sp.add_argument("--case",
                        choices=["preswitch", "big-field", "prime-field"],
                        default=None)
        sp.add_argument("--field", default=None,
                        help="coefficient field as p^m:c0,...,cm")
        sp.add_argument("--pi", default=None, help="switching parameter pi")
        sp.add_argument("--sigma", default=None, help="switching parameter sigma")
        sp.add_argument("--max-degree", type=int, default=None)
        sp.add_argument("--format", choices=["text", "json"], default="text",
                        dest="fmt")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--allow-negative-control", action="store_true")
    return ap


def materialize(ns: argparse.Namespace) -> RunConfig:
    command = ns.command
    p, n = ns.p, ns.n
    if n < 1:
        raise UsageError("n must be >= 1")

    case = ns.case
    if case is None:
        if command == "verify":
            case = "preswitch"
        else:
            raise UsageError(f"{command} needs --case")
    if command in ("switch", "oracle") and case == "preswitch":
        raise UsageError(f"{command} needs a switched case (big-field or prime-field)")

    family = Family(ns.family) if ns.family else None
    if case == "big-field":
        if family not in (None, Family.ALBERT_ZASSENHAUS):
            raise UsageError("the big-field case lives on albert-zassenhaus")
        family = Family.ALBERT_ZASSENHAUS
    elif case == "prime-field":
        if family not in (None, Family.GRADED_HAMILTONIAN):
            raise UsageError("the prime-field case lives on graded-hamiltonian")
        family = Family.GRADED_HAMILTONIAN
    elif family is None:
        raise UsageError("--family is required here")

    if command == "verify":
        n1 = ns.n1 if ns.n1 is not None else n
        if n1 < 1:
            raise UsageError("n1 must be >= 1")
        s = ns.s if ns.s is not None else n1 - 1
        if s < 0:
            raise UsageError("s must be >= 0")
    else:
        s = ns.s if ns.s is not None else 1
        if s < 0:
            raise UsageError("s must be >= 0")
        n1 = ns.n1 if ns.n1 is not None else s + 1
        if n1 != s + 1:
            raise UsageError("graded runs need n1 = s + 1")

    try:
        if ns.field is not None:
            field = FieldParams.parse_spec(ns.field)
            if field.p != p:
                raise UsageError("--field characteristic disagrees with --p")
        elif case == "big-field":
            field = FieldParams(p, p, standard_modulus(p))
        else:
            field = FieldParams.prime(p)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if case == "big-field" and field.m < 2:
        raise UsageError("the big-field case needs a proper field extension")

    try:
        if ns.sigma is not None:
            sigma = field.parse_element(ns.sigma)
        else:
            sigma = field.one()
        if ns.pi is not None:
            pi = field.parse_element(ns.pi)
        elif case == "big-field":
            pi = field.gen()
        else:
            pi = field.one()
    except ValueError as e:
        raise UsageError(str(e)) from None
    if sigma.is_zero():
        raise UsageError("sigma must be nonzero")
    if pi.is_zero() and not ns.allow_negative_control:
        raise UsageError("pi = 0 is the negative control; pass --allow-negative-control")
    if case == "prime-field" and not pi.in_prime_field():
        raise UsageError("the prime-field case needs pi in the prime subfield")
    pi_hat = pi.as_int() if pi.in_prime_field() else 0

    if ns.max_degree is not None and ns.max_degree < 1:
        raise UsageError("max-degree must be positive")

    return RunConfig(command, p, n, s, n1, family, case, field, pi, sigma,
                     pi_hat, ns.max_degree, ns.fmt, ns.seed,
                     ns.allow_negative_control)


def _overall(checks: dict) -> bool:
    return all(c.passed for c in checks.values() if not c.informational)


def _check_lines(checks: dict) -> list:
    lines = []
    for name, c in checks.items():
        tag = "pass" if c.passed else "FAIL"
        if c.informational:
            tag += " (informational)"
        lines.append(f"check {name}: {tag}")
    return lines


def _emit(rc: RunConfig, params: dict, checks: dict, extra: dict | None = None,
          text_head: list | None = None):
    code = 0 if _overall(checks) else 1
    if rc.fmt == "json":
        doc = {"command": rc.command, "params": params}
        if extra:
            doc.update(extra)
        doc["checks"] = {name: c.to_json() for name, c in checks.items()}
        doc["overall"] = _overall(checks)
        return code, json.dumps(doc, indent=2) + "\n"
    lines = ["params " + " ".join(f"{k}={v}" for k, v in params.items())]
    if text_head:
        lines.extend(text_head)
    lines.extend(_check_lines(checks))
    lines.append("overall: " + ("pass" if _overall(checks) else "FAIL"))
    return code, "\n".join(lines) + "\n"


def _violation_payload(violations: list, limit: int = 5):
    if not violations:
        return None
    shown = [str(v) for v in violations[:limit]]
    return {"count": len(violations), "first": shown}


def _preswitch_spec(rc: RunConfig) -> GradingSpec:
    if rc.family is Family.ALBERT_ZASSENHAUS:
        return GradingSpec(GradingCase.PRESWITCH_AZ, rc.heights, rc.n1 - 1)
    return GradingSpec(GradingCase.PRESWITCH_GH, rc.heights, rc.n1 - 1, rc.pi_hat)


def cmd_verify(rc: RunConfig):
    desc = AlgebraDescriptor(rc.family, rc.field, rc.heights)
    deriv = build_derivation(desc, rc.s)
    expected_dim = rc.p ** (rc.n1 + rc.n) - (
        2 if rc.family is Family.GRADED_HAMILTONIAN else 0
    )
    suites = (
        ("anticommutativity", anticommutativity_violations(desc)),
        ("jacobi", jacobi_violations(desc)),
        ("closure", closure_violations(desc)),
        ("leibniz", leibniz_violations(deriv)),
        ("derivation_power", derivation_power_violations(deriv)),
        ("realization", realization_violations(deriv)),
        ("monomial_grading", monomial_grading_violations(desc, _preswitch_spec(rc))),
    )
    checks = {}
    checks["dimension"] = CheckResult(
        "dimension", desc.dim == expected_dim,
        None if desc.dim == expected_dim
        else {"dim": desc.dim, "expected": expected_dim},
    )
    for name, violations in suites:
        checks[name] = CheckResult(name, not violations,
                                   _violation_payload(violations))
    params = {
        "p": rc.p, "n1": rc.n1, "n2": rc.n, "s": rc.s,
        "family": rc.family.value, "field": rc.field.spec_string,
        "pi": str(rc.pi), "sigma": str(rc.sigma), "seed": rc.seed,
    }
    return _emit(rc, params, checks,
                 extra={"dimension": desc.dim},
                 text_head=[f"dimension {desc.dim}"])


def _switched_setup(rc: RunConfig):
    """Descriptor, pre-switch spec, switched spec and SwitchConfig."""
    desc = AlgebraDescriptor(rc.family, rc.field, rc.heights)
    pre = _preswitch_spec(rc)
    out_case = (GradingCase.BIG_FIELD if rc.case == "big-field"
                else GradingCase.PRIME_FIELD)
    out_spec = GradingSpec(out_case, rc.heights, rc.s, rc.pi_hat)
    cfg = SwitchConfig(rc.field, rc.sigma, rc.pi, rc.s,
                       allow_zero_pi=rc.allow_negative_control)
    return desc, pre, out_spec, cfg


def _grading_params(rc: RunConfig, spec: GradingSpec) -> dict:
    return {
        "p": rc.p, "n": rc.n, "s": rc.s, "case": spec.case.value,
        "field": rc.field.spec_string, "pi": str(rc.pi),
        "sigma": str(rc.sigma), "N": spec.N, "q": spec.q,
    }


def cmd_switch(rc: RunConfig):
    desc, pre, out_spec, cfg = _switched_setup(rc)
    deriv = build_derivation(desc, rc.s)
    raw = switch_grading(desc, pre, deriv, cfg)
    closed = build_closed_basis(desc, out_spec, cfg)

    link_bad = [lab.text() for lab in closed.labels
                if closed.vectors[lab] != raw.vectors[lab].scale(closed.scalars[lab])]
    serialized = closed.serialize()
    parsed = GradedBasis.parse(desc, out_spec, serialized)
    round_trip = (parsed.labels == closed.labels
                  and parsed.degrees == closed.degrees
                  and parsed.vectors == closed.vectors
                  and parsed.scalars == closed.scalars)

    checks = {}
    graded_raw = check_graded(desc, raw)
    checks["graded_raw"] = CheckResult(
        "graded_raw", not graded_raw,
        _violation_payload([(a.text(), b.text(), w.text()) for a, b, w in graded_raw]))
    graded_closed = check_graded(desc, closed)
    checks["graded_closed"] = CheckResult(
        "graded_closed", not graded_closed,
        _violation_payload([(a.text(), b.text(), w.text()) for a, b, w in graded_closed]))
    checks["scalar_link"] = CheckResult(
        "scalar_link", not link_bad, _violation_payload(link_bad))
    tables = verify_product_tables(desc, closed, cfg)
    checks["product_tables"] = CheckResult(
        "product_tables", not tables,
        _violation_payload([(a.text(), b.text()) for a, b in tables]))
    checks["serialization_roundtrip"] = CheckResult(
        "serialization_roundtrip", round_trip, None)

    return _emit(rc, _grading_params(rc, out_spec), checks,
                 extra={"basis": serialized},
                 text_head=[serialized.rstrip("\n")])


def _generators(spec: GradingSpec, basis: GradedBasis):
    """The two degree-1 basis vectors: j = -1 gives X, j = q-2 gives Y."""
    found = {lab.j: lab for lab in basis.active_labels
             if basis.degrees[lab] == 1}
    if sorted(found) != [-1, spec.q - 2]:
        raise ValueError(f"degree-1 labels {sorted(found.values())} do not "
                         "split into generators")
    return basis.vectors[found[-1]], basis.vectors[found[spec.q - 2]]


def cmd_analyze(rc: RunConfig):
    desc = AlgebraDescriptor(rc.family, rc.field, rc.heights)
    if rc.case == "preswitch":
        spec = _preswitch_spec(rc)
        cfg = None
        basis = build_closed_basis(desc, spec, None)
    else:
        desc, _pre, spec, cfg = _switched_setup(rc)
        basis = build_closed_basis(desc, spec, cfg)
    X, Y = _generators(spec, basis)
    report = run_analysis(desc, basis, X, Y, rc.max_degree, cfg,
                          _grading_params(rc, spec))
    code = 0 if report.passed else 1
    out = report.to_json() if rc.fmt == "json" else render_text(report)
    return code, out


def cmd_oracle(rc: RunConfig):
    desc, _pre, out_spec, cfg = _switched_setup(rc)
    deriv = build_derivation(desc, rc.s)

    bound = 2 * rc.p ** 2
    bad_binomial = [(n, k) for n in range(bound + 1) for k in range(n + 1)
                    if lucas_binomial(n, k, rc.p) != math.comb(n, k) % rc.p]
    realization = realization_violations(deriv)
    closed = build_closed_basis(desc, out_spec, cfg)
    tables = verify_product_tables(desc, closed, cfg)

    checks = {
        "binomial_oracle": CheckResult(
            "binomial_oracle", not bad_binomial, _violation_payload(bad_binomial)),
        "derivation_realization": CheckResult(
            "derivation_realization", not realization,
            _violation_payload(realization)),
        "product_tables_oracle": CheckResult(
            "product_tables_oracle", not tables,
            _violation_payload([(a.text(), b.text()) for a, b in tables])),
    }
    return _emit(rc, _grading_params(rc, out_spec), checks)


COMMANDS = {
    "verify": cmd_verify,
    "switch": cmd_switch,
    "analyze": cmd_analyze,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        rc = materialize(ns)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        code, out = COMMANDS[rc.command](rc)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if out:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
