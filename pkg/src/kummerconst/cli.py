"""Command-line front end.

All machine output is canonical JSON (sorted keys, two-space indent) so a
parse/re-serialize round trip is byte identical.  Rationals print as
"num/den" strings; enclosures as {"lo", "hi", "decimal"}.

Exit codes: 0 success, 1 failed verification, 2 usage or family error,
3 domain error, 4 precision target not reached (partial result still
printed), 5 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arith import Enclosure
from .closedforms import (
    TitchmarshResult,
    a_sf,
    artin_A,
    artin_E,
    artin_delta,
    titchmarsh_closed,
    universal_constant,
)
from .engine import (
    ConstantResult,
    builtin_family,
    evaluate_constant,
    family_from_json,
)
from .errors import (
    DomainError,
    FamilyError,
    PrecisionNotReached,
    ResourceLimit,
    VerificationFailure,
)
from .kummer import decompose, entanglement_profile
from .oracle import enumerate_A, partial_sum, prime_scan, serre_partial_sum, verify_group
from .serre import serre_constant, serre_profile, weierstrass_discriminant

__all__ = ["main"]


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _enc(e: Enclosure, digits: int = 17) -> dict:
    return {"lo": _frac(e.lo), "hi": _frac(e.hi), "decimal": e.decimal_str(digits)}


def _rational_arg(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    if q <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return q


def _family_arg(spec: str):
    if spec.startswith("file:"):
        with open(spec[5:], encoding="utf-8") as fh:
            return family_from_json(json.load(fh))
    return builtin_family(spec)


def _coeffs_arg(text: str) -> tuple[int, int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 5:
        raise argparse.ArgumentTypeError("need a1,a2,a3,a4,a6")
    try:
        return tuple(int(v) for v in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _constant_payload(res: ConstantResult) -> dict:
    return {
        "family": res.family,
        "value": _enc(res.value),
        "correction": _frac(res.correction) if res.correction is not None else None,
        "P_used": res.P_used,
        "vanishing": {"kind": res.vanishing.kind, "p": res.vanishing.p},
        "precision_reached": True,
    }


def _titchmarsh_payload(res: TitchmarshResult) -> dict:
    return {
        "value": _enc(res.value),
        "correction": _frac(res.correction),
        "case": res.case.value,
        "P_used": res.P_used,
        "precision_reached": True,
    }


# ----------------------------------------------------------------------
# subcommands


def _cmd_decompose(args) -> dict:
    dec = decompose(args.a)
    prof = entanglement_profile(dec)
    return {
        "a": dec.a,
        "a0": dec.a0,
        "e": dec.e,
        "h": dec.h,
        "s": dec.s,
        "case": dec.case.value,
        "profile": {
            "D": prof.D,
            "levels": {str(p): lv for p, lv in sorted(prof.levels.items())},
            "n_a": prof.n_a,
        },
    }


def _cmd_constant(args) -> dict:
    dec = decompose(args.a)
    res = evaluate_constant(args.g, dec, target_error=args.target_error, **_pmax_kwargs(args))
    out = _constant_payload(res)
    out["a"] = args.a
    return out


def _pmax_kwargs(args) -> dict:
    return {} if args.pmax is None else {"P_max": args.pmax}


def _cmd_artin(args) -> dict:
    asf = a_sf(args.a)
    dec = decompose(args.a)
    kw = _pmax_kwargs(args)
    delta = artin_delta(args.a, args.target_error, **kw)
    out = {
        "a": args.a,
        "a_sf": asf,
        "h": dec.h,
        "E": _frac(artin_E(args.a)) if asf % 4 == 1 else None,
        "A": _enc(artin_A(args.a, args.target_error, **kw)),
        "delta": _enc(delta),
        "precision_reached": True,
    }
    return out


def _cmd_titchmarsh(args) -> dict:
    res = titchmarsh_closed(args.a, args.target_error, **_pmax_kwargs(args))
    out = _titchmarsh_payload(res)
    out["a"] = args.a
    return out


def _cmd_universal(args) -> dict:
    enc = universal_constant(args.target_error, **_pmax_kwargs(args))
    return {"value": _enc(enc, 32), "precision_reached": True}


def _resolve_delta(args) -> int:
    if (args.delta is None) == (args.weierstrass is None):
        raise DomainError("give exactly one of --delta or --weierstrass")
    if args.delta is not None:
        return args.delta
    return weierstrass_discriminant(*args.weierstrass)


def _cmd_serre(args) -> dict:
    delta = _resolve_delta(args)
    prof = serre_profile(delta)
    res = serre_constant(args.g, delta, target_error=args.target_error, **_pmax_kwargs(args))
    out = _constant_payload(res)
    out["delta"] = delta
    out["D"] = prof.D
    out["n_E"] = prof.n_a
    return out


def _cmd_oracle_partial(args) -> dict:
    if (args.a is None) == (args.delta is None):
        raise DomainError("give exactly one of --a or --delta")
    if args.a is not None:
        ps = partial_sum(args.g, args.a, args.n)
        who = {"a": args.a}
    else:
        ps = serre_partial_sum(args.g, args.delta, args.n)
        who = {"delta": args.delta}
    out = {
        "N": ps.N,
        "family": args.g.name,
        "value": _frac(ps.value),
        "tail": _frac(ps.tail),
        "enclosure": _enc(ps.enclosure()),
    }
    out.update(who)
    return out


def _cmd_oracle_scan(args) -> dict:
    weight = "divisor-count" if args.weight == "divisor" else args.weight
    res = prime_scan(args.a, args.x, weight)
    return {
        "a": res.a,
        "x": res.x,
        "weight": weight,
        "scanned": res.scanned,
        "excluded": res.excluded,
        "total": _frac(res.total),
        "li": _enc(res.li),
        "ratio": _enc(res.ratio),
    }


def _cmd_oracle_enumerate(args) -> dict:
    dec = decompose(args.a)
    if args.budget is not None:
        elems = enumerate_A(dec, args.p, args.k, size_budget=args.budget)
    else:
        elems = enumerate_A(dec, args.p, args.k)
    out = {
        "a": args.a,
        "p": args.p,
        "k": args.k,
        "modulus": args.p**args.k,
        "size": len(elems),
    }
    if len(elems) <= 1000:
        out["elements"] = [[g.b, g.d] for g in elems]
    else:
        out["elements_omitted"] = True
    return out


def _cmd_oracle_verify(args) -> dict:
    dec = decompose(args.a)
    if args.budget is not None:
        rep = verify_group(dec, args.p, args.k, closure_samples=args.budget)
    else:
        rep = verify_group(dec, args.p, args.k)
    return {
        "a": args.a,
        "p": rep.p,
        "k": rep.k,
        "size": rep.size,
        "expected_size": rep.expected_size,
        "closure_mode": rep.closure_mode,
        "reduction_checked": rep.reduction_checked,
        "fiber_size": rep.fiber_size,
        "ok": True,
    }


def _build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--json", dest="format", action="store_const", const="json")
    group.add_argument("--text", dest="format", action="store_const", const="text")
    fmt.set_defaults(format="json")

    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument(
        "--target-error",
        type=_rational_arg,
        default=Fraction(1, 10**6),
        help="enclosure width target, rational or scientific (default 1e-6)",
    )
    tol.add_argument("--pmax", type=int, default=None, help="prime cutoff ceiling")

    p = argparse.ArgumentParser(
        prog="kummerconst",
        description="Rigorous enclosures for Euler-product constants of radical and division fields",
    )
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", parents=[fmt], help="base fingerprint and entanglement profile")
    d.add_argument("--a", type=int, required=True)
    d.set_defaults(func=_cmd_decompose)

    c = sub.add_parser("constant", parents=[fmt, tol], help="evaluate sum g(n)/deg(n)")
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--g", type=_family_arg, required=True, help="mu|one|laxton|power:<z>|file:<path>")
    c.set_defaults(func=_cmd_constant)

    ar = sub.add_parser("artin", parents=[fmt, tol], help="primitive-root density chain")
    ar.add_argument("--a", type=int, required=True)
    ar.set_defaults(func=_cmd_artin)

    t = sub.add_parser("titchmarsh", parents=[fmt, tol], help="average-divisor constant, closed form")
    t.add_argument("--a", type=int, required=True)
    t.set_defaults(func=_cmd_titchmarsh)

    u = sub.add_parser("universal", parents=[fmt, tol], help="squarefree-base constant")
    u.set_defaults(func=_cmd_universal)

    s = sub.add_parser("serre", parents=[fmt, tol], help="division-field constant")
    s.add_argument("--delta", type=int)
    s.add_argument("--weierstrass", type=_coeffs_arg, help="a1,a2,a3,a4,a6")
    s.add_argument("--g", type=_family_arg, required=True)
    s.set_defaults(func=_cmd_serre)

    o = sub.add_parser("oracle", help="brute-force cross-checks")
    osub = o.add_subparsers(dest="oracle_command", required=True)

    op = osub.add_parser("partial-sum", parents=[fmt], help="directly sum the series head")
    op.add_argument("--a", type=int)
    op.add_argument("--delta", type=int)
    op.add_argument("--g", type=_family_arg, required=True)
    op.add_argument("--n", type=int, required=True)
    op.set_defaults(func=_cmd_oracle_partial)

    osc = osub.add_parser("scan", parents=[fmt], help="residual indices over actual primes")
    osc.add_argument("--a", type=int, required=True)
    osc.add_argument("--x", type=int, required=True)
    osc.add_argument(
        "--weight",
        "--f",
        choices=["primitive", "inverse-index", "divisor-count", "divisor"],
        default="primitive",
    )
    osc.set_defaults(func=_cmd_oracle_scan)

    oe = osub.add_parser("enumerate", parents=[fmt], help="list the local group")
    oe.add_argument("--a", type=int, required=True)
    oe.add_argument("--p", type=int, required=True)
    oe.add_argument("--k", type=int, required=True)
    oe.add_argument("--budget", type=int, help="cap on the number of elements listed")
    oe.set_defaults(func=_cmd_oracle_enumerate)

    ov = osub.add_parser("verify-group", parents=[fmt], help="check the group axioms by hand")
    ov.add_argument("--a", type=int, required=True)
    ov.add_argument("--p", type=int, required=True)
    ov.add_argument("--k", type=int, required=True)
    ov.add_argument("--budget", type=int, help="closure sample count for large groups")
    ov.set_defaults(func=_cmd_oracle_verify)

    return p


def _partial_result_payload(exc: PrecisionNotReached) -> dict:
    out = {"error": str(exc), "precision_reached": False}
    res = exc.result
    if isinstance(res, ConstantResult):
        base = _constant_payload(res)
        base.update(out)
        return base
    if isinstance(res, TitchmarshResult):
        base = _titchmarsh_payload(res)
        base.update(out)
        return base
    if isinstance(res, Enclosure):
        out["value"] = _enc(res)
    return out


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
        return
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, dict):
            inner = ", ".join(f"{k}={v}" for k, v in sorted(val.items()))
            print(f"{key}: {inner}")
        else:
            print(f"{key}: {val}")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except FamilyError as exc:
        # family parsing happens inside argparse type callbacks
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fmt = getattr(args, "format", "json")
    try:
        payload = args.func(args)
        code = 0
    except FamilyError as exc:
        payload, code = {"error": str(exc), "type": "family"}, 2
    except DomainError as exc:
        payload, code = {"error": str(exc), "type": "domain"}, 3
    except PrecisionNotReached as exc:
        payload, code = _partial_result_payload(exc), 4
    except ResourceLimit as exc:
        payload, code = {"error": str(exc), "type": "resource"}, 5
    except VerificationFailure as exc:
        payload = {"error": str(exc), "ok": False}
        if exc.counterexample is not None:
            payload["counterexample"] = repr(exc.counterexample)
        code = 1
    _emit(payload, fmt)
    return code


if __name__ == "__main__":
    sys.exit(main())
