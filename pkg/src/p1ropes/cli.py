"""Command-line front end emitting JSON certificates.

One request per invocation; responses are deterministic for a fixed
(request, seed) and byte-identical across runs.  Exit status 0 means a
verdict was computed (negative verdicts included), 2 means invalid input,
3 means an internal invariant was violated (which should never happen).

With --certify, independent oracles re-run before printing: the minor gcd
is recomputed pairwise in reverse order, the connecting-map residual is
re-evaluated, and Hilbert values are re-counted under a reversed monomial
ordering.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .embed import (
    EmbedCase,
    EmbedVerdict,
    decide,
    embed_rope,
    is_surjective,
    m_bound,
    n0_bound,
)
from .forms import BinaryForm, Q, gcd_forms, rat_from_str
from .ideal import chart_data, hilbert_verify, ideal_slice
from .rnc import TauHom, connecting_delta, ext1_conormal_dim, hom_dims
from .rope import (
    RopeClass,
    degeneration_chain,
    invariants,
    lift_class_to_family,
    smoothability_report,
    triple_cover_exists,
)
from .sheaf import InternalCheckError, cohom_dims, degeneration_family


class InputError(ValueError):
    """Invalid request parameters (exit status 2)."""


def _parse_rationals(text: str | None) -> list[Fraction]:
    if not text:
        return []
    return [rat_from_str(part.strip()) for part in text.split(",") if part.strip()]


def _rope_from_args(args) -> RopeClass:
    try:
        return RopeClass.make(
            args.a, args.b, _parse_rationals(args.zeta_a), _parse_rationals(args.zeta_b)
        )
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc


def _witness_for(rope: RopeClass, n_ambient: int, seed: int) -> EmbedVerdict:
    verdict = decide(rope, n_ambient, seed)
    if verdict.case is not EmbedCase.EMBEDDING_EXISTS:
        raise InputError(
            f"rope does not embed at N = {n_ambient} (case {verdict.case.value});"
            " no ideal to compute"
        )
    return verdict


# ---------------------------------------------------------------------------
# Command handlers: each returns (input-echo, result, certified-lines)
# ---------------------------------------------------------------------------

def _cmd_cohom(args):
    echo = {"d": args.d}
    out_h0, out_h1 = cohom_dims(args.d)
    certs = []
    if args.certify:
        if out_h0 - out_h1 != args.d + 1:
            raise InternalCheckError("Euler characteristic identity failed")
        certs.append("h0 - h1 = d + 1 re-checked")
    return echo, {"h0": out_h0, "h1": out_h1}, certs


def _cmd_dims(args):
    echo = {"a": args.a, "b": args.b, "N": args.N}
    try:
        dims = hom_dims(args.a, args.b, args.N)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    t6 = ext1_conormal_dim(args.a, args.b, args.N)
    result = {
        "hom_cotangent_curve": dims[0],
        "hom_cotangent_ambient": dims[1],
        "hom_conormal": dims[2],
        "ext1_cotangent_curve": dims[3],
        "ext1_cotangent_ambient": dims[4],
        "ext1_conormal": t6,
        "N0": n0_bound(args.a, args.b),
        "M": m_bound(args.a, args.b, args.N) if args.N >= n0_bound(args.a, args.b) else None,
    }
    certs = []
    if args.certify:
        if dims[0] - dims[1] + dims[2] - dims[3] + dims[4] - t6 != 0:
            raise InternalCheckError("alternating dimension sum is nonzero")
        certs.append("six-term alternating dimension sum re-checked")
    return echo, result, certs


def _cmd_classify(args):
    rope = _rope_from_args(args)
    genus, maroni, balanced = invariants(rope.a, rope.b)
    echo = rope.to_json()
    result = {
        "rope": rope.to_json(),
        "genus": genus,
        "maroni": maroni,
        "balanced": balanced,
        "split": rope.is_split,
        "class_space_dim": rope.class_space_dim,
        "triple_cover_exists": triple_cover_exists(rope.a, rope.b),
    }
    return echo, result, []


def _cmd_embed(args):
    rope = _rope_from_args(args)
    echo = {**rope.to_json(), "N": args.N, "seed": args.seed}
    try:
        verdict = embed_rope(rope, args.N, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return echo, verdict.to_json(), _certify_verdict(args, rope, verdict)


def _cmd_decide(args):
    rope = _rope_from_args(args)
    echo = {**rope.to_json(), "N": args.N, "seed": args.seed}
    try:
        verdict = decide(rope, args.N, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return echo, verdict.to_json(), _certify_verdict(args, rope, verdict)


def _certify_verdict(args, rope: RopeClass, verdict: EmbedVerdict) -> list[str]:
    if not args.certify or verdict.witness is None:
        return []
    tau = verdict.witness
    minors = [m for m in tau.minors() if not m.is_zero]
    regcd = BinaryForm.zero()
    for m in reversed(minors):
        regcd = gcd_forms([regcd, m]) if not regcd.is_zero else gcd_forms([m])
        if regcd.degree == 0:
            break
    if regcd.degree != 0:
        raise InternalCheckError("pairwise gcd re-check disagrees with the certificate")
    za, zb = connecting_delta(tau)
    if za != rope.zeta_a or zb != rope.zeta_b:
        raise InternalCheckError("connecting-map residual re-check failed")
    return ["minor gcd re-checked pairwise in reverse order", "delta residual re-checked: 0"]


def _cmd_check_tau(args):
    if args.tau_file == "-":
        raw = sys.stdin.read()
    else:
        with open(args.tau_file, "r", encoding="utf-8") as fh:
            raw = fh.read()
    try:
        tau = TauHom.from_json(json.loads(raw))
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad tau payload: {exc}") from exc
    cert = is_surjective(tau)
    za, zb = connecting_delta(tau)
    echo = {"tau": tau.to_json()}
    result = {
        "surjective": cert.to_json(),
        "delta": {"zeta_a": za.to_json(), "zeta_b": zb.to_json()},
    }
    return echo, result, []


def _cmd_ideal(args):
    rope = _rope_from_args(args)
    echo = {**rope.to_json(), "N": args.N, "d": args.d, "seed": args.seed}
    verdict = _witness_for(rope, args.N, args.seed)
    charts = chart_data(verdict.witness)
    try:
        slice_ = ideal_slice(charts, args.d, with_basis=not args.no_basis)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    result = {"slice": slice_.to_json(), "witness": verdict.witness.to_json()}
    certs = []
    if args.certify:
        recount = ideal_slice(charts, args.d, with_basis=False, reverse_order=True)
        if recount.hf != slice_.hf:
            raise InternalCheckError("reversed-order Hilbert re-count disagrees")
        certs.append("hf re-counted under reversed monomial order")
    return echo, result, certs


def _cmd_hilbert(args):
    rope = _rope_from_args(args)
    echo = {**rope.to_json(), "N": args.N, "d_max": args.d_max, "seed": args.seed}
    verdict = _witness_for(rope, args.N, args.seed)
    charts = chart_data(verdict.witness)
    try:
        report = hilbert_verify(charts, args.d_max, tau=verdict.witness)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    certs = []
    if args.certify:
        from .ideal import hilbert_function

        for d in range(1, min(3, args.d_max) + 1):
            if hilbert_function(charts, d, reverse_order=True) != report.hf[d - 1]:
                raise InternalCheckError("reversed-order Hilbert re-count disagrees")
        certs.append("low-degree hf re-counted under reversed monomial order")
    return echo, {"hilbert": report.to_json(), "witness": verdict.witness.to_json()}, certs


def _cmd_degenerate(args):
    echo = {"a": args.a, "b": args.b, "samples": args.samples}
    samples = _parse_rationals(args.samples) or [Q(1)]
    try:
        family = degeneration_family(args.a, args.b)
        chain = degeneration_chain(args.a, args.b)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    cert = family.certify(samples)
    result = {"family": cert, "chain": [list(p) for p in chain]}
    if args.zeta_a or args.zeta_b:
        rope = _rope_from_args(args)
        cocycle = lift_class_to_family(rope)
        result["lifted_cocycle"] = cocycle.to_json()
    return echo, result, []


def _cmd_smoothability(args):
    if args.grid:
        reports = []
        for a in range(1, args.grid + 1):
            for b in range(1, a + 1):
                reports.append(smoothability_report(RopeClass.split(a, b)).to_json() | {"a": a, "b": b})
        return {"grid": args.grid}, reports, []
    rope = _rope_from_args(args)
    report = smoothability_report(rope)
    return rope.to_json(), report.to_json(), []


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def _add_conormal_args(sub, with_zeta: bool = True):
    sub.add_argument("--a", type=int, required=True)
    sub.add_argument("--b", type=int, required=True)
    if with_zeta:
        sub.add_argument("--zeta-a", default="", help="comma-separated rationals, coefficients of x^-1, x^-2, ...")
        sub.add_argument("--zeta-b", default="")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="p1ropes",
        description="Exact computations with multiplicity-3 ropes on the projective line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohom", help="h0/h1 of O(d)")
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("dims", help="Hom/Ext dimension table at (a, b, N)")
    _add_conormal_args(p, with_zeta=False)
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("classify", help="invariants and splitness of a rope class")
    _add_conormal_args(p)

    p = sub.add_parser("embed", help="certified embedding at N >= max(4, a-1)")
    _add_conormal_args(p)
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("check-tau", help="surjectivity and connecting image of a stored witness")
    p.add_argument("--tau-file", required=True, help="path to a witness JSON, or - for stdin")

    p = sub.add_parser("decide", help="full embedding decision at any N >= 3")
    _add_conormal_args(p)
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("ideal", help="degree slice of the embedded rope ideal")
    _add_conormal_args(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--no-basis", action="store_true", help="report only the Hilbert value")

    p = sub.add_parser("hilbert", help="Hilbert function table and eventual line")
    _add_conormal_args(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d-max", type=int, default=6)

    p = sub.add_parser("degenerate", help="certified degeneration family and chain")
    _add_conormal_args(p)
    p.add_argument("--samples", default="", help="nonzero parameter values to certify, default 1")

    p = sub.add_parser("smoothability", help="smoothability report")
    _add_conormal_args(p)
    p.add_argument("--grid", type=int, default=0, help="sweep all 1 <= b <= a <= GRID instead")

    for name, sp in sub.choices.items():
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--certify", action="store_true")
        sp.add_argument("--pretty", action="store_true")
    return parser


_HANDLERS = {
    "cohom": _cmd_cohom,
    "dims": _cmd_dims,
    "classify": _cmd_classify,
    "embed": _cmd_embed,
    "check-tau": _cmd_check_tau,
    "decide": _cmd_decide,
    "ideal": _cmd_ideal,
    "hilbert": _cmd_hilbert,
    "degenerate": _cmd_degenerate,
    "smoothability": _cmd_smoothability,
}


def _dump(payload: dict, pretty: bool) -> str:
    if pretty:
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def run(argv: Sequence[str]) -> tuple[str, int]:
    """Execute one request; returns (response text, exit status)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    pretty = bool(getattr(args, "pretty", False))
    try:
        echo, result, certs = _HANDLERS[args.command](args)
    except InputError as exc:
        payload = {"command": args.command, "status": "invalid-input", "error": str(exc)}
        return _dump(payload, pretty), 2
    except (InternalCheckError, AssertionError) as exc:
        payload = {"command": args.command, "status": "internal-error", "error": str(exc)}
        return _dump(payload, pretty), 3
    payload = {"command": args.command, "status": "ok", "input": echo, "result": result}
    if certs:
        payload["certified"] = certs
    return _dump(payload, pretty), 0


def main(argv: Sequence[str] | None = None) -> int:
    text, status = run(sys.argv[1:] if argv is None else list(argv))
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
