"""Command-line front end.

Channel spec files are JSON, either raw matrices (row-major)::

    {"K": [[2, 0], [0, 2]], "alpha": [[4.5, 0], [0, 4.5]], "m": [0, 0]}

or a canonical block::

    {"canonical": {"class": "C", "kappa": 2, "N0": 1}}

Exit codes: 0 ok, 2 parse error, 3 invalid channel, 4 verification
failure, 5 unsupported operation (e.g. dilating class B2).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .canonical import (
    CanonicalForm,
    ChannelClass,
    InconsistentInvariants,
    InvalidParameters,
    class_compose,
    classify,
    invariants,
    to_channel,
)
from .capacity import region_scan, write_csv
from .core import ChannelError, GaussianChannel, apply, compose, max_deviation, random_state
from .degradability import analyze
from .dilation import NoSingleModeDilation, build_dilation, joint_evolve, weak_complement

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_VERIFY = 4
EXIT_UNSUPPORTED = 5

VERIFY_TOL = 1e-9


class SpecError(ValueError):
    pass


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _round(x):
    if isinstance(x, float):
        return float(f"{x:.12g}") if math.isfinite(x) else x
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    if isinstance(x, np.ndarray):
        return _round(x.tolist())
    return x


def _g(x: float) -> str:
    return f"{x:.12g}"


def _mat(a) -> str:
    return "[" + ", ".join("[" + ", ".join(_g(v) for v in row) + "]" for row in np.asarray(a)) + "]"


def _vec(v) -> str:
    return "[" + ", ".join(_g(x) for x in v) + "]"


def parse_spec(data) -> GaussianChannel:
    """Turn a decoded JSON spec into a channel.

    Raises ``SpecError`` for malformed input and the channel/parameter
    errors for data that parses but is not a physical channel.
    """
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    has_raw = "K" in data or "alpha" in data
    has_can = "canonical" in data
    if has_raw == has_can:
        raise SpecError("spec needs exactly one of raw matrices (K, alpha) or a canonical block")
    if has_can:
        block = data["canonical"]
        if not isinstance(block, dict) or "class" not in block:
            raise SpecError("canonical block needs a 'class' entry")
        try:
            cls = ChannelClass(block["class"])
        except ValueError:
            raise SpecError(f"unknown class {block['class']!r}") from None
        unknown = set(block) - {"class", "kappa", "N0"}
        if unknown:
            raise SpecError(f"unknown canonical keys {sorted(unknown)}")
        return to_channel(CanonicalForm(cls, block.get("kappa"), block.get("N0")))
    if "K" not in data or "alpha" not in data:
        raise SpecError("raw spec needs both K and alpha")
    try:
        K = np.array(data["K"], dtype=float)
        alpha = np.array(data["alpha"], dtype=float)
        m = np.array(data.get("m", [0.0, 0.0]), dtype=float)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"non-numeric matrix entries: {exc}") from None
    if K.shape != (2, 2) or alpha.shape != (2, 2) or m.shape != (2,):
        raise SpecError("K and alpha must be 2x2 and m a 2-vector")
    return GaussianChannel(K, alpha, m)


def load_spec(path: str) -> GaussianChannel:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliFailure(EXIT_PARSE, f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliFailure(EXIT_PARSE, f"{path}: invalid JSON: {exc}") from None
    try:
        return parse_spec(data)
    except SpecError as exc:
        raise CliFailure(EXIT_PARSE, f"{path}: {exc}") from None
    except (ChannelError, InvalidParameters) as exc:
        raise CliFailure(EXIT_INVALID, f"{path}: invalid channel: {exc}") from None


def _classify(ch: GaussianChannel) -> CanonicalForm:
    try:
        return classify(ch)
    except (InconsistentInvariants, InvalidParameters) as exc:
        raise CliFailure(EXIT_INVALID, f"invalid channel: {exc}") from None


def _channel_dict(ch: GaussianChannel) -> dict:
    return {"K": ch.K.tolist(), "alpha": ch.alpha.tolist(), "m": ch.m.tolist()}


def _class_line(cf: CanonicalForm) -> str:
    line = str(cf)
    if cf.cls is ChannelClass.B2 and cf.N0 == 0:
        line += " (identity)"
    return line


def _channel_lines(ch: GaussianChannel) -> list[str]:
    return [f"K = {_mat(ch.K)}", f"alpha = {_mat(ch.alpha)}", f"m = {_vec(ch.m)}"]


def _dilation_or_fail(cf: CanonicalForm):
    try:
        return build_dilation(cf)
    except NoSingleModeDilation as exc:
        raise CliFailure(EXIT_UNSUPPORTED, f"unsupported: {exc}") from None


def cmd_classify(args) -> tuple[list[str], dict]:
    ch = load_spec(args.spec)
    cf = _classify(ch)
    inv = invariants(ch)
    lines = [
        _class_line(cf),
        f"det K = {_g(inv.detK)}, rank K = {inv.rankK}, "
        f"det alpha = {_g(inv.detAlpha)}, rank alpha = {inv.rankAlpha}",
        f"near boundary: {'yes' if cf.near_boundary else 'no'}",
    ]
    if cf.n_c is not None:
        lines.append(f"rank-one noise weight N_c = {_g(cf.n_c)}")
    payload = {
        "canonical": cf.to_dict(),
        "invariants": {
            "detK": inv.detK,
            "rankK": inv.rankK,
            "detAlpha": inv.detAlpha,
            "rankAlpha": inv.rankAlpha,
        },
        "near_boundary": cf.near_boundary,
        "n_c": cf.n_c,
    }
    return lines, payload


def cmd_compose(args) -> tuple[list[str], dict]:
    first = load_spec(args.first)
    second = load_spec(args.second)
    c1, c2 = _classify(first), _classify(second)
    out = compose(first, second)
    cf = _classify(out)
    predicted = sorted(c.value for c in class_compose(c1.cls, c2.cls))
    lines = _channel_lines(out) + [
        _class_line(cf),
        f"factors: first {c1.cls}, second {c2.cls}; table predicts {{{', '.join(predicted)}}}",
    ]
    payload = {
        "channel": _channel_dict(out),
        "canonical": cf.to_dict(),
        "factors": [c1.cls.value, c2.cls.value],
        "predicted_classes": predicted,
    }
    return lines, payload


def cmd_complement(args) -> tuple[list[str], dict]:
    cf = _classify(load_spec(args.spec))
    _dilation_or_fail(cf)
    comp = weak_complement(cf)
    ccf = _classify(comp)
    lines = [f"input: {_class_line(cf)}", "weak complement:"] + _channel_lines(comp)
    lines.append(f"complement: {_class_line(ccf)}")
    if ccf.n_c is not None:
        lines.append(f"rank-one noise weight N_c = {_g(ccf.n_c)}")
    payload = {
        "input": cf.to_dict(),
        "complement": _channel_dict(comp),
        "complement_canonical": ccf.to_dict(),
        "n_c": ccf.n_c,
    }
    return lines, payload


def cmd_dilation(args) -> tuple[list[str], dict]:
    cf = _classify(load_spec(args.spec))
    dil = _dilation_or_fail(cf)
    lines = [f"input: {_class_line(cf)}", "M ="]
    lines += ["  " + _vec(row) for row in dil.M]
    lines += [
        f"environment N = {_g(dil.N)} ({'pure' if dil.env_pure else 'thermal'})",
        f"|M^T J M - J| = {_g(dil.symplectic_residual())}",
        f"|det m11 + det m12 - 1| = {_g(dil.det_condition_residual())}",
    ]
    payload = {
        "input": cf.to_dict(),
        "M": dil.M.tolist(),
        "N": dil.N,
        "env_pure": dil.env_pure,
        "symplectic_residual": dil.symplectic_residual(),
        "det_condition_residual": dil.det_condition_residual(),
    }
    return lines, payload


def cmd_degradability(args) -> tuple[list[str], dict]:
    cf = _classify(load_spec(args.spec))
    rep = analyze(cf)
    yn = {True: "yes", False: "no"}
    lines = [
        f"input: {_class_line(cf)}",
        f"anti-degradable: {yn[rep.anti_degradable]}",
        f"weakly degradable: {yn[rep.weakly_degradable]}",
        f"degradable: {yn[rep.degradable]}",
        f"direction: {rep.direction}",
        f"null capacity by anti-degradability: {yn[rep.null_capacity_by_antidegradability]}",
    ]
    if rep.connecting_channel is not None:
        lines.append("connecting channel:")
        lines += ["  " + s for s in _channel_lines(rep.connecting_channel)]
        lines.append(f"verification residual = {_g(rep.verification_residual)}")
    else:
        lines.append("connecting channel: none")
    if rep.degenerate:
        lines.append("degenerate: identity channel")
    if rep.near_boundary:
        lines.append("near boundary: yes")
    return lines, rep.to_dict()


def cmd_verify(args) -> tuple[list[str], dict]:
    ch = load_spec(args.spec)
    cf = _classify(ch)
    dil = _dilation_or_fail(cf)
    rep = analyze(cf)
    phi = to_channel(cf)
    comp = weak_complement(cf)
    rng = np.random.default_rng(args.seed)
    worst_a = worst_b = 0.0
    for _ in range(args.states):
        s = random_state(rng)
        out_a, out_b = joint_evolve(dil, s)
        ref_a, ref_b = apply(phi, s), apply(comp, s)
        worst_a = max(worst_a, float(np.max(np.abs(out_a.gamma - ref_a.gamma))),
                      float(np.max(np.abs(out_a.mean - ref_a.mean))))
        worst_b = max(worst_b, float(np.max(np.abs(out_b.gamma - ref_b.gamma))),
                      float(np.max(np.abs(out_b.mean - ref_b.mean))))
    reconstruction = max_deviation(dil.channel(), phi)
    checks = {
        "connecting_identity": rep.verification_residual,
        "symplectic": dil.symplectic_residual(),
        "det_condition": dil.det_condition_residual(),
        "dilation_reconstruction": reconstruction,
        "oracle_system": worst_a,
        "oracle_environment": worst_b,
    }
    ok = all(v < VERIFY_TOL for v in checks.values())
    lines = [f"input: {_class_line(cf)}"]
    lines += [f"{k}: {_g(v)} {'ok' if v < VERIFY_TOL else 'FAIL'}" for k, v in checks.items()]
    lines.append("verified" if ok else "verification FAILED")
    payload = {"input": cf.to_dict(), "residuals": checks, "tolerance": VERIFY_TOL, "ok": ok}
    if not ok:
        raise _VerifyFailed(lines, payload)
    return lines, payload


class _VerifyFailed(Exception):
    def __init__(self, lines, payload):
        self.lines, self.payload = lines, payload


def cmd_region_scan(args) -> int:
    if args.kappa_min <= 0 or args.kappa_max <= args.kappa_min or args.steps < 2:
        raise CliFailure(EXIT_PARSE, "need 0 < kappa-min < kappa-max and steps >= 2")
    rows = region_scan((args.kappa_min, args.kappa_max), (args.n0_min, args.n0_max), args.steps)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gck", description="One-mode bosonic Gaussian channel toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, specs=("spec",)):
        sp = sub.add_parser(name, help=help_)
        for s in specs:
            sp.add_argument(s, help="channel spec (JSON)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    add("classify", cmd_classify, "canonical class and parameters")
    add("compose", cmd_compose, "compose two channels (second after first)", ("first", "second"))
    add("complement", cmd_complement, "weakly complementary channel")
    add("dilation", cmd_dilation, "single-mode symplectic dilation")
    add("degradability", cmd_degradability, "weak-/anti-degradability report")
    v = add("verify", cmd_verify, "check all identities and the covariance oracle")
    v.add_argument("--states", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("region-scan", help="null-capacity verdicts on a (kappa, N0) grid as CSV")
    r.add_argument("--kappa-min", type=float, default=0.05)
    r.add_argument("--kappa-max", type=float, default=math.sqrt(3))
    r.add_argument("--n0-min", type=float, default=0.0)
    r.add_argument("--n0-max", type=float, default=3.0)
    r.add_argument("--steps", type=int, default=61)
    r.add_argument("--out", default=None, help="output CSV path (default stdout)")
    r.set_defaults(func=cmd_region_scan)
    return p


def _emit(lines, payload, as_json: bool) -> None:
    if as_json:
        print(json.dumps(_round(payload), indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        if args.command == "region-scan":
            return args.func(args)
        lines, payload = args.func(args)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except _VerifyFailed as exc:
        _emit(exc.lines, exc.payload, args.json)
        return EXIT_VERIFY
    _emit(lines, payload, args.json)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
