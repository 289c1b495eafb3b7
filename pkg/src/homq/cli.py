"""``homq`` command line: hom, ising, iqp and regime subcommands.

Exit codes: 0 success, 2 outside the zero-free region, 3 unreadable or
invalid input (including bad arguments), 4 size guard or budget exceeded.
Errors are reported as ``{"error": {...}}`` on standard output.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Sequence

from . import io
from .errors import (
    HomqError,
    InstanceParseError,
    InstanceTooLargeError,
    OutsideZeroFreeRegionError,
)
from .graph import max_degree
from .hom import approx_hom_restricted, hom_restricted_exact
from .iqp import psi_statevector, psi_via_ising
from .ising import z_ising_approx, z_ising_exact
from .regimes import delta_Delta, polydisc_margin, polyregion_margin

EXIT_OK = 0
EXIT_REGION = 2
EXIT_INPUT = 3
EXIT_SIZE = 4
DEFAULT_EPSILON = 0.01


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _regime_dict(report) -> dict:
    return {"margin": report.margin, "threshold": report.threshold, "inside": report.inside}


def _result(value: complex, method: str, *, epsilon=None, order=None, regime=None,
            subset_count=None, guarantee=True, runtime_ms=None) -> dict:
    return {
        "value": [float(value.real), float(value.imag)],
        "method": method,
        "epsilon": epsilon,
        "order": order,
        "regime": regime,
        "guarantee": guarantee,
        "diagnostics": {"subset_count": subset_count, "runtime_ms": runtime_ms},
    }


def _epsilon(args) -> float:
    if args.exact and args.epsilon is not None:
        raise _UsageError("--exact and --epsilon are mutually exclusive")
    eps = DEFAULT_EPSILON if args.epsilon is None else args.epsilon
    if not 0.0 < eps < 1.0:
        raise _UsageError(f"--epsilon must lie in (0, 1), got {eps}")
    return eps


def cmd_hom(args) -> dict:
    _, inst = io.load_instance(args.instance, "hom")
    report = polydisc_margin(inst.matrices, delta_Delta(max(1, max_degree(inst.graph))))
    if args.exact:
        _epsilon(args)
        return _result(hom_restricted_exact(inst), "exact", regime=_regime_dict(report))
    res = approx_hom_restricted(inst, _epsilon(args), force=args.force)
    return _result(res.value, "interpolation", epsilon=res.epsilon, order=res.order,
                   regime=_regime_dict(report), subset_count=res.diagnostics.subset_count,
                   guarantee=res.guarantee)


def cmd_ising(args) -> dict:
    _, inst = io.load_instance(args.instance, "ising")
    report = polyregion_margin(inst)
    if args.exact:
        _epsilon(args)
        return _result(z_ising_exact(inst), "exact", regime=_regime_dict(report))
    res = z_ising_approx(inst, _epsilon(args), force=args.force)
    return _result(res.value, "interpolation", epsilon=res.epsilon, order=res.order,
                   regime=_regime_dict(report), subset_count=res.diagnostics.subset_count,
                   guarantee=res.guarantee)


def cmd_iqp(args) -> dict:
    _, gxp = io.load_instance(args.instance, "iqp")
    report = polyregion_margin(gxp.to_ising())
    if args.mode == "statevector":
        amp = psi_statevector(gxp)
    elif args.mode == "ising-exact":
        amp = psi_via_ising(gxp, "exact")
    else:
        eps = DEFAULT_EPSILON if args.epsilon is None else args.epsilon
        if not 0.0 < eps < 1.0:
            raise _UsageError(f"--epsilon must lie in (0, 1), got {eps}")
        amp = psi_via_ising(gxp, "approx", eps, force=args.force)
    value = complex(abs(amp.value) ** 2) if args.probability else amp.value
    out = _result(value, amp.method, epsilon=amp.epsilon, order=amp.order,
                  regime=_regime_dict(report), guarantee=amp.guarantee)
    out["quantity"] = "probability" if args.probability else "amplitude"
    return out


def cmd_regime(args) -> dict:
    if (args.delta_of is None) == (args.instance is None):
        raise _UsageError("give exactly one of --delta-of or an instance path")
    if args.delta_of is not None:
        if args.delta_of < 1:
            raise _UsageError("--delta-of needs a degree >= 1")
        return {"max_degree": args.delta_of, "delta": delta_Delta(args.delta_of)}
    kind, inst = io.load_instance(args.instance, args.kind)
    if kind == "hom":
        report = polydisc_margin(inst.matrices, delta_Delta(max(1, max_degree(inst.graph))))
    elif kind == "ising":
        report = polyregion_margin(inst)
    else:
        report = polyregion_margin(inst.to_ising())
    return {"kind": kind, "regime": report.as_dict()}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="homq", description="Zero-free interpolation for homomorphism, Ising and IQP instances.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, exact=True):
        p.add_argument("instance", help="instance JSON file")
        p.add_argument("--epsilon", type=float, default=None, help=f"target accuracy (default {DEFAULT_EPSILON})")
        if exact:
            p.add_argument("--exact", action="store_true", help="exhaustive sum instead of interpolation")
        p.add_argument("--force", action="store_true", help="interpolate even outside the certified region")
        p.add_argument("--output", type=Path, default=None, help="write the result here instead of stdout")
        p.add_argument("--timing", action="store_true", help="record runtime_ms (output no longer reproducible)")

    common(sub.add_parser("hom", help="restricted homomorphism partition function"))
    common(sub.add_parser("ising", help="Ising partition function"))
    iqp = sub.add_parser("iqp", help="all-zeros amplitude of a graph X-program")
    common(iqp, exact=False)
    iqp.add_argument("--mode", choices=["ising-exact", "ising-approx", "statevector"], default="ising-approx")
    iqp.add_argument("--probability", action="store_true", help="emit |psi|^2 instead of psi")
    reg = sub.add_parser("regime", help="zero-free radius or an instance's margin")
    reg.add_argument("instance", nargs="?", default=None)
    reg.add_argument("--delta-of", type=int, default=None, metavar="D")
    reg.add_argument("--kind", choices=list(io.KINDS), default=None)
    reg.add_argument("--output", type=Path, default=None)
    reg.add_argument("--timing", action="store_true")
    return parser


_COMMANDS = {"hom": cmd_hom, "ising": cmd_ising, "iqp": cmd_iqp, "regime": cmd_regime}


def _error(kind: str, message: str, **extra) -> dict:
    return {"error": {"type": kind, "message": message, **extra}}


def run(argv: Sequence[str] | None = None) -> tuple[int, str, Path | None]:
    """Execute one invocation; returns ``(exit_code, json_text, output_path)``.

    The output path is only set on success; errors always go to stdout.
    """
    output = None
    try:
        args = build_parser().parse_args(argv)
        start = time.perf_counter()
        body = _COMMANDS[args.command](args)
        if args.timing and "diagnostics" in body:
            body["diagnostics"]["runtime_ms"] = (time.perf_counter() - start) * 1e3
        code = EXIT_OK
        output = args.output
    except _UsageError as exc:
        body, code = _error("usage", str(exc)), EXIT_INPUT
    except OutsideZeroFreeRegionError as exc:
        regime = exc.report.as_dict() if exc.report is not None else None
        body, code = _error("outside_zero_free_region", str(exc), regime=regime), EXIT_REGION
    except InstanceParseError as exc:
        body, code = _error("parse", str(exc)), EXIT_INPUT
    except InstanceTooLargeError as exc:
        body, code = _error("too_large", str(exc)), EXIT_SIZE
    except HomqError as exc:
        body, code = _error("invalid", str(exc)), EXIT_INPUT
    return code, io.dumps(body) + "\n", output


def main(argv: Sequence[str] | None = None) -> int:
    code, text, output = run(argv)
    if output is not None:
        output.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
