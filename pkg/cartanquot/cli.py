"""Command line harness: ``cartanquot <subcommand> [options]``.

Every subcommand prints a report carrying the echo of its run configuration
and, when it verifies something, a list of checks with residual and
tolerance. Exit codes are 0 when every check passes, 1 on usage errors and
malformed input, 2 when a verification fails.

Points, matrices and descriptors are passed as json. Complex numbers are
``[re, im]`` pairs, a matrix is a list of rows, ``-`` reads the value from
standard input. Domains and maps may also be given by bare tag together
with ``--n``, ``--m``, ``--r``, ``--omega re,im`` and ``--source``.
Configuration values can come from ``--config FILE`` (section ``[run]``) or
from the ``CARTANQUOT_SEED``, ``CARTANQUOT_TOL``, ``CARTANQUOT_SAMPLES``,
``CARTANQUOT_FORMAT`` and ``CARTANQUOT_JOBS`` environment variables.
"""

# Copyright 2023 cartanquot developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from typing import Any, Callable, Dict, List, Optional, Sequence
import argparse
import csv
import io
import logging
import sys

import numpy as np
import simplejson

from . import __version__, automorphisms, bergman, biholomorphisms, domains, proper_maps, reflections, verify
from ._util import array_from_json, complex_to_json, dumps, loads, to_jsonable
from .exceptions import (CartanQuotException, ConfigurationException, FiberNotPreservedException,
                         InconsistentMultiplicityException)
from .helper import Log
from .run_config import OUTPUT_FORMATS, RunConfig

__all__ = ['EXIT_OK', 'EXIT_USAGE', 'EXIT_FAILED', 'Report', 'render', 'run_subcommand', 'main']

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2

# constructor parameters accepted by each domain tag
_DOMAIN_PARAMS = {
    "Polydisc": ("n",), "EuclideanBall": ("n",), "Annulus": ("r",), "CartanI": ("m", "n"),
    "CartanII": ("n",), "CartanIII": ("n",), "LieBall": ("n",), "QuotientL": ("n",), "Ellipsoid": ("n",),
}


class Report(object):
    """Report of one subcommand: values, checks and optional csv rows."""

    def __init__(self, command: str, config: RunConfig):
        self.command = command
        self.config = config
        self.values: Dict[str, Any] = {}
        self.checks: List[Dict[str, Any]] = []
        self.rows: List[Dict[str, Any]] = []

    def check(self, name: str, residual: float, tolerance: float, passed: Optional[bool] = None):
        """Record a check, passing when ``residual <= tolerance`` unless ``passed`` says otherwise."""
        residual = float(residual)
        if passed is None:
            passed = residual <= tolerance
        self.checks.append({"name": name, "passed": bool(passed), "residual": residual,
                            "tolerance": float(tolerance)})

    @property
    def passed(self) -> bool:
        return all(check["passed"] for check in self.checks)

    def to_json(self) -> Dict[str, Any]:
        json = dict(self.values)
        json.update({"command": self.command, "config": self.config.to_json(), "checks": self.checks,
                     "passed": self.passed})
        return json


def _cell(value: Any) -> str:
    value = to_jsonable(value)
    if isinstance(value, (list, dict)):
        return simplejson.dumps(value, sort_keys=True, separators=(",", ":"))
    if isinstance(value, bool):
        return "true" if value else "false"
    return "" if value is None else str(value)


def render(report: Report, output_format: str) -> str:
    """Deterministic text of a report in json, csv or text form."""
    if output_format == "json":
        return dumps(report) + "\n"
    if output_format == "csv":
        rows = report.rows or report.checks or [{key: value for key, value in report.to_json().items()
                                                 if key not in ("checks", "config")}]
        fieldnames = sorted(set().union(*(row.keys() for row in rows)))
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(row.get(key)) for key in fieldnames})
        return buffer.getvalue()
    lines = ["command: {}".format(report.command), "config: {}".format(_cell(report.config.to_json()))]
    for key in sorted(report.values):
        lines.append("{}: {}".format(key, _cell(report.values[key])))
    for check in report.checks:
        lines.append("{} {}: residual {} tolerance {}".format("PASS" if check["passed"] else "FAIL", check["name"],
                                                             check["residual"], check["tolerance"]))
    lines.append("passed: {}".format(_cell(report.passed)))
    return "\n".join(lines) + "\n"


def _json_text(text: str) -> Any:
    if text == "-":
        text = sys.stdin.read()
    return loads(text)


def _array(text: str) -> np.ndarray:
    return array_from_json(_json_text(text))


def _omega(text: Optional[str]) -> complex:
    if text is None:
        return 1 + 0j
    try:
        parts = [float(part) for part in text.split(",")]
    except ValueError as error:
        raise ConfigurationException("--omega expects re,im, got {!r}".format(text)) from error
    if len(parts) == 1:
        return complex(parts[0])
    if len(parts) != 2:
        raise ConfigurationException("--omega expects re,im, got {!r}".format(text))
    return complex(parts[0], parts[1])


def _domain(args: argparse.Namespace) -> domains.DomainId:
    text = args.domain
    if text.lstrip().startswith("{"):
        return domains.DomainId.from_json(_json_text(text))
    params = {}
    for key in _DOMAIN_PARAMS.get(text, ()):
        value = getattr(args, key, None)
        if value is None:
            raise ConfigurationException("domain {} needs --{}".format(text, key))
        params[key] = value
    return domains.DomainId.from_json({"tag": text, "params": params})


def _map(args: argparse.Namespace) -> proper_maps.MapId:
    text = args.map
    if text.lstrip().startswith("{"):
        return proper_maps.MapId.from_json(_json_text(text))
    json: Dict[str, Any] = {"tag": text, "omega": complex_to_json(_omega(args.omega))}
    for key in ("n", "r", "source"):
        if getattr(args, key, None) is not None:
            json[key] = getattr(args, key)
    return proper_maps.MapId.from_json(json)


def _as_list(verdicts) -> list:
    return verdicts if isinstance(verdicts, list) else [verdicts]


# subcommands

def _member(args, config: RunConfig) -> Report:
    report = Report("member", config)
    points = _array(args.point)
    if args.form == "eq1":
        verdicts = domains.lie_ball_contains_eq1(points, config.tol)
        report.values["domain"] = {"tag": "LieBall", "params": {"n": int(points.shape[-1])}}
    elif args.form == "intrinsic":
        verdicts = domains.quotient_contains_intrinsic(points, config.tol)
        report.values["domain"] = {"tag": "QuotientL", "params": {"n": int(points.shape[-1])}}
    elif args.form == "2x2":
        verdicts = domains.cartan1_contains_2x2(points, config.tol)
        report.values["domain"] = {"tag": "CartanI", "params": {"m": 2, "n": 2}}
    else:
        domain = _domain(args)
        verdicts = domains.contains(domain, points, config.tol)
        report.values["domain"] = domain
    verdicts = _as_list(verdicts)
    report.values["verdicts"] = verdicts
    report.rows = [{"index": index, "state": verdict.state.value, "margin": verdict.margin}
                   for index, verdict in enumerate(verdicts)]
    return report


def _eval_map(args, config: RunConfig) -> Report:
    report = Report("eval-map", config)
    m = _map(args)
    points = _array(args.point)
    image = proper_maps.eval_map(m, points, check=args.check)
    report.values.update({"map": m, "point": points, "image": image})
    if args.jacobian:
        report.values["jacobian"] = proper_maps.jacobian_matrix(m, points)
        if m.source_dim == m.target_dim:
            report.values["jacobianDet"] = proper_maps.jacobian_det(m, points)
        numeric = proper_maps.finite_difference_jacobian(m, points)
        exact = proper_maps.jacobian_matrix(m, points)
        report.check("jacobian_finite_difference", np.max(np.abs(numeric - exact)), 1e-5)
    return report


def _fiber(args, config: RunConfig) -> Report:
    report = Report("fiber", config)
    m = _map(args)
    target = _array(args.target)
    result = proper_maps.fiber(m, target)
    report.values.update({"map": m, "target": target, "fiber": result})
    report.rows = [{"index": index, "preimage": point} for index, point in enumerate(result.preimages)]
    if result.preimages:
        images = m._eval(np.asarray(result.preimages))
        report.check("fiber_consistency", np.max(np.abs(images - target[np.newaxis, :])), 1e-10)
    return report


def _kernel(args, config: RunConfig) -> Report:
    report = Report("kernel", config)
    n = args.n
    rng = config.rng("kernel")
    domain = domains.LieBall(n) if args.kind == "lie" else domains.QuotientL(n)

    def point(text: str) -> np.ndarray:
        if text == "0":
            return np.zeros(n, dtype=complex)
        if text == "random":
            return domain.sample(1, rng)[0]
        return _array(text)

    p, q = point(args.p), point(args.q)
    if args.kind == "lie":
        value = bergman.k_lie(p, q, n)
    else:
        kernel = bergman.k_quotient_closed(p, q, n)
        value = kernel.value
        report.values.update({"Xn": kernel.xn, "Asq": kernel.asq})
    report.values.update({"n": n, "kind": args.kind, "inputs": {"p": p, "q": q}, "value": value,
                          "marginP": domain.margin(p), "marginQ": domain.margin(q)})
    if args.p == "0":
        expected = 1.0 if args.kind == "lie" else float(n)
        report.check("first_slot_constancy", abs(value - expected), 1e-10)
    return report


def _lqk_zero(args, config: RunConfig) -> Report:
    report = Report("lqk-zero", config)
    witness = bergman.lqk_witness(args.n, args.r)
    report.values["witness"] = witness
    report.values["n"] = args.n
    report.check("witness_zero", witness.relative_value, 1e-9)
    return report


def _lqk_scan(args, config: RunConfig) -> Report:
    report = Report("lqk-scan", config)
    samples = config.samples_or(10 ** 5, 10 ** 3)
    center = None
    if args.near_witness:
        witness = bergman.lqk_witness(args.n, args.r)
        lam = proper_maps.LambdaN(args.n)
        center = (lam._eval(witness.zhat[np.newaxis, :])[0], lam._eval(witness.what[np.newaxis, :])[0])
    minimum, (p, q) = bergman.lqk_scan(args.n, samples, config.seed_for("lqk-scan"), center, args.radius)
    report.values.update({"n": args.n, "samples": samples, "minAbs": minimum, "argmin": {"p": p, "q": q},
                          "nearWitness": args.near_witness})
    if args.near_witness:
        report.check("small_value_near_witness", minimum, 1e-6)
    elif args.n == 2:
        report.check("no_small_value", minimum, 1e-6, passed=minimum > 1e-6)
    return report


def _verify_suite(args, config: RunConfig) -> Report:
    report = Report("verify-suite", config)
    if args.list:
        report.values["manifest"] = verify.manifest()
        report.rows = verify.manifest()
        return report
    suite = verify.run_suite(config, args.only, include_slow=args.all, live_progress=args.output is None)
    for result in suite.results:
        report.checks.append(result.to_json())
    report.rows = [{key: value for key, value in check.items() if key != "details"} for check in report.checks]
    return report


def _volume(args, config: RunConfig) -> Report:
    report = Report("volume", config)
    samples = config.samples_or(10 ** 6, 10 ** 4)
    seed = config.seed_for("volume")
    if args.domain is not None:
        domain = _domain(args)
        estimate, stderr = domains.mc_volume(domain, samples, seed)
        report.values.update({"domain": domain, "samples": samples, "volume": estimate, "stderr": stderr})
        return report
    residual, stderr = bergman.volume_identity_estimate(args.n, samples, seed)
    report.values.update({"n": args.n, "samples": samples, "residual": residual, "stderr": stderr})
    report.check("volume_identity", residual, 3 * stderr)
    return report


def _shilov_sample(args, config: RunConfig) -> Report:
    report = Report("shilov-sample", config)
    domain = _domain(args)
    count = config.samples_or(10)
    points = domains.shilov_sample(domain, count, config.seed_for("shilov-sample"))
    report.values.update({"domain": domain, "points": points})
    report.rows = [{"index": index, "point": point} for index, point in enumerate(points)]
    if args.polynomials:
        ratio = verify.shilov_ratio(domain, args.polynomials, max(count, 10 ** 4), config.rng("shilov-check"))
        report.values["ratio"] = ratio
        report.check("maximum_principle", max(0.0, 1 - ratio), 1e-2)
    return report


def _aut_apply(args, config: RunConfig) -> Report:
    report = Report("aut-apply", config)
    aut = automorphisms.LieLinearAut.from_json(_json_text(args.aut))
    points = _array(args.point)
    if args.quotient:
        domain = domains.QuotientL(aut.n + 1)
        image, residual = automorphisms.induced_quotient_aut(automorphisms.extend_linear(aut), points)
        report.values["branchResidual"] = residual
        report.check("well_defined", np.max(residual), 1e-12)
    else:
        domain = domains.LieBall(aut.n)
        image = aut(points)
    source, target = domain.margin(points), domain.margin(image)
    report.values.update({"automorphism": aut, "domain": domain, "point": points, "image": image,
                          "sourceMargin": source, "targetMargin": target})
    disagreements = int(np.count_nonzero((np.atleast_1d(source) > 0) != (np.atleast_1d(target) > 0)))
    report.check("membership_preserved", disagreements, 0)
    return report


def _deck_on_domain(m: proper_maps.MapId) -> Callable:
    def involution(arr):
        return m.to_source_domain(m._deck(m.from_source_domain(np.asarray(arr, dtype=complex))))
    return involution


def _fix_scan(args, config: RunConfig) -> Report:
    report = Report("fix-scan", config)
    samples = config.samples_or(10 ** 3)
    if args.aut is not None:
        aut = automorphisms.LieLinearAut.from_json(_json_text(args.aut))
        if args.quotient:
            function = automorphisms.induced_quotient_map(automorphisms.extend_linear(aut))
            domain = domains.QuotientL(aut.n + 1)
        else:
            function, domain = aut, domains.LieBall(aut.n)
        report.values["automorphism"] = aut
    elif args.map is not None:
        m = _map(args)
        function, domain = _deck_on_domain(m), m.source_domain()
        report.values["map"] = m
    else:
        raise ConfigurationException("fix-scan needs --map or --aut")
    fixed = automorphisms.fix_points_sample(function, domain, samples, config.seed_for("fix-scan"))
    report.values.update({"domain": domain, "samples": samples, "count": int(fixed.shape[0]), "points": fixed})
    report.rows = [{"index": index, "point": point} for index, point in enumerate(fixed)]
    if fixed.shape[0]:
        moved = np.asarray(function(fixed))
        report.check("fixed", np.max(np.abs(moved - fixed)), 1e-8)
    return report


def _bih_eval(args, config: RunConfig) -> Report:
    report = Report("bih-eval", config)
    bih = biholomorphisms.BihId(args.bih, args.inverse)
    points = _array(args.point)
    image = biholomorphisms.bih_eval(bih, points)
    source, target = biholomorphisms.transported_margins(bih, points)
    report.values.update({"biholomorphism": bih, "point": points, "image": image,
                          "sourceMargin": source, "targetMargin": target})
    report.check("membership_transport", int(np.count_nonzero((source > 0) != (target > 0))), 0)
    back = biholomorphisms.bih_inverse(bih, image)
    report.check("round_trip", np.max(np.abs(np.asarray(back) - points)), 1e-12)
    return report


def _reflection(args, config: RunConfig) -> Report:
    report = Report("reflection", config)
    matrix = _array(args.matrix)
    is_reflection = reflections.is_reflection(matrix, args.rtol)
    report.values.update({"matrix": matrix, "isReflection": is_reflection})
    report.check("is_reflection", 0.0 if is_reflection else 1.0, 0.0)
    if not is_reflection:
        return report
    axis, normal = reflections.reflection_data(matrix, args.rtol)
    frame = reflections.frame_for_reflection(matrix, args.rtol)
    report.values.update({"axis": axis, "normal": normal, "frame": frame,
                          "fixedHyperplane": reflections.fixed_hyperplane_basis(matrix)})
    if args.frame is not None:
        frame = reflections.LinearMap(_array(args.frame))
    theta = reflections.basic_map_from_reflection(matrix, frame, args.rtol)
    points = config.rng("reflection").standard_normal((config.samples_or(10 ** 3), matrix.shape[0])) + 0j
    report.check("basic_map_invariance", np.max(np.abs(theta(points @ matrix.T) - theta(points))), 1e-10)
    if args.conjugate is not None:
        conjugated = reflections.conjugate(matrix, _array(args.conjugate))
        report.values["conjugate"] = conjugated
        report.check("conjugate_is_reflection", 0.0 if reflections.is_reflection(conjugated, args.rtol) else 1.0, 0.0)
    return report


_COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], Report]] = {
    "member": _member, "eval-map": _eval_map, "fiber": _fiber, "kernel": _kernel, "lqk-zero": _lqk_zero,
    "lqk-scan": _lqk_scan, "verify-suite": _verify_suite, "volume": _volume, "shilov-sample": _shilov_sample,
    "aut-apply": _aut_apply, "fix-scan": _fix_scan, "bih-eval": _bih_eval, "reflection": _reflection,
}


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "{}: error: {}\n".format(self.prog, message))


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("run configuration")
    group.add_argument("--seed", type=int, help="64-bit seed (default 20230101)")
    group.add_argument("--tol", type=float, help="boundary tolerance on margins (default 1e-12)")
    group.add_argument("--samples", type=int, help="sample count overriding the command default")
    group.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, help="report format (default json)")
    group.add_argument("--jobs", type=int, help="worker threads of verify-suite (default 1)")
    group.add_argument("--config", help="INI file with a [run] section")
    group.add_argument("--output", help="write the report to this file instead of stdout")
    group.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    return common


def _add_domain_args(parser: argparse.ArgumentParser, required: bool = True, default: Optional[str] = None):
    parser.add_argument("--domain", required=required, default=default, help="domain tag or json descriptor")
    parser.add_argument("--n", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--r", type=float)


def _add_map_args(parser: argparse.ArgumentParser, required: bool = True):
    parser.add_argument("--map", required=required, help="map tag or json descriptor")
    parser.add_argument("--n", type=int)
    parser.add_argument("--r", type=float)
    parser.add_argument("--omega", help="unimodular parameter as re,im")
    parser.add_argument("--source", choices=("Ball2", "Bidisc"), help="source of the Neil map")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="cartanquot", description="Cartan domains, their quotients and 2-proper maps.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    common = _common_parser()
    commands = parser.add_subparsers(dest="command", metavar="subcommand", parser_class=_ArgumentParser)
    commands.required = True

    member = commands.add_parser("member", parents=[common], help="domain membership verdicts")
    _add_domain_args(member, required=False)
    member.add_argument("--point", required=True, help="point, matrix or batch as json")
    member.add_argument("--form", choices=("margin", "eq1", "intrinsic", "2x2"), default="margin",
                        help="eq1: Lie ball closed inequality, intrinsic: quotient without lifting, "
                             "2x2: scalar test of CartanI(2, 2)")

    eval_map = commands.add_parser("eval-map", parents=[common], help="evaluate a catalogued map")
    _add_map_args(eval_map)
    eval_map.add_argument("--point", required=True)
    eval_map.add_argument("--jacobian", action="store_true", help="add the jacobian and check it numerically")
    eval_map.add_argument("--check", action="store_true", help="reject points outside the source domain")

    fiber = commands.add_parser("fiber", parents=[common], help="preimages of a target point")
    _add_map_args(fiber)
    fiber.add_argument("--target", required=True)

    kernel = commands.add_parser("kernel", parents=[common], help="Bergman kernel value")
    kernel.add_argument("--n", type=int, required=True)
    kernel.add_argument("--p", default="0", help="json point, 0 or random")
    kernel.add_argument("--q", default="random", help="json point, 0 or random")
    kernel.add_argument("--kind", choices=("quotient", "lie"), default="quotient")

    lqk_zero = commands.add_parser("lqk-zero", parents=[common], help="explicit kernel zero, n >= 3")
    lqk_zero.add_argument("--n", type=int, required=True)
    lqk_zero.add_argument("--r", type=float, default=0.8)

    lqk_scan = commands.add_parser("lqk-scan", parents=[common], help="smallest sampled kernel modulus")
    lqk_scan.add_argument("--n", type=int, required=True)
    lqk_scan.add_argument("--near-witness", action="store_true", help="sample around the explicit zero")
    lqk_scan.add_argument("--r", type=float, default=0.8)
    lqk_scan.add_argument("--radius", type=float, default=1e-8)

    suite = commands.add_parser("verify-suite", parents=[common], help="run the verification suite")
    suite.add_argument("--all", action="store_true", help="include the slow entries")
    suite.add_argument("--only", action="append", metavar="NAME", help="run this entry (repeatable)")
    suite.add_argument("--list", action="store_true", help="print the manifest")

    volume = commands.add_parser("volume", parents=[common], help="volume identity or a Monte-Carlo volume")
    _add_domain_args(volume, required=False)
    volume.set_defaults(n=2)

    shilov = commands.add_parser("shilov-sample", parents=[common], help="Shilov boundary samples")
    _add_domain_args(shilov, required=False, default="LieBall")
    shilov.set_defaults(n=2)
    shilov.add_argument("--polynomials", type=int, default=0, help="also check the maximum principle")

    aut_apply = commands.add_parser("aut-apply", parents=[common], help="apply a linear automorphism")
    aut_apply.add_argument("--aut", required=True, help='{"omega": [re, im], "U": matrix}')
    aut_apply.add_argument("--point", required=True)
    aut_apply.add_argument("--quotient", action="store_true", help="apply the induced map of the extension")

    fix_scan = commands.add_parser("fix-scan", parents=[common], help="sampled fixed points")
    _add_map_args(fix_scan, required=False)
    fix_scan.add_argument("--aut")
    fix_scan.add_argument("--quotient", action="store_true")

    bih = commands.add_parser("bih-eval", parents=[common], help="evaluate a biholomorphism")
    bih.add_argument("--bih", required=True, choices=biholomorphisms.BIH_TAGS)
    bih.add_argument("--inverse", action="store_true")
    bih.add_argument("--point", required=True)

    reflection = commands.add_parser("reflection", parents=[common], help="reflection data and basic map")
    reflection.add_argument("--matrix", required=True)
    reflection.add_argument("--frame", help="frame matrix, default the computed one")
    reflection.add_argument("--conjugate", help="conjugating matrix P")
    reflection.add_argument("--rtol", type=float, default=1e-10)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(fileconf=args.config, seed=args.seed, tol=args.tol, samples=args.samples,
                     output_format=args.output_format, jobs=args.jobs)


def run_subcommand(name: str, args: argparse.Namespace, config: RunConfig) -> Report:
    """Run one subcommand and return its report.

    :raises ~cartanquot.exceptions.ConfigurationException: unknown subcommand or malformed input
    """
    command = _COMMANDS.get(name)
    if command is None:
        raise ConfigurationException("unknown subcommand {!r}".format(name))
    return command(args, config)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else EXIT_USAGE
    Log.get_logger_for_stream(level=logging.DEBUG if args.verbose else logging.INFO)
    try:
        if args.command == "member" and args.form == "margin" and args.domain is None:
            raise ConfigurationException("member needs --domain unless --form is eq1, intrinsic or 2x2")
        config = _config(args)
        report = run_subcommand(args.command, args, config)
    except (FiberNotPreservedException, InconsistentMultiplicityException) as error:
        LOGGER.error("verification failed: %s", error)
        return EXIT_FAILED
    except (CartanQuotException, ValueError) as error:
        LOGGER.error("%s", error)
        return EXIT_USAGE
    text = render(report, config.output_format)
    if args.output is not None:
        with open(args.output, "w", encoding="utf-8") as output:
            output.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.passed else EXIT_FAILED
