"""
Command-Line Surface
compute / verify / transform subcommands over the operator, determinant,
combinatorics and hypergeometric services
"""

import sys
import json
import argparse
import logging
import textwrap
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from models import (
    ArithmeticParams, ArithmeticSeed, CoefficientSequence, ComputeRequest, DomainError,
    EngineDisagreement, ExplicitSeed, Family, FamilySpec, FormatError, GeometricParams,
    GeometricSeed, Method, OnesSeed, OperatorMode, OutputFormat, SeedRule, SequenceError
)
from services.rational_core import rational_core
from services.operator_engine import operator_engine
from services.determinant_engine import determinant_engine
from services.combinatorics_engine import combinatorics_engine
from services.hypergeometric_numbers import READINGS, hypergeometric_numbers
from services.formats import sequence_formats
from services.verification import SCOPES, verification_suite

logger = logging.getLogger(__name__)

Row = Tuple[int, Fraction]

SINGLE_METHODS = [m for m in Method if m is not Method.ALL]

# ================
# Argument Parsing
# ================

def counting_number(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value

def natural_number(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value

def integer_pair(text: str) -> Tuple[int, int]:
    """"a,b" with integer a and b"""
    fields = text.split(",")
    if len(fields) != 2:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    try:
        return int(fields[0]), int(fields[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers in 'a,b', got {text!r}")

def index_range(text: str) -> Tuple[int, int]:
    """"a..b" or a single index "n" """
    if ".." in text:
        low, _, high = text.partition("..")
    else:
        low = high = text
    try:
        n_min, n_max = int(low), int(high)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a..b' or 'n', got {text!r}")
    if n_min < 0 or n_max < n_min:
        raise argparse.ArgumentTypeError(f"range {text!r} must satisfy 0 <= a <= b")
    return n_min, n_max

class Parser:
    def __init__(self):
        self.parser = argparse.ArgumentParser(
            prog="cameron",
            usage="cameron <subcommand> <options>",
            formatter_class=argparse.RawDescriptionHelpFormatter,
            description="Exact restricted and associated Cameron operators and modified hypergeometric numbers",
            epilog=textwrap.dedent(
                """\
                Rationals are read and written as exact "p/q" strings.
                Environment: CAMERON_WORKERS, CAMERON_LOG_LEVEL, CAMERON_LOG_FILE,
                CAMERON_COMPOSITION_LIMIT, CAMERON_EULER_SECOND_READING
            """
            ),
        )
        self.subparsers = self.parser.add_subparsers(
            metavar="[ for help on each: cameron <subcommand> -h ]", title="subcommands",
            dest="command", required=True,
        )
        self.usage = "cameron {} <options>"

def parse(argv=None):
    parser = Parser()

    # each subcommand class registers its own subparser
    subcommands = [Compute, Verify, Transform]
    for cmd in subcommands:
        cmd(parser)

    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        parser.parser.print_help()
        return None
    return parser.parser.parse_args(argv)

# ===============
# Shared helpers
# ===============

def write_output(text: str, out: Optional[str]):
    if out:
        try:
            with open(out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as e:
            raise FormatError(f"Cannot write {out}: {e}")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)

def read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as e:
        raise FormatError(f"Cannot read {path}: {e}")

def require_agreement(what: str, indices: List[int], per_method: Dict[str, List[Fraction]]) -> List[Fraction]:
    """Single agreed value per index, or EngineDisagreement listing every differing index"""
    diff = {}
    for position, n in enumerate(indices):
        values = {name: values[position] for name, values in per_method.items()}
        if len(set(values.values())) > 1:
            diff[n] = {name: rational_core.format(v) for name, v in values.items()}
    if diff:
        raise EngineDisagreement(f"Methods disagree for {what} at n = {sorted(diff)}", diff)
    return next(iter(per_method.values()))

def add_mode_options(parser, required: bool = False):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--restricted", metavar="M", type=counting_number,
                       help="restricted operator: seed x_1..x_M")
    group.add_argument("--associated", metavar="M", type=counting_number,
                       help="associated operator: seed x_M, x_M+1, ...")

def mode_from_args(args) -> Optional[OperatorMode]:
    if args.restricted is not None:
        return OperatorMode.restricted(args.restricted)
    if args.associated is not None:
        return OperatorMode.associated(args.associated)
    return None

def add_output_options(parser):
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default="json",
                        help="output format (default json)")
    parser.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")

# ================
# Transform routes
# ================

def seed_from_file(path: str, mode: Optional[OperatorMode]) -> Tuple[SeedRule, OperatorMode]:
    values, file_m = sequence_formats.parse_seed_file(read_text(path))
    if file_m is not None:
        if mode is None:
            mode = OperatorMode.associated(file_m)
        elif mode != OperatorMode.associated(file_m):
            raise DomainError(f"Seed file describes associated({file_m}) but {mode.label()} was requested")
        return ExplicitSeed(values, start=file_m), mode
    if mode is None:
        if not values:
            raise SequenceError("Restricted seed file is empty")
        mode = OperatorMode.restricted(len(values))
    if not mode.is_restricted:
        raise FormatError("Associated seeds use the {\"m\": m, \"values\": [...]} form")
    if len(values) > mode.m:
        raise FormatError(f"Restricted seed lists {len(values)} values but m = {mode.m}")
    return ExplicitSeed(values), mode

def transform_values(x: CoefficientSequence, mode: OperatorMode, method: Method,
                     n_min: int, n_max: int) -> List[Fraction]:
    """z_n_min .. z_n_max of the seed x by one method"""
    m = mode.m
    top = max(n_max, 1)
    if method is Method.RECURRENCE:
        z = operator_engine.transform(x, mode, top)
        return [z[n] for n in range(n_min, n_max + 1)]
    if method is Method.ORACLE:
        z = operator_engine.series_reciprocal(operator_engine.cameron_denominator(x, mode, top), top)
        return [z[n] for n in range(n_min, n_max + 1)]

    if method is Method.BINOM:
        negated = CoefficientSequence((Fraction(1),) + tuple(
            -x.get(j) if mode.in_support(j) else Fraction(0) for j in range(1, top + 1)
        ))
        lower, upper = (1, m) if mode.is_restricted else (m, None)

    def value(n: int) -> Fraction:
        if n == 0:
            return Fraction(1)
        if method is Method.DETERMINANT:
            if mode.is_restricted:
                return determinant_engine.restricted_z_det(x, m, n)
            return determinant_engine.associated_z_det(x, m, n) if n >= m else Fraction(0)
        if method is Method.COMPOSITION:
            if mode.is_restricted:
                return combinatorics_engine.composition_sum_restricted(x, m, n)
            return combinatorics_engine.composition_sum_associated(x, m, n)
        if method is Method.TRUDI:
            if mode.is_restricted:
                return combinatorics_engine.trudi_restricted(x, m, n)
            return combinatorics_engine.trudi_associated(x, m, n)
        return combinatorics_engine.binomial_expansion_sum(negated, n, lower, upper)

    return [value(n) for n in range(n_min, n_max + 1)]

def inversion_values(z: CoefficientSequence, method: Method, n_max: int) -> List[Fraction]:
    """Recovered x_1 .. x_n_max"""
    if method is Method.ORACLE:
        r = operator_engine.series_reciprocal(z, n_max)
        return [-r[n] for n in range(1, n_max + 1)]
    if method is Method.RECURRENCE:
        return list(operator_engine.inverse_transform(z, n_max).values[1:])
    if method is Method.DETERMINANT:
        return [
            (1 if n % 2 else -1) * determinant_engine.x_from_z_det(z, n) for n in range(1, n_max + 1)
        ]
    if method is Method.COMPOSITION:
        return [combinatorics_engine.inversion_sum(z, n) for n in range(1, n_max + 1)]
    if method is Method.TRUDI:
        return [combinatorics_engine.signed_trudi_inversion(z, n) for n in range(1, n_max + 1)]
    raise DomainError(f"Method {method.value} does not invert a transform")

# =================
# CLASS DEFINITIONS
# =================

class Subcommand:
    def __init__(self, parser_obj):
        self.func = self.run
        self.usage = parser_obj.usage
        self.subparsers = parser_obj.subparsers
        self._parse()

    def _parse(self):
        raise NotImplementedError

    def run(self, args, config) -> int:
        raise NotImplementedError

class Compute(Subcommand):
    def _parse(self):
        cmd_name = "compute"
        parser = self.subparsers.add_parser(
            cmd_name,
            usage=self.usage.format(cmd_name),
            help="computes transformed sequences, hypergeometric numbers or closed forms",
            description="""Compute z_n of a seed under the restricted or
            associated operator, modified hypergeometric numbers of a family,
            or the geometric / arithmetic / all-ones closed forms. With
            --method all every engine must agree or the run fails with a
            per-index diff.""",
        )
        parser.add_argument("target", choices=["transform", "hyper", "closed-form"],
                            help="what to compute")
        add_mode_options(parser)
        seeds = parser.add_mutually_exclusive_group()
        seeds.add_argument("--seed", metavar="X1,X2,...", help="inline seed of rationals")
        seeds.add_argument("--seed-file", metavar="PATH", help="JSON seed file")
        seeds.add_argument("--geometric", metavar="A,B", type=integer_pair,
                           help="x_n = A^(n-m) B for n >= m")
        seeds.add_argument("--arithmetic", metavar="A,B", type=integer_pair,
                           help="x_n = (n-m) A + B for n >= m")
        seeds.add_argument("--ones", action="store_true", help="x_n = 1")
        parser.add_argument("--m", metavar="M", type=counting_number,
                            help="operator parameter for closed forms")
        parser.add_argument("--family", choices=[f.value for f in Family],
                            help="hypergeometric family")
        parser.add_argument("--N", metavar="N", type=natural_number, help="hypergeometric order N")
        parser.add_argument("--n", metavar="A..B", type=index_range, default=(0, 10),
                            help="index range (default 0..10)")
        parser.add_argument("--method", choices=[m.value for m in Method], default="recurrence",
                            help="computation method (default recurrence)")
        parser.add_argument("--euler-second-reading", choices=READINGS,
                            help="upper limit of the restricted second-kind Euler denominator")
        add_output_options(parser)
        parser.set_defaults(func=self.func)

    def build_request(self, args) -> ComputeRequest:
        n_min, n_max = args.n
        request = ComputeRequest(
            target=args.target,
            mode=mode_from_args(args),
            method=Method(args.method),
            n_min=n_min,
            n_max=n_max,
            output_format=OutputFormat(args.format),
        )
        if args.target == "hyper":
            if args.family is None or args.N is None:
                raise DomainError("compute hyper needs --family and --N")
            if request.mode is None:
                raise DomainError("compute hyper needs --restricted M or --associated M")
            request.family = FamilySpec(Family(args.family), args.N)
        elif args.target == "closed-form":
            if request.mode is not None and request.mode.is_restricted:
                raise DomainError("Closed forms describe associated seeds; use --associated M or --m")
            m = args.m or (request.mode.m if request.mode else None)
            if m is None:
                raise DomainError("compute closed-form needs --m")
            request.mode = OperatorMode.associated(m)
            if args.geometric:
                request.closed_form, request.params = "geometric", args.geometric
            elif args.arithmetic:
                request.closed_form, request.params = "arithmetic", args.arithmetic
            elif args.ones:
                request.closed_form = "ones"
            else:
                raise DomainError("compute closed-form needs --geometric, --arithmetic or --ones")
        else:
            request.seed, request.mode = self.seed_rule(args, request.mode)
        return request

    def seed_rule(self, args, mode: Optional[OperatorMode]) -> Tuple[SeedRule, OperatorMode]:
        if args.seed_file:
            return seed_from_file(args.seed_file, mode)
        if mode is None and args.m is not None:
            mode = OperatorMode.associated(args.m)
        if mode is None:
            raise DomainError("compute transform needs --restricted M or --associated M")
        if args.seed is not None:
            values = sequence_formats.parse_inline_seed(args.seed)
            if mode.is_restricted:
                if len(values) > mode.m:
                    raise FormatError(f"Restricted seed lists {len(values)} values but m = {mode.m}")
                return ExplicitSeed(values), mode
            return ExplicitSeed(values, start=mode.m), mode
        if args.ones:
            return OnesSeed(), mode
        if args.geometric or args.arithmetic:
            if mode.is_restricted:
                raise DomainError("Geometric and arithmetic seeds are associated seeds")
            if args.geometric:
                return GeometricSeed(GeometricParams(*args.geometric, m=mode.m)), mode
            return ArithmeticSeed(ArithmeticParams(*args.arithmetic, m=mode.m)), mode
        raise DomainError("compute transform needs a seed: --seed, --seed-file, --geometric, --arithmetic or --ones")

    def rows(self, request: ComputeRequest) -> List[Row]:
        indices = list(range(request.n_min, request.n_max + 1))
        if request.target == "hyper":
            values = self.hyper_rows(request)
        elif request.target == "closed-form":
            values = self.closed_form_rows(request)
        else:
            x = request.seed.materialize(request.mode, max(request.n_max, 1))
            methods = SINGLE_METHODS if request.method is Method.ALL else [request.method]
            per_method = {
                method.value: transform_values(x, request.mode, method, request.n_min, request.n_max)
                for method in methods
            }
            values = require_agreement(f"{request.mode.label()} transform", indices, per_method)
        return list(zip(indices, values))

    def hyper_rows(self, request: ComputeRequest) -> List[Fraction]:
        spec, mode = request.family, request.mode
        indices = range(request.n_min, request.n_max + 1)
        methods = SINGLE_METHODS if request.method is Method.ALL else [request.method]
        per_method = {}
        for method in methods:
            if method is Method.ORACLE:
                numbers = hypergeometric_numbers.hyper_from_definition(spec, mode, request.n_max)
                per_method[method.value] = [numbers[p].value for p in indices]
            else:
                per_method[method.value] = [
                    hypergeometric_numbers.hyper_by_method(spec, mode, method, p).value for p in indices
                ]
        return require_agreement(f"{spec.label()} {mode.label()}", list(indices), per_method)

    def closed_form_rows(self, request: ComputeRequest) -> List[Fraction]:
        m = request.mode.m
        if request.closed_form != "arithmetic" and request.n_min < m:
            raise DomainError(f"Closed forms need n >= m = {m}; requested range starts at {request.n_min}")
        indices = range(request.n_min, request.n_max + 1)

        if request.closed_form == "geometric":
            params = GeometricParams(*request.params, m=m)
            closed = [operator_engine.geometric_closed_form(params, n) for n in indices]
            seed = GeometricSeed(params)
        elif request.closed_form == "ones":
            closed = [operator_engine.ones_closed_form(m, n) for n in indices]
            seed = OnesSeed()
        else:
            params = ArithmeticParams(*request.params, m=m)
            z = operator_engine.arithmetic_sequence(params, request.n_max)
            closed = [z[n] for n in indices]
            seed = ArithmeticSeed(params)

        if request.method is not Method.ALL:
            return closed
        top = max(request.n_max, 1)
        z = operator_engine.transform(seed.materialize(request.mode, top), request.mode, top)
        per_method = {"closed_form": closed, "recurrence": [z[n] for n in indices]}
        return require_agreement(f"{request.closed_form} closed form", list(indices), per_method)

    def run(self, args, config) -> int:
        request = self.build_request(args)
        logger.debug(f"compute request: {request}")
        rows = self.rows(request)
        write_output(sequence_formats.render(rows, request.output_format), args.out)
        return 0

class Verify(Subcommand):
    def _parse(self):
        cmd_name = "verify"
        parser = self.subparsers.add_parser(
            cmd_name,
            usage=self.usage.format(cmd_name),
            help="runs the cross-verification suite",
            description="""Check recurrence, determinant, composition, Trudi
            and series-oracle routes against each other on random seeds,
            closed forms and every hypergeometric family. The report is
            deterministic for a fixed --rng-seed; the exit status is 1 when
            any identity fails.""",
        )
        parser.add_argument("--scope", choices=SCOPES, default="all", help="which identities to run")
        parser.add_argument("--seed-count", metavar="K", type=counting_number, default=200,
                            help="random seeds per run (default 200)")
        parser.add_argument("--n-limit", metavar="N", type=counting_number, default=22,
                            help="largest index checked (default 22)")
        parser.add_argument("--rng-seed", metavar="S", type=int, default=0, help="random seed (default 0)")
        parser.add_argument("--workers", metavar="W", type=counting_number,
                            help="worker threads (default CAMERON_WORKERS)")
        parser.add_argument("--composition-limit", metavar="N", type=counting_number,
                            help="largest n for enumeration routes (default CAMERON_COMPOSITION_LIMIT)")
        parser.add_argument("--report", metavar="PATH", help="write the JSON report to PATH")
        parser.add_argument("--timings", action="store_true", help="include per-identity timings")
        parser.set_defaults(func=self.func)

    def run(self, args, config) -> int:
        report = verification_suite.run(
            scope=args.scope,
            seed_count=args.seed_count,
            n_limit=args.n_limit,
            rng_seed=args.rng_seed,
            workers=args.workers or config.workers,
            composition_limit=args.composition_limit or config.composition_limit,
        )
        text = json.dumps(report.to_dict(include_timings=args.timings), indent=2) + "\n"
        write_output(text, args.report)
        return 0 if report.passed else 1

class Transform(Subcommand):
    def _parse(self):
        cmd_name = "transform"
        parser = self.subparsers.add_parser(
            cmd_name,
            usage=self.usage.format(cmd_name),
            help="applies or inverts the operator on a seed file",
            description="""Forward reads a seed file and writes z_0..z_N.
            Invert reads a JSON array z_0, z_1, ... (z_0 = 1) and writes the
            recovered x_1..x_N.""",
        )
        parser.add_argument("seed_file", metavar="SEED_FILE", help="JSON seed or transform file")
        add_mode_options(parser)
        parser.add_argument("--n-max", metavar="N", type=counting_number, default=10,
                            help="last index written (default 10)")
        parser.add_argument("--direction", choices=["forward", "invert"], default="forward")
        parser.add_argument("--method", choices=[m.value for m in Method if m is not Method.BINOM],
                            default="recurrence", help="computation method (default recurrence)")
        add_output_options(parser)
        parser.set_defaults(func=self.func)

    def run(self, args, config) -> int:
        method = Method(args.method)
        mode = mode_from_args(args)
        methods = SINGLE_METHODS if method is Method.ALL else [method]
        n_max = args.n_max

        if args.direction == "forward":
            seed, mode = seed_from_file(args.seed_file, mode)
            x = seed.materialize(mode, n_max)
            indices = list(range(0, n_max + 1))
            per_method = {m.value: transform_values(x, mode, m, 0, n_max) for m in methods}
            values = require_agreement(f"{mode.label()} transform", indices, per_method)
        else:
            z = sequence_formats.read_z_file(read_text(args.seed_file))
            if z.n_max < n_max:
                raise SequenceError(f"Transform file holds z_0..z_{z.n_max}, inversion to {n_max} needs more")
            indices = list(range(1, n_max + 1))
            inverting = [m for m in methods if m is not Method.BINOM]
            per_method = {m.value: inversion_values(z, m, n_max) for m in inverting}
            values = require_agreement("inversion", indices, per_method)
            if mode is not None:
                stray = [n for n, v in zip(indices, values) if v and not mode.in_support(n)]
                if stray:
                    logger.warning(f"Recovered seed is nonzero off the {mode.label()} support at n = {stray}")

        rows = list(zip(indices, values))
        write_output(sequence_formats.render(rows, OutputFormat(args.format)), args.out)
        return 0
