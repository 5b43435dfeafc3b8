""" Command line front end: parse a run configuration, run one command and
write its report.

Classes:

    Command
    Backend
    OutputFormat
    ThetaSpec
    RunConfig
    CommandResult
    Runner

Functions:

    cmd_relations(cfg)
    cmd_gram(cfg)
    cmd_basis(cfg)
    cmd_spinchain(cfg)
    cmd_irreps(cfg)
    cmd_modules(cfg)
    parse_args(argv)
    run(argv)
"""

from __future__ import annotations  # NOTE: This is necessary below Python 3.10

# For the command line
import argparse
import csv
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import io
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from .audit import AuditReport
from .errors import ConfigError, DiagramError, GenericityError, KernelError
from .hecke import (
    auxiliary_audit, central_scalar, centre_audit, equivalent_presentation_audit,
    hecke_audit, iji_audit, lift_to_hecke, murphy, murphy_audit, MurphyKind,
    type_b_centrality_audit
)
from .irreps import (
    conjecture_check, exceptional_gram_audit, exceptional_list,
    exceptional_structure, ExceptionalSpec, negative_control_audit
)
from .linalg import determinant
from .pathbasis import (
    action_audit_B1, annihilation_audit, build_B1, closed_form_factors,
    closed_form_symmetry_audit, determinant_normalisation, e_chain_murphy_audit,
    fixed_height_gram, gram_diag_B1, gram_transport_audit, murphy_audit_B1,
    murphy_eigenvalue, Path, path_counting_audit, TileOrder, ybe_audit
)
from .scalars import (
    derive_params, exceptional_point, format_scalar, make_param_point, Parity,
    ParamPoint, PointLike, SymbolicPoint
)
from .spinchain import (
    ebar, ebar_audit, equivalence_audit, local_application_audit,
    spin_relation_audit, u1_audit, vector_to_json
)
from .wordrep import (
    count_half_diagrams, generator_matrices, gram_csv_rows, gram_matrix,
    irrep_dim, module_lattice, ModuleSpec, one_boundary_count, radical_check,
    relation_audit, tl_count
)

logger = logging.getLogger(__name__)

VERSION = "0.1.0"
SCHEMA = "tl2b/1"

# Exit codes
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

# Dense spin chain audits stop here
MAX_DENSE_SPIN_N = 6


class Command(Enum):
    RELATIONS = "relations"
    GRAM = "gram"
    BASIS = "basis"
    SPINCHAIN = "spinchain"
    IRREPS = "irreps"
    MODULES = "modules"


class Backend(Enum):
    NUMERIC = "numeric"
    SYMBOLIC = "symbolic"


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class ThetaSpec:
    """ generic, an exceptional quadruple or an explicit q^(theta/2). """
    exceptional: Optional[tuple] = None
    tau: Optional[Fraction] = None

    @property
    def generic(self) -> bool:
        return self.exceptional is None and self.tau is None

    @classmethod
    def parse(cls, text: str, n: int) -> ThetaSpec:
        """ "generic", "sign,n,eps1,eps2", "sign,eps" (odd N) or "p/q". """
        text = text.strip()
        if text == "generic":
            return cls()
        if "," in text:
            try:
                values = tuple(int(part) for part in text.split(","))
            except ValueError as error:
                raise ConfigError(f"bad theta quadruple {text!r}") from error
            if len(values) == 2:
                if n % 2 == 0:
                    raise ConfigError("the sign,eps form needs odd N")
                values = (values[0], 0, 1, values[1])
            if len(values) != 4:
                raise ConfigError(f"bad theta quadruple {text!r}")
            try:
                ExceptionalSpec(n, *values)
            except ValueError as error:
                raise ConfigError(str(error)) from error
            return cls(exceptional=values)
        try:
            tau = Fraction(text)
        except (ValueError, ZeroDivisionError) as error:
            raise ConfigError(f"bad theta {text!r}") from error
        if tau <= 0:
            raise ConfigError("q^(theta/2) must be positive")
        return cls(tau=tau)

    def __str__(self) -> str:
        if self.exceptional is not None:
            return ",".join(str(value) for value in self.exceptional)
        if self.tau is not None:
            return str(self.tau)
        return "generic"


@dataclass
class RunConfig:
    """ Everything a command needs, built from the command line. """
    DEFAULT_SEED = 1
    # None means 4N+4
    DEFAULT_BOUND = None

    command: Command
    n: int
    seed: int = DEFAULT_SEED
    bound: Optional[int] = DEFAULT_BOUND
    theta: ThetaSpec = field(default_factory=ThetaSpec)
    backend: Backend = Backend.NUMERIC
    out: Optional[str] = None
    output_format: OutputFormat = OutputFormat.JSON
    corrupt: bool = False
    verbosity: int = logging.INFO

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"N = {self.n} < 2")
        if self.bound is not None and self.bound < 1:
            raise ConfigError("the genericity bound must be positive")
        if self.backend == Backend.SYMBOLIC and not self.theta.generic:
            raise ConfigError("the symbolic backend has no special theta")

    @property
    def parity(self) -> Parity:
        return Parity.of(self.n)

    @property
    def genericity_bound(self) -> int:
        return self.bound if self.bound is not None else 4*self.n + 4

    def base_point(self) -> ParamPoint:
        """ The seeded generic point, before theta is moved. """
        return make_param_point(self.seed, self.genericity_bound)

    def point(self) -> PointLike:
        if self.backend == Backend.SYMBOLIC:
            return SymbolicPoint(self.genericity_bound)
        base = self.base_point()
        if self.theta.exceptional is not None:
            return exceptional_point(base, *self.theta.exceptional)
        if self.theta.tau is not None:
            point = base.replace(t=self.theta.tau)
            point.check_generic()
            return point
        return base

    def require_numeric(self):
        if self.backend != Backend.NUMERIC:
            raise ConfigError(f"{self.command.value} needs the numeric backend")


@dataclass
class CommandResult:
    """ Audits run by a command and its main table. """
    point: PointLike
    audits: List[AuditReport] = field(default_factory=list)
    data: Dict[str, object] = field(default_factory=dict)
    table: List[List[str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.audits)

    def first_failure(self) -> Optional[dict]:
        for report in self.audits:
            check = report.first_failure()
            if check is not None:
                failure = check.to_json()
                failure["audit"] = report.name
                return failure
        return None


def _through_line_specs(n: int, params) -> List[ModuleSpec]:
    specs = []
    for label in range(n):
        for eps1, eps2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            try:
                specs.append(ModuleSpec.through_lines(n, params, label, eps1, eps2))
            except DiagramError:
                continue
    return specs


def cmd_relations(cfg: RunConfig) -> CommandResult:
    """ Defining relations on every module, the Hecke and Murphy audits,
    the double quotient and Yang-Baxter.
    """
    p = cfg.point()
    params = derive_params(p, cfg.parity)
    result = CommandResult(p)
    big = ModuleSpec.big(cfg.n, params)
    expected = params.corrupted(delta=params.delta + 1) if cfg.corrupt else None
    result.audits.append(relation_audit(big, expected))
    for spec in _through_line_specs(cfg.n, params):
        result.audits.append(relation_audit(spec, expected))

    gens = lift_to_hecke(big)
    result.audits.append(hecke_audit(gens))
    result.audits.append(auxiliary_audit(gens))
    for kind in MurphyKind:
        result.audits.append(murphy_audit(murphy(kind, gens), gens))
    result.audits.append(type_b_centrality_audit(gens))
    result.audits.append(equivalent_presentation_audit(gens))
    result.audits.append(centre_audit(gens, central_scalar(cfg.n, p)))
    result.audits.append(iji_audit(big))
    result.audits.append(ybe_audit(generator_matrices(big), p))
    result.table = [["audit", "identity", "status"]] + [
        [report.name, check.identity, check.status.name.lower()]
        for report in result.audits for check in report.checks
    ]
    return result


def cmd_gram(cfg: RunConfig) -> CommandResult:
    """ Brute force and closed form Gram determinants of W^(N)(b). """
    p = cfg.point()
    params = derive_params(p, cfg.parity)
    spec = ModuleSpec.big(cfg.n, params)
    result = CommandResult(p)
    brute = determinant(gram_matrix(spec), p)
    result.data["det_bruteforce"] = format_scalar(brute)
    result.data["gram"] = gram_csv_rows(spec)
    if cfg.n == 2:
        report = AuditReport("Gram determinant at N=2")
        b, s1, s2, delta = params.b, params.s1, params.s2, params.delta
        report.scalars_equal(
            "det G = b(b-s1)(b-s2)(b-s1-s2+delta s1 s2)",
            brute, b*(b - s1)*(b - s2)*(b - s1 - s2 + delta*s1*s2)
        )
        result.audits.append(report)
    result.audits.append(determinant_normalisation(build_B1(spec), spec))
    factors = closed_form_factors(cfg.n, p)
    result.data["factors"] = [
        {"factor": f["factor"], "exponent": f["exponent"],
         "value": format_scalar(f["value"])}
        for f in factors
    ]
    result.data["exceptional"] = exceptional_list(cfg.n, p)
    if isinstance(p, ParamPoint) and cfg.theta.generic:
        result.audits.append(exceptional_gram_audit(cfg.n, p, seed=cfg.seed))
    result.table = [["factor", "exponent", "value"]] + [
        [f["factor"], str(f["exponent"]), format_scalar(f["value"])]
        for f in factors
    ]
    return result


def cmd_basis(cfg: RunConfig) -> CommandResult:
    """ The path basis: construction, generator action, Murphy elements and
    the diagonal Gram form.
    """
    p = cfg.point()
    params = derive_params(p, cfg.parity)
    spec = ModuleSpec.big(cfg.n, params)
    result = CommandResult(p)
    basis = build_B1(spec)
    other = build_B1(spec, TileOrder.HIGHEST)
    order_report = AuditReport("tile order independence")
    for path in basis.paths:
        order_report.record(
            f"b{path} independent of tile order",
            all(x == y for x, y in zip(basis.vectors[path], other.vectors[path])),
            "vectors differ"
        )
    result.audits.append(order_report)
    result.audits.append(action_audit_B1(basis))
    result.audits.append(murphy_audit_B1(basis))
    result.audits.append(gram_transport_audit(basis, gram_matrix(spec)))
    result.audits.append(e_chain_murphy_audit(spec))
    result.audits.append(annihilation_audit(
        basis.e, params, basis.vectors[Path.fundamental(cfg.n)], params.b
    ))
    result.audits.append(path_counting_audit(cfg.n))
    if isinstance(p, ParamPoint):
        result.audits.append(closed_form_symmetry_audit(cfg.n, p))
    result.data["fixed_height"] = {
        str(h): format_scalar(fixed_height_gram(cfg.n, h, p))
        for h in range(-cfg.n, cfg.n + 1, 2)
    }
    d = gram_diag_B1(basis)
    result.table = [["path", "d_p"] + [f"J{k}" for k in range(cfg.n)]]
    for path in basis.paths:
        result.table.append(
            [str(path), format_scalar(d[path])]
            + [str(murphy_eigenvalue(path, k)) for k in range(cfg.n)]
        )
    return result


def cmd_spinchain(cfg: RunConfig) -> CommandResult:
    """ The spin chain representation and its equivalence with W^(N)(b). """
    p = cfg.point()
    params = derive_params(p, cfg.parity)
    result = CommandResult(p)
    if cfg.n <= MAX_DENSE_SPIN_N:
        result.audits.append(local_application_audit(cfg.n, p))
    result.audits.append(spin_relation_audit(cfg.n, params))
    result.audits.append(u1_audit(cfg.n, p))
    result.audits.append(ebar_audit(cfg.n, params))
    result.audits.append(equivalence_audit(cfg.n, p))
    vector = vector_to_json(ebar(cfg.n, p))
    result.table = [["state", "amplitude"]] + [[k, v] for k, v in vector.items()]
    return result


def cmd_irreps(cfg: RunConfig) -> CommandResult:
    """ Invariant blocks at exceptional theta, their central characters and
    the comparison with the half-diagram modules.
    """
    cfg.require_numeric()
    base = cfg.base_point()
    result = CommandResult(cfg.point())
    if cfg.theta.exceptional is not None:
        cases = [ExceptionalSpec(cfg.n, *cfg.theta.exceptional)]
    else:
        cases = [
            ExceptionalSpec(cfg.n, entry["sign"], entry["n"], *entry["eps"])
            for entry in exceptional_list(cfg.n)
        ]
    rows = [["case", "sign", "dim sub", "dim quotient", "verdict"]]
    verdicts = []
    for espec in cases:
        try:
            pair = exceptional_structure(espec, base)
        except GenericityError as error:
            logger.info("%s skipped: %s", espec.label, error)
            continue
        result.audits.append(pair.report)
        result.audits.append(negative_control_audit(espec, base))
        verdict = ""
        if espec.sign == 1 and (espec.k > 0 or espec.eps2 == 1):
            check = conjecture_check(
                cfg.n, espec.k, espec.eps1, espec.eps2, base, cfg.seed
            )
            verdicts.append(check.to_json())
            verdict = check.verdict.value
        rows.append([espec.label, str(espec.sign), str(pair.dims[0]),
                     str(pair.dims[1]), verdict])
    result.data["exceptional"] = exceptional_list(cfg.n, base)
    result.data["conjecture"] = verdicts
    result.table = rows
    return result


def cmd_modules(cfg: RunConfig) -> CommandResult:
    """ The table of modules with their dimensions. """
    p = cfg.point()
    params = derive_params(p, cfg.parity)
    result = CommandResult(p)
    entries = module_lattice(cfg.n, params)
    report = AuditReport(f"module dimensions, N={cfg.n}")
    for entry in entries:
        if entry.label is None:
            expected = 2**cfg.n
        else:
            expected = irrep_dim(cfg.n, entry.label)
        report.record(f"dim {entry.name}", entry.dim == expected,
                      f"{entry.dim} != {expected}")
    for through in range(cfg.n + 1):
        report.record(
            f"TL count with {through} through lines",
            tl_count(cfg.n, through) == count_half_diagrams(cfg.n, through, False, False),
            "enumeration differs"
        )
        report.record(
            f"one-boundary count with {through} through lines",
            one_boundary_count(cfg.n, through)
            == count_half_diagrams(cfg.n, through, True, False),
            "enumeration differs"
        )
    result.audits.append(report)
    if isinstance(p, ParamPoint):
        for spec in _through_line_specs(cfg.n, params):
            result.audits.append(radical_check(spec))
    result.data["modules"] = [entry.to_json() for entry in entries]
    result.table = [["module", "n", "eps", "through_lines", "dim"]] + [
        [entry.name, "" if entry.label is None else str(entry.label),
         "" if entry.eps1 is None else f"{entry.eps1:+d}{entry.eps2:+d}",
         str(entry.through), str(entry.dim)]
        for entry in entries
    ]
    return result


COMMANDS: Dict[Command, Callable[[RunConfig], CommandResult]] = {
    Command.RELATIONS: cmd_relations,
    Command.GRAM: cmd_gram,
    Command.BASIS: cmd_basis,
    Command.SPINCHAIN: cmd_spinchain,
    Command.IRREPS: cmd_irreps,
    Command.MODULES: cmd_modules
}


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """ Build a RunConfig from command line arguments. """
    parser = argparse.ArgumentParser(
        prog="tl2b",
        description="Exact audits of the two-boundary Temperley-Lieb algebra."
    )
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("--n", type=int, required=True, help="number of sites")
    parser.add_argument("--seed", type=int, default=RunConfig.DEFAULT_SEED)
    parser.add_argument("--bound", type=int, default=RunConfig.DEFAULT_BOUND,
                        help="genericity bound (default 4N+4)")
    parser.add_argument("--theta", default="generic",
                        help='generic, "sign,n,eps1,eps2", "sign,eps" or p/q')
    parser.add_argument("--backend", choices=[b.value for b in Backend],
                        default=Backend.NUMERIC.value)
    parser.add_argument("--out", default=None, help="output file (default stdout)")
    parser.add_argument("--format", dest="output_format",
                        choices=[f.value for f in OutputFormat],
                        default=OutputFormat.JSON.value)
    parser.add_argument("--corrupt", action="store_true",
                        help="check relations against a wrong delta")
    loudness = parser.add_mutually_exclusive_group()
    loudness.add_argument("--verbose", action="store_true")
    loudness.add_argument("--quiet", action="store_true")
    args = parser.parse_args(argv)

    return RunConfig(
        command=Command(args.command),
        n=args.n,
        seed=args.seed,
        bound=args.bound,
        theta=ThetaSpec.parse(args.theta, args.n),
        backend=Backend(args.backend),
        out=args.out,
        output_format=OutputFormat(args.output_format),
        corrupt=args.corrupt,
        verbosity=(
            logging.DEBUG if args.verbose
            else logging.WARNING if args.quiet
            else logging.INFO
        )
    )


class Runner:
    """ Runs one command and renders its report. """

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg

    def header(self, point: Optional[PointLike]) -> dict:
        return {
            "schema": SCHEMA,
            "version": VERSION,
            "command": self.cfg.command.value,
            "n": self.cfg.n,
            "seed": self.cfg.seed,
            "backend": self.cfg.backend.value,
            "theta": str(self.cfg.theta),
            "point": point.to_json() if point is not None else None
        }

    def render(self, result: CommandResult) -> str:
        if self.cfg.output_format == OutputFormat.CSV:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerows(result.table)
            return buffer.getvalue()
        document = self.header(result.point)
        document.update({
            "passed": result.passed,
            "first_failure": result.first_failure(),
            "audits": [report.to_json() for report in result.audits],
            "data": result.data
        })
        return json.dumps(document, indent=2, sort_keys=True) + "\n"

    def render_error(self, error: Exception) -> str:
        document = self.header(None)
        document.update({
            "passed": False,
            "first_failure": {
                "error": type(error).__name__,
                "message": str(error)
            }
        })
        return json.dumps(document, indent=2, sort_keys=True) + "\n"

    def write(self, text: str):
        if self.cfg.out is None:
            sys.stdout.write(text)
        else:
            with open(self.cfg.out, "w", encoding="utf-8") as stream:
                stream.write(text)

    def run(self) -> int:
        """ Run the command; the exit code says whether every check held. """
        try:
            result = COMMANDS[self.cfg.command](self.cfg)
        except (ConfigError, GenericityError) as error:
            logger.error("%s", error)
            self.write(self.render_error(error))
            return EXIT_CONFIG
        except KernelError as error:
            logger.error("%s", error)
            self.write(self.render_error(error))
            return EXIT_FAILED
        self.write(self.render(result))
        failure = result.first_failure()
        if failure is not None:
            logger.warning("first failure: %s (%s)", failure["identity"],
                           failure["audit"])
            return EXIT_FAILED
        logger.info("%s at N=%d: %d audits passed", self.cfg.command.value,
                    self.cfg.n, len(result.audits))
        return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    """ Parse the command line, configure logging and run. """
    try:
        cfg = parse_args(argv)
    except ConfigError as error:
        logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
        logger.error("%s", error)
        return EXIT_CONFIG
    logging.basicConfig(
        level=cfg.verbosity,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s"
    )
    return Runner(cfg).run()
