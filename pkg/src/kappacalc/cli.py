"""Command-line driver: builds realizations from a config or the named-basis
catalog and runs the exact identity suites.

Exit codes: 0 all identities hold, 1 at least one identity fails,
2 invalid input (config, DSL, flags)."""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import click

from .algebra import (AlgebraError, AlgElement, Context, act_on, commutator,
                      graded_commutator)
from .calculus import (CalcParams, CalculusError, build_calculus,
                       check_action_table, check_adjoint_agreement,
                       check_module_property, expected_xi,
                       run_calculus_suites)
from .dsl import DslError, eval_dsl
from .hopf import (HopfError, HopfStructure, antipode as hopf_antipode,
                   check_classical_primitivity, check_group_like,
                   check_hopf_axioms, check_morphism_compat, coproduct,
                   _generator_names)
from .realizations import (CATALOG, GUARD, NoncovParams, RealizationError,
                           RealizationSet, build_natural, build_noncov,
                           crosscheck_frames, extract_H_G, named_basis_params,
                           verify_box, verify_lorentz_and_mixed, verify_shift,
                           verify_space)
from .reports import SuiteReport

SCHEMA_VERSION = 1

ALL_SUITES = ("space", "lorentz", "shift", "box", "frames", "hopf",
              "calculus", "actions")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    dim: int = 4
    order: int = 3
    direction: tuple = ()
    basis: str | None = "bicrossproduct"
    phi: str | None = None
    psi: str | None = None
    s: Fraction = Fraction(1)
    realization: str = "noncovariant"
    suites: tuple = ALL_SUITES
    output: str = "text"
    bindings: dict = field(default_factory=dict)

    def validate(self):
        if self.dim < 2:
            raise ConfigError("dimension must be >= 2")
        if self.order < 1:
            raise ConfigError("order must be >= 1")
        if not self.direction:
            self.direction = (Fraction(1),) + (Fraction(0),) * (self.dim - 1)
        if len(self.direction) != self.dim:
            raise ConfigError("direction length must equal the dimension")
        if self.realization not in ("noncovariant", "natural"):
            raise ConfigError(f"unknown realization {self.realization!r}")
        for s in self.suites:
            if s not in ALL_SUITES:
                raise ConfigError(f"unknown suite {s!r}; known: "
                                  + ", ".join(ALL_SUITES))
        if self.realization == "noncovariant":
            if self.basis is None and (self.phi is None or self.psi is None):
                raise ConfigError("need either a basis name or phi and psi")

    def to_data(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "dim": self.dim,
            "order": self.order,
            "direction": [str(e) for e in self.direction],
            "basis": self.basis,
            "phi": self.phi,
            "psi": self.psi,
            "s": str(self.s),
            "realization": self.realization,
            "suites": list(self.suites),
        }

    def params(self, order: int) -> NoncovParams:
        if self.phi is not None or self.psi is not None:
            phi = eval_dsl(self.phi or "1", order, self.bindings)
            psi = eval_dsl(self.psi or "1", order, self.bindings)
            return NoncovParams.build(phi, psi)
        return named_basis_params(self.basis, order)

    def context(self, order: int | None = None) -> Context:
        return Context(self.dim, order if order is not None else self.order,
                       self.direction)

    def build(self, order: int | None = None) -> RealizationSet:
        ctx = self.context(order)
        if self.realization == "natural":
            return build_natural(ctx)
        return build_noncov(ctx, self.params(ctx.order + GUARD))


def _frac(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ConfigError(f"rationals must be strings, got {text!r}")
    return Fraction(text)


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"config schema_version must be {SCHEMA_VERSION}")
    cfg = RunConfig()
    if "dim" in data:
        cfg.dim = int(data["dim"])
    if "order" in data:
        cfg.order = int(data["order"])
    if "direction" in data:
        cfg.direction = tuple(_frac(v) for v in data["direction"])
    if "basis" in data:
        cfg.basis = data["basis"]
    if "phi" in data:
        cfg.phi = data["phi"]
        cfg.basis = None
    if "psi" in data:
        cfg.psi = data["psi"]
        cfg.basis = None
    if "s" in data:
        cfg.s = _frac(data["s"])
    if "realization" in data:
        cfg.realization = data["realization"]
    if "suites" in data:
        cfg.suites = tuple(data["suites"])
    if "output" in data:
        cfg.output = data["output"]
    for name, value in data.get("bindings", {}).items():
        cfg.bindings[name] = _frac(value)
    return cfg


def _apply_flags(cfg: RunConfig, basis, order, dim, s, direction,
                 realization, phi, psi):
    if basis is not None:
        cfg.basis = basis
        cfg.phi = cfg.psi = None
    if phi is not None:
        cfg.phi, cfg.basis = phi, None
    if psi is not None:
        cfg.psi, cfg.basis = psi, None
    if order is not None:
        cfg.order = order
    if dim is not None:
        cfg.dim = dim
        cfg.direction = ()
    if s is not None:
        cfg.s = _frac(s)
    if direction is not None:
        cfg.direction = tuple(_frac(v) for v in direction.split(","))
    if realization is not None:
        cfg.realization = realization
    return cfg


# -- suite execution ----------------------------------------------------------


def run_suites(cfg: RunConfig, inject_fault: bool = False) -> list:
    reports: list[SuiteReport] = []
    wanted = cfg.suites
    noncov = cfg.realization == "noncovariant"
    if not noncov:
        bad = [s for s in wanted
               if s in ("box", "frames", "hopf", "calculus", "actions")]
        if bad:
            raise ConfigError("suites " + ", ".join(bad)
                              + " require the noncovariant realization")
    r = cfg.build()
    if "space" in wanted:
        reports.append(verify_space(r))
    if "lorentz" in wanted:
        reports.append(verify_lorentz_and_mixed(r))
        reports.append(extract_H_G(r))
    if "shift" in wanted:
        reports.append(verify_shift(r))
    if "box" in wanted:
        reports.append(verify_box(r))
    if "frames" in wanted:
        reports.append(crosscheck_frames(r))
    if "hopf" in wanted:
        # one extra order so that a0-divided tensor identities keep full order
        rh = cfg.build(cfg.order + 1)
        hopf = HopfStructure(rh, cfg.order)
        for name in _generator_names(rh.ctx):
            reports.append(check_hopf_axioms(name, rh, hopf))
        reports.append(check_group_like(rh, hopf))
        reports.append(check_classical_primitivity(rh, hopf))
        reports.append(check_morphism_compat(rh, hopf))
    if "calculus" in wanted or "actions" in wanted:
        params = cfg.params(cfg.order + GUARD)
        calc = build_calculus(
            r, CalcParams.build(cfg.s, params, cfg.order),
            fault=inject_fault, check_closed_forms=False)
        if "calculus" in wanted:
            xi_rep = SuiteReport("xi-closed-forms")
            for mu, want in enumerate(expected_xi(r, cfg.s)):
                xi_rep.record(f"xi{mu} closed form", calc.xi[mu] - want)
            reports.append(xi_rep)
            reports.extend(run_calculus_suites(calc))
        if "actions" in wanted:
            reports.append(check_action_table(calc, r))
            other_name = "left" if cfg.basis != "left" else "bicrossproduct"
            other = build_noncov(cfg.context(),
                                 named_basis_params(other_name,
                                                    cfg.order + GUARD))
            reports.append(check_module_property(calc, r, other,
                                                 max_degree=2))
            reports.append(check_adjoint_agreement(calc, r))
    return reports


def _emit(reports, cfg: RunConfig, as_json: bool):
    ok = all(rep.passed for rep in reports)
    if as_json:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "config": cfg.to_data(),
            "passed": ok,
            "suites": [rep.to_data() for rep in reports],
        }
        click.echo(json.dumps(payload, indent=2))
    else:
        for rep in reports:
            for check in rep.checks:
                tag = "PASS" if check.passed else "FAIL"
                line = f"[{tag}] {rep.suite} :: {check.name}"
                if check.residual:
                    line += f"  residual: {check.residual}"
                click.echo(line)
        total = sum(len(rep.checks) for rep in reports)
        failed = sum(1 for rep in reports for c in rep.checks if not c.passed)
        click.echo(f"{total - failed}/{total} identities hold")
    return ok


def _fail_input(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


_config_opts = [
    click.option("--config", "config_path", type=click.Path(), default=None,
                 help="JSON config file."),
    click.option("--basis", default=None,
                 help="Named basis from the catalog."),
    click.option("--phi", default=None, help="phi(A) as a DSL expression."),
    click.option("--psi", default=None, help="psi(A) as a DSL expression."),
    click.option("--order", type=int, default=None,
                 help="Truncation order N in a0."),
    click.option("--dim", type=int, default=None, help="Spacetime dimension."),
    click.option("--s", default=None,
                 help="Exterior-derivative exponent s (rational)."),
    click.option("--direction", default=None,
                 help="Deformation direction, comma-separated rationals."),
    click.option("--realization",
                 type=click.Choice(["noncovariant", "natural"]),
                 default=None),
    click.option("--json", "as_json", is_flag=True,
                 help="Machine-readable output."),
]


def config_options(fn):
    for opt in reversed(_config_opts):
        fn = opt(fn)
    return fn


def _load(config_path, basis, order, dim, s, direction, realization,
          phi, psi) -> RunConfig:
    try:
        cfg = load_config(config_path) if config_path else RunConfig()
        _apply_flags(cfg, basis, order, dim, s, direction, realization,
                     phi, psi)
        cfg.validate()
        return cfg
    except (ConfigError, ValueError) as exc:
        _fail_input(str(exc))


@click.group()
def main():
    """Exact verification of kappa-deformed spacetime realizations."""


@main.command()
@config_options
@click.option("--suites", default=None,
              help="Comma-separated subset of: " + ", ".join(ALL_SUITES))
@click.option("--inject-fault", is_flag=True,
              help="Corrupt the K1 coefficient of the exterior derivative.")
def verify(config_path, basis, phi, psi, order, dim, s, direction,
           realization, as_json, suites, inject_fault):
    """Run the identity suites and exit 0 iff every identity holds."""
    cfg = _load(config_path, basis, order, dim, s, direction, realization,
                phi, psi)
    if suites is not None:
        cfg.suites = tuple(t.strip() for t in suites.split(",") if t.strip())
    try:
        cfg.validate()
        reports = run_suites(cfg, inject_fault=inject_fault)
    except (ConfigError, DslError) as exc:
        _fail_input(str(exc))
    except (RealizationError, HopfError, AlgebraError) as exc:
        _fail_input(str(exc))
    ok = _emit(reports, cfg, as_json)
    sys.exit(0 if ok else 1)


def _resolve_object(cfg: RunConfig, r: RealizationSet, name: str):
    ctx = r.ctx
    simple = {"Z": r.Z, "Zinv": r.Zinv, "box": r.box}
    if name in simple:
        if simple[name] is None:
            raise ConfigError(f"{name} is not defined in this realization")
        return simple[name]
    prefixes = {"xhat": r.xhat, "p": r.p, "D": r.D, "X": r.X}
    for prefix, seq in prefixes.items():
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            mu = int(name[len(prefix):])
            if not 0 <= mu < ctx.dim:
                raise ConfigError(f"index out of range in {name!r}")
            return seq[mu]
    if name.startswith("x") and name[1:].isdigit():
        return AlgElement.x(ctx, int(name[1:]))
    if name.startswith("d") and name[1:].isdigit():
        return AlgElement.d(ctx, int(name[1:]))
    if name.startswith("dx") and name[2:].isdigit():
        return AlgElement.dx(ctx, int(name[2:]))
    if name.startswith("M") and len(name) == 3 and name[1:].isdigit():
        mu, nu = int(name[1]), int(name[2])
        if not (0 <= mu < ctx.dim and 0 <= nu < ctx.dim):
            raise ConfigError(f"index out of range in {name!r}")
        return r.M[mu][nu]
    if name in ("dhat",) or (name.startswith("xi") and name[2:].isdigit()):
        if r.frame != "noncovariant":
            raise ConfigError("forms require the noncovariant realization")
        params = CalcParams.build(cfg.s, cfg.params(cfg.order + GUARD),
                                  cfg.order)
        calc = build_calculus(r, params)
        if name == "dhat":
            return calc.dhat
        mu = int(name[2:])
        if not 0 <= mu < ctx.dim:
            raise ConfigError(f"index out of range in {name!r}")
        return calc.xi[mu]
    raise ConfigError(f"unknown object {name!r}")


def _print_element(obj, as_json: bool):
    if as_json:
        click.echo(json.dumps({"schema_version": SCHEMA_VERSION,
                               "value": obj.to_data()}, indent=2))
    else:
        click.echo(obj.render())


@main.command()
@config_options
@click.argument("what")
@click.argument("generator", required=False)
def show(config_path, basis, phi, psi, order, dim, s, direction, realization,
         as_json, what, generator):
    """Print a realized object; WHAT is e.g. xhat1, M10, Z, box, dhat, xi0,
    or 'coproduct'/'antipode' followed by a generator name."""
    cfg = _load(config_path, basis, order, dim, s, direction, realization,
                phi, psi)
    try:
        if what in ("coproduct", "antipode"):
            if generator is None:
                raise ConfigError(f"{what} needs a generator name")
            rh = cfg.build(cfg.order + 1)
            hopf = HopfStructure(rh, cfg.order)
            fn = coproduct if what == "coproduct" else hopf_antipode
            _print_element(fn(generator, rh, hopf), as_json)
            return
        r = cfg.build()
        _print_element(_resolve_object(cfg, r, what), as_json)
    except (ConfigError, DslError, RealizationError, HopfError,
            CalculusError, AlgebraError) as exc:
        _fail_input(str(exc))


@main.command("commutator")
@config_options
@click.option("--graded", is_flag=True,
              help="Use the graded bracket (anticommutator on odd pairs).")
@click.argument("left")
@click.argument("right")
def commutator_cmd(config_path, basis, phi, psi, order, dim, s, direction,
                   realization, as_json, graded, left, right):
    """Print [LEFT, RIGHT] of two realized objects."""
    cfg = _load(config_path, basis, order, dim, s, direction, realization,
                phi, psi)
    try:
        r = cfg.build()
        a = _resolve_object(cfg, r, left)
        b = _resolve_object(cfg, r, right)
        out = graded_commutator(a, b) if graded else commutator(a, b)
        _print_element(out, as_json)
    except (ConfigError, DslError, RealizationError, CalculusError,
            AlgebraError) as exc:
        _fail_input(str(exc))


@main.command("coproduct")
@config_options
@click.argument("generator")
def coproduct_cmd(config_path, basis, phi, psi, order, dim, s, direction,
                  realization, as_json, generator):
    """Print the coproduct of a generator (p0, p1, M10, M12, Z, ...)."""
    cfg = _load(config_path, basis, order, dim, s, direction, realization,
                phi, psi)
    try:
        rh = cfg.build(cfg.order + 1)
        hopf = HopfStructure(rh, cfg.order)
        _print_element(coproduct(generator, rh, hopf), as_json)
    except (ConfigError, DslError, RealizationError, HopfError,
            AlgebraError) as exc:
        _fail_input(str(exc))


@main.command("antipode")
@config_options
@click.argument("generator")
def antipode_cmd(config_path, basis, phi, psi, order, dim, s, direction,
                 realization, as_json, generator):
    """Print the antipode of a generator."""
    cfg = _load(config_path, basis, order, dim, s, direction, realization,
                phi, psi)
    try:
        rh = cfg.build(cfg.order + 1)
        hopf = HopfStructure(rh, cfg.order)
        _print_element(hopf_antipode(generator, rh, hopf), as_json)
    except (ConfigError, DslError, RealizationError, HopfError,
            AlgebraError) as exc:
        _fail_input(str(exc))


@main.command()
@config_options
@click.argument("operator")
@click.argument("target")
def act(config_path, basis, phi, psi, order, dim, s, direction, realization,
        as_json, operator, target):
    """Print OPERATOR |> TARGET (vacuum projection of the product)."""
    cfg = _load(config_path, basis, order, dim, s, direction, realization,
                phi, psi)
    try:
        r = cfg.build()
        a = _resolve_object(cfg, r, operator)
        f = _resolve_object(cfg, r, target)
        _print_element(act_on(a, f), as_json)
    except (ConfigError, DslError, RealizationError, CalculusError,
            AlgebraError) as exc:
        _fail_input(str(exc))


@main.command()
@click.option("--json", "as_json", is_flag=True)
def catalog(as_json):
    """List the named (phi, psi) bases."""
    if as_json:
        click.echo(json.dumps({
            "schema_version": SCHEMA_VERSION,
            "bases": {k: {"phi": v[0], "psi": v[1]}
                      for k, v in sorted(CATALOG.items())},
        }, indent=2))
        return
    for name, (phi_src, psi_src) in sorted(CATALOG.items()):
        click.echo(f"{name}: phi = {phi_src}, psi = {psi_src}")
    click.echo("family: psi = 1+r*A with constant gamma = c "
               "(phi = (1+r*A)^((c-1)/r))")


if __name__ == "__main__":
    main()
