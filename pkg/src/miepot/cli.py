"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical failure.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import click

from . import __version__
from .core import (
    AMU_ELECTRON_MASS,
    BOHR_ANGSTROM,
    HARTREE_EV,
    DimensionlessModel,
    PotentialSpec,
    QuantumState,
    UnitSystem,
    harmonic_params,
    reduce,
)
from .errors import MiepotError, OracleError
from .oracle import default_grid, richardson
from .spectrum import bound_energy, expand_energy, spectroscopic_terms
from .wavefunction import count_nodes, norm_integral, radial_bound

SCHEMA_VERSION = 1
ENERGY_UNITS = {"eV", "hartree"}
LENGTH_UNITS = {"angstrom", "bohr"}
MASS_UNITS = {"amu", "me"}
DIMENSIONLESS_UNIT = "hbar^2/(2 m r0^2)"
CSV_SPECTRUM_COLUMNS = ("n", "l", "N", "E_exact", "E_expand3", "beta", "q")
NORM_TOL = 1e-8

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class MoleculeParseError(MiepotError, ValueError):
    pass


@dataclass(frozen=True)
class MoleculeRecord:
    name: str
    D0: float
    D0_unit: str
    r0: float
    r0_unit: str
    mass: float
    mass_unit: str
    dim_N: int = 3
    coulomb: bool = False

    @property
    def is_atomic(self) -> bool:
        return (self.D0_unit, self.r0_unit, self.mass_unit) == ("hartree", "bohr", "me")

    def to_spec(self) -> PotentialSpec:
        if self.is_atomic:
            return PotentialSpec(self.D0, self.r0, self.mass, unit_system=UnitSystem.ATOMIC)
        d0 = self.D0 * HARTREE_EV if self.D0_unit == "hartree" else self.D0
        r0 = self.r0 * BOHR_ANGSTROM if self.r0_unit == "bohr" else self.r0
        mass = self.mass / AMU_ELECTRON_MASS if self.mass_unit == "me" else self.mass
        return PotentialSpec(d0, r0, mass, unit_system=UnitSystem.MOLECULAR)

    @property
    def gamma_sq(self) -> float:
        return reduce(self.to_spec()).gamma_sq


def _parse_record(raw: object, index: int) -> MoleculeRecord:
    label = f"record {index}"
    if not isinstance(raw, dict):
        raise MoleculeParseError(f"{label}: expected an object")
    if isinstance(raw.get("name"), str):
        label = f"record {index} ({raw['name']!r})"

    def get(key: str, kind=float):
        if key not in raw:
            raise MoleculeParseError(f"{label}: missing field {key!r}")
        val = raw[key]
        if kind is float:
            if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
                raise MoleculeParseError(f"{label}: field {key!r} must be a number")
            if val <= 0:
                raise MoleculeParseError(f"{label}: {key} must be > 0")
            return float(val)
        if not isinstance(val, kind):
            raise MoleculeParseError(f"{label}: field {key!r} has wrong type")
        return val

    def unit(key: str, allowed: set[str]) -> str:
        u = get(key, str)
        if u not in allowed:
            raise MoleculeParseError(f"{label}: unknown unit {u!r} for {key} (allowed: {sorted(allowed)})")
        return u

    name = get("name", str)
    dim_N = raw.get("dim_N", 3)
    if isinstance(dim_N, bool) or not isinstance(dim_N, int) or dim_N < 2:
        raise MoleculeParseError(f"{label}: dim_N must be an integer >= 2")
    coulomb = raw.get("coulomb", False)
    if not isinstance(coulomb, bool):
        raise MoleculeParseError(f"{label}: coulomb must be true or false")
    return MoleculeRecord(
        name=name,
        D0=get("D0"),
        D0_unit=unit("D0_unit", ENERGY_UNITS),
        r0=get("r0"),
        r0_unit=unit("r0_unit", LENGTH_UNITS),
        mass=get("mass"),
        mass_unit=unit("mass_unit", MASS_UNITS),
        dim_N=dim_N,
        coulomb=coulomb,
    )


def load_molecules(path: str | Path) -> list[MoleculeRecord]:
    """Read molecule records from JSON.

    Accepts ``{"schema": 1, "molecules": [...]}`` or a bare array of records.
    An empty file yields an empty list and a warning.
    """
    text = Path(path).read_text(encoding="utf-8")
    if not text.strip():
        warnings.warn(f"{path}: no molecule records", UserWarning, stacklevel=2)
        return []
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MoleculeParseError(f"{path}: invalid JSON ({exc})") from None
    if isinstance(doc, dict):
        if doc.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
            raise MoleculeParseError(f"{path}: unsupported schema {doc.get('schema')!r}")
        items = doc.get("molecules")
        if not isinstance(items, list):
            raise MoleculeParseError(f"{path}: missing 'molecules' array")
    elif isinstance(doc, list):
        items = doc
    else:
        raise MoleculeParseError(f"{path}: expected an array of records")
    records = [_parse_record(raw, i) for i, raw in enumerate(items)]
    seen: set[str] = set()
    for rec in records:
        if rec.name in seen:
            raise MoleculeParseError(f"{path}: duplicate molecule name {rec.name!r}")
        seen.add(rec.name)
    if not records:
        warnings.warn(f"{path}: no molecule records", UserWarning, stacklevel=2)
    return records


@dataclass(frozen=True)
class Target:
    """A resolved system: physical spec plus the output energy convention."""

    name: str
    spec: PotentialSpec
    unit_label: str
    to_output: float  # multiplies energies in the PotentialSpec unit system
    coulomb: bool = False
    record: MoleculeRecord | None = None
    dim_N: int = 3

    @classmethod
    def from_record(cls, rec: MoleculeRecord) -> "Target":
        spec = rec.to_spec()
        factor = 1.0
        if spec.unit_system is UnitSystem.MOLECULAR and rec.D0_unit == "hartree":
            factor = 1.0 / HARTREE_EV
        return cls(rec.name, spec, rec.D0_unit, factor, rec.coulomb, rec, rec.dim_N)

    @classmethod
    def dimensionless(cls, gamma_sq: float, coulomb: bool = False) -> "Target":
        # m = r0 = 1 atomic units: the energy unit is exactly 1/2 hartree
        spec = PotentialSpec(0.5 * gamma_sq, 1.0, 1.0)
        return cls("dimensionless", spec, DIMENSIONLESS_UNIT, 2.0, coulomb)

    def model(self, dim_N: int) -> DimensionlessModel:
        base = reduce(self.spec, dim_N)
        unit = self.spec.energy_unit * self.to_output
        if self.coulomb:
            return DimensionlessModel.coulomb_like(
                base.a1_coeff, 0.0, dim_N, energy_unit=unit, r0=self.spec.r0
            )
        return DimensionlessModel(base.gamma_sq, dim_N, energy_unit=unit, r0=self.spec.r0)

    def metadata(self, dim_N: int) -> dict:
        omega, inertia = harmonic_params(self.spec)
        return {
            "gamma_sq": reduce(self.spec).gamma_sq,
            "omega": omega,
            "inertia": inertia,
            "unit_system": self.spec.unit_system.value,
            "energy_unit": self.unit_label,
            "dim_N": dim_N,
            "coulomb": self.coulomb,
            "version": __version__,
        }

    def describe(self) -> dict:
        if self.record is not None:
            return asdict(self.record)
        return {"name": self.name, "gamma_sq": reduce(self.spec).gamma_sq, "coulomb": self.coulomb}


@dataclass
class SpectrumTable:
    molecule: dict
    rows: list[dict]
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        def clean(v):
            return None if isinstance(v, float) and math.isnan(v) else v

        rows = [{k: clean(v) for k, v in r.items()} for r in self.rows]
        return json.dumps(
            {"molecule": self.molecule, "metadata": self.metadata, "rows": rows}, indent=2
        ) + "\n"

    def to_csv(self) -> str:
        return _csv(CSV_SPECTRUM_COLUMNS, [[r[c] for c in CSV_SPECTRUM_COLUMNS] for r in self.rows])


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def build_spectrum(target: Target, n_max: int, l_max: int, dim_N: int) -> SpectrumTable:
    model = target.model(dim_N)
    d0 = model.gamma_sq * model.energy_unit
    rows = []
    for l in range(l_max + 1):
        for n in range(n_max + 1):
            state = QuantumState(n, l, dim_N)
            level = bound_energy(model, state)
            expanded = math.nan if target.coulomb else d0 * expand_energy(model, state).total
            rows.append({
                "n": n, "l": l, "N": dim_N,
                "E_exact": level.energy_physical,
                "E_expand3": expanded,
                "beta": level.beta,
                "q": level.q_exponent,
            })
    return SpectrumTable(target.describe(), rows, target.metadata(dim_N))


def _verify_l(model: DimensionlessModel, l: int, n_max: int) -> list[dict]:
    res = richardson(model, l, default_grid(model, l, n_max), n_max + 1)
    if len(res.richardson_estimate) < n_max + 1:
        raise OracleError(f"l={l}: oracle resolved only {len(res.richardson_estimate)} of {n_max + 1} levels")
    out = []
    for n in range(n_max + 1):
        state = QuantumState(n, l, model.dim_N)
        exact = bound_energy(model, state).energy_dimensionless
        value, err = res.richardson_estimate[n]
        out.append({
            "n": n, "l": l, "N": model.dim_N,
            "E_exact": exact * model.energy_unit,
            "E_oracle": value * model.energy_unit,
            "rel_error": abs(value - exact) / abs(exact),
            "error_estimate": err / abs(exact),
            "norm": norm_integral(model, state),
            "nodes": count_nodes(model, state),
        })
    return out


def run_verify(target: Target, n_max: int, l_max: int, dim_N: int, tolerance: float, jobs: int = 1):
    model = target.model(dim_N)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        chunks = list(pool.map(lambda l: _verify_l(model, l, n_max), range(l_max + 1)))
    rows = sorted((r for chunk in chunks for r in chunk), key=lambda r: (r["l"], r["n"]))
    for r in rows:
        ok = (
            r["rel_error"] <= tolerance
            and abs(r["norm"] - 1.0) <= NORM_TOL
            and r["nodes"] == r["n"]
        )
        r["status"] = "PASS" if ok else "FAIL"
    return rows


# ---------------------------------------------------------------- click layer

def _resolve(molecule_file, name, dimensionless, gamma_sq, coulomb) -> Target | None:
    if dimensionless or gamma_sq is not None:
        if gamma_sq is None:
            raise click.UsageError("--dimensionless requires --gamma-sq")
        if not gamma_sq > 0:
            raise click.UsageError("--gamma-sq must be > 0")
        return Target.dimensionless(gamma_sq, coulomb)
    if molecule_file is None:
        raise click.UsageError("give --molecule-file or --dimensionless --gamma-sq X")
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            records = load_molecules(molecule_file)
    except (OSError, MoleculeParseError) as exc:
        raise click.UsageError(str(exc)) from None
    for w in caught:
        click.echo(f"warning: {w.message}", err=True)
    if not records:
        return None
    if name is None:
        if len(records) > 1:
            raise click.UsageError("file holds several molecules; choose one with --name")
        rec = records[0]
    else:
        matches = [r for r in records if r.name == name]
        if not matches:
            raise click.UsageError(f"no molecule named {name!r}")
        rec = matches[0]
    target = Target.from_record(rec)
    if coulomb and not target.coulomb:
        target = Target(target.name, target.spec, target.unit_label, target.to_output, True,
                        target.record, target.dim_N)
    return target


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _target_options(f):
    f = click.option("--molecule-file", type=click.Path(dir_okay=False), default=None,
                     help="JSON file of molecule records.")(f)
    f = click.option("--name", default=None, help="Molecule to use from the file.")(f)
    f = click.option("--dimensionless", is_flag=True,
                     help="Work directly in gamma^2 (energies in hbar^2/(2 m r0^2)).")(f)
    f = click.option("--gamma-sq", type=float, default=None, help="gamma^2 for --dimensionless.")(f)
    f = click.option("--coulomb", is_flag=True, help="Drop the inverse-square term (a2 = 0).")(f)
    f = click.option("--dim", "dim_N", type=click.IntRange(min=2), default=None,
                     help="Space dimension N (default: record value or 3).")(f)
    f = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None,
                     help="Output file (default stdout).")(f)
    return f


def _library_errors(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except OracleError as exc:
            click.echo(f"numerical failure: {exc}", err=True)
            sys.exit(EXIT_NUMERIC)
        except MiepotError as exc:
            raise click.UsageError(str(exc)) from None
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@click.group()
@click.version_option(__version__)
def cli():
    """Bound states of the N-dimensional Mie-type (Kratzer) potential."""


@cli.command()
@_target_options
@click.option("--nmax", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--lmax", type=click.IntRange(min=0), default=2, show_default=True)
@_library_errors
def spectrum(molecule_file, name, dimensionless, gamma_sq, coulomb, dim_N, fmt, out, nmax, lmax):
    """Exact energies and the third-order 1/gamma expansion."""
    target = _resolve(molecule_file, name, dimensionless, gamma_sq, coulomb)
    if target is None:
        return
    table = build_spectrum(target, nmax, lmax, dim_N or target.dim_N)
    _emit(table.to_json() if fmt == "json" else table.to_csv(), out)


@cli.command()
@_target_options
@click.option("--n", "n", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--l", "l", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--x-min", type=float, default=0.01, show_default=True)
@click.option("--x-max", type=float, default=10.0, show_default=True)
@click.option("--points", type=click.IntRange(min=2), default=200, show_default=True)
@_library_errors
def wavefunction(molecule_file, name, dimensionless, gamma_sq, coulomb, dim_N, fmt, out,
                 n, l, x_min, x_max, points):
    """Sample the normalized radial eigenfunction R(x), x = r/r0."""
    if not 0 < x_min < x_max:
        raise click.UsageError("need 0 < --x-min < --x-max")
    target = _resolve(molecule_file, name, dimensionless, gamma_sq, coulomb)
    if target is None:
        return
    N = dim_N or target.dim_N
    model = target.model(N)
    state = QuantumState(n, l, N)
    xs = [x_min + (x_max - x_min) * i / (points - 1) for i in range(points)]
    values = [float(v) for v in radial_bound(model, state, xs)]
    if fmt == "json":
        doc = {"molecule": target.describe(), "n": n, "l": l, "N": N,
               "samples": [[x, v] for x, v in zip(xs, values)]}
        _emit(json.dumps(doc, indent=2) + "\n", out)
    else:
        _emit(_csv(("x", "R"), zip(xs, values)), out)


@cli.command()
@_target_options
@click.option("--nmax", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--lmax", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--tolerance", type=float, default=1e-5, show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@_library_errors
def verify(molecule_file, name, dimensionless, gamma_sq, coulomb, dim_N, fmt, out,
           nmax, lmax, tolerance, jobs):
    """Compare exact energies with the Richardson-extrapolated finite-difference oracle."""
    if not tolerance > 0:
        raise click.UsageError("--tolerance must be > 0")
    target = _resolve(molecule_file, name, dimensionless, gamma_sq, coulomb)
    if target is None:
        return
    rows = run_verify(target, nmax, lmax, dim_N or target.dim_N, tolerance, jobs)
    cols = ("n", "l", "N", "E_exact", "E_oracle", "rel_error", "error_estimate", "norm", "nodes", "status")
    if fmt == "json":
        text = json.dumps({"molecule": target.describe(), "tolerance": tolerance, "rows": rows}, indent=2) + "\n"
    else:
        text = _csv(cols, [[r[c] for c in cols] for r in rows])
    _emit(text, out)
    failed = sum(r["status"] != "PASS" for r in rows)
    click.echo(f"{len(rows) - failed}/{len(rows)} levels pass at tolerance {tolerance:g}", err=True)
    if failed:
        sys.exit(EXIT_FAIL)


@cli.command()
@_target_options
@click.option("--n", "n", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--l", "l", type=click.IntRange(min=0), default=0, show_default=True)
@_library_errors
def expand(molecule_file, name, dimensionless, gamma_sq, coulomb, dim_N, fmt, out, n, l):
    """Term-by-term 1/gamma expansion next to its vibration-rotation form."""
    target = _resolve(molecule_file, name, dimensionless, gamma_sq, coulomb)
    if target is None:
        return
    if target.coulomb:
        raise click.UsageError("the 1/gamma expansion needs a2 = gamma^2 (not a Coulomb record)")
    N = dim_N or target.dim_N
    model = target.model(N)
    state = QuantumState(n, l, N)
    d0 = model.gamma_sq * model.energy_unit
    terms = expand_energy(model, state)
    gamma_form = [d0 * c for c in terms.coefficients]
    spectro = [t * target.to_output for t in spectroscopic_terms(target.spec, state)]
    exact = bound_energy(model, state).energy_physical
    labels = ("-D0", "hw(n+1/2)", "(h^2/2I)L^2", "-(3h^2/2I)(n+1/2)^2", "-(3h^3/2I^2w)(n+1/2)L^2")
    rows, acc = [], 0.0
    for label, order, g, s in zip(labels, (0, 1, 2, 2, 3), gamma_form, spectro):
        acc += g
        rows.append({"term": label, "order": order, "gamma_form": g,
                     "spectroscopic_form": s, "partial_sum": acc})
    summary = {"exact": exact, "expansion": acc, "residual": exact - acc,
               "energy_unit": target.unit_label}
    if fmt == "json":
        _emit(json.dumps({"molecule": target.describe(), "n": n, "l": l, "N": N,
                          "terms": rows, **summary}, indent=2) + "\n", out)
    else:
        cols = ("term", "order", "gamma_form", "spectroscopic_form", "partial_sum")
        table = [[r[c] for c in cols] for r in rows]
        table += [[k, "", summary[k], "", ""] for k in ("exact", "expansion", "residual")]
        _emit(_csv(cols, table), out)


def main(argv=None) -> None:
    cli.main(args=argv, prog_name="miepot")


if __name__ == "__main__":
    main()
