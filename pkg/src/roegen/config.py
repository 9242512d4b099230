"""JSON configuration: strict parsing, defaults and validation."""
import json
from dataclasses import asdict, dataclass, field, fields as dc_fields

from .eos import EosParams, ModelKind
from .equilibrium import Grid, SolidModel, Tolerances, find_critical
from .exceptions import ConfigError, RoegenError

__all__ = ["Config", "FieldsConfig", "Offsets", "load_config", "parse_config"]


@dataclass(frozen=True)
class FieldsConfig:
    chi_e: float = 0.0
    chi_m: float = 0.0


@dataclass(frozen=True)
class Offsets:
    E0: float = 0.0
    U0: float = 0.0


@dataclass(frozen=True)
class Config:
    eos: EosParams = field(default_factory=EosParams.reduced)
    solid: SolidModel = field(default_factory=SolidModel)
    grid: Grid = field(default_factory=Grid)
    tolerances: Tolerances = field(default_factory=Tolerances)
    fields: FieldsConfig = field(default_factory=FieldsConfig)
    offsets: Offsets = field(default_factory=Offsets)
    sectors: tuple = ()

    def to_dict(self):
        eos = {"kind": self.eos.kind.value, "a": self.eos.a, "b": self.eos.b, "R": self.eos.R, "c": self.eos.c}
        return {
            "eos": eos,
            "solid": asdict(self.solid),
            "grid": asdict(self.grid),
            "tolerances": {k: getattr(self.tolerances, k) for k in _TOLERANCE_KEYS},
            "fields": asdict(self.fields),
            "offsets": asdict(self.offsets),
            "sectors": [{"nu": nu} for nu in self.sectors],
        }


_TOLERANCE_KEYS = ("root", "area", "ode", "boundary")
_EOS_KEYS = ("kind", "a", "b", "R", "c")
_SECTIONS = ("eos", "solid", "grid", "tolerances", "fields", "offsets", "sectors")


def _number(path, value, *, positive=False, nonneg=False, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    if integer and int(value) != value:
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    value = int(value) if integer else float(value)
    if value != value or value in (float("inf"), float("-inf")):
        raise ConfigError(f"{path}: must be finite")
    if positive and not value > 0:
        raise ConfigError(f"{path}: must be > 0, got {value!r}")
    if nonneg and value < 0:
        raise ConfigError(f"{path}: must be >= 0, got {value!r}")
    return value


def _section(raw, name, allowed):
    body = raw.get(name, {})
    if not isinstance(body, dict):
        raise ConfigError(f"{name}: expected an object")
    unknown = sorted(set(body) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key {name}.{unknown[0]} (allowed: {', '.join(allowed)})")
    return body


def parse_config(raw):
    """Validate a decoded JSON object and fill defaults."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(raw) - set(_SECTIONS))
    if unknown:
        raise ConfigError(f"unknown key {unknown[0]!r} (allowed: {', '.join(_SECTIONS)})")

    eos = _section(raw, "eos", _EOS_KEYS)
    kind = eos.get("kind", ModelKind.VAN_DER_WAALS.value)
    try:
        kind = ModelKind(kind)
    except ValueError:
        raise ConfigError(f"eos.kind: must be one of VanDerWaals, Ideal, got {kind!r}") from None
    if kind is ModelKind.IDEAL:
        defaults = {"a": 0.0, "b": 0.0, "R": 1.0, "c": 1.5}
    else:
        defaults = {"a": 3.0, "b": 1.0 / 3.0, "R": 8.0 / 3.0, "c": 1.5}
    values = {k: _number(f"eos.{k}", eos.get(k, v)) for k, v in defaults.items()}
    for k in ("R", "c"):
        if not values[k] > 0:
            raise ConfigError(f"eos.{k}: must be > 0, got {values[k]!r}")
    if kind is ModelKind.VAN_DER_WAALS:
        for k in ("a", "b"):
            if not values[k] > 0:
                raise ConfigError(f"eos.{k}: must be > 0 for VanDerWaals, got {values[k]!r}")
    elif values["a"] != 0 or values["b"] != 0:
        raise ConfigError("eos.a, eos.b: the Ideal model requires a = 0 and b = 0")
    params = EosParams(kind=kind, **values)

    solid_raw = _section(raw, "solid", ("I_t", "L_melt", "dQ_melt", "L_sub"))
    base = SolidModel()
    solid = SolidModel(**{
        f.name: _number(f"solid.{f.name}", solid_raw.get(f.name, getattr(base, f.name)), positive=True)
        for f in dc_fields(SolidModel)
    })

    if not params.is_ideal:
        try:
            I_c = find_critical(params).I_c
        except RoegenError as err:
            raise ConfigError(f"eos: critical point cannot be found ({err})") from err
        if not solid.I_t < I_c:
            raise ConfigError(f"solid.I_t: I_t must be < I_c (I_t={solid.I_t!r}, I_c={I_c!r})")

    grid_raw = _section(raw, "grid", [f.name for f in dc_fields(Grid)])
    gbase = Grid()
    grid_vals = {}
    for f in dc_fields(Grid):
        integer = f.name.startswith("n_")
        v = _number(f"grid.{f.name}", grid_raw.get(f.name, getattr(gbase, f.name)), positive=True, integer=integer)
        if integer and v < 2:
            raise ConfigError(f"grid.{f.name}: must be >= 2, got {v}")
        grid_vals[f.name] = v
    grid = Grid(**grid_vals)
    if not grid.I_min < solid.I_t:
        raise ConfigError(f"grid.I_min: must be < I_t={solid.I_t!r}, got {grid.I_min!r}")
    if not grid.I_max > solid.I_t:
        raise ConfigError(f"grid.I_max: must be > I_t={solid.I_t!r}, got {grid.I_max!r}")

    tol_raw = _section(raw, "tolerances", _TOLERANCE_KEYS)
    tbase = Tolerances()
    tolerances = Tolerances(**{
        k: _number(f"tolerances.{k}", tol_raw.get(k, getattr(tbase, k)), positive=True)
        for k in _TOLERANCE_KEYS
    })

    f_raw = _section(raw, "fields", ("chi_e", "chi_m"))
    fields_cfg = FieldsConfig(**{
        k: _number(f"fields.{k}", f_raw.get(k, 0.0), nonneg=True) for k in ("chi_e", "chi_m")
    })

    o_raw = _section(raw, "offsets", ("E0", "U0"))
    offsets = Offsets(**{k: _number(f"offsets.{k}", o_raw.get(k, 0.0)) for k in ("E0", "U0")})

    sectors_raw = raw.get("sectors", [])
    if not isinstance(sectors_raw, list):
        raise ConfigError("sectors: expected a list")
    sectors = []
    for i, item in enumerate(sectors_raw):
        if not isinstance(item, dict):
            raise ConfigError(f"sectors[{i}]: expected an object")
        extra = sorted(set(item) - {"nu"})
        if extra:
            raise ConfigError(f"unknown key sectors[{i}].{extra[0]} (allowed: nu)")
        if "nu" not in item:
            raise ConfigError(f"sectors[{i}].nu: required")
        sectors.append(_number(f"sectors[{i}].nu", item["nu"]))

    return Config(params, solid, grid, tolerances, fields_cfg, offsets, tuple(sectors))


def load_config(path):
    """Read and validate a JSON config file.

    Raises :class:`ConfigError` for malformed JSON or invalid content and
    :class:`OSError` when the file cannot be read.
    """
    with open(path, encoding="utf-8") as fp:
        text = fp.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path}: malformed JSON ({err})") from err
    return parse_config(raw)
