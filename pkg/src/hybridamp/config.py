"""INI-style run configuration.

    [system]
    delta = -10
    g_opa = 120
    theta = 0
    lambda_kerr = 0.0005     ; or "auto" for the real-alpha value
    epsilon = 1000
    kappa = 500

    [measurement]
    coupling_a = 1
    phi_h = 1.5707963267948966

    [sweep]
    variable = kappa
    start = 485
    stop = 600
    count = 116
    lambda_mode = auto_real_alpha

    [oracle]
    dt = 0.0001
    duration = 10
    seed = 0
    segments = 1024
    probe_omegas = 0.01, 5, 10, 20, 50

Keys match the dataclass field names. Only ``[system]`` is required.
"""

import configparser
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import ValidationError
from .model import MeasurementParams, SystemParams, lambda_for_real_alpha, validate, validate_measurement

SWEEP_VARIABLES = ("kappa", "g_opa", "delta", "epsilon", "lambda_kerr", "phi_h")
LAMBDA_MODES = ("fixed", "auto_real_alpha")


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    count: int
    lambda_mode: str = "fixed"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValidationError(f"sweep variable must be one of {', '.join(SWEEP_VARIABLES)}")
        if self.lambda_mode not in LAMBDA_MODES:
            raise ValidationError(f"lambda_mode must be one of {', '.join(LAMBDA_MODES)}")
        if self.count < 2:
            raise ValidationError("sweep count must be at least 2")
        if not self.start < self.stop:
            raise ValidationError("sweep start must be below stop")

    def values(self):
        step = (self.stop - self.start) / (self.count - 1)
        return [self.start + i * step for i in range(self.count - 1)] + [self.stop]


@dataclass(frozen=True)
class OracleSettings:
    dt: float = 1e-4
    duration: float = 10.0
    seed: int = 0
    drive_amp: float = 1.0
    segments: int = 1024
    probe_omegas: tuple = (0.01, 5.0, 10.0, 20.0, 50.0)
    psd_duration: Optional[float] = None
    psd_dt: Optional[float] = None


@dataclass(frozen=True)
class RunConfig:
    system: SystemParams
    measurement: MeasurementParams = field(default_factory=MeasurementParams)
    sweep: Optional[SweepSpec] = None
    oracle: OracleSettings = field(default_factory=OracleSettings)


def _float(section, key, raw):
    try:
        value = float(raw)
    except ValueError:
        raise ValidationError(f"[{section}] {key} = {raw!r} is not a number") from None
    return value


def _int(section, key, raw):
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"[{section}] {key} = {raw!r} is not an integer") from None


def _check_keys(parser, section, allowed):
    unknown = set(parser[section]) - set(allowed)
    if unknown:
        raise ValidationError(f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}")


def parse_config(text):
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ValidationError(f"malformed config: {exc}") from None
    unknown = set(parser.sections()) - {"system", "measurement", "sweep", "oracle"}
    if unknown:
        raise ValidationError(f"unknown section(s): {', '.join(sorted(unknown))}")
    if not parser.has_section("system"):
        raise ValidationError("config needs a [system] section")

    sysfields = ("delta", "g_opa", "theta", "lambda_kerr", "epsilon", "kappa")
    _check_keys(parser, "system", sysfields)
    sec = parser["system"]
    missing = [k for k in sysfields if k not in sec and k != "theta"]
    if missing:
        raise ValidationError(f"[system] is missing {', '.join(missing)}")
    vals = {k: _float("system", k, sec[k]) for k in sysfields if k in sec and not (k == "lambda_kerr" and sec[k].strip() == "auto")}
    vals.setdefault("theta", 0.0)
    if sec["lambda_kerr"].strip() == "auto":
        vals["lambda_kerr"] = lambda_for_real_alpha(vals["delta"], vals["g_opa"], vals["kappa"], vals["epsilon"])
    system = validate(SystemParams(**vals))

    meas = MeasurementParams()
    if parser.has_section("measurement"):
        _check_keys(parser, "measurement", ("coupling_a", "phi_h"))
        m = parser["measurement"]
        meas = MeasurementParams(
            coupling_a=_float("measurement", "coupling_a", m.get("coupling_a", "1")),
            phi_h=_float("measurement", "phi_h", m.get("phi_h", repr(math.pi / 2))),
        )
    validate_measurement(meas)

    sweep = None
    if parser.has_section("sweep"):
        _check_keys(parser, "sweep", ("variable", "start", "stop", "count", "lambda_mode"))
        s = parser["sweep"]
        try:
            sweep = SweepSpec(
                variable=s["variable"].strip(),
                start=_float("sweep", "start", s["start"]),
                stop=_float("sweep", "stop", s["stop"]),
                count=_int("sweep", "count", s["count"]),
                lambda_mode=s.get("lambda_mode", "fixed").strip(),
            )
        except KeyError as exc:
            raise ValidationError(f"[sweep] is missing {exc.args[0]}") from None

    oracle = OracleSettings()
    if parser.has_section("oracle"):
        keys = ("dt", "duration", "seed", "drive_amp", "segments", "probe_omegas", "psd_duration", "psd_dt")
        _check_keys(parser, "oracle", keys)
        o = parser["oracle"]
        kw = {}
        for k in ("dt", "duration", "drive_amp", "psd_duration", "psd_dt"):
            if k in o:
                kw[k] = _float("oracle", k, o[k])
        for k in ("seed", "segments"):
            if k in o:
                kw[k] = _int("oracle", k, o[k])
        if "probe_omegas" in o:
            kw["probe_omegas"] = tuple(_float("oracle", "probe_omegas", v) for v in o["probe_omegas"].split(","))
        oracle = OracleSettings(**kw)

    return RunConfig(system, meas, sweep, oracle)


def load_config(path):
    with open(path) as fh:
        return parse_config(fh.read())
