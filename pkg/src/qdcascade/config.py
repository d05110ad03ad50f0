"""Sectioned key=value configuration files.

Format: `[section]` headers, one `key = value` per line, `#` comments
(full-line or trailing). Unknown sections or keys are rejected with the
offending line number.
"""

from dataclasses import dataclass
from importlib import resources

from .cascade import CascadeParams
from .emission import EmissionParams, default_tau_grid


class ConfigError(ValueError):
    """Malformed or out-of-range configuration input."""


# section -> key -> (attribute, validator description)
_SCHEMA = {
    "dot": ("s_r_uev", "sigma_uev", "gamma_x_per_ns", "gamma_xx_per_ns",
            "gamma_s_per_ns", "p_per_ns"),
    "emission": ("k",),
    "detector": ("irf_fwhm_ns",),
    "grid": ("tau_min_ns", "tau_max_ns", "tau_step_ns"),
    "quadrature": ("nodes",),
}

_RANGES = {
    "dot.s_r_uev": (0.0, None),
    "dot.sigma_uev": (0.0, None),
    "dot.gamma_x_per_ns": (0.0, None, "exclusive"),
    "dot.gamma_xx_per_ns": (0.0, None, "exclusive"),
    "dot.gamma_s_per_ns": (0.0, None),
    "dot.p_per_ns": (0.0, None),
    "emission.k": (0.0, 1.0),
    "detector.irf_fwhm_ns": (0.0, None),
    "grid.tau_step_ns": (0.0, None, "exclusive"),
    "quadrature.nodes": (8, None),
}


@dataclass(frozen=True)
class Config:
    s_r_uev: float
    sigma_uev: float
    gamma_x_per_ns: float
    gamma_xx_per_ns: float
    gamma_s_per_ns: float
    p_per_ns: float
    k: float
    irf_fwhm_ns: float
    tau_min_ns: float
    tau_max_ns: float
    tau_step_ns: float
    nodes: int

    def emission_params(self):
        return EmissionParams(
            s_r=self.s_r_uev,
            sigma=self.sigma_uev,
            cascade=CascadeParams(gamma_xx=self.gamma_xx_per_ns,
                                  gamma_x=self.gamma_x_per_ns,
                                  gamma_s=self.gamma_s_per_ns,
                                  p=self.p_per_ns),
            k=self.k,
            irf_fwhm=self.irf_fwhm_ns,
            quadrature_nodes=self.nodes,
        )

    def tau_grid(self):
        return default_tau_grid(self.tau_min_ns, self.tau_max_ns,
                                self.tau_step_ns)


def _check_range(dotted, value, lineno):
    spec = _RANGES.get(dotted)
    if spec is None:
        return
    lo, hi = spec[0], spec[1]
    exclusive = len(spec) > 2
    if exclusive and value <= lo:
        raise ConfigError(f"line {lineno}: {dotted} must be > {lo}, got {value}")
    if not exclusive and value < lo:
        raise ConfigError(f"line {lineno}: {dotted} must be >= {lo}, got {value}")
    if hi is not None and value > hi:
        raise ConfigError(f"line {lineno}: {dotted} must be <= {hi}, got {value}")


def parse_config(text):
    """Parse config text into a validated Config."""
    values = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SCHEMA:
                raise ConfigError(f"line {lineno}: unknown section [{section}]")
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if section is None:
            raise ConfigError(f"line {lineno}: key outside any [section]")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _SCHEMA[section]:
            raise ConfigError(f"line {lineno}: unknown key {section}.{key}")
        dotted = f"{section}.{key}"
        if dotted in values:
            raise ConfigError(f"line {lineno}: duplicate key {dotted}")
        try:
            parsed = int(val) if key == "nodes" else float(val)
        except ValueError:
            raise ConfigError(
                f"line {lineno}: bad value for {dotted}: {val!r}") from None
        _check_range(dotted, parsed, lineno)
        values[dotted] = parsed

    missing = [f"{s}.{k}" for s, keys in _SCHEMA.items() for k in keys
               if f"{s}.{k}" not in values]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")
    if values["quadrature.nodes"] % 2:
        raise ConfigError("quadrature.nodes must be even")
    if values["grid.tau_min_ns"] >= values["grid.tau_max_ns"]:
        raise ConfigError("grid.tau_min_ns must be < grid.tau_max_ns")

    return Config(
        s_r_uev=values["dot.s_r_uev"],
        sigma_uev=values["dot.sigma_uev"],
        gamma_x_per_ns=values["dot.gamma_x_per_ns"],
        gamma_xx_per_ns=values["dot.gamma_xx_per_ns"],
        gamma_s_per_ns=values["dot.gamma_s_per_ns"],
        p_per_ns=values["dot.p_per_ns"],
        k=values["emission.k"],
        irf_fwhm_ns=values["detector.irf_fwhm_ns"],
        tau_min_ns=values["grid.tau_min_ns"],
        tau_max_ns=values["grid.tau_max_ns"],
        tau_step_ns=values["grid.tau_step_ns"],
        nodes=values["quadrature.nodes"],
    )


def write_config(config):
    """Render a Config back to text; parse_config round-trips exactly."""
    lines = []
    for section, keys in _SCHEMA.items():
        lines.append(f"[{section}]")
        for key in keys:
            lines.append(f"{key} = {getattr(config, key)!r}")
        lines.append("")
    return "\n".join(lines)


def load_reference_config():
    """The shipped `salter2010_assumed` parameter profile."""
    text = resources.files("qdcascade.data").joinpath(
        "salter2010_assumed.cfg").read_text()
    return parse_config(text)
