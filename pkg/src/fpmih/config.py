"""Line-oriented ``key = value`` run configuration.

Every field of Topology, DelayParams, CostParams, MobilityParams and
Scenario is a key under its own name. Two key families are prefixed:

``size.<abbrev> = <octets>``        override one catalog message size
``sweep.<param> = start:step:stop`` sweep one parameter (inclusive stop)

Blank lines and ``#`` comments are ignored. Unknown keys, malformed values
and out-of-domain values are all reported together in one ConfigInvalid.
"""

from dataclasses import dataclass, field, fields
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .analytic.catalog import DEFAULT_CATALOG, UnknownMessage
from .params import CostParams, DelayParams, DomainError, MobilityParams, Scheme, Topology
from .simulator.scenario import ConfigInvalid, Scenario

GROUPS = {
    "topology": Topology,
    "delay": DelayParams,
    "cost": CostParams,
    "mobility": MobilityParams,
}
_NESTED = {"topology", "delay", "cost", "sizes"}
SCENARIO_KEYS = [f.name for f in fields(Scenario) if f.name not in _NESTED]

KEY_GROUP = {}
for _group, _cls in GROUPS.items():
    for _f in fields(_cls):
        KEY_GROUP[_f.name] = _group
for _name in SCENARIO_KEYS:
    KEY_GROUP[_name] = "scenario"

_DEFAULTS = {g: cls() for g, cls in GROUPS.items()}
_DEFAULTS["scenario"] = Scenario()


def known_keys():
    return sorted(KEY_GROUP)


def _convert(key, text):
    default = getattr(_DEFAULTS[KEY_GROUP[key]], key)
    if key == "scheme":
        return Scheme(text)
    if isinstance(default, bool):
        low = text.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"expected a boolean, got {text!r}")
    if key == "candidate_ok":
        return tuple(_convert("forward", t.strip()) for t in text.split(",") if t.strip())
    if isinstance(default, int):
        return int(text, 0)
    if isinstance(default, float):
        return float(text)
    return text


def _decimal_range(spec):
    try:
        start, step, stop = (Decimal(p.strip()) for p in spec.split(":"))
    except (ValueError, InvalidOperation):
        raise ValueError(f"expected start:step:stop, got {spec!r}") from None
    if step <= 0 or stop < start:
        raise ValueError(f"empty or backwards range {spec!r}")
    out, x = [], start
    while x <= stop:
        out.append(x)
        x += step
    return out


@dataclass(frozen=True)
class Sweep:
    param: str
    values: tuple  # Decimal values, converted per row

    def typed(self):
        group = KEY_GROUP[self.param]
        kind = type(getattr(_DEFAULTS[group], self.param))
        return [kind(v) if kind is not float else float(v) for v in self.values]


@dataclass(frozen=True)
class RunConfig:
    values: dict = field(default_factory=dict)  # key -> typed value
    sizes: tuple = ()
    sweep: Sweep | None = None
    source: str = "<defaults>"

    def group(self, name, **overrides):
        cls = GROUPS[name]
        kw = {k: v for k, v in self.values.items() if KEY_GROUP[k] == name}
        kw.update({k: v for k, v in overrides.items() if KEY_GROUP.get(k) == name})
        return cls(**kw)

    @property
    def topology(self):
        return self.group("topology")

    @property
    def delay(self):
        return self.group("delay")

    @property
    def cost(self):
        return self.group("cost")

    @property
    def mobility(self):
        return self.group("mobility")

    @property
    def catalog(self):
        return DEFAULT_CATALOG.with_sizes(**dict(self.sizes))

    def scenario(self, **overrides):
        """Scenario with config values, then ``overrides`` (any known key) applied."""
        kw = {k: v for k, v in self.values.items() if KEY_GROUP[k] == "scenario"}
        kw.update({k: v for k, v in overrides.items() if KEY_GROUP.get(k) == "scenario"})
        return Scenario(
            topology=self.group("topology", **overrides),
            delay=self.group("delay", **overrides),
            cost=self.group("cost", **overrides),
            sizes=self.sizes,
            **kw,
        )

    def scenarios(self, **overrides):
        """One scenario per sweep value, or a single scenario without a sweep."""
        if self.sweep is None:
            return [self.scenario(**overrides)]
        return [self.scenario(**{**overrides, self.sweep.param: v}) for v in self.sweep.typed()]


def parse_config(text, source="<string>") -> RunConfig:
    values, sizes, sweeps, problems = {}, {}, [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        key, sep, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if not sep or not key:
            problems.append(f"{where}: expected 'key = value'")
            continue
        if key.startswith("size."):
            abbrev = key[5:]
            try:
                DEFAULT_CATALOG.entry(abbrev)
                sizes[abbrev] = int(val, 0)
            except UnknownMessage:
                problems.append(f"{where}: unknown message {abbrev!r}")
            except ValueError:
                problems.append(f"{where}: {key} needs an integer, got {val!r}")
            continue
        if key.startswith("sweep."):
            param = key[6:]
            if param not in KEY_GROUP:
                problems.append(f"{where}: cannot sweep unknown key {param!r}")
                continue
            try:
                sweeps.append(Sweep(param, tuple(_decimal_range(val))))
            except ValueError as exc:
                problems.append(f"{where}: {key}: {exc}")
            continue
        if key not in KEY_GROUP:
            problems.append(f"{where}: unknown key {key!r}")
            continue
        try:
            values[key] = _convert(key, val)
        except ValueError as exc:
            problems.append(f"{where}: {key}: {exc}")
    if len(sweeps) > 1:
        problems.append(f"{source}: at most one sweep axis allowed, got "
                        + ", ".join(s.param for s in sweeps))
    cfg = RunConfig(values, tuple(sorted(sizes.items())), sweeps[0] if sweeps else None, source)
    if not problems:
        problems = _domain_problems(cfg)
    if problems:
        raise ConfigInvalid(problems)
    return cfg


def _domain_problems(cfg):
    problems = []
    for name in GROUPS:
        try:
            cfg.group(name)
        except DomainError as exc:
            problems.append(f"{cfg.source}: {exc}")
    if not problems:
        try:
            cfg.scenario().validate()
        except ConfigInvalid as exc:
            problems += [f"{cfg.source}: {p}" for p in exc.problems]
        except DomainError as exc:
            problems.append(f"{cfg.source}: {exc}")
    return problems


def load_config(path=None) -> RunConfig:
    if path is None:
        return RunConfig()
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigInvalid(f"{p}: cannot read config ({exc.strerror or exc})") from None
    return parse_config(text, str(p))
