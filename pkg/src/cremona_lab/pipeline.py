"""End-to-end construction of the curve pair (C, D) and the complement map psi."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .blowup import (
    ChartTower,
    DivisorClass,
    build_tower,
    homaloidal_class,
    contraction_sequence,
    homaloidal_data,
    predicted_psi_degree,
    strict_transform_classes,
    transport_class,
    transport_tower,
)
from .exactcore import XYZ, MPoly, StructuralError, as_rational, gcd_many
from .linsys import BaseConditions, cremona_from_net, contracted_image, linear_system, normalize_to_Q
from .plane import (
    CONIC_Q,
    LINE_L_PARAM,
    NonGenericError,
    BasePointError,
    PlaneCurve,
    ProjPoint,
    RationalMap,
    apply_map,
    compose,
    compose_raw,
    implicitize,
    inverse_map,
    map_param,
    pointwise_preimage,
)

X, Y, Z = MPoly.gens(XYZ)


class ConfigError(ValueError):
    pass


def default_a(n: int) -> tuple[Fraction, ...]:
    if n == 1:
        return (Fraction(1),)
    return (Fraction(0),) * (n - 2) + (Fraction(1), Fraction(1))


@dataclass(frozen=True)
class ConstructionConfig:
    n: int = 2
    lam: Fraction = Fraction(2)
    mu: Fraction = Fraction(1)
    a: tuple[Fraction, ...] | None = None
    modular: bool = False
    psi_poly: bool = False
    seed: int = 0
    samples: int = 20

    def __post_init__(self):
        try:
            n = int(self.n)
        except (TypeError, ValueError):
            raise ConfigError(f"n must be an integer, got {self.n!r}")
        if n != self.n or n < 1:
            raise ConfigError("n must be an integer >= 1")
        object.__setattr__(self, "n", n)
        try:
            lam, mu = as_rational(self.lam), as_rational(self.mu)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc))
        if lam in (0, 1):
            raise ConfigError("lambda must differ from 0 and 1")
        if mu == 0:
            raise ConfigError("mu must be nonzero")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        a = default_a(n) if self.a is None else tuple(as_rational(v) for v in self.a)
        if len(a) != n:
            raise ConfigError(f"a needs exactly n = {n} entries")
        if a[-1] == 0:
            raise ConfigError("a_n must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "seed", int(self.seed))
        if self.samples < 1:
            raise ConfigError("samples must be positive")

    @property
    def certificate_grade(self) -> bool:
        return self.n >= 2 and self.a[-2] != 0

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "a": [str(v) for v in self.a],
            "modular": self.modular,
            "psi_poly": self.psi_poly,
            "seed": self.seed,
        }

    @classmethod
    def from_mapping(cls, data: dict) -> "ConstructionConfig":
        known = {"n", "lambda", "lam", "mu", "a", "modular", "psi_poly", "seed", "samples"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        kw = {}
        if "n" in data:
            try:
                kw["n"] = int(data["n"])
            except (TypeError, ValueError):
                raise ConfigError(f"n must be an integer, got {data['n']!r}")
        for key in ("lambda", "lam"):
            if key in data:
                kw["lam"] = data[key]
        if "mu" in data:
            kw["mu"] = data["mu"]
        if "a" in data and data["a"] is not None:
            a = data["a"]
            kw["a"] = tuple(_parse_list(a) if isinstance(a, str) else a)
        for key in ("modular", "psi_poly"):
            if key in data:
                kw[key] = _parse_bool(data[key])
        for key in ("seed", "samples"):
            if key in data:
                try:
                    kw[key] = int(data[key])
                except ValueError:
                    raise ConfigError(f"{key} must be an integer")
        try:
            return cls(**kw)
        except ConfigError:
            raise
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(str(exc))


def _parse_list(text: str):
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse rational list {text!r}")


def _parse_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"cannot parse boolean {v!r}")


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` (or ``key: value``) lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for sep in ("=", ":"):
            if sep in line:
                key, value = line.split(sep, 1)
                break
        else:
            raise ConfigError(f"line {lineno}: expected key = value")
        out[key.strip()] = value.strip()
    return out


def read_config_file(path) -> dict:
    """Raw key/value pairs of a config file, not yet validated."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")
    return parse_config_text(text)


def load_config(path) -> ConstructionConfig:
    return ConstructionConfig.from_mapping(read_config_file(path))


# maps -------------------------------------------------------------------------------

def make_f(lam, mu) -> RationalMap:
    lam, mu = as_rational(lam), as_rational(mu)
    if lam in (0, 1):
        raise ValueError("lambda must differ from 0 and 1")
    if mu == 0:
        raise ValueError("mu must be nonzero")
    return RationalMap([mu ** 2 * (lam * X * Z + (1 - lam) * Y ** 2), mu * Y * Z, Z ** 2])


@dataclass(frozen=True)
class PhiData:
    tower: ChartTower
    classes: dict
    contractions: tuple[str, ...]
    homaloidal: DivisorClass
    raw: RationalMap
    phi: RationalMap


def phi_from_tower(t: ChartTower) -> PhiData:
    classes = strict_transform_classes(t)
    keep = f"E{t.length}"
    order = contraction_sequence(classes, keep=keep)
    hom = homaloidal_class(classes, order)
    system = linear_system(BaseConditions(hom.degree, t, hom.multiplicities))
    if system.dimension != 3:
        raise StructuralError(f"homaloidal system has dimension {system.dimension}, expected 3")
    raw = cremona_from_net(system)
    phi = normalize_to_Q(raw)
    return PhiData(t, classes, tuple(order), hom, raw, phi)


def build_phi(cfg: ConstructionConfig) -> PhiData:
    return phi_from_tower(build_tower(cfg.n, cfg.a))


def build_phi_prime(cfg: ConstructionConfig) -> PhiData:
    return phi_from_tower(transport_tower(build_tower(cfg.n, cfg.a), cfg.lam, cfg.mu))


@dataclass(frozen=True)
class CurvePair:
    C: PlaneCurve
    D: PlaneCurve
    q1_C: ProjPoint
    q1_D: ProjPoint


def make_curves(cfg: ConstructionConfig, phi: RationalMap, phi_prime: RationalMap) -> CurvePair:
    expected = transport_class(DivisorClass((1,) + (0,) * (4 + 2 * cfg.n)), [homaloidal_data(cfg.n)])
    curves, points = [], []
    for m in (phi, phi_prime):
        c = implicitize(map_param(m, LINE_L_PARAM))
        if c.degree != expected:
            raise StructuralError(f"image of L has degree {c.degree}, lattice predicts {expected}")
        q = contracted_image(m)
        if q is None:
            raise StructuralError("map does not contract the conic")
        curves.append(c)
        points.append(q)
    return CurvePair(curves[0], curves[1], points[0], points[1])


# psi --------------------------------------------------------------------------------

@dataclass(frozen=True)
class PsiSample:
    r: ProjPoint
    phi_r: ProjPoint
    preimage: ProjPoint
    lhs: ProjPoint
    rhs: ProjPoint

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class PsiRecord:
    samples: tuple[PsiSample, ...]
    seed: int
    predicted_degree: int
    psi: RationalMap | None = None
    cancelled_degree: int | None = None

    @property
    def all_hold(self) -> bool:
        return all(s.holds for s in self.samples)


def _random_point(rng: random.Random, bound: int = 9) -> ProjPoint:
    while True:
        v = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(3)]
        if any(v):
            return ProjPoint(tuple(v))


def make_psi(cfg: ConstructionConfig, phi: RationalMap, phi_prime: RationalMap, f: RationalMap,
             retries: int = 200) -> PsiRecord:
    rng = random.Random(cfg.seed)
    samples = []
    attempts = 0
    while len(samples) < cfg.samples:
        attempts += 1
        if attempts > cfg.samples + retries:
            raise StructuralError("too many non-generic samples")
        r = _random_point(rng)
        if CONIC_Q.equation.evaluate(r.coords) == 0 or r.coords[2] == 0:
            continue
        try:
            s = apply_map(phi, r)
            back = pointwise_preimage(phi, s)
            lhs = apply_map(phi_prime, apply_map(f, back))
            rhs = apply_map(phi_prime, apply_map(f, r))
        except (NonGenericError, BasePointError):
            continue
        samples.append(PsiSample(r, s, back, lhs, rhs))
    predicted = predicted_psi_degree(cfg.n)
    psi = None
    cancelled = None
    if cfg.psi_poly:
        h = compose(f, inverse_map(phi))
        raw = compose_raw(phi_prime, h)
        g = gcd_many(raw)
        cancelled = g.total_degree()
        psi = RationalMap([c.exact_div(g) for c in raw], cancel=False)
        if psi.degree != predicted:
            raise StructuralError(f"psi has degree {psi.degree}, lattice predicts {predicted}")
    return PsiRecord(tuple(samples), cfg.seed, predicted, psi, cancelled)


# full run ---------------------------------------------------------------------------

@dataclass
class ConstructionResult:
    config: ConstructionConfig
    f: RationalMap
    source: PhiData
    target: PhiData
    curves: CurvePair
    psi: PsiRecord
    certificates: list = field(default_factory=list)
    verdict: str = ""

    @property
    def phi(self) -> RationalMap:
        return self.source.phi

    @property
    def phi_prime(self) -> RationalMap:
        return self.target.phi


def construct(cfg: ConstructionConfig) -> ConstructionResult:
    """Maps, curves and the psi record, without certificates."""
    steps = [
        ("quadratic map f", lambda: make_f(cfg.lam, cfg.mu)),
        ("source cluster and phi", lambda: build_phi(cfg)),
        ("transported cluster and phi'", lambda: build_phi_prime(cfg)),
    ]
    out = []
    for name, fn in steps:
        try:
            out.append(fn())
        except (StructuralError, ValueError) as exc:
            raise StructuralError(f"{name}: {exc}") from exc
    f, src, tgt = out
    if src.phi == tgt.phi:
        raise StructuralError("phi and phi' coincide")
    try:
        curves = make_curves(cfg, src.phi, tgt.phi)
    except (StructuralError, ValueError) as exc:
        raise StructuralError(f"curves C = phi(L), D = phi'(L): {exc}") from exc
    try:
        psi = make_psi(cfg, src.phi, tgt.phi, f)
    except (StructuralError, ValueError) as exc:
        raise StructuralError(f"psi = phi' o f o phi^-1: {exc}") from exc
    return ConstructionResult(cfg, f, src, tgt, curves, psi)


def verdict_for(cfg: ConstructionConfig, certificates) -> str:
    if cfg.n < 2:
        return "INCONCLUSIVE (n < 2)"
    if not cfg.certificate_grade:
        return "INCONCLUSIVE (a_{n-1} = 0)"
    if all(c.verdict == "pass" for c in certificates):
        return "COUNTEREXAMPLE"
    return "NOT CERTIFIED"


def run_construction(cfg: ConstructionConfig) -> ConstructionResult:
    from .certify import all_certificates

    result = construct(cfg)
    result.certificates = all_certificates(result)
    result.verdict = verdict_for(cfg, result.certificates)
    return result
