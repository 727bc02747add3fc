"""Closed-form normalized parameter arrays for every Askey-Wilson type.

Three normalizations are provided:

``L5``
    q-families with ``theta_i = q^-i + s q^(i+1)`` and its degenerations.
``L6``
    q-families in the symmetric form ``theta_i = s q^(d-2i) + q^(2i-d)/s``.
    Relatives, invariant reparametrizations and scaling conversions are
    tabulated in this form; :func:`l6_from_l5` links it to ``L5``.
``L7``
    Racah, Hahn, dual Hahn, Krawtchouk and Bannai-Ito.

Each family comes with its expected Askey-Wilson tuple in closed form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

from .aw_relations import AffineMap, AwCoefficients, AwTag
from .errors import DegenerateParameters, FieldTooSmall, NotCovered, ParseError
from .exact_field import (
    Fraction,
    I,
    Scalar,
    as_scalar,
    format_scalar,
    parse_scalar,
)
from .parameter_array import ParameterArray, RelationOp, relation, validate


class Family(enum.Enum):
    Q_RACAH = "q-racah"
    Q_HAHN = "q-hahn"
    DUAL_Q_HAHN = "dual-q-hahn"
    Q_KRAWTCHOUK = "q-krawtchouk"
    DUAL_Q_KRAWTCHOUK = "dual-q-krawtchouk"
    QUANTUM_Q_KRAWTCHOUK = "quantum-q-krawtchouk"
    AFFINE_Q_KRAWTCHOUK = "affine-q-krawtchouk"
    RACAH = "racah"
    HAHN = "hahn"
    DUAL_HAHN = "dual-hahn"
    KRAWTCHOUK = "krawtchouk"
    BANNAI_ITO = "bannai-ito"

    @property
    def aw_tag(self) -> AwTag:
        if self in (Family.QUANTUM_Q_KRAWTCHOUK, Family.AFFINE_Q_KRAWTCHOUK):
            return AwTag.QUANTUM_OR_AFFINE_Q_KRAWTCHOUK
        return AwTag(self.value)

    @property
    def is_q(self) -> bool:
        return self in Q_FAMILIES

    @property
    def params(self) -> tuple[str, ...]:
        return PARAMS[self]


Q_FAMILIES = (
    Family.Q_RACAH, Family.Q_HAHN, Family.DUAL_Q_HAHN, Family.Q_KRAWTCHOUK,
    Family.DUAL_Q_KRAWTCHOUK, Family.QUANTUM_Q_KRAWTCHOUK, Family.AFFINE_Q_KRAWTCHOUK,
)
OTHER_FAMILIES = (Family.RACAH, Family.HAHN, Family.DUAL_HAHN, Family.KRAWTCHOUK, Family.BANNAI_ITO)

PARAMS = {
    Family.Q_RACAH: ("q", "s", "s_star", "r"),
    Family.Q_HAHN: ("q", "s_star", "r"),
    Family.DUAL_Q_HAHN: ("q", "s", "r"),
    Family.Q_KRAWTCHOUK: ("q", "s_star"),
    Family.DUAL_Q_KRAWTCHOUK: ("q", "s"),
    Family.QUANTUM_Q_KRAWTCHOUK: ("q", "r"),
    Family.AFFINE_Q_KRAWTCHOUK: ("q", "r"),
    Family.RACAH: ("u", "u_star", "v"),
    Family.HAHN: ("u_star", "v"),
    Family.DUAL_HAHN: ("u", "v"),
    Family.KRAWTCHOUK: ("v",),
    Family.BANNAI_ITO: ("u", "u_star", "v"),
}

NORMALIZATIONS = ("L5", "L6", "L7")


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    normalization: str
    d: int
    params: Mapping[str, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if self.normalization not in NORMALIZATIONS:
            raise ParseError(f"unknown normalization {self.normalization!r}")
        if fam.is_q == (self.normalization == "L7"):
            raise ParseError(f"{fam.value} has no {self.normalization} normalization")
        if not isinstance(self.d, int) or isinstance(self.d, bool) or self.d < 0:
            raise ParseError(f"diameter must be a non-negative integer, got {self.d!r}")
        params = {k: as_scalar(v) for k, v in dict(self.params).items()}
        need = set(fam.params)
        if set(params) != need:
            raise ParseError(
                f"{fam.value} takes parameters {sorted(need)}, got {sorted(params)}"
            )
        if fam.is_q:
            zero = [k for k in fam.params if params[k] == 0]
            if zero:
                raise DegenerateParameters(f"q-parameters must be nonzero: {', '.join(zero)}")
        object.__setattr__(self, "params", MappingProxyType(params))

    def __getitem__(self, name: str) -> Scalar:
        return self.params[name]

    def with_params(self, **changes) -> FamilySpec:
        return FamilySpec(self.family, self.normalization, self.d, {**self.params, **changes})

    def with_family(self, family: Family) -> FamilySpec:
        return FamilySpec(family, self.normalization, self.d, dict(self.params))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FamilySpec):
            return NotImplemented
        return (self.family, self.normalization, self.d, dict(self.params)) == (
            other.family, other.normalization, other.d, dict(other.params))

    def __hash__(self) -> int:
        return hash((self.family, self.normalization, self.d, tuple(sorted(self.params.items()))))

    def __repr__(self) -> str:
        ps = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"FamilySpec({self.family.value}, {self.normalization}, d={self.d}, {ps})"

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "normalization": self.normalization,
            "d": self.d,
            "params": {k: format_scalar(self.params[k]) for k in self.family.params},
        }

    @classmethod
    def from_json(cls, obj: dict, field: str = "rational") -> FamilySpec:
        if not isinstance(obj, dict):
            raise ParseError("family spec must be a JSON object")
        try:
            family = Family(obj["family"])
        except KeyError:
            raise ParseError("family spec needs a 'family'") from None
        except ValueError:
            raise ParseError(f"unknown family {obj['family']!r}") from None
        normalization = obj.get("normalization", "L6" if family.is_q else "L7")
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise ParseError("'params' must be a JSON object")
        return cls(family, normalization, obj.get("d"),
                   {k: parse_scalar(v, field) for k, v in params.items()})


# --------------------------------------------------------------------------
# generators

def _l5(fam: Family, d: int, p) -> tuple[Callable, Callable, Callable, Callable]:
    q = p["q"]
    s, ss, r = p.get("s"), p.get("s_star"), p.get("r")

    def c(i):
        return (1 - q**i) * (1 - q ** (i - d - 1))

    if fam is Family.Q_RACAH:
        return (lambda i: q**-i + s * q ** (i + 1),
                lambda i: q**-i + ss * q ** (i + 1),
                lambda i: q ** (1 - 2 * i) * c(i) * (1 - r * q**i) * (r - s * ss * q ** (d + 1 + i)) / r,
                lambda i: q ** (1 - 2 * i) * c(i) * (r - ss * q**i) * (s * q ** (d + 1) - r * q**i) / r)
    if fam is Family.Q_HAHN:
        return (lambda i: q**-i,
                lambda i: q**-i + ss * q ** (i + 1),
                lambda i: q ** (1 - 2 * i) * c(i) * (1 - r * q**i),
                lambda i: -q ** (1 - i) * c(i) * (r - ss * q**i))
    if fam is Family.DUAL_Q_HAHN:
        return (lambda i: q**-i + s * q ** (i + 1),
                lambda i: q**-i,
                lambda i: q ** (1 - 2 * i) * c(i) * (1 - r * q**i),
                lambda i: q ** (d + 2 - 2 * i) * c(i) * (s - r * q ** (i - d - 1)))
    if fam is Family.Q_KRAWTCHOUK:
        return (lambda i: q**-i,
                lambda i: q**-i + ss * q ** (i + 1),
                lambda i: q ** (1 - 2 * i) * c(i),
                lambda i: ss * q * c(i))
    if fam is Family.DUAL_Q_KRAWTCHOUK:
        return (lambda i: q**-i + s * q ** (i + 1),
                lambda i: q**-i,
                lambda i: q ** (1 - 2 * i) * c(i),
                lambda i: s * q ** (d + 2 - 2 * i) * c(i))
    if fam is Family.QUANTUM_Q_KRAWTCHOUK:
        return (lambda i: q ** (i + 1),
                lambda i: q**-i,
                lambda i: -r * q ** (1 - i) * c(i),
                lambda i: q ** (d + 2 - 2 * i) * c(i) * (1 - r * q ** (i - d - 1)))
    if fam is Family.AFFINE_Q_KRAWTCHOUK:
        return (lambda i: q**-i,
                lambda i: q**-i,
                lambda i: q ** (1 - 2 * i) * c(i) * (1 - r * q**i),
                lambda i: -r * q ** (1 - i) * c(i))
    raise NotCovered(f"{fam.value} has no L5 form")


def _l6(fam: Family, d: int, p):
    q = p["q"]
    s, ss, r = p.get("s"), p.get("s_star"), p.get("r")

    def c(i):
        return (1 - q ** (2 * i)) * (1 - q ** (2 * i - 2 * d - 2))

    def x(i):
        return q ** (2 * i - d - 1)

    def sym(a):
        return lambda i: a * q ** (d - 2 * i) + q ** (2 * i - d) / a

    def lead(i):
        return q ** (2 * d + 2 - 4 * i)

    if fam is Family.Q_RACAH:
        return (sym(s), sym(ss),
                lambda i: lead(i) / (s * ss * r) * c(i) * (s * ss - r * x(i)) * (s * ss * r - x(i)),
                lambda i: lead(i) / (s * ss * r) * c(i) * (ss * r - s * x(i)) * (ss - s * r * x(i)))
    if fam is Family.Q_HAHN:
        return (lambda i: r * q ** (d - 2 * i), sym(ss),
                lambda i: lead(i) / r * c(i) * (ss * r**2 - x(i)),
                lambda i: -q ** (d + 1 - 2 * i) / (r * ss) * c(i) * (ss - r**2 * x(i)))
    if fam is Family.DUAL_Q_HAHN:
        return (sym(s), lambda i: r * q ** (d - 2 * i),
                lambda i: lead(i) / r * c(i) * (s * r**2 - x(i)),
                lambda i: lead(i) / (r * s) * c(i) * (r**2 - s * x(i)))
    if fam is Family.Q_KRAWTCHOUK:
        return (lambda i: q ** (d - 2 * i), sym(ss),
                lambda i: ss * lead(i) * c(i),
                lambda i: c(i) / ss)
    if fam is Family.DUAL_Q_KRAWTCHOUK:
        return (sym(s), lambda i: q ** (d - 2 * i),
                lambda i: s * lead(i) * c(i),
                lambda i: lead(i) / s * c(i))
    if fam is Family.QUANTUM_Q_KRAWTCHOUK:
        return (lambda i: r * q ** (2 * i - d), lambda i: r * q ** (d - 2 * i),
                lambda i: -q ** (d + 1 - 2 * i) / r * c(i),
                lambda i: lead(i) / r * c(i) * (r**3 - x(i)))
    if fam is Family.AFFINE_Q_KRAWTCHOUK:
        return (lambda i: r * q ** (d - 2 * i), lambda i: r * q ** (d - 2 * i),
                lambda i: lead(i) / r * c(i) * (r**3 - x(i)),
                lambda i: -q ** (d + 1 - 2 * i) / r * c(i))
    raise NotCovered(f"{fam.value} has no L6 form")


def _l7(fam: Family, d: int, p):
    u, us, v = p.get("u"), p.get("u_star"), p.get("v")
    half_d = Fraction(d, 2)

    def quad(a):
        return lambda i: (i + a) * (i + a + 1)

    if fam is Family.RACAH:
        return (quad(u), quad(us),
                lambda i: i * (i - d - 1) * (i + u + us - v) * (i + u + us + d + 1 + v),
                lambda i: i * (i - d - 1) * (i - u + us + v) * (i - u + us - d - 1 - v))
    if fam is Family.HAHN:
        return (lambda i: i + v - half_d, quad(us),
                lambda i: i * (i - d - 1) * (i + us + 2 * v),
                lambda i: -i * (i - d - 1) * (i + us - 2 * v))
    if fam is Family.DUAL_HAHN:
        return (quad(u), lambda i: i + v - half_d,
                lambda i: i * (i - d - 1) * (i + u + 2 * v),
                lambda i: i * (i - d - 1) * (i - u + 2 * v - d - 1))
    if fam is Family.KRAWTCHOUK:
        return (lambda i: i - half_d, lambda i: i - half_d,
                lambda i: v * i * (i - d - 1),
                lambda i: (v - 1) * i * (i - d - 1))
    if fam is Family.BANNAI_ITO:
        h = Fraction(d + 1, 2)

        def varphi(i):
            if d % 2 == 0:
                if i % 2 == 0:
                    return -i * (i + u + us + v - h)
                return -(i - d - 1) * (i + u + us - v - h)
            if i % 2 == 0:
                return Fraction(-i * (i - d - 1))
            return v**2 - (i + u + us - h) ** 2

        def phi(i):
            if d % 2 == 0:
                if i % 2 == 0:
                    return i * (i - u + us - v - h)
                return (i - d - 1) * (i - u + us + v - h)
            if i % 2 == 0:
                return Fraction(-i * (i - d - 1))
            return v**2 - (i - u + us - h) ** 2

        return (lambda i: (-1) ** i * (i + u - half_d),
                lambda i: (-1) ** i * (i + us - half_d),
                varphi, phi)
    raise NotCovered(f"{fam.value} has no L7 form")


_BUILDERS = {"L5": _l5, "L6": _l6, "L7": _l7}


def generate(spec: FamilySpec) -> ParameterArray:
    """The normalized parameter array of ``spec``; raises DegenerateParameters
    when the parameters do not give a parameter array."""
    d = spec.d
    th, ts, vp, ph = _BUILDERS[spec.normalization](spec.family, d, dict(spec.params))
    try:
        pa = ParameterArray(
            [th(i) for i in range(d + 1)],
            [ts(i) for i in range(d + 1)],
            [vp(i) for i in range(1, d + 1)],
            [ph(i) for i in range(1, d + 1)],
        )
    except ZeroDivisionError as exc:
        raise DegenerateParameters(f"{spec!r}: division by zero while generating ({exc})") from None
    violations = validate(pa)
    if violations:
        raise DegenerateParameters(
            f"{spec!r} does not give a parameter array: "
            + "; ".join(f"{v.condition} at {list(v.indices)}" for v in violations),
            [v.to_json() for v in violations],
        )
    return pa


# --------------------------------------------------------------------------
# expected Askey-Wilson tuples

def _aw_l5(fam: Family, d: int, p) -> AwCoefficients:
    q = p["q"]
    s, ss, r = p.get("s"), p.get("s_star"), p.get("r")
    n = q ** (d + 1)
    beta = q + 1 / q
    K = -((q**2 - 1) ** 2) / q
    Ks = (q - 1) ** 2 / n
    Q = n + 1
    z = Fraction(0)
    if fam is Family.Q_RACAH:
        S, Ss, R = s * n + 1, ss * n + 1, r + s * ss * n / r
        return AwCoefficients(beta, z, z, s * K, ss * K, -Ks * (S * Ss + R * Q),
                              (q + 1) * Ks * (S * R + s * Ss * Q), (q + 1) * Ks * (Ss * R + ss * S * Q))
    if fam is Family.Q_HAHN:
        Ss = ss * n + 1
        return AwCoefficients(beta, z, z, z, ss * K, -Ks * (Ss + r * Q),
                              (q + 1) * Ks * r, (q + 1) * Ks * (Ss * r + ss * Q))
    if fam is Family.DUAL_Q_HAHN:
        S = s * n + 1
        return AwCoefficients(beta, z, z, s * K, z, -Ks * (S + r * Q),
                              (q + 1) * Ks * (S * r + s * Q), (q + 1) * Ks * r)
    if fam is Family.Q_KRAWTCHOUK:
        Ss = ss * n + 1
        return AwCoefficients(beta, z, z, z, ss * K, -Ks * Ss, z, (q + 1) * Ks * ss * Q)
    if fam is Family.DUAL_Q_KRAWTCHOUK:
        S = s * n + 1
        return AwCoefficients(beta, z, z, s * K, z, -Ks * S, (q + 1) * Ks * s * Q, z)
    if fam is Family.QUANTUM_Q_KRAWTCHOUK:
        return AwCoefficients(beta, z, z, z, z, -Ks * (n + r * Q),
                              (q + 1) * (q - 1) ** 2 * r, (q + 1) * Ks * r)
    if fam is Family.AFFINE_Q_KRAWTCHOUK:
        return AwCoefficients(beta, z, z, z, z, -Ks * (1 + r * Q), (q + 1) * Ks * r, (q + 1) * Ks * r)
    raise NotCovered(f"{fam.value} has no L5 form")


def _aw_l6(fam: Family, d: int, p) -> AwCoefficients:
    q = p["q"]
    s, ss, r = p.get("s"), p.get("s_star"), p.get("r")

    def Qp(j):
        return q**j + q**-j

    def Qm(j):
        return q**j - q**-j

    Q2, Qd = Qp(2), Qp(d + 1)
    rho_pin = -Qm(2) ** 2
    w0 = Qm(1) ** 2
    e0 = Qp(1) * Qm(1) ** 2
    z = Fraction(0)
    if fam is Family.Q_RACAH:
        S, Ss, R = s + 1 / s, ss + 1 / ss, r + 1 / r
        return AwCoefficients(Q2, z, z, rho_pin, rho_pin, -w0 * (S * Ss + Qd * R),
                              e0 * (S * R + Qd * Ss), e0 * (Ss * R + Qd * S))
    if fam is Family.Q_HAHN:
        Ss = ss + 1 / ss
        return AwCoefficients(Q2, z, z, z, rho_pin, -w0 * (Ss * r + Qd / r), e0, e0 * (Ss / r + Qd * r))
    if fam is Family.DUAL_Q_HAHN:
        S = s + 1 / s
        return AwCoefficients(Q2, z, z, rho_pin, z, -w0 * (S * r + Qd / r), e0 * (S / r + Qd * r), e0)
    if fam is Family.Q_KRAWTCHOUK:
        Ss = ss + 1 / ss
        return AwCoefficients(Q2, z, z, z, rho_pin, -w0 * Ss, z, e0 * Qd)
    if fam is Family.DUAL_Q_KRAWTCHOUK:
        S = s + 1 / s
        return AwCoefficients(Q2, z, z, rho_pin, z, -w0 * S, e0 * Qd, z)
    if fam in (Family.QUANTUM_Q_KRAWTCHOUK, Family.AFFINE_Q_KRAWTCHOUK):
        return AwCoefficients(Q2, z, z, z, z, -w0 * (r**2 + Qd / r), e0, e0)
    raise NotCovered(f"{fam.value} has no L6 form")


def _aw_l7(fam: Family, d: int, p) -> AwCoefficients:
    u, us, v = p.get("u"), p.get("u_star"), p.get("v")
    z, one, two = Fraction(0), Fraction(1), Fraction(2)
    if fam is Family.RACAH:
        return AwCoefficients(
            two, two, two, z, z,
            -2 * u**2 - 2 * us**2 - 2 * v**2 - 2 * (d + 1) * (u + us + v) - 2 * d**2 - 4 * d,
            2 * u * (u + d + 1) * (v - us) * (v + us + d + 1),
            2 * us * (us + d + 1) * (v - u) * (v + u + d + 1),
        )
    if fam is Family.HAHN:
        return AwCoefficients(two, z, two, one, z, z,
                              -(us + 1) * (us + d) - 2 * v**2 - Fraction(d**2, 2),
                              -4 * us * (us + d + 1) * v)
    if fam is Family.DUAL_HAHN:
        return AwCoefficients(two, two, z, z, one, z,
                              -4 * u * (u + d + 1) * v,
                              -(u + 1) * (u + d) - 2 * v**2 - Fraction(d**2, 2))
    if fam is Family.KRAWTCHOUK:
        return AwCoefficients(two, z, z, one, one, 2 * v - 1, z, z)
    if fam is Family.BANNAI_ITO:
        if d % 2 == 0:
            return AwCoefficients(-two, z, z, one, one,
                                  4 * u * us - 2 * (d + 1) * v,
                                  2 * u * v - (d + 1) * us,
                                  2 * us * v - (d + 1) * u)
        sq = Fraction((d + 1) ** 2)
        return AwCoefficients(-two, z, z, one, one,
                              -2 * u**2 - 2 * us**2 + 2 * v**2 + sq / 2,
                              -u**2 + us**2 - v**2 + sq / 4,
                              u**2 - us**2 - v**2 + sq / 4)
    raise NotCovered(f"{fam.value} has no L7 form")


_AW = {"L5": _aw_l5, "L6": _aw_l6, "L7": _aw_l7}


def expected_aw(spec: FamilySpec) -> AwCoefficients:
    """Closed-form Askey-Wilson tuple of ``generate(spec)``.

    Raises DegenerateParameters exactly when :func:`generate` does.
    """
    generate(spec)
    return _AW[spec.normalization](spec.family, spec.d, dict(spec.params))


# --------------------------------------------------------------------------
# conversions between specs

def _inv(x):
    return 1 / x


def _neg_shift(d):
    return lambda x: -x - d - 1


def _neg(x):
    return -x


# Relative arrays.  None marks the table entries where the relative leaves the
# normalized family (no reparametrization exists).
_RELATIVES = {
    Family.Q_RACAH: {RelationOp.DDOWN: {"s": _inv}, RelationOp.DOWN: {"s_star": _inv}},
    Family.Q_HAHN: {RelationOp.DDOWN: {"q": _inv, "s_star": _inv}, RelationOp.DOWN: {"s_star": _inv}},
    Family.DUAL_Q_HAHN: {RelationOp.DDOWN: {"s": _inv}, RelationOp.DOWN: {"q": _inv, "s": _inv}},
    Family.Q_KRAWTCHOUK: {RelationOp.DDOWN: {"q": _inv, "s_star": _inv}, RelationOp.DOWN: {"s_star": _inv}},
    Family.DUAL_Q_KRAWTCHOUK: {RelationOp.DDOWN: {"s": _inv}, RelationOp.DOWN: {"q": _inv, "s": _inv}},
    Family.QUANTUM_Q_KRAWTCHOUK: {RelationOp.DDOWN: {}, RelationOp.DOWN: {"q": _inv}},
    Family.AFFINE_Q_KRAWTCHOUK: {RelationOp.DDOWN: {}, RelationOp.DOWN: {"q": _inv}},
    Family.RACAH: {RelationOp.DDOWN: {"u": "shift"}, RelationOp.DOWN: {"u_star": "shift"}},
    Family.HAHN: {RelationOp.DDOWN: None, RelationOp.DOWN: {"u_star": "shift"}},
    Family.DUAL_HAHN: {RelationOp.DDOWN: {"u": "shift"}, RelationOp.DOWN: None},
    Family.BANNAI_ITO: {RelationOp.DDOWN: {"u": _neg}, RelationOp.DOWN: {"u_star": _neg}},
}

_SWITCH = {
    Family.QUANTUM_Q_KRAWTCHOUK: Family.AFFINE_Q_KRAWTCHOUK,
    Family.AFFINE_Q_KRAWTCHOUK: Family.QUANTUM_Q_KRAWTCHOUK,
}


def _substitute(spec: FamilySpec, subs: dict) -> FamilySpec:
    changes = {}
    for name, fn in subs.items():
        if fn == "shift":
            fn = _neg_shift(spec.d)
        changes[name] = fn(spec.params[name])
    return spec.with_params(**changes)


def _require(spec: FamilySpec, normalization: str, what: str) -> None:
    if spec.normalization != normalization:
        raise NotCovered(f"{what} is tabulated for the {normalization} normalization, "
                         f"not {spec.normalization}")


def relative_spec(spec: FamilySpec, op: RelationOp) -> FamilySpec:
    """The family spec whose array is ``relation(generate(spec), op)``."""
    op = RelationOp(op)
    _require(spec, "L7" if spec.family in OTHER_FAMILIES else "L6", "relative arrays")
    fam = spec.family
    if fam is Family.KRAWTCHOUK or (fam is Family.BANNAI_ITO and spec.d % 2 == 0):
        raise NotCovered(f"relatives of {fam.value} (d = {spec.d}) leave the normalized family")
    if op is RelationOp.DOWN_DDOWN:
        return relative_spec(relative_spec(spec, RelationOp.DDOWN), RelationOp.DOWN)
    subs = _RELATIVES[fam][op]
    if subs is None:
        raise NotCovered(f"the {op.value} relative of {fam.value} leaves the normalized family")
    out = _substitute(spec, subs)
    if fam in _SWITCH:
        out = out.with_family(_SWITCH[fam])
    return out


def invariant_reparams(spec: FamilySpec) -> list[FamilySpec]:
    """Reparametrizations that generate exactly the same array."""
    fam, d = spec.family, spec.d
    sign_d, sign_d1 = (-1) ** d, (-1) ** (d + 1)
    if fam.is_q:
        _require(spec, "L6", "invariant reparametrizations")
    else:
        _require(spec, "L7", "invariant reparametrizations")
    p = spec.params
    if fam is Family.Q_RACAH:
        return [
            spec.with_params(r=1 / p["r"]),
            spec.with_params(q=1 / p["q"], s=1 / p["s"], s_star=1 / p["s_star"]),
            spec.with_params(q=-p["q"], s=sign_d * p["s"], s_star=sign_d * p["s_star"], r=sign_d1 * p["r"]),
        ]
    if fam in (Family.Q_KRAWTCHOUK, Family.DUAL_Q_KRAWTCHOUK):
        return [spec.with_params(q=-p["q"])] if d % 2 == 0 else []
    if fam in (Family.Q_HAHN, Family.DUAL_Q_HAHN, Family.QUANTUM_Q_KRAWTCHOUK, Family.AFFINE_Q_KRAWTCHOUK):
        return []
    if fam is Family.RACAH:
        return [spec.with_params(v=-p["v"] - d - 1)]
    if fam is Family.BANNAI_ITO:
        return [spec.with_params(v=-p["v"])] if d % 2 == 1 else []
    raise NotCovered(f"no invariant reparametrizations are tabulated for {fam.value}")


@dataclass(frozen=True)
class ScalingConversion:
    """``affine_apply(generate(source), scaling)`` equals
    ``generate(target)``, followed by ``relation`` when it is set."""

    scaling: AffineMap
    target: FamilySpec
    relation: RelationOp | None = None

    def apply_to(self, pa: ParameterArray) -> ParameterArray:
        return relation(pa, self.relation) if self.relation is not None else pa

    def to_json(self) -> dict:
        return {
            "scaling": self.scaling.to_json(),
            "spec": self.target.to_json(),
            "relation": self.relation.value if self.relation else None,
        }


def scaling_conversion(spec: FamilySpec) -> list[ScalingConversion]:
    """Scalings by roots of unity that keep the scaling pivots fixed, with
    the reparametrization that absorbs each of them."""
    fam, p = spec.family, spec.params
    if fam.is_q:
        _require(spec, "L6", "scaling conversions")
    else:
        _require(spec, "L7", "scaling conversions")
    one, m1 = Fraction(1), Fraction(-1)
    if fam is Family.Q_RACAH:
        return [
            ScalingConversion(AffineMap.scaling(m1, one), spec.with_params(s=-p["s"], r=-p["r"])),
            ScalingConversion(AffineMap.scaling(one, m1), spec.with_params(s_star=-p["s_star"], r=-p["r"])),
        ]
    if fam is Family.Q_HAHN:
        return [ScalingConversion(AffineMap.scaling(I, m1), spec.with_params(s_star=-p["s_star"], r=I * p["r"]))]
    if fam is Family.DUAL_Q_HAHN:
        return [ScalingConversion(AffineMap.scaling(m1, I), spec.with_params(s=-p["s"], r=I * p["r"]))]
    if fam is Family.Q_KRAWTCHOUK:
        return [ScalingConversion(AffineMap.scaling(one, m1), spec.with_params(s_star=-p["s_star"]))]
    if fam is Family.DUAL_Q_KRAWTCHOUK:
        return [ScalingConversion(AffineMap.scaling(m1, one), spec.with_params(s=-p["s"]))]
    if fam in (Family.QUANTUM_Q_KRAWTCHOUK, Family.AFFINE_Q_KRAWTCHOUK):
        raise FieldTooSmall("the scaling for this type needs a primitive cube root of unity, "
                            "which is not in Q(i)")
    if fam is Family.RACAH:
        return []
    if fam is Family.HAHN:
        return [ScalingConversion(AffineMap.scaling(m1, one), spec.with_params(v=-p["v"]), RelationOp.DDOWN)]
    if fam is Family.DUAL_HAHN:
        return [ScalingConversion(AffineMap.scaling(one, m1), spec.with_params(v=-p["v"]), RelationOp.DOWN)]
    if fam is Family.KRAWTCHOUK:
        # the relation swaps the roles of v and v - 1 in the two phi sequences
        return [
            ScalingConversion(AffineMap.scaling(m1, one), spec.with_params(v=1 - p["v"]), RelationOp.DDOWN),
            ScalingConversion(AffineMap.scaling(one, m1), spec.with_params(v=1 - p["v"]), RelationOp.DOWN),
        ]
    if fam is Family.BANNAI_ITO:
        if spec.d % 2 == 1:
            raise NotCovered("for odd d the Bannai-Ito scalings cannot be absorbed by the normalized array")
        return [
            ScalingConversion(AffineMap.scaling(m1, one), spec.with_params(u=-p["u"], v=-p["v"]), RelationOp.DDOWN),
            ScalingConversion(AffineMap.scaling(one, m1), spec.with_params(u_star=-p["u_star"], v=-p["v"]),
                              RelationOp.DOWN),
        ]
    raise NotCovered(f"no scaling conversions for {fam.value}")


def sqrt_sign_conversion(spec: FamilySpec) -> ScalingConversion | None:
    """Reparametrization matching the other sign of sqrt(beta + 2).

    Returns the sign scaling ``(t, t*)`` (entries +-1) with the family spec it lands
    on, or None when the type has no such alternative.
    """
    fam, p, d = spec.family, spec.params, spec.d
    if not fam.is_q:
        return None
    _require(spec, "L6", "sign changes of sqrt(beta + 2)")
    sd, sd1 = Fraction((-1) ** d), Fraction((-1) ** (d + 1))
    one, m1 = Fraction(1), Fraction(-1)
    q = -p["q"]
    if fam is Family.Q_HAHN:
        return ScalingConversion(AffineMap.scaling(sd, m1), spec.with_params(q=q, s_star=sd1 * p["s_star"]))
    if fam is Family.DUAL_Q_HAHN:
        return ScalingConversion(AffineMap.scaling(m1, sd), spec.with_params(q=q, s=sd1 * p["s"]))
    if fam is Family.Q_KRAWTCHOUK and d % 2 == 1:
        return ScalingConversion(AffineMap.scaling(m1, one), spec.with_params(q=q, s_star=-p["s_star"]))
    if fam is Family.DUAL_Q_KRAWTCHOUK and d % 2 == 1:
        return ScalingConversion(AffineMap.scaling(one, m1), spec.with_params(q=q, s=-p["s"]))
    if fam in (Family.QUANTUM_Q_KRAWTCHOUK, Family.AFFINE_Q_KRAWTCHOUK):
        return ScalingConversion(AffineMap.scaling(m1, m1), spec.with_params(q=q, r=sd1 * p["r"]))
    return None


# L6 -> L5: r substitution and scaling (t, t*) per family, as functions of
# the L6 parameters.
def l6_from_l5(spec: FamilySpec) -> tuple[FamilySpec, AffineMap]:
    """For an L6 spec, the L5 spec and scaling with
    ``affine_apply(generate(l5_spec), scaling) == generate(spec)``."""
    if spec.normalization != "L6":
        raise NotCovered("l6_from_l5 takes an L6 spec")
    fam, d, p = spec.family, spec.d, spec.params
    q = p["q"]
    s, ss, r = p.get("s"), p.get("s_star"), p.get("r")
    qd, qd1 = q**d, q ** (d + 1)
    params = {"q": q**2}
    if s is not None:
        params["s"] = 1 / (s**2 * q ** (2 * d + 2))
    if ss is not None:
        params["s_star"] = 1 / (ss**2 * q ** (2 * d + 2))
    if fam is Family.Q_RACAH:
        params["r"] = r / (s * ss * qd1)
        scale = (s * qd, ss * qd)
    elif fam is Family.Q_HAHN:
        params["r"] = 1 / (ss * r**2 * qd1)
        scale = (r * qd, ss * qd)
    elif fam is Family.DUAL_Q_HAHN:
        params["r"] = 1 / (s * r**2 * qd1)
        scale = (s * qd, r * qd)
    elif fam is Family.Q_KRAWTCHOUK:
        scale = (qd, ss * qd)
    elif fam is Family.DUAL_Q_KRAWTCHOUK:
        scale = (s * qd, qd)
    elif fam is Family.QUANTUM_Q_KRAWTCHOUK:
        params["r"] = qd1 / r**3
        scale = (r * q ** (-d - 2), r * qd)
    else:
        params["r"] = 1 / (r**3 * qd1)
        scale = (r * qd, r * qd)
    return FamilySpec(fam, "L5", d, params), AffineMap.scaling(*scale)
