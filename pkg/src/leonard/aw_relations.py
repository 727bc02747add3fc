"""Askey-Wilson coefficient tuples, affine maps, normalization and types.

An :class:`AwCoefficients` tuple ``(beta, gamma, gamma*, rho, rho*, omega,
eta, eta*)`` names the pair of relations

    A^2 A* - beta A A* A + A* A^2 - gamma (A A* + A* A) - rho A*
        = gamma* A^2 + omega A + eta I
    A*^2 A - beta A* A A* + A A*^2 - gamma* (A* A + A A*) - rho* A
        = gamma A*^2 + omega A* + eta* I

and an :class:`AffineMap` ``(t, t*, c, c*)`` sends ``(A, A*)`` to
``(t A + c, t* A* + c*)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields, replace

from .errors import InvalidSquareRoot, ParseError, ZeroScale
from .exact_field import Fraction, Scalar, as_scalar, format_scalar, parse_scalar

AW_NAMES = ("beta", "gamma", "gamma_star", "rho", "rho_star", "omega", "eta", "eta_star")


@dataclass(frozen=True)
class AwCoefficients:
    beta: Scalar
    gamma: Scalar
    gamma_star: Scalar
    rho: Scalar
    rho_star: Scalar
    omega: Scalar
    eta: Scalar
    eta_star: Scalar

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, as_scalar(getattr(self, f.name)))

    @classmethod
    def of(cls, *values) -> AwCoefficients:
        """``AwCoefficients.of(2, 0, 0, 1, 1, 3, 0, 0)``; ints and strings are coerced."""
        if len(values) != 8:
            raise ValueError(f"expected 8 coefficients, got {len(values)}")
        return cls(*values)

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, n) for n in AW_NAMES)

    def replace(self, **changes) -> AwCoefficients:
        return replace(self, **changes)

    def to_json(self) -> dict:
        return {name: format_scalar(getattr(self, name)) for name in AW_NAMES}

    @classmethod
    def from_json(cls, obj: dict, field: str = "rational") -> AwCoefficients:
        if not isinstance(obj, dict):
            raise ParseError("Askey-Wilson coefficients must be a JSON object")
        missing = [n for n in AW_NAMES if n not in obj]
        if missing:
            raise ParseError(f"missing Askey-Wilson coefficients: {', '.join(missing)}")
        return cls(*(parse_scalar(obj[n], field) for n in AW_NAMES))

    def __str__(self) -> str:
        return "AW(" + ", ".join(str(v) for v in self.as_tuple()) + ")"


@dataclass(frozen=True)
class AffineMap:
    """``(A, A*) -> (t A + c, t* A* + c*)`` with ``t, t*`` nonzero."""

    t: Scalar = Fraction(1)
    t_star: Scalar = Fraction(1)
    c: Scalar = Fraction(0)
    c_star: Scalar = Fraction(0)

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, as_scalar(getattr(self, f.name)))
        if self.t == 0 or self.t_star == 0:
            raise ZeroScale(f"affine map needs nonzero scales, got t={self.t}, t*={self.t_star}")

    @classmethod
    def translation(cls, c, c_star) -> AffineMap:
        return cls(1, 1, c, c_star)

    @classmethod
    def scaling(cls, t, t_star) -> AffineMap:
        return cls(t, t_star, 0, 0)

    def inverse(self) -> AffineMap:
        return AffineMap(1 / self.t, 1 / self.t_star, -self.c / self.t, -self.c_star / self.t_star)

    def then(self, other: AffineMap) -> AffineMap:
        """The map applying ``self`` first and ``other`` second."""
        return AffineMap(
            other.t * self.t,
            other.t_star * self.t_star,
            other.t * self.c + other.c,
            other.t_star * self.c_star + other.c_star,
        )

    def is_identity(self) -> bool:
        return self.t == 1 and self.t_star == 1 and self.c == 0 and self.c_star == 0

    def to_json(self) -> dict:
        return {name: format_scalar(getattr(self, name)) for name in ("t", "t_star", "c", "c_star")}

    @classmethod
    def from_json(cls, obj: dict, field: str = "rational") -> AffineMap:
        if not isinstance(obj, dict):
            raise ParseError("affine map must be a JSON object")
        defaults = {"t": 1, "t_star": 1, "c": 0, "c_star": 0}
        unknown = set(obj) - set(defaults)
        if unknown:
            raise ParseError(f"unknown affine map keys: {sorted(unknown)}")
        return cls(**{k: parse_scalar(obj.get(k, v), field) for k, v in defaults.items()})


def _scale(k: AwCoefficients, t: Scalar, ts: Scalar) -> AwCoefficients:
    b, g, gs, r, rs, w, e, es = k.as_tuple()
    return AwCoefficients(b, g * t, gs * ts, r * t**2, rs * ts**2, w * t * ts, e * t**2 * ts, es * t * ts**2)


def _translate(k: AwCoefficients, c: Scalar, cs: Scalar) -> AwCoefficients:
    b, g, gs, r, rs, w, e, es = k.as_tuple()
    return AwCoefficients(
        b,
        g + (2 - b) * c,
        gs + (2 - b) * cs,
        r - 2 * g * c + (b - 2) * c**2,
        rs - 2 * gs * cs + (b - 2) * cs**2,
        w - 2 * g * cs - 2 * gs * c + 2 * (b - 2) * c * cs,
        e - r * cs - w * c + gs * c**2 + 2 * g * c * cs + (2 - b) * c**2 * cs,
        es - rs * c - w * cs + g * cs**2 + 2 * gs * c * cs + (2 - b) * c * cs**2,
    )


def transform(k: AwCoefficients, m: AffineMap) -> AwCoefficients:
    """Coefficients of the relations satisfied by ``(tA + c, t*A* + c*)``.

    The map is applied as a scaling followed by a translation.
    """
    return _translate(_scale(k, m.t, m.t_star), m.c, m.c_star)


@dataclass(frozen=True)
class NormalizationResult:
    coefficients: AwCoefficients
    translation: AffineMap
    case_id: int
    unique: bool

    def to_json(self) -> dict:
        return {
            "coefficients": self.coefficients.to_json(),
            "translation": self.translation.to_json(),
            "case": self.case_id,
            "unique": self.unique,
        }


def _solve_case6(w, r, e, rs, es):
    # rank <= 1: prefer a = 0, otherwise a* = 0
    a_star = _common_root((r, e), (w, es))
    if a_star is not None:
        return Fraction(0), a_star
    a = _common_root((w, e), (rs, es))
    if a is not None:
        return a, Fraction(0)
    # omega = rho = rho* = 0: translations do not move eta, eta* at all
    return Fraction(0), Fraction(0)


def _common_root(*eqs):
    """x satisfying every ``coef * x == rhs`` in ``eqs``, or None."""
    x = None
    for coef, rhs in eqs:
        if coef != 0:
            x = rhs / coef
            break
    if x is None:
        x = Fraction(0)
    if all(coef * x == rhs for coef, rhs in eqs):
        return x
    return None


def normalize_translation(k: AwCoefficients) -> NormalizationResult:
    """Find the translation ``(c, c*)`` that zeroes the two coefficients
    prescribed for the pattern of ``(beta, gamma, gamma*)``.

    Cases 1-5 have a unique answer.  In case 6 (rank of
    ``[[omega, rho, eta], [rho*, omega, eta*]]`` at most 1) the answer with
    ``c = 0`` is preferred, falling back to ``c* = 0``; when omega, rho and
    rho* all vanish no translation moves eta or eta*, and the identity is
    returned.  In case 7 only one of
    eta, eta* can be zeroed; eta is zeroed with ``c* = 0`` when possible.
    """
    b, g, gs, r, rs, w, e, es = k.as_tuple()
    if b != 2:
        c, cs, case = g / (b - 2), gs / (b - 2), 1
    elif g != 0 and gs != 0:
        c, cs, case = r / (2 * g), rs / (2 * gs), 2
    elif g == 0 and gs != 0:
        c, cs, case = w / (2 * gs), rs / (2 * gs), 3
    elif gs == 0 and g != 0:
        c, cs, case = r / (2 * g), w / (2 * g), 4
    else:
        # translated eta = eta - omega c - rho c*, eta* = eta* - rho* c - omega c*
        det = w * w - r * rs
        if det != 0:
            c = (e * w - r * es) / det
            cs = (w * es - rs * e) / det
            case = 5
        else:
            minors = (w * es - e * rs, r * es - e * w)
            if all(x == 0 for x in minors):
                c, cs = _solve_case6(w, r, e, rs, es)
                case = 6
            else:
                case = 7
                if w != 0:
                    c, cs = e / w, Fraction(0)
                elif r != 0:
                    c, cs = Fraction(0), e / r
                elif rs != 0:
                    c, cs = es / rs, Fraction(0)
                else:
                    raise AssertionError("rank 2 with omega = rho = rho* = 0 is impossible")
    m = AffineMap.translation(c, cs)
    return NormalizationResult(transform(k, m), m, case, case <= 5)


class AwTag(enum.Enum):
    Q_RACAH = "q-racah"
    Q_HAHN = "q-hahn"
    DUAL_Q_HAHN = "dual-q-hahn"
    Q_KRAWTCHOUK = "q-krawtchouk"
    DUAL_Q_KRAWTCHOUK = "dual-q-krawtchouk"
    QUANTUM_OR_AFFINE_Q_KRAWTCHOUK = "quantum-affine-q-krawtchouk"
    RACAH = "racah"
    HAHN = "hahn"
    DUAL_HAHN = "dual-hahn"
    KRAWTCHOUK = "krawtchouk"
    BANNAI_ITO = "bannai-ito"

    @property
    def is_q(self) -> bool:
        return self.value.startswith(("q-", "dual-q-", "quantum-"))


@dataclass(frozen=True)
class AwType:
    tag: AwTag
    leonard_consistent: bool

    def to_json(self) -> dict:
        return {"type": self.tag.value, "leonard_consistent": self.leonard_consistent}


def classify(k: AwCoefficients) -> tuple[AwType, NormalizationResult]:
    """Askey-Wilson type of a coefficient tuple.

    Total on arbitrary tuples.  ``leonard_consistent`` reports whether the
    extra conditions that every Leonard pair of the type satisfies also hold.
    """
    norm = normalize_translation(k)
    h = norm.coefficients
    b = k.beta
    if b == -2:
        return AwType(AwTag.BANNAI_ITO, h.rho * h.rho_star != 0), norm
    if b == 2:
        g, gs = k.gamma, k.gamma_star
        if g != 0 and gs != 0:
            return AwType(AwTag.RACAH, True), norm
        if g == 0 and gs != 0:
            return AwType(AwTag.HAHN, h.rho != 0), norm
        if gs == 0 and g != 0:
            return AwType(AwTag.DUAL_HAHN, h.rho_star != 0), norm
        # eta = eta* = 0 must be reachable by a unique translation
        ok = norm.case_id == 5 and h.rho * h.rho_star != 0
        return AwType(AwTag.KRAWTCHOUK, ok), norm
    if h.rho != 0 and h.rho_star != 0:
        return AwType(AwTag.Q_RACAH, True), norm
    if h.rho == 0 and h.rho_star != 0:
        if h.eta != 0:
            return AwType(AwTag.Q_HAHN, True), norm
        return AwType(AwTag.Q_KRAWTCHOUK, h.eta_star != 0), norm
    if h.rho_star == 0 and h.rho != 0:
        if h.eta_star != 0:
            return AwType(AwTag.DUAL_Q_HAHN, True), norm
        return AwType(AwTag.DUAL_Q_KRAWTCHOUK, h.eta != 0), norm
    return AwType(AwTag.QUANTUM_OR_AFFINE_Q_KRAWTCHOUK, h.eta * h.eta_star != 0), norm


# First nonzero coefficient of (gamma, rho, eta, eta*) and of
# (gamma*, rho*, eta*, eta) after the normalizing translation.
SCALING_PIVOTS = {
    AwTag.Q_RACAH: ("rho", "rho_star"),
    AwTag.Q_HAHN: ("eta", "rho_star"),
    AwTag.DUAL_Q_HAHN: ("rho", "eta_star"),
    AwTag.Q_KRAWTCHOUK: ("eta_star", "rho_star"),
    AwTag.DUAL_Q_KRAWTCHOUK: ("rho", "eta"),
    AwTag.QUANTUM_OR_AFFINE_Q_KRAWTCHOUK: ("eta", "eta_star"),
    AwTag.RACAH: ("gamma", "gamma_star"),
    AwTag.HAHN: ("rho", "gamma_star"),
    AwTag.DUAL_HAHN: ("gamma", "rho_star"),
    AwTag.KRAWTCHOUK: ("rho", "rho_star"),
    AwTag.BANNAI_ITO: ("rho", "rho_star"),
}


def q_sequence(beta: Scalar, sqrt_beta_plus_2: Scalar, n: int) -> Scalar:
    """Q_n from Q_{k+2} = beta Q_k - Q_{k-2}, Q_{-1} = Q_1 = sqrt(beta+2), Q_0 = 2, Q_2 = beta.

    When beta = q^2 + q^-2 and the root is q + 1/q this is q^n + q^-n.
    """
    if sqrt_beta_plus_2 * sqrt_beta_plus_2 != beta + 2:
        raise InvalidSquareRoot(f"{sqrt_beta_plus_2}^2 != {beta} + 2")
    if n < -1:
        raise ValueError(f"Q_n is defined here for n >= -1, got {n}")
    # seq[k] holds Q_{k-1}
    seq = [sqrt_beta_plus_2, Fraction(2), sqrt_beta_plus_2, beta]
    while len(seq) < n + 2:
        k = len(seq) - 1  # index of the next Q_k
        seq.append(beta * seq[k - 1] - seq[k - 3])
    return seq[n + 1]


def pinned_scaling_targets(
    aw_type: AwType | AwTag,
    beta: Scalar,
    sqrt_beta_plus_2: Scalar,
    d: int,
    omega_zero: bool,
    eta_pair_nonzero: bool,
) -> tuple[Scalar, Scalar]:
    """Normalized values of the two scaling pivots (see ``SCALING_PIVOTS``).

    gamma-type pivots go to 2, rho-type pivots to ``4 - beta^2`` (or 1 when
    beta = +-2), and eta-type pivots to ``sqrt(beta+2)(beta-2)``, times
    ``Q_{d+1}`` when exactly one eta vanishes and omega does not.
    """
    if sqrt_beta_plus_2 * sqrt_beta_plus_2 != beta + 2:
        raise InvalidSquareRoot(f"{sqrt_beta_plus_2}^2 != {beta} + 2")
    tag = aw_type.tag if isinstance(aw_type, AwType) else aw_type

    def target(name: str) -> Scalar:
        if name.startswith("gamma"):
            return Fraction(2)
        if name.startswith("rho"):
            return Fraction(1) if beta in (2, -2) else 4 - beta * beta
        base = sqrt_beta_plus_2 * (beta - 2)
        if eta_pair_nonzero or omega_zero:
            return base
        return base * q_sequence(beta, sqrt_beta_plus_2, d + 1)

    first, second = SCALING_PIVOTS[tag]
    return target(first), target(second)
