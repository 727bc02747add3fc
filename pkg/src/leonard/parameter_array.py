"""Parameter arrays ``(theta; theta*; varphi; phi)`` of diameter d.

``varphi`` sits on the superdiagonal of A* in the first split form and
``phi`` in the second.  Lists are 0-based in Python: ``varphi[0]`` is
varphi_1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .aw_relations import AffineMap, AwCoefficients
from .errors import (
    DiameterTooSmall,
    IndexOutOfRange,
    InconsistentFormulas,
    ParseError,
    StructureError,
)
from .exact_field import Fraction, Scalar, as_scalar, format_scalar, parse_scalar
from .linalg import Matrix


def _scalars(xs) -> tuple:
    return tuple(as_scalar(x) for x in xs)


@dataclass(frozen=True)
class ParameterArray:
    theta: tuple
    theta_star: tuple
    varphi: tuple
    phi: tuple

    def __post_init__(self):
        for name in ("theta", "theta_star", "varphi", "phi"):
            object.__setattr__(self, name, _scalars(getattr(self, name)))
        n = len(self.theta)
        if n == 0:
            raise StructureError("theta must have at least one entry")
        if len(self.theta_star) != n:
            raise StructureError(f"theta has {n} entries but theta_star has {len(self.theta_star)}")
        for name in ("varphi", "phi"):
            if len(getattr(self, name)) != n - 1:
                raise StructureError(f"{name} must have d = {n - 1} entries, got {len(getattr(self, name))}")

    @property
    def d(self) -> int:
        return len(self.theta) - 1

    # boundary convention: varphi_0 = varphi_{d+1} = phi_0 = phi_{d+1} = 0
    def varphi_at(self, i: int) -> Scalar:
        return self.varphi[i - 1] if 1 <= i <= self.d else Fraction(0)

    def phi_at(self, i: int) -> Scalar:
        return self.phi[i - 1] if 1 <= i <= self.d else Fraction(0)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "theta": [format_scalar(x) for x in self.theta],
            "theta_star": [format_scalar(x) for x in self.theta_star],
            "varphi": [format_scalar(x) for x in self.varphi],
            "phi": [format_scalar(x) for x in self.phi],
        }

    @classmethod
    def from_json(cls, obj: dict, field: str = "rational") -> ParameterArray:
        if not isinstance(obj, dict):
            raise ParseError("parameter array must be a JSON object")
        lists = {}
        for key in ("theta", "theta_star", "varphi", "phi"):
            if not isinstance(obj.get(key), list):
                raise ParseError(f"parameter array needs a list under {key!r}")
            lists[key] = [parse_scalar(x, field) for x in obj[key]]
        pa = cls(**lists)
        if "d" in obj and obj["d"] != pa.d:
            raise StructureError(f"declared d = {obj['d']} but theta has {pa.d + 1} entries")
        return pa


@dataclass(frozen=True)
class Violation:
    condition: str
    indices: tuple
    message: str = field(default="", compare=False)

    def to_json(self) -> dict:
        return {"condition": self.condition, "indices": list(self.indices), "message": self.message}


def _sum_ratio(theta, i: int):
    d = len(theta) - 1
    denom = theta[0] - theta[d]
    return sum(((theta[j] - theta[d - j]) / denom for j in range(i)), Fraction(0))


def validate(pa: ParameterArray) -> list[Violation]:
    """Every violated parameter-array condition; empty iff ``pa`` is valid."""
    out: list[Violation] = []
    d, th, ts = pa.d, pa.theta, pa.theta_star
    for name, seq in (("theta", th), ("theta_star", ts)):
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                if seq[i] == seq[j]:
                    out.append(Violation("PA1", (i, j), f"{name}[{i}] == {name}[{j}]"))
    for name, seq in (("varphi", pa.varphi), ("phi", pa.phi)):
        for i in range(1, d + 1):
            if seq[i - 1] == 0:
                out.append(Violation("PA2", (i,), f"{name}_{i} == 0"))
    if d >= 1 and th[0] != th[d]:
        for i in range(1, d + 1):
            s = _sum_ratio(th, i)
            want = pa.phi[0] * s + (ts[i] - ts[0]) * (th[i - 1] - th[d])
            if pa.varphi[i - 1] != want:
                out.append(Violation("PA3", (i,), f"varphi_{i} = {pa.varphi[i - 1]}, expected {want}"))
            want = pa.varphi[0] * s + (ts[i] - ts[0]) * (th[d - i + 1] - th[0])
            if pa.phi[i - 1] != want:
                out.append(Violation("PA4", (i,), f"phi_{i} = {pa.phi[i - 1]}, expected {want}"))
    if not any(v.condition == "PA1" for v in out):
        ratios = []
        for i in range(2, d):
            r = (th[i - 2] - th[i + 1]) / (th[i - 1] - th[i])
            rs = (ts[i - 2] - ts[i + 1]) / (ts[i - 1] - ts[i])
            if r != rs:
                out.append(Violation("PA5", (i,), f"theta ratio {r} != theta_star ratio {rs}"))
            ratios.append((i, r))
        for i, r in ratios[1:]:
            if r != ratios[0][1]:
                out.append(Violation("PA5", (ratios[0][0], i), f"ratio at i={i} is {r}, at i={ratios[0][0]} is {ratios[0][1]}"))
    return out


def is_valid(pa: ParameterArray) -> bool:
    return not validate(pa)


def _bidiagonal(diag, below, above) -> Matrix:
    n = len(diag)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = diag[i]
    for i in range(n - 1):
        if below is not None:
            rows[i + 1][i] = below[i]
        if above is not None:
            rows[i][i + 1] = above[i]
    return Matrix(rows)


def split1(pa: ParameterArray) -> tuple[Matrix, Matrix]:
    ones = [Fraction(1)] * pa.d
    return _bidiagonal(pa.theta, ones, None), _bidiagonal(pa.theta_star, None, pa.varphi)


def split2(pa: ParameterArray) -> tuple[Matrix, Matrix]:
    ones = [Fraction(1)] * pa.d
    return _bidiagonal(pa.theta[::-1], ones, None), _bidiagonal(pa.theta_star, None, pa.phi)


def _term(num, a, b):
    # a zero boundary numerator short-circuits before its denominator is formed
    if num == 0:
        return Fraction(0)
    return num / (a - b)


def _check_index(pa: ParameterArray, i: int) -> None:
    if not 0 <= i <= pa.d:
        raise IndexOutOfRange(f"index {i} outside 0..{pa.d}")


def a_diag(pa: ParameterArray, i: int) -> Scalar:
    """Diagonal entry a_i of A in the basis where A* is diagonal (varphi form)."""
    _check_index(pa, i)
    th, ts = pa.theta, pa.theta_star
    return (th[i] + _term(pa.varphi_at(i), ts[i], ts[i - 1] if i > 0 else None)
            + _term(pa.varphi_at(i + 1), ts[i], ts[i + 1] if i < pa.d else None))


def a_diag_phi(pa: ParameterArray, i: int) -> Scalar:
    """The same a_i, computed from phi."""
    _check_index(pa, i)
    th, ts, d = pa.theta, pa.theta_star, pa.d
    return (th[d - i] + _term(pa.phi_at(i), ts[i], ts[i - 1] if i > 0 else None)
            + _term(pa.phi_at(i + 1), ts[i], ts[i + 1] if i < d else None))


def a_star_diag(pa: ParameterArray, i: int) -> Scalar:
    """Diagonal entry a*_i of A* in the basis where A is diagonal (varphi form)."""
    _check_index(pa, i)
    th, ts = pa.theta, pa.theta_star
    return (ts[i] + _term(pa.varphi_at(i), th[i], th[i - 1] if i > 0 else None)
            + _term(pa.varphi_at(i + 1), th[i], th[i + 1] if i < pa.d else None))


def a_star_diag_phi(pa: ParameterArray, i: int) -> Scalar:
    """The same a*_i, computed from phi."""
    _check_index(pa, i)
    th, ts, d = pa.theta, pa.theta_star, pa.d
    return (ts[d - i] + _term(pa.phi_at(d - i + 1), th[i], th[i - 1] if i > 0 else None)
            + _term(pa.phi_at(d - i), th[i], th[i + 1] if i < d else None))


def _sweep(name: str, values: dict) -> Scalar:
    """The common value of ``{index: value}``; raises if it varies."""
    items = sorted(values.items())
    first = items[0][1]
    bad = [(i, v) for i, v in items if v != first]
    if bad:
        raise InconsistentFormulas(
            f"{name} depends on the index: {name}({items[0][0]}) = {first}, "
            + ", ".join(f"{name}({i}) = {v}" for i, v in bad),
            {"coefficient": name, "values": {str(i): str(v) for i, v in items}},
        )
    return first


def aw_coefficients(pa: ParameterArray) -> AwCoefficients:
    """Askey-Wilson coefficients from the closed-form expressions in the array.

    Needs d >= 3.  Every expression is evaluated over its whole range of
    validity and must come out the same at every index.
    """
    d = pa.d
    if d < 3:
        raise DiameterTooSmall(f"coefficients are unique only for d >= 3, got d = {d}")
    th, ts = pa.theta, pa.theta_star
    a = [a_diag(pa, i) for i in range(d + 1)]
    a_s = [a_star_diag(pa, i) for i in range(d + 1)]

    inner = range(2, d)        # 2 <= i <= d-1
    mid = range(1, d)          # 1 <= i <= d-1
    full = range(1, d + 1)     # 1 <= i <= d

    beta_vals = {}
    for i in inner:
        beta_vals[("theta", i)] = (th[i - 2] - th[i + 1]) / (th[i - 1] - th[i]) - 1
        beta_vals[("theta_star", i)] = (ts[i - 2] - ts[i + 1]) / (ts[i - 1] - ts[i]) - 1
    beta = _sweep("beta", beta_vals)

    gamma = _sweep("gamma", {i: th[i - 1] - beta * th[i] + th[i + 1] for i in mid})
    gamma_s = _sweep("gamma_star", {i: ts[i - 1] - beta * ts[i] + ts[i + 1] for i in mid})
    rho = _sweep("rho", {
        i: th[i] ** 2 - beta * th[i] * th[i - 1] + th[i - 1] ** 2 - gamma * (th[i] + th[i - 1])
        for i in full
    })
    rho_s = _sweep("rho_star", {
        i: ts[i] ** 2 - beta * ts[i] * ts[i - 1] + ts[i - 1] ** 2 - gamma_s * (ts[i] + ts[i - 1])
        for i in full
    })
    omega_vals = {}
    for i in inner:
        omega_vals[("a", i)] = (a[i] * (ts[i] - ts[i + 1]) + a[i - 1] * (ts[i - 1] - ts[i - 2])
                                - gamma * (ts[i] + ts[i - 1]))
        omega_vals[("a_star", i)] = (a_s[i] * (th[i] - th[i + 1]) + a_s[i - 1] * (th[i - 1] - th[i - 2])
                                     - gamma_s * (th[i] + th[i - 1]))
    omega = _sweep("omega", omega_vals)
    eta = _sweep("eta", {
        i: a_s[i] * (th[i] - th[i - 1]) * (th[i] - th[i + 1]) - gamma_s * th[i] ** 2 - omega * th[i]
        for i in mid
    })
    eta_s = _sweep("eta_star", {
        i: a[i] * (ts[i] - ts[i - 1]) * (ts[i] - ts[i + 1]) - gamma * ts[i] ** 2 - omega * ts[i]
        for i in mid
    })
    return AwCoefficients(beta, gamma, gamma_s, rho, rho_s, omega, eta, eta_s)


class RelationOp(enum.Enum):
    DOWN = "down"
    DDOWN = "ddown"
    DOWN_DDOWN = "down-ddown"


def relation(pa: ParameterArray, op: RelationOp) -> ParameterArray:
    """One of the three relatives of ``pa``."""
    op = RelationOp(op)
    if op is RelationOp.DOWN:
        return ParameterArray(pa.theta, pa.theta_star[::-1], pa.phi[::-1], pa.varphi[::-1])
    if op is RelationOp.DDOWN:
        return ParameterArray(pa.theta[::-1], pa.theta_star, pa.phi, pa.varphi)
    return ParameterArray(pa.theta[::-1], pa.theta_star[::-1], pa.varphi[::-1], pa.phi[::-1])


def affine_apply(pa: ParameterArray, m: AffineMap) -> ParameterArray:
    tt = m.t * m.t_star
    return ParameterArray(
        [m.t * x + m.c for x in pa.theta],
        [m.t_star * x + m.c_star for x in pa.theta_star],
        [tt * x for x in pa.varphi],
        [tt * x for x in pa.phi],
    )
