"""Exact arithmetic in Z[zeta_m] for conductors dividing 24.

Elements are integer vectors in the power basis of Z[x]/Phi_m(x); the
cyclotomic polynomials are hardcoded, so no factorization machinery is
needed.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .errors import CapExceededError

SUPPORTED_CONDUCTORS = (1, 2, 3, 4, 6, 8, 12, 24)
CONDUCTOR_CAP = 24

# Phi_m as ascending coefficient tuples (monic).
_PHI = {
    1: (-1, 1),
    2: (1, 1),
    3: (1, 1, 1),
    4: (1, 0, 1),
    6: (1, -1, 1),
    8: (1, 0, 0, 0, 1),
    12: (1, 0, -1, 0, 1),
    24: (1, 0, 0, 0, -1, 0, 0, 0, 1),
}

PHI_DEGREE = {m: len(p) - 1 for m, p in _PHI.items()}


def euler_phi(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def _check_conductor(m: int) -> None:
    if m not in _PHI:
        raise CapExceededError(
            f"conductor {m} unsupported (allowed: {SUPPORTED_CONDUCTORS})"
        )


def _reduce(coeffs: list[int], m: int) -> tuple[int, ...]:
    """Reduce an integer polynomial modulo the monic Phi_m."""
    phi = _PHI[m]
    deg = len(phi) - 1
    work = list(coeffs)
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            for j, p in enumerate(phi):
                work[i - deg + j] -= c * p
    work = work[:deg]
    work += [0] * (deg - len(work))
    return tuple(work)


@dataclass(frozen=True)
class CycInt:
    """Element of Z[zeta_m] in the power basis of Z[x]/Phi_m(x)."""

    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_conductor(self.m)
        if len(self.coeffs) != PHI_DEGREE[self.m]:
            raise ValueError(
                f"coefficient vector has length {len(self.coeffs)}, "
                f"expected {PHI_DEGREE[self.m]}"
            )

    @staticmethod
    def integer(value: int, m: int = 1) -> "CycInt":
        _check_conductor(m)
        coeffs = [0] * PHI_DEGREE[m]
        coeffs[0] = int(value)
        return CycInt(m, tuple(coeffs))

    @staticmethod
    def zeta(m: int, k: int = 1) -> "CycInt":
        """zeta_m^k as an element of Z[zeta_m]."""
        _check_conductor(m)
        k %= m
        mono = [0] * (k + 1)
        mono[k] = 1
        return CycInt(m, _reduce(mono, m))

    def embed(self, m_new: int) -> "CycInt":
        """Embed into Z[zeta_M] for self.m | M via zeta_m -> zeta_M^(M/m)."""
        if m_new == self.m:
            return self
        _check_conductor(m_new)
        if m_new % self.m != 0:
            raise ValueError(f"no embedding Z[zeta_{self.m}] -> Z[zeta_{m_new}]")
        step = m_new // self.m
        out = [0] * (len(self.coeffs) * step + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] += c
        return CycInt(m_new, _reduce(out, m_new))

    def _pair(self, other: "CycInt") -> tuple["CycInt", "CycInt"]:
        if self.m == other.m:
            return self, other
        m = lcm(self.m, other.m)
        if m > CONDUCTOR_CAP or m not in _PHI:
            raise CapExceededError(
                f"no common conductor for {self.m} and {other.m} within cap"
            )
        return self.embed(m), other.embed(m)

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            return other
        if isinstance(other, int):
            return CycInt.integer(other, self.m)
        return NotImplemented

    def __add__(self, other) -> "CycInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return CycInt(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycInt":
        return CycInt(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> "CycInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CycInt":
        return (-self) + other

    def __mul__(self, other) -> "CycInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, CycInt) and other.m == self.m:
            a, b = self, other
        else:
            a, b = self._pair(other)
        ca, cb = a.coeffs, b.coeffs
        prod = [0] * (len(ca) + len(cb) - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        prod[i + j] += x * y
        return CycInt(a.m, _reduce(prod, a.m))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycInt":
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta_m]")
        result = CycInt.integer(1, self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt.integer(other, self.m)
        if not isinstance(other, CycInt):
            return NotImplemented
        try:
            a, b = self._pair(other)
        except (CapExceededError, ValueError):
            return False
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # every supported conductor divides 24, so the embedding into
        # Z[zeta_24] is a canonical form shared by equal elements
        return hash(self.embed(24).coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_int(self) -> int:
        """The rational integer value, if the element is rational."""
        if any(c != 0 for c in self.coeffs[1:]):
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __repr__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                z = f"z{self.m}" + (f"^{i}" if i > 1 else "")
                if c == 1:
                    terms.append(z)
                elif c == -1:
                    terms.append(f"-{z}")
                else:
                    terms.append(f"{c}*{z}")
        return "+".join(terms).replace("+-", "-") or "0"

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_m^k with 0 <= k < m, in lowest terms (m is the order for k=1...)."""

    m: int
    k: int

    def __post_init__(self) -> None:
        if self.m < 1 or not 0 <= self.k < self.m:
            raise ValueError(f"bad root of unity ({self.m},{self.k})")

    @property
    def order(self) -> int:
        return self.m // gcd(self.m, self.k) if self.k else 1

    def to_cyc(self, conductor: int | None = None) -> CycInt:
        _check_conductor(self.m)
        z = CycInt.zeta(self.m, self.k)
        if conductor is not None:
            z = z.embed(conductor)
        return z

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = lcm(self.m, other.m)
        k = (self.k * (m // self.m) + other.k * (m // other.m)) % m
        return RootOfUnity(m, k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.m, (-self.k) % self.m)

    def to_json(self) -> dict:
        return {"m": self.m, "k": self.k}


def root_to_cyc(m: int, k: int, conductor: int) -> CycInt:
    """zeta_m^k as an element of Z[zeta_conductor], when it lies there.

    The roots of unity of Z[zeta_c] form the cyclic group <-zeta_c> of
    order lcm(2, c); zeta_m^k is converted through that group or rejected.
    """
    _check_conductor(conductor)
    k %= m
    big = lcm(2, conductor)
    if (k * big) % m:
        raise ValueError(
            f"zeta_{m}^{k} does not lie in Z[zeta_{conductor}]"
        )
    e = (k * big // m) % big
    if conductor % 2 == 0:
        return CycInt.zeta(conductor, e)
    if e % 2 == 0:
        return CycInt.zeta(conductor, e // 2)
    return -CycInt.zeta(conductor, ((e + conductor) // 2) % conductor)


def galois_apply(a: CycInt, j: int) -> CycInt:
    """Apply sigma_j : zeta_m -> zeta_m^j (requires gcd(j, m) = 1)."""
    j %= a.m
    if gcd(j, a.m) != 1:
        raise ValueError(f"gcd({j},{a.m}) != 1: not a Galois automorphism")
    out = [0] * (max((i * j for i in range(len(a.coeffs))), default=0) + 1)
    for i, c in enumerate(a.coeffs):
        if c:
            out[i * j] += c
    return CycInt(a.m, _reduce(out, a.m))


def is_root_of_unity(a: CycInt) -> RootOfUnity | None:
    """Recognize a as a root of unity, returning it in lowest form.

    The torsion units of Z[zeta_m] are exactly +-zeta_m^k, so membership
    is decided by direct comparison against that finite list.
    """
    if a.is_zero():
        return None
    big = lcm(2, a.m)
    emb = a.embed(big)
    for e in range(big):
        if emb == CycInt.zeta(big, e):
            n = big // gcd(big, e) if e else 1
            return RootOfUnity(n, (e * n // big) % n if e else 0)
    return None


def root_of_unity_order_brute(a: CycInt, cap: int | None = None) -> int | None:
    """Oracle: least j <= cap with a^j = 1 by repeated exact multiplication."""
    if cap is None:
        cap = 2 * a.m * a.m
    one = CycInt.integer(1, a.m)
    p = a
    for j in range(1, cap + 1):
        if p == one:
            return j
        if max(abs(c) for c in p.coeffs) > 1:
            # power basis coords of roots of unity stay in {-1,0,1}
            return None
        p = p * a
    return None
