"""Arithmetic in twisted group rings R^alpha[G] over Z[zeta_m].

Elements are dense coefficient vectors indexed by group element id.  Unit
testing goes through the integer regular representation: x is a unit of
the order exactly when left multiplication by x is invertible over Z,
i.e. has determinant +-1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm
from typing import Mapping, Optional, Sequence

from .cocycles import Cocycle, LinearCharacter
from .cyclotomic import PHI_DEGREE, CycInt, euler_phi
from .errors import CapExceededError
from .groups import FiniteGroup, centralizer, element_order, subgroup_as_group
from .intmat import det_bareiss, identity_matrix, mat_pow, solve_exact


@dataclass(frozen=True)
class TwRing:
    """R^alpha[G] with R = Z[zeta_conductor]."""

    group: FiniteGroup
    cocycle: Cocycle
    conductor: int

    def __post_init__(self) -> None:
        if self.cocycle.group != self.group:
            raise ValueError("cocycle lives on a different group")
        if self.conductor % self.cocycle.modulus:
            raise ValueError(
                f"cocycle values mu_{self.cocycle.modulus} do not embed in "
                f"Z[zeta_{self.conductor}]"
            )

    @property
    def dim(self) -> int:
        return self.group.order * PHI_DEGREE[self.conductor]

    def zero_coeff(self) -> CycInt:
        return CycInt.integer(0, self.conductor)

    def coerce_coeff(self, value) -> CycInt:
        if isinstance(value, CycInt):
            return value.embed(lcm(value.m, self.conductor)) if value.m != self.conductor else value
        if isinstance(value, int):
            return CycInt.integer(value, self.conductor)
        raise TypeError(f"cannot use {value!r} as a ring coefficient")

    def zero(self) -> "TwElement":
        z = self.zero_coeff()
        return TwElement(self, tuple(z for _ in self.group.elements()))

    def one(self) -> "TwElement":
        return self.basis(0)

    def basis(self, g: int, value=1) -> "TwElement":
        coeffs = [self.zero_coeff() for _ in self.group.elements()]
        coeffs[g] = self.coerce_coeff(value)
        return TwElement(self, tuple(coeffs))

    def element(self, mapping: Mapping[int, object]) -> "TwElement":
        coeffs = [self.zero_coeff() for _ in self.group.elements()]
        for g, v in mapping.items():
            coeffs[g] = self.coerce_coeff(v)
        return TwElement(self, tuple(coeffs))

    def from_int_vector(self, vec: Sequence[int]) -> "TwElement":
        return TwElement(self, tuple(CycInt.integer(v, self.conductor) for v in vec))

    def cocycle_value(self, g: int, h: int) -> CycInt:
        return self.cocycle.value_at(g, h, self.conductor)

    def basis_inverse(self, g: int) -> "TwElement":
        """u_g^-1 = alpha(g, g^-1)^-1 u_(g^-1)."""
        ginv = self.group.inv[g]
        m = self.cocycle.modulus
        k = self.cocycle.table[g][ginv]
        value = CycInt.zeta(self.conductor, (-k % m) * self.conductor // m)
        return self.basis(ginv, value)

    def __repr__(self) -> str:
        return (
            f"TwRing({self.group.name or self.group.order}, "
            f"m={self.cocycle.modulus}, R=Z[zeta_{self.conductor}])"
        )


@dataclass(frozen=True)
class TwElement:
    """Element of a twisted group ring as a dense coefficient vector."""

    ring: TwRing
    coeffs: tuple[CycInt, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.ring.group.order:
            raise ValueError("coefficient vector length does not match group order")

    def coeff(self, g: int) -> CycInt:
        return self.coeffs[g]

    def items(self) -> list[tuple[int, CycInt]]:
        return [(g, c) for g, c in enumerate(self.coeffs) if not c.is_zero()]

    def support(self) -> tuple[int, ...]:
        return tuple(g for g, c in enumerate(self.coeffs) if not c.is_zero())

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other) -> "TwElement":
        other = _coerce_element(self.ring, other)
        return TwElement(
            self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self) -> "TwElement":
        return TwElement(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "TwElement":
        other = _coerce_element(self.ring, other)
        return self + (-other)

    def __rsub__(self, other) -> "TwElement":
        return (-self) + other

    def __mul__(self, other) -> "TwElement":
        if isinstance(other, (int, CycInt)):
            c = self.ring.coerce_coeff(other)
            return TwElement(self.ring, tuple(a * c for a in self.coeffs))
        if isinstance(other, TwElement):
            if other.ring != self.ring:
                raise ValueError("ring mismatch in multiplication")
            return _tw_mul(self, other)
        return NotImplemented

    def __rmul__(self, other) -> "TwElement":
        if isinstance(other, (int, CycInt)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int) -> "TwElement":
        if e < 0:
            inv = is_unit(self)
            if inv is None:
                raise ValueError("negative power of a non-unit")
            return inv ** (-e)
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.basis(0, other)
        if not isinstance(other, TwElement):
            return NotImplemented
        return self.ring == other.ring and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash((id(self.ring.group), self.ring.conductor, self.coeffs))

    def divide_exact(self, k: int) -> "TwElement":
        """Divide every integer coordinate by k; error if not divisible."""
        out = []
        for c in self.coeffs:
            vals = []
            for v in c.coeffs:
                if v % k:
                    raise ValueError(f"coefficient {c!r} not divisible by {k}")
                vals.append(v // k)
            out.append(CycInt(c.m, tuple(vals)))
        return TwElement(self.ring, tuple(out))

    def int_vector(self) -> list[int]:
        """Coefficients as rational integers (requires a rational element)."""
        return [c.as_int() for c in self.coeffs]

    def __repr__(self) -> str:
        terms = []
        for g, c in self.items():
            lab = self.ring.group.labels[g]
            if g == 0:
                terms.append(f"{c!r}")
            elif c == 1:
                terms.append(f"u[{lab}]")
            elif c == -1:
                terms.append(f"-u[{lab}]")
            else:
                terms.append(f"({c!r})*u[{lab}]")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def to_json(self) -> dict:
        return {
            "coeffs": [
                {"g": g, "m": c.m, "c": list(c.coeffs)} for g, c in self.items()
            ]
        }


def element_from_json(ring: TwRing, data: dict) -> TwElement:
    coeffs = {e["g"]: CycInt(e["m"], tuple(e["c"])) for e in data["coeffs"]}
    return ring.element(coeffs)


def _coerce_element(ring: TwRing, value) -> TwElement:
    if isinstance(value, TwElement):
        if value.ring != ring:
            raise ValueError("ring mismatch")
        return value
    if isinstance(value, (int, CycInt)):
        return ring.basis(0, value)
    raise TypeError(f"cannot interpret {value!r} as a ring element")


def _tw_mul(x: TwElement, y: TwElement) -> TwElement:
    ring = x.ring
    mul = ring.group.mul
    acc: dict[int, CycInt] = {}
    for g, a in x.items():
        row = mul[g]
        trow = ring.cocycle.table[g]
        for h, b in y.items():
            gh = row[h]
            v = a * b * _zeta_cached(ring.conductor, trow[h], ring.cocycle.modulus)
            if gh in acc:
                acc[gh] = acc[gh] + v
            else:
                acc[gh] = v
    z = ring.zero_coeff()
    return TwElement(
        ring, tuple(acc.get(g, z) for g in ring.group.elements())
    )


_ZETA_CACHE: dict[tuple[int, int, int], CycInt] = {}


def _zeta_cached(conductor: int, exponent: int, modulus: int) -> CycInt:
    key = (conductor, exponent, modulus)
    z = _ZETA_CACHE.get(key)
    if z is None:
        z = CycInt.zeta(conductor, exponent * conductor // modulus)
        _ZETA_CACHE[key] = z
    return z


# ---------------------------------------------------------------------------
# regular representation, units, torsion


@dataclass(frozen=True)
class RegRepMatrix:
    """Integer matrix of left multiplication on the Z-basis zeta^j u_g."""

    matrix: tuple[tuple[int, ...], ...]
    dim: int
    source: TwElement


def regular_rep(x: TwElement) -> RegRepMatrix:
    ring = x.ring
    n = ring.group.order
    phi = PHI_DEGREE[ring.conductor]
    dim = n * phi
    cols: list[list[int]] = [[0] * dim for _ in range(dim)]
    items = x.items()
    mul = ring.group.mul
    for h in range(n):
        for j in range(phi):
            zj = CycInt.zeta(ring.conductor, j) if j else CycInt.integer(1, ring.conductor)
            col = cols[h * phi + j]
            for g, a in items:
                c = a * zj * _zeta_cached(
                    ring.conductor, ring.cocycle.table[g][h], ring.cocycle.modulus
                )
                gh = mul[g][h]
                for t, v in enumerate(c.coeffs):
                    col[gh * phi + t] += v
    matrix = tuple(
        tuple(cols[c][r] for c in range(dim)) for r in range(dim)
    )
    return RegRepMatrix(matrix=matrix, dim=dim, source=x)


def is_unit(x: TwElement) -> Optional[TwElement]:
    """Return the inverse when x is a unit of the Z-order, else None."""
    rep = regular_rep(x)
    d = det_bareiss([list(r) for r in rep.matrix])
    if d not in (1, -1):
        return None
    rhs = [0] * rep.dim
    rhs[0] = 1  # coordinates of u_1 in the zeta^j u_g basis
    sol = solve_exact([list(r) for r in rep.matrix], rhs)
    if sol is None:
        return None
    ring = x.ring
    phi = PHI_DEGREE[ring.conductor]
    coeffs = []
    for g in ring.group.elements():
        vals = sol[g * phi : (g + 1) * phi]
        if any(v.denominator != 1 for v in vals):
            return None
        coeffs.append(CycInt(ring.conductor, tuple(int(v) for v in vals)))
    inv = TwElement(ring, tuple(coeffs))
    if x * inv != ring.one() or inv * x != ring.one():
        raise ArithmeticError("inverse verification failed")
    return inv


def _torsion_exponent_bound(dim: int) -> int:
    """lcm of all k with phi(k) <= dim: any torsion order divides this."""
    bound = 1
    k = 1
    while True:
        k += 1
        if k > 2 * dim * dim + 2:
            break
        if euler_phi(k) <= dim:
            bound = lcm(bound, k)
    return bound


def torsion_order(x: TwElement, cap: Optional[int] = None) -> Optional[int]:
    """Multiplicative order of a unit, or None when infinite (or above cap)."""
    if is_unit(x) is None:
        raise ValueError("torsion order requested for a non-unit")
    rep = regular_rep(x)
    mat = [list(r) for r in rep.matrix]
    ident = identity_matrix(rep.dim)
    bound = _torsion_exponent_bound(rep.dim)
    if mat_pow(mat, bound) != ident:
        return None
    order = bound
    p = 2
    rem = bound
    while rem > 1:
        if rem % p:
            p += 1
            continue
        while rem % p == 0:
            rem //= p
        while order % p == 0 and mat_pow(mat, order // p) == ident:
            order //= p
        p += 1
    if cap is not None and order > cap:
        return None
    return order


# ---------------------------------------------------------------------------
# self-twist classes, conjugation characters, cyclic sums


def basis_power_exponent(ring: TwRing, g: int) -> int:
    """Exponent s with u_g^o(g) = zeta^s (modulo the cocycle value modulus)."""
    s = 0
    p = g
    for _ in range(element_order(ring.group, g) - 1):
        s += ring.cocycle.table[p][g]
        p = ring.group.mul[p][g]
    return s % ring.cocycle.modulus


def partition_by_self_twist(ring: TwRing) -> dict[int, list[int]]:
    """Classes G_j = {g : u_g^o(g) = zeta^j}; G_0 is the idempotent-friendly one."""
    out: dict[int, list[int]] = {}
    for g in ring.group.elements():
        s = basis_power_exponent(ring, g)
        out.setdefault(s, []).append(g)
    return out


@dataclass(frozen=True)
class ConjCharacter:
    """The commutator character chi_x(g) = [u_g, u_x] on the centralizer of x."""

    ring: TwRing
    x: int
    centralizer_ids: tuple[int, ...]
    exponents: dict[int, int]
    character: LinearCharacter
    c_plus: Optional[tuple[int, ...]]
    c_minus: Optional[tuple[int, ...]]

    @property
    def is_regular(self) -> bool:
        """x is alpha-regular when the character is trivial on C_G(x)."""
        return all(v == 0 for v in self.exponents.values())


def conj_character(ring: TwRing, x: int) -> ConjCharacter:
    g = ring.group
    m = ring.cocycle.modulus
    cent = tuple(sorted(centralizer(g, x)))
    exps = {c: (ring.cocycle.table[c][x] - ring.cocycle.table[x][c]) % m for c in cent}
    sub, embed = subgroup_as_group(g, cent)
    char = LinearCharacter(sub, m, tuple(exps[embed.map[i]] for i in range(sub.order)))
    half = m // 2 if m % 2 == 0 else None
    if all(v == 0 or (half is not None and v == half) for v in exps.values()):
        plus = tuple(c for c in cent if exps[c] == 0)
        minus = tuple(c for c in cent if exps[c] != 0)
    else:
        plus = minus = None
    return ConjCharacter(
        ring=ring,
        x=x,
        centralizer_ids=cent,
        exponents=exps,
        character=char,
        c_plus=plus,
        c_minus=minus,
    )


def cyclic_sum(ring: TwRing, g: int) -> TwElement:
    """1 + u_g + ... + u_g^(o(u_g)-1); the zero element when the sum telescopes."""
    one = ring.one()
    total = one
    p = ring.basis(g)
    cap = element_order(ring.group, g) * ring.cocycle.modulus
    steps = 0
    while p != one:
        total = total + p
        p = p * ring.basis(g)
        steps += 1
        if steps > cap:
            raise ArithmeticError("cyclic sum failed to terminate")
    return total


# ---------------------------------------------------------------------------
# bounded enumeration oracles


def enumerate_units_bounded(
    ring: TwRing, bound: int, cap: int = 10**7
) -> list[TwElement]:
    """All units with rational integer coefficients in [-bound, bound].

    Exhaustive oracle; the search space (2*bound+1)^|G| must stay below cap.
    """
    n = ring.group.order
    space = (2 * bound + 1) ** n
    if space > cap:
        raise CapExceededError(f"unit enumeration space {space} exceeds cap {cap}")
    units = []
    for vec in itertools.product(range(-bound, bound + 1), repeat=n):
        if all(v == 0 for v in vec):
            continue
        x = ring.from_int_vector(list(vec))
        if is_unit(x) is not None:
            units.append(x)
    return units


def torsion_units_bounded(
    ring: TwRing,
    coeff_values: Sequence[int] = (-1, 0, 1),
    support_cap: Optional[int] = None,
) -> list[TwElement]:
    """All torsion units with coefficients from coeff_values (0 allowed).

    When support_cap is given, only elements with at most that many nonzero
    coefficients are enumerated.
    """
    n = ring.group.order
    nonzero = [v for v in coeff_values if v != 0]
    out = []
    max_support = support_cap if support_cap is not None else n
    for size in range(1, max_support + 1):
        for support in itertools.combinations(range(n), size):
            for coeffs in itertools.product(nonzero, repeat=size):
                x = ring.element(dict(zip(support, coeffs)))
                if is_unit(x) is None:
                    continue
                if torsion_order(x) is not None:
                    out.append(x)
    return out


def berman_higman_violations(
    ring: TwRing,
    coeff_values: Sequence[int] = (-1, 0, 1),
    support_cap: Optional[int] = None,
) -> list[TwElement]:
    """Torsion units with nonzero identity coefficient that are not trivial.

    The trace-zero property predicts this list is empty: a torsion unit
    with nonzero coefficient at the identity must be a coefficient-ring
    unit (+- a root of unity times u_1).
    """
    from .cyclotomic import is_root_of_unity

    bad = []
    for x in torsion_units_bounded(ring, coeff_values, support_cap):
        c1 = x.coeff(0)
        if c1.is_zero():
            continue
        if len(x.support()) == 1 and is_root_of_unity(c1) is not None:
            continue
        bad.append(x)
    return bad


# ---------------------------------------------------------------------------
# canonical rings for the case studies


def anticommuting_ring(n: int = 0, conductor: int = 2) -> TwRing:
    """Z^alpha[C2^(n+2)] with the canonical anticommuting-pair twist."""
    from .cocycles import anticommuting_pair_cocycle

    c = anticommuting_pair_cocycle(n)
    return TwRing(c.group, c, conductor)


def quaternion_twist_ring(conductor: int = 2) -> TwRing:
    """Z^gamma[C2 x C2] with u_g^2 = u_h^2 = [u_g, u_h] = -1."""
    from .cocycles import c2c2_quaternion_cocycle

    c = c2c2_quaternion_cocycle()
    return TwRing(c.group, c, conductor)
