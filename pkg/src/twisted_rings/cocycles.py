"""2-cocycles with root-of-unity values, and linear characters.

A cocycle table stores exponents: table[g][h] = k means the value is
zeta_m^k, with m the value modulus.  All class computations are done on
representatives; cohomology classes are compared by exhaustive coboundary
search, which doubles as a proof at the given value modulus.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import TYPE_CHECKING, Optional, Sequence

from .cyclotomic import CycInt, RootOfUnity, root_to_cyc
from .errors import CapExceededError
from .groups import FiniteGroup, GroupHom, build_group, element_order, order_histogram

if TYPE_CHECKING:
    from .extensions import ExtensionData

COBOUNDARY_SEARCH_CAP = 10**7


@dataclass(frozen=True)
class Cocycle:
    """Normalized 2-cocycle on a finite group, valued in mu_m."""

    group: FiniteGroup
    modulus: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = self.group.order
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("cocycle table shape does not match group order")
        if any(not 0 <= v < self.modulus for r in self.table for v in r):
            raise ValueError("table exponents must be reduced mod the value modulus")

    def exponent_at(self, g: int, h: int) -> int:
        return self.table[g][h]

    def root_at(self, g: int, h: int) -> RootOfUnity:
        return RootOfUnity(self.modulus, self.table[g][h])

    def value_at(self, g: int, h: int, conductor: int) -> CycInt:
        return root_to_cyc(self.modulus, self.table[g][h], conductor)

    def rescaled(self, new_modulus: int) -> "Cocycle":
        """Same cocycle expressed with exponents modulo a multiple modulus."""
        if new_modulus % self.modulus != 0:
            raise ValueError(f"{self.modulus} does not divide {new_modulus}")
        f = new_modulus // self.modulus
        return Cocycle(
            self.group,
            new_modulus,
            tuple(tuple(v * f for v in row) for row in self.table),
        )

    def is_trivial_table(self) -> bool:
        return all(v == 0 for row in self.table for v in row)

    def to_json(self) -> dict:
        return {"m": self.modulus, "table": [list(r) for r in self.table]}


@dataclass(frozen=True)
class CocycleReport:
    is_cocycle: bool
    is_normalized: bool
    violation: Optional[tuple[int, int, int]]
    message: str

    @property
    def ok(self) -> bool:
        return self.is_cocycle and self.is_normalized


def validate_cocycle(c: Cocycle) -> CocycleReport:
    """Check the 2-cocycle identity and normalization, reporting failures."""
    g = c.group
    m = c.modulus
    t = c.table
    normalized = all(t[0][x] == 0 and t[x][0] == 0 for x in g.elements())
    for a in g.elements():
        for b in g.elements():
            ab = g.mul[a][b]
            for d in g.elements():
                lhs = t[a][b] + t[ab][d]
                rhs = t[b][d] + t[a][g.mul[b][d]]
                if (lhs - rhs) % m:
                    return CocycleReport(
                        False,
                        normalized,
                        (a, b, d),
                        f"cocycle identity fails on triple ({a},{b},{d})",
                    )
    msg = "ok" if normalized else "cocycle identity holds but table is not normalized"
    return CocycleReport(True, normalized, None, msg)


def trivial_cocycle(group: FiniteGroup, modulus: int = 1) -> Cocycle:
    n = group.order
    return Cocycle(group, modulus, tuple(tuple(0 for _ in range(n)) for _ in range(n)))


def cocycle_from_signs(group: FiniteGroup, signs: dict[tuple[int, int], int]) -> Cocycle:
    """Build a modulus-2 cocycle table from a {(g,h): +-1} dictionary."""
    n = group.order
    table = [[0] * n for _ in range(n)]
    for (g, h), s in signs.items():
        if s not in (1, -1):
            raise ValueError("sign entries must be +-1")
        table[g][h] = 0 if s == 1 else 1
    return Cocycle(group, 2, tuple(tuple(r) for r in table))


def coboundary_twist(c: Cocycle, f: Sequence[int]) -> Cocycle:
    """Twist by the coboundary of f: G -> mu_m given as exponents.

    The twisted table is f(g) + f(h) - f(gh) + table(g,h); f must send the
    identity to 1 (exponent 0).
    """
    g = c.group
    m = c.modulus
    if len(f) != g.order:
        raise ValueError("coboundary map must assign a value to every element")
    if f[0] % m:
        raise ValueError("coboundary map must send the identity to 1")
    table = tuple(
        tuple(
            (f[a] + f[b] - f[g.mul[a][b]] + c.table[a][b]) % m
            for b in g.elements()
        )
        for a in g.elements()
    )
    return Cocycle(g, m, table)


def are_cohomologous(
    c1: Cocycle,
    c2: Cocycle,
    modulus: int,
    cap: Optional[int] = None,
) -> Optional[tuple[int, ...]]:
    """Exhaustively search for f with twist(c1, f) = c2 over mu_modulus.

    Returns the first witness in lexicographic order, or None; because the
    search is exhaustive, None proves the classes differ at this modulus.
    """
    if cap is None:
        cap = COBOUNDARY_SEARCH_CAP
    if c1.group is not c2.group and c1.group != c2.group:
        raise ValueError("cocycles live on different groups")
    g = c1.group
    n = g.order
    if modulus % c1.modulus or modulus % c2.modulus:
        raise ValueError("value moduli do not divide the search modulus")
    t1 = c1.rescaled(modulus).table
    t2 = c2.rescaled(modulus).table
    space = modulus ** (n - 1)
    if space > cap:
        raise CapExceededError(f"coboundary search space {space} exceeds cap {cap}")
    pairs = [(a, b) for a in range(n) for b in range(n)]
    for tail in itertools.product(range(modulus), repeat=n - 1):
        f = (0,) + tail
        if all(
            (f[a] + f[b] - f[g.mul[a][b]] + t1[a][b] - t2[a][b]) % modulus == 0
            for a, b in pairs
        ):
            return f
    return None


def inflate(c: Cocycle, proj: GroupHom) -> Cocycle:
    """Pull a cocycle on G/Q back to G along the projection."""
    if proj.target != c.group:
        raise ValueError("projection target does not carry the cocycle")
    if not proj.is_surjective():
        raise ValueError("inflation needs a surjective projection")
    g = proj.source
    table = tuple(
        tuple(c.table[proj.map[a]][proj.map[b]] for b in g.elements())
        for a in g.elements()
    )
    return Cocycle(g, c.modulus, table)


def restrict(c: Cocycle, subgroup_ids) -> Cocycle:
    """Restrict the table to a subgroup, repackaged as its own group.

    Subgroup elements are renumbered in ascending id order (identity
    first); the returned cocycle lives on that group.
    """
    from .groups import subgroup_as_group

    sub, embed = subgroup_as_group(c.group, subgroup_ids)
    table = tuple(
        tuple(c.table[embed.map[a]][embed.map[b]] for b in sub.elements())
        for a in sub.elements()
    )
    return Cocycle(sub, c.modulus, table)


def cocycle_power(c: Cocycle, i: int) -> Cocycle:
    m = c.modulus
    return Cocycle(
        c.group, m, tuple(tuple((v * i) % m for v in row) for row in c.table)
    )


def cocycle_order(c: Cocycle) -> int:
    """Least i >= 1 with all table values satisfying value^i = 1."""
    g = c.modulus
    for row in c.table:
        for v in row:
            g = gcd(g, v)
    return c.modulus // gcd(c.modulus, g) if g else 1


# ---------------------------------------------------------------------------
# linear characters


@dataclass(frozen=True)
class LinearCharacter:
    """Homomorphism from an abelian group into mu_m, stored as exponents."""

    group: FiniteGroup
    modulus: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.group.order:
            raise ValueError("character value table has wrong length")

    def exponent_at(self, x: int) -> int:
        return self.values[x]

    def value_at(self, x: int, conductor: int) -> CycInt:
        return root_to_cyc(self.modulus, self.values[x], conductor)

    def inverse_value_at(self, x: int, conductor: int) -> CycInt:
        return root_to_cyc(self.modulus, -self.values[x] % self.modulus, conductor)

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.values)

    def value_order(self) -> int:
        g = self.modulus
        for v in self.values:
            g = gcd(g, v)
        return self.modulus // gcd(self.modulus, g) if g else 1


def validate_character(chi: LinearCharacter) -> None:
    g = chi.group
    m = chi.modulus
    if chi.values[0] % m:
        raise ValueError("character must send the identity to 1")
    for a in g.elements():
        for b in g.elements():
            if (chi.values[a] + chi.values[b] - chi.values[g.mul[a][b]]) % m:
                raise ValueError(f"character not multiplicative at ({a},{b})")
    for a in g.elements():
        o = element_order(g, a)
        value_order = m // gcd(m, chi.values[a]) if chi.values[a] else 1
        if o % value_order:
            raise ValueError(f"character value order at {a} does not divide o({a})")


def trivial_character(group: FiniteGroup, modulus: int = 1) -> LinearCharacter:
    return LinearCharacter(group, modulus, tuple(0 for _ in group.elements()))


# ---------------------------------------------------------------------------
# transgression


def transgress(ext: "ExtensionData", chi: LinearCharacter) -> Cocycle:
    """Compose the extension's factor set with an invariant character of N.

    The result is the 2-cocycle (g, h) -> chi(mu(g) mu(h) mu(gh)^-1) on the
    quotient group.  chi must be invariant under the conjugation action of
    the quotient; central N always qualifies.
    """
    if chi.group != ext.sub_group:
        raise ValueError("character is not defined on the extension kernel")
    for gid, perm in enumerate(ext.sigma):
        for n in range(ext.sub_group.order):
            if chi.values[perm[n]] != chi.values[n]:
                raise ValueError(
                    f"character is not invariant: quotient element {gid} moves it"
                )
    g = ext.quotient_group
    table = tuple(
        tuple(chi.values[ext.alpha_sub[a][b]] for b in g.elements())
        for a in g.elements()
    )
    out = Cocycle(g, chi.modulus, table)
    report = validate_cocycle(out)
    if not report.ok:
        raise ValueError(f"transgressed table is not a valid cocycle: {report.message}")
    return out


# ---------------------------------------------------------------------------
# the group generated by the twisted basis


@dataclass(frozen=True)
class GAlpha:
    """The finite group <zeta^i u_g> determined by a cocycle representative."""

    group: FiniteGroup
    value_order: int
    base: FiniteGroup
    pairs: tuple[tuple[int, int], ...]
    projection: GroupHom


def build_G_alpha(c: Cocycle) -> GAlpha:
    """Build the group of symbols zeta^i u_g with the table product.

    Its order is o * |G| where o is the order of the subgroup of mu_m
    generated by the table values; the projection zeta^i u_g -> g is a
    homomorphism with central kernel.
    """
    g = c.group
    o = cocycle_order(c)
    step = c.modulus // o
    n = g.order
    total = o * n

    def encode(i: int, x: int) -> int:
        return (i % o) * n + x

    mul = []
    labels = []
    pairs = []
    for e1 in range(total):
        i1, x1 = divmod(e1, n)
        row = []
        for e2 in range(total):
            i2, x2 = divmod(e2, n)
            k = c.table[x1][x2] // step if step else 0
            row.append(encode(i1 + i2 + k, g.mul[x1][x2]))
        mul.append(row)
    # renumber so that the identity symbol gets id 0 (it already does:
    # i = 0 and x = 0 encode to 0)
    for e in range(total):
        i, x = divmod(e, n)
        pairs.append((i, x))
        zeta = f"z^{i}*" if i else ""
        labels.append(f"{zeta}u[{g.labels[x]}]")
    ga = build_group(mul, labels, name=f"G_alpha({g.name})")
    proj = GroupHom(source=ga, target=g, map=tuple(x for _, x in pairs))
    return GAlpha(group=ga, value_order=o, base=g, pairs=tuple(pairs), projection=proj)


def g_alpha_order_histogram(c: Cocycle) -> dict[int, int]:
    return order_histogram(build_G_alpha(c).group)


# ---------------------------------------------------------------------------
# canonical tables for the standard examples


def c2c2_matrix_cocycle() -> Cocycle:
    """The sign table on C2 x C2 realized by the integer 2x2 matrix model.

    Relations: u_g^2 = u_h^2 = 1, u_g u_h = u_gh = -u_h u_g, u_gh^2 = -1.
    The basis group it generates is dihedral of order 8.
    """
    from .groups import elementary_abelian_2

    g = elementary_abelian_2(2)
    signs = {}
    for a in range(4):
        for b in range(4):
            signs[(a, b)] = -1 if (a in (2, 3) and b in (1, 3)) else 1
    return cocycle_from_signs(g, signs)


def c2c2_quaternion_cocycle() -> Cocycle:
    """The sign table on C2 x C2 with u_g^2 = u_h^2 = [u_g,u_h] = -1.

    Realized by the quaternion units i, j, k; the basis group it generates
    is the quaternion group of order 8.
    """
    from .groups import elementary_abelian_2

    g = elementary_abelian_2(2)
    minus = {(1, 1), (1, 3), (2, 2), (2, 1), (3, 2), (3, 3)}
    signs = {(a, b): -1 if (a, b) in minus else 1 for a in range(4) for b in range(4)}
    return cocycle_from_signs(g, signs)


def anticommuting_pair_cocycle(n: int) -> Cocycle:
    """The canonical twist on C2^(n+2) = <g, h, x_1..x_n>.

    [u_g, u_h] = -1 with all squares of basis involutions equal to 1 and the
    x_i untwisted: the inflation of the C2 x C2 matrix-model table along the
    projection that kills the x_i.
    """
    from .groups import elementary_abelian_2

    base = c2c2_matrix_cocycle()
    g = elementary_abelian_2(n + 2)
    table = tuple(
        tuple(base.table[a & 3][b & 3] for b in g.elements()) for a in g.elements()
    )
    return Cocycle(g, 2, table)
