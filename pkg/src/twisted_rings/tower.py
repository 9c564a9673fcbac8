"""Unit-group tower over G x C2^n for twists inflated from G.

Each extra central involution x_i gives two ring retractions, x_i -> 1 and
x_i -> -1.  The first splits the unit group as K_i x| U(level i-1); the
second embeds K_i onto the units congruent to 1 mod 2 one level down.
Iterating grades the whole unit group by 2-adic congruence depth.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cocycles import Cocycle
from .groups import build_group, direct_product
from .rings import TwElement, TwRing, is_unit


@dataclass(frozen=True)
class TowerContext:
    """Rings Z^alpha[G x C2^i] for 0 <= i <= n with the inflated twist."""

    base: TwRing
    levels: int
    rings: tuple[TwRing, ...]

    def ring(self, i: int) -> TwRing:
        return self.rings[i]


def build_tower(base: TwRing, levels: int) -> TowerContext:
    rings = [base]
    g = base.group
    cocycle = base.cocycle
    for i in range(1, levels + 1):
        c2 = build_group(
            [[0, 1], [1, 0]], ["1", f"x{i}"], name=f"C2(x{i})", generators={f"x{i}": 1}
        )
        g = direct_product(g, c2, name=f"{base.group.name}xC2^{i}")
        table = tuple(
            tuple(cocycle.table[a // 2][b // 2] for b in g.elements())
            for a in g.elements()
        )
        cocycle = Cocycle(g, base.cocycle.modulus, table)
        rings.append(TwRing(g, cocycle, base.conductor))
    return TowerContext(base=base, levels=levels, rings=tuple(rings))


def embed_up(ctx: TowerContext, i: int, x: TwElement) -> TwElement:
    """Include a level-(i-1) element into level i (x_i-free part)."""
    lo = ctx.rings[i - 1]
    hi = ctx.rings[i]
    if x.ring != lo:
        raise ValueError("element is not at the expected level")
    z = hi.zero_coeff()
    coeffs = [z] * hi.group.order
    for g, c in x.items():
        coeffs[2 * g] = c
    return TwElement(hi, tuple(coeffs))


def project_psi(ctx: TowerContext, i: int, x: TwElement) -> TwElement:
    """The retraction x_i -> 1, a ring morphism by centrality of x_i."""
    lo = ctx.rings[i - 1]
    if x.ring != ctx.rings[i]:
        raise ValueError("element is not at the expected level")
    z = lo.zero_coeff()
    coeffs = [z] * lo.group.order
    for g, c in x.items():
        coeffs[g // 2] = coeffs[g // 2] + c
    return TwElement(lo, tuple(coeffs))


def project_phi(ctx: TowerContext, i: int, x: TwElement) -> TwElement:
    """The retraction x_i -> -1."""
    lo = ctx.rings[i - 1]
    if x.ring != ctx.rings[i]:
        raise ValueError("element is not at the expected level")
    z = lo.zero_coeff()
    coeffs = [z] * lo.group.order
    for g, c in x.items():
        coeffs[g // 2] = coeffs[g // 2] + (-c if g % 2 else c)
    return TwElement(lo, tuple(coeffs))


def split_unit(
    ctx: TowerContext, i: int, u: TwElement
) -> tuple[TwElement, TwElement]:
    """Factor a level-i unit as u = k * s with psi_i(k) = 1, s from below.

    s is psi_i(u) re-embedded; k lands in the kernel of the induced unit
    map.  The factorization is verified exactly.
    """
    u_inv = is_unit(u)
    if u_inv is None:
        raise ValueError("split requested for a non-unit")
    s_small = project_psi(ctx, i, u)
    s_small_inv = project_psi(ctx, i, u_inv)
    s = embed_up(ctx, i, s_small)
    k = u * embed_up(ctx, i, s_small_inv)
    if project_psi(ctx, i, k) != ctx.rings[i - 1].one():
        raise ArithmeticError("kernel part does not project to 1")
    if k * s != u:
        raise ArithmeticError("split does not recompose")
    return k, s


def kernel_embed(ctx: TowerContext, i: int, k: TwElement) -> TwElement:
    """Embed K_i into the 1+2u units one level down via x_i -> -1."""
    if project_psi(ctx, i, k) != ctx.rings[i - 1].one():
        raise ValueError("element is not in the kernel of psi_i")
    image = project_phi(ctx, i, k)
    if not u_group_membership(ctx, 1, i - 1, image):
        raise ArithmeticError("kernel image is not congruent to 1 mod 2")
    return image


def u_group_membership(ctx: TowerContext, k: int, j: int, x: TwElement) -> bool:
    """x in U_{k,j}: a level-j unit with x - 1 divisible by 2^k."""
    ring = ctx.rings[j]
    if x.ring != ring:
        return False
    diff = x - ring.one()
    for c in diff.coeffs:
        if any(v % (1 << k) for v in c.coeffs):
            return False
    return is_unit(x) is not None


def u_split(
    ctx: TowerContext, k: int, j: int, x: TwElement
) -> tuple[TwElement, TwElement]:
    """Split U_{k,j} as U_{k+1,j-1} x| U_{k,j-1}.

    Returns (a, b) with b = psi_j(x) and a = phi_j(x b^-1); a gains one
    power of two in congruence depth.
    """
    if j < 1:
        raise ValueError("no involution left to split along")
    if not u_group_membership(ctx, k, j, x):
        raise ValueError(f"element is not in U_({k},{j})")
    b = project_psi(ctx, j, x)
    b_inv = is_unit(b)
    if b_inv is None:
        raise ArithmeticError("projection of a unit failed to invert")
    kpart = x * embed_up(ctx, j, b_inv)
    a = project_phi(ctx, j, kpart)
    if not u_group_membership(ctx, k + 1, j - 1, a):
        raise ArithmeticError("deep part misses the expected congruence depth")
    if not u_group_membership(ctx, k, j - 1, b):
        raise ArithmeticError("shallow part left its congruence class")
    return a, b


# ---------------------------------------------------------------------------
# seeded sample units


def random_unit(ctx: TowerContext, level: int, rng: random.Random, length: int = 6) -> TwElement:
    """Product of random trivial and unipotent units at the given level."""
    ring = ctx.rings[level]
    n = ring.group.order
    out = ring.one()
    for _ in range(length):
        kind = rng.randrange(3)
        if kind == 0:
            g = rng.randrange(n)
            sign = rng.choice([1, -1])
            out = out * ring.basis(g, sign)
        else:
            out = out * _random_unipotent(ring, rng)
    return out


def _random_unipotent(ring: TwRing, rng: random.Random) -> TwElement:
    """1 + z u_h s_g for a random anticommuting pair, or 1 when none exists."""
    from .rings import basis_power_exponent, conj_character
    from .groups import element_order

    n = ring.group.order
    candidates = []
    for g in range(1, n):
        if basis_power_exponent(ring, g) != 0:
            continue
        if element_order(ring.group, g) % 2:
            continue
        cc = conj_character(ring, g)
        if cc.c_minus:
            for h in cc.c_minus:
                candidates.append((g, h))
    if not candidates:
        return ring.one()
    g, h = candidates[rng.randrange(len(candidates))]
    from .units import minimal_twisted_bicyclic

    u = minimal_twisted_bicyclic(ring, g, h)
    return u if rng.randrange(2) else is_unit(u)
