"""Group extensions, sections, and the projection maps they induce.

An extension 1 -> N -> Gamma -> G -> 1 with a fixed section mu determines a
factor set alpha(g,h) = mu(g) mu(h) mu(gh)^-1 in N.  Composing with an
invariant character chi of N yields the ring epimorphism

    Psi: R[Gamma] -> R[chi]^(beta * chi(alpha))[G],  u_(n mu(g)) -> chi(n) v_g

whose kernel and induced unit-group map are the objects of interest here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .cocycles import (
    Cocycle,
    LinearCharacter,
    inflate,
    transgress,
    trivial_cocycle,
    validate_character,
)
from .cyclotomic import CycInt, SUPPORTED_CONDUCTORS, euler_phi
from .errors import CapExceededError
from .groups import (
    FiniteGroup,
    GroupHom,
    Section,
    element_order,
    exponent,
    is_abelian,
    quotient,
    subgroup_as_group,
    validate_section,
)
from .rings import TwElement, TwRing


@dataclass(frozen=True)
class ExtensionData:
    """An extension with a chosen section and its derived factor set."""

    total: FiniteGroup
    sub_ids: frozenset[int]
    quotient_group: FiniteGroup
    proj: GroupHom
    section: Section
    sub_group: FiniteGroup
    sub_embed: tuple[int, ...]
    sub_index: dict[int, int]
    alpha_sub: tuple[tuple[int, ...], ...]
    sigma: tuple[tuple[int, ...], ...]
    is_central: bool

    def decompose(self, gamma: int) -> tuple[int, int]:
        """Write gamma = n * mu(g); returns (sub-id of n, quotient id g)."""
        g = self.proj.map[gamma]
        mu_g = self.section.map[g]
        n = self.total.mul[gamma][self.total.inv[mu_g]]
        return self.sub_index[n], g


def build_extension(
    total: FiniteGroup,
    sub_ids: Iterable[int],
    section_map: Optional[Sequence[int]] = None,
    proj: Optional[GroupHom] = None,
) -> ExtensionData:
    """Build extension data over a normal subgroup.

    The quotient defaults to the canonical one (cosets numbered by least
    representative); passing an explicit surjection with the same kernel
    fixes a preferred presentation of the quotient instead.  The default
    section picks the least preimage of each quotient element; an explicit
    section_map (quotient id -> total id) may be supplied to reproduce a
    particular labelling.
    """
    nset = frozenset(sub_ids)
    if proj is None:
        q, proj = quotient(total, nset)
    else:
        if proj.source != total:
            raise ValueError("projection source is not the extension total")
        if not proj.is_surjective():
            raise ValueError("projection is not surjective")
        if proj.kernel() != nset:
            raise ValueError("projection kernel differs from the given subgroup")
        q = proj.target
    sub_group, embed = subgroup_as_group(total, nset)
    sub_index = {embed.map[i]: i for i in range(sub_group.order)}
    if section_map is None:
        chosen = [min(x for x in total.elements() if proj.map[x] == g) for g in q.elements()]
        section_map = chosen
    section = Section(of=proj, map=tuple(section_map))
    validate_section(section)
    mul = total.mul
    inv = total.inv
    alpha_rows = []
    for a in q.elements():
        row = []
        for b in q.elements():
            val = mul[mul[section.map[a]][section.map[b]]][inv[section.map[q.mul[a][b]]]]
            if val not in sub_index:
                raise ValueError("factor set leaves the kernel; section is invalid")
            row.append(sub_index[val])
        alpha_rows.append(tuple(row))
    sigma_rows = []
    for g in q.elements():
        mu_g = section.map[g]
        perm = []
        for i in range(sub_group.order):
            n = embed.map[i]
            conj = mul[mul[mu_g][n]][inv[mu_g]]
            perm.append(sub_index[conj])
        sigma_rows.append(tuple(perm))
    central = all(
        total.mul[n][x] == total.mul[x][n]
        for n in nset
        for x in total.elements()
    )
    return ExtensionData(
        total=total,
        sub_ids=nset,
        quotient_group=q,
        proj=proj,
        section=section,
        sub_group=sub_group,
        sub_embed=embed.map,
        sub_index=sub_index,
        alpha_sub=tuple(alpha_rows),
        sigma=tuple(sigma_rows),
        is_central=central,
    )


# ---------------------------------------------------------------------------
# the projection ring map


@dataclass(frozen=True)
class PsiMap:
    """Ring epimorphism R^beta[Gamma] -> R[chi]^(beta * T(chi))[G]."""

    ext: ExtensionData
    chi: LinearCharacter
    beta: Cocycle
    source: TwRing
    target: TwRing
    gamma_images: tuple[tuple[int, int], ...]

    def basis_image(self, gamma: int) -> tuple[int, int]:
        """Image of u_gamma as (quotient element, value exponent)."""
        return self.gamma_images[gamma]


def build_psi(
    ext: ExtensionData,
    chi: LinearCharacter,
    beta: Optional[Cocycle] = None,
    conductor: Optional[int] = None,
) -> PsiMap:
    """Assemble the projection map for an invariant character of the kernel.

    beta is a cocycle on the quotient (default trivial); the source ring is
    twisted by its inflation, the target by beta * T(chi).
    """
    if chi.group != ext.sub_group:
        raise ValueError("character must live on the extension kernel")
    validate_character(chi)
    g = ext.quotient_group
    if beta is None:
        beta = trivial_cocycle(g, 1)
    if beta.group != g:
        raise ValueError("beta must be a cocycle on the quotient group")
    t_chi = transgress(ext, chi)
    m_t = lcm(beta.modulus, t_chi.modulus)
    beta_s = beta.rescaled(m_t)
    t_s = t_chi.rescaled(m_t)
    target_table = tuple(
        tuple((beta_s.table[a][b] + t_s.table[a][b]) % m_t for b in g.elements())
        for a in g.elements()
    )
    target_cocycle = Cocycle(g, m_t, target_table)
    src_conductor = _fit_conductor(lcm(conductor or 1, beta.modulus))
    tgt_conductor = _fit_conductor(lcm(conductor or 1, m_t))
    beta_total = inflate(beta, ext.proj)
    source = TwRing(ext.total, beta_total, src_conductor)
    target = TwRing(g, target_cocycle, tgt_conductor)
    images = []
    for gamma in ext.total.elements():
        n_id, gq = ext.decompose(gamma)
        exp = chi.values[n_id] * m_t // chi.modulus
        images.append((gq, exp % m_t if m_t > 1 else 0))
    return PsiMap(
        ext=ext,
        chi=chi,
        beta=beta,
        source=source,
        target=target,
        gamma_images=tuple(images),
    )


def _fit_conductor(m: int) -> int:
    for c in SUPPORTED_CONDUCTORS:
        if c % m == 0:
            return c
    raise CapExceededError(f"no supported conductor divisible by {m}")


def apply_psi(psi: PsiMap, x: TwElement) -> TwElement:
    """Linear extension of u_(n mu(g)) -> chi(n) v_g."""
    if x.ring != psi.source:
        raise ValueError("element does not belong to the source ring")
    g = psi.target.group
    m_t = psi.target.cocycle.modulus
    cond = psi.target.conductor
    out = [CycInt.integer(0, cond) for _ in g.elements()]
    for gamma, coeff in x.items():
        gq, exp = psi.gamma_images[gamma]
        val = coeff.embed(cond) * CycInt.zeta(cond, exp * cond // m_t)
        out[gq] = out[gq] + val
    return TwElement(psi.target, tuple(out))


def kernel_basis(psi: PsiMap) -> list[TwElement]:
    """R-module basis {u_(a mu(g)) - chi(a) u_mu(g)} of ker(psi), a != 1."""
    ext = psi.ext
    src = psi.source
    cond = src.conductor
    out = []
    for a_idx in range(1, ext.sub_group.order):
        a = ext.sub_embed[a_idx]
        chi_a = psi.chi.value_at(a_idx, cond)
        for g in ext.quotient_group.elements():
            mu_g = ext.section.map[g]
            elem = src.basis(ext.total.mul[a][mu_g]) - src.basis(mu_g) * chi_a
            out.append(elem)
    return out


def torsion_kernel_units(psi: PsiMap) -> list[TwElement]:
    """The torsion units of ker(unit map): {chi(a)^-1 u_a | a in N}."""
    ext = psi.ext
    if not ext.is_central:
        raise ValueError("torsion kernel description requires a central kernel")
    src = psi.source
    cond = src.conductor
    out = []
    for a_idx in range(ext.sub_group.order):
        a = ext.sub_embed[a_idx]
        out.append(src.basis(a) * psi.chi.inverse_value_at(a_idx, cond))
    return out


def kernel_torsion_scan(
    psi: PsiMap,
    coeff_values: Sequence[int] = (-1, 1),
    support_cap: int = 4,
) -> list[TwElement]:
    """Oracle: all torsion units in ker(psi) with small support and coefficients.

    Enumerates every element with support <= support_cap and nonzero integer
    coefficients from coeff_values, keeps those mapping to 1, and returns the
    ones that are torsion units.
    """
    from .rings import is_unit, torsion_order

    src = psi.source
    n = src.group.order
    found = []
    images = psi.gamma_images
    m_t = psi.target.cocycle.modulus
    rational = m_t in (1, 2)
    one = psi.target.one()
    one_img = {0: 1}
    for size in range(1, support_cap + 1):
        for support in itertools.combinations(range(n), size):
            for coeffs in itertools.product(coeff_values, repeat=size):
                if rational:
                    # fast integer pre-filter on the image vector
                    acc: dict[int, int] = {}
                    for gamma, c in zip(support, coeffs):
                        gq, exp = images[gamma]
                        v = acc.get(gq, 0) + (-c if exp else c)
                        if v:
                            acc[gq] = v
                        elif gq in acc:
                            del acc[gq]
                    if acc != one_img:
                        continue
                elem = src.element(dict(zip(support, coeffs)))
                if apply_psi(psi, elem) != one:
                    continue
                if is_unit(elem) is None:
                    continue
                if torsion_order(elem) is not None:
                    found.append(elem)
    return found


@dataclass(frozen=True)
class KernelFiniteness:
    finite: bool
    clauses: tuple[str, ...]
    detail: str


def kernel_finiteness_predicate(psi: PsiMap) -> KernelFiniteness:
    """Decide finiteness of ker(unit map) for a central kernel.

    The kernel is finite iff the source unit group is finite, or chi is
    non-trivial and either N is of prime order with U(R[G]) finite, or G is
    abelian with lcm(exp G, exp N) dividing 4 or 6.
    """
    from .units import decide_finiteness

    ext = psi.ext
    if not ext.is_central:
        raise ValueError("finiteness predicate requires a central kernel")
    clauses = []
    src_verdict = decide_finiteness(psi.source)
    if src_verdict.finite:
        clauses.append("unit-group-finite")
    if not psi.chi.is_trivial():
        n_grp = ext.sub_group
        n_order = n_grp.order
        prime = n_order > 1 and all(n_order % d for d in range(2, n_order))
        cyclic_n = any(element_order(n_grp, x) == n_order for x in n_grp.elements())
        if prime and cyclic_n:
            untwisted = TwRing(
                ext.quotient_group,
                trivial_cocycle(ext.quotient_group, 1),
                psi.source.conductor,
            )
            if decide_finiteness(untwisted).finite:
                clauses.append("prime-kernel")
        g = ext.quotient_group
        if is_abelian(g):
            e = lcm(exponent(g), exponent(n_grp))
            if 4 % e == 0 or 6 % e == 0:
                clauses.append("abelian-small-exponent")
    detail = ", ".join(clauses) if clauses else "no finiteness clause applies"
    return KernelFiniteness(finite=bool(clauses), clauses=tuple(clauses), detail=detail)


# ---------------------------------------------------------------------------
# characters of abelian groups, orbits, components


def lin_characters(group: FiniteGroup, modulus: int) -> list[LinearCharacter]:
    """All homomorphisms group -> mu_modulus (full dual when exp | modulus)."""
    if not is_abelian(group):
        raise ValueError("linear characters require an abelian group")
    n = group.order
    chars: list[tuple[int, ...]] = [tuple([0] * n)]
    covered = [0]  # ids of the generated subgroup, in insertion order
    in_sub = {0}
    for x in group.elements():
        if x in in_sub:
            continue
        # relative order r: least r >= 1 with x^r inside the current subgroup
        r = 1
        p = x
        while p not in in_sub:
            p = group.mul[p][x]
            r += 1
        anchor = p  # x^r, already covered
        new_chars: list[tuple[int, ...]] = []
        for vals in chars:
            target = vals[anchor]
            for t in range(modulus):
                if (r * t - target) % modulus:
                    continue
                new_vals = list(vals)
                for j in range(1, r):
                    xj = x
                    for _ in range(j - 1):
                        xj = group.mul[xj][x]
                    for h in covered:
                        new_vals[group.mul[h][xj]] = (vals[h] + j * t) % modulus
                new_chars.append(tuple(new_vals))
        chars = new_chars
        new_elems = []
        for j in range(1, r):
            xj = x
            for _ in range(j - 1):
                xj = group.mul[xj][x]
            for h in list(covered):
                y = group.mul[h][xj]
                if y not in in_sub:
                    in_sub.add(y)
                    new_elems.append(y)
        covered.extend(new_elems)
    out = [LinearCharacter(group, modulus, vals) for vals in sorted(chars)]
    for chi in out:
        validate_character(chi)
    return out


def orbit_space(
    chars: Sequence[LinearCharacter],
    actions: Sequence[Sequence[int]],
) -> list[list[LinearCharacter]]:
    """Orbits of characters under permutations of the underlying group.

    Each action is a permutation p of element ids; it sends chi to the
    character x -> chi(p(x)).
    """
    index = {chi.values: i for i, chi in enumerate(chars)}
    seen = set()
    orbits = []
    for i, chi in enumerate(chars):
        if i in seen:
            continue
        orbit = {i}
        frontier = [chi.values]
        while frontier:
            vals = frontier.pop()
            for p in actions:
                moved = tuple(vals[p[x]] for x in range(len(vals)))
                j = index.get(moved)
                if j is None:
                    raise ValueError("action does not permute the character set")
                if j not in orbit:
                    orbit.add(j)
                    frontier.append(moved)
        seen |= orbit
        orbits.append([chars[j] for j in sorted(orbit)])
    return orbits


def galois_orbits(
    chars: Sequence[LinearCharacter], field_conductor: int
) -> list[list[LinearCharacter]]:
    """Orbits under sigma_j with j = 1 mod field_conductor (value powering)."""
    index = {chi.values: i for i, chi in enumerate(chars)}
    m = chars[0].modulus if chars else 1
    big = lcm(m, field_conductor)
    js = [
        j
        for j in range(1, big + 1)
        if gcd(j, big) == 1 and j % field_conductor == 1 % field_conductor
    ]
    seen = set()
    orbits = []
    for i, chi in enumerate(chars):
        if i in seen:
            continue
        orbit = set()
        for j in js:
            moved = tuple((v * j) % m for v in chi.values)
            k = index.get(moved)
            if k is not None:
                orbit.add(k)
        seen |= orbit
        orbits.append([chars[k] for k in sorted(orbit)])
    return orbits


@dataclass(frozen=True)
class ComponentEntry:
    character: LinearCharacter
    field_conductor: int
    degree: int
    orbit_size: int
    twist: Cocycle


def component_table(
    ext: ExtensionData,
    beta: Optional[Cocycle] = None,
    field_conductor: int = 1,
) -> list[ComponentEntry]:
    """Component bookkeeping of R^beta[Gamma] over F for a central kernel.

    One entry per Galois orbit of characters of N over F; each entry carries
    the twist beta * T(chi) of the corresponding component F(chi)[G]-twisted,
    and the dimension identity sum(degree) * |G| = |Gamma| is enforced.
    """
    if not ext.is_central:
        raise ValueError("component table requires a central kernel")
    n_grp = ext.sub_group
    full_modulus = _fit_conductor(lcm(exponent(n_grp), 1))
    chars = lin_characters(n_grp, full_modulus)
    if len(chars) != n_grp.order:
        raise ValueError("character enumeration is incomplete")
    orbits = galois_orbits(chars, field_conductor)
    entries = []
    g = ext.quotient_group
    for orbit in orbits:
        chi = orbit[0]
        value_order = chi.value_order()
        f_chi = lcm(field_conductor, value_order)
        degree = euler_phi(f_chi) // euler_phi(field_conductor)
        psi = build_psi(ext, chi, beta=beta)
        entries.append(
            ComponentEntry(
                character=chi,
                field_conductor=f_chi,
                degree=degree,
                orbit_size=len(orbit),
                twist=psi.target.cocycle,
            )
        )
    total = sum(e.degree for e in entries) * g.order
    if total != ext.total.order:
        raise ValueError(
            f"dimension identity fails: {total} != {ext.total.order}"
        )
    return entries


def perlis_walker_counts(group: FiniteGroup, field_conductor: int = 1) -> dict[int, int]:
    """Multiplicity a_d of the F(zeta_d)-component of F[A] for abelian A."""
    if not is_abelian(group):
        raise ValueError("abelian group required")
    by_order: dict[int, int] = {}
    for x in group.elements():
        o = element_order(group, x)
        by_order[o] = by_order.get(o, 0) + 1
    counts = {}
    for d, num in sorted(by_order.items()):
        k_d = num // euler_phi(d)
        rel_degree = euler_phi(lcm(field_conductor, d)) // euler_phi(field_conductor)
        counts[d] = k_d * euler_phi(d) // rel_degree
    return counts
