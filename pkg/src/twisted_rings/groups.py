"""Finite groups as dense multiplication tables with 0-based element ids.

Element ids run 0..order-1 and 0 is always the identity.  Labels are
metadata only; every structural question is answered from the tables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import CapExceededError

GROUP_ORDER_CAP = 256
EXHAUSTIVE_ASSOC_CAP = 64


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group given by its multiplication table."""

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    labels: tuple[str, ...]
    name: str = ""
    generators: dict[str, int] = field(default_factory=dict, compare=False)

    def elements(self) -> range:
        return range(self.order)

    def label(self, x: int) -> str:
        return self.labels[x]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"


@dataclass(frozen=True)
class GroupHom:
    """Group homomorphism given by its value table on element ids."""

    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def kernel(self) -> frozenset[int]:
        return frozenset(x for x in self.source.elements() if self.map[x] == 0)

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.order


@dataclass(frozen=True)
class Section:
    """Set-theoretic section of a surjective homomorphism."""

    of: GroupHom
    map: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.map[g]


def build_group(
    mul: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
    name: str = "",
    generators: Optional[dict[str, int]] = None,
    rng: Optional[random.Random] = None,
) -> FiniteGroup:
    """Validate a multiplication table and package it as a FiniteGroup.

    Associativity is checked exhaustively up to order 64 and by seeded
    random sampling above that.
    """
    n = len(mul)
    if n == 0:
        raise ValueError("empty multiplication table")
    if n > GROUP_ORDER_CAP:
        raise CapExceededError(f"group order {n} exceeds cap {GROUP_ORDER_CAP}")
    table = []
    for i, row in enumerate(mul):
        if len(row) != n:
            raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        r = tuple(int(x) for x in row)
        for x in r:
            if not 0 <= x < n:
                raise ValueError(f"table entry {x} out of range 0..{n - 1}")
        table.append(r)
    tab = tuple(table)
    for x in range(n):
        if tab[0][x] != x or tab[x][0] != x:
            raise ValueError("element 0 is not a two-sided identity")
    inverse = [-1] * n
    for x in range(n):
        for y in range(n):
            if tab[x][y] == 0 and tab[y][x] == 0:
                inverse[x] = y
                break
        if inverse[x] < 0:
            raise ValueError(f"element {x} has no two-sided inverse")
    if n <= EXHAUSTIVE_ASSOC_CAP:
        triples: Iterable[tuple[int, int, int]] = (
            (a, b, c) for a in range(n) for b in range(n) for c in range(n)
        )
    else:
        rng = rng or random.Random(0)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(20000)
        )
    for a, b, c in triples:
        if tab[tab[a][b]][c] != tab[a][tab[b][c]]:
            raise ValueError(f"associativity fails on ({a},{b},{c})")
    if labels is None:
        labels = tuple(f"e{i}" for i in range(n))
    else:
        if len(labels) != n:
            raise ValueError("labels length does not match order")
        labels = tuple(str(s) for s in labels)
    return FiniteGroup(
        order=n,
        mul=tab,
        inv=tuple(inverse),
        labels=labels,
        name=name,
        generators=dict(generators or {}),
    )


# ---------------------------------------------------------------------------
# presets


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"cyclic order must be positive, got {n}")
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
    gens = {"g": 1} if n > 1 else {}
    return build_group(mul, labels, name=f"C{n}", generators=gens)


def elementary_abelian_2(
    rank: int, gen_names: Optional[Sequence[str]] = None
) -> FiniteGroup:
    """C_2^rank with bitmask element ids.

    Default generator names follow g, h, x1, x2, ... so that the rank-(n+2)
    groups used by the case studies read naturally.
    """
    if rank < 0:
        raise ValueError("rank must be >= 0")
    if gen_names is None:
        gen_names = ["g", "h"] + [f"x{i}" for i in range(1, rank)]
    gen_names = list(gen_names)[:rank]
    if len(gen_names) != rank:
        raise ValueError("not enough generator names")
    n = 1 << rank
    mul = [[i ^ j for j in range(n)] for i in range(n)]
    labels = []
    for mask in range(n):
        parts = [gen_names[b] for b in range(rank) if mask >> b & 1]
        labels.append("".join(parts) if parts else "1")
    gens = {gen_names[b]: 1 << b for b in range(rank)}
    return build_group(mul, labels, name=f"C2^{rank}", generators=gens)


def dihedral8() -> FiniteGroup:
    """D8 = <a, b | a^4 = b^2 = 1, a^b = a^-1>, ids a^i b^j -> i + 4j."""
    mul = []
    for x in range(8):
        i1, j1 = x % 4, x // 4
        row = []
        for y in range(8):
            i2, j2 = y % 4, y // 4
            i = (i1 + (i2 if j1 == 0 else -i2)) % 4
            row.append(i + 4 * ((j1 + j2) % 2))
        mul.append(row)
    labels = ["1", "a", "a2", "a3", "b", "ab", "a2b", "a3b"]
    return build_group(mul, labels, name="D8", generators={"a": 1, "b": 4})


def quaternion8() -> FiniteGroup:
    """Q8 = {+-1, +-i, +-j, +-k} with ids 0..7 = 1,-1,i,-i,j,-j,k,-k."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")}

    def unit_mul(u: str, v: str) -> tuple[int, str]:
        tbl = {
            ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"),
            ("1", "k"): (1, "k"), ("i", "1"): (1, "i"), ("j", "1"): (1, "j"),
            ("k", "1"): (1, "k"), ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"),
            ("k", "k"): (-1, "1"), ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
            ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"), ("k", "i"): (1, "j"),
            ("i", "k"): (-1, "j"),
        }
        return tbl[(u, v)]

    def decode(x: int) -> tuple[int, str]:
        sign = -1 if x % 2 else 1
        sym = ["1", "i", "j", "k"][x // 2]
        return sign, sym

    def encode(sign: int, sym: str) -> int:
        return 2 * ["1", "i", "j", "k"].index(sym) + (0 if sign == 1 else 1)

    mul = []
    for x in range(8):
        s1, u1 = decode(x)
        row = []
        for y in range(8):
            s2, u2 = decode(y)
            s3, u3 = unit_mul(u1, u2)
            row.append(encode(s1 * s2 * s3, u3))
        mul.append(row)
    del base
    return build_group(mul, names, name="Q8", generators={"i": 2, "j": 4})


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str = "") -> FiniteGroup:
    """Direct product with ids packed as x*|B| + y."""
    n = a.order * b.order
    if n > GROUP_ORDER_CAP:
        raise CapExceededError(f"product order {n} exceeds cap {GROUP_ORDER_CAP}")
    nb = b.order
    mul = []
    for x in range(n):
        xa, xb = divmod(x, nb)
        row = []
        for y in range(n):
            ya, yb = divmod(y, nb)
            row.append(a.mul[xa][ya] * nb + b.mul[xb][yb])
        mul.append(row)
    labels = []
    for x in range(n):
        xa, xb = divmod(x, nb)
        la, lb = a.labels[xa], b.labels[xb]
        if la == "1":
            labels.append(lb)
        elif lb == "1":
            labels.append(la)
        else:
            labels.append(f"{la}*{lb}")
    gens = {k: v * nb for k, v in a.generators.items()}
    for k, v in b.generators.items():
        if k not in gens:
            gens[k] = v
    return build_group(mul, labels, name=name or f"{a.name}x{b.name}", generators=gens)


def build_preset(name: str, params: Sequence[int] = ()) -> FiniteGroup:
    """Construct a named preset group.

    Known presets: cyclic(n), elementary_abelian_2(rank), dihedral8,
    quaternion8, direct_product(n1, n2, ...) of cyclic factors.
    """
    params = list(params)
    if name == "cyclic":
        if len(params) != 1:
            raise ValueError("cyclic needs one parameter")
        return cyclic(params[0])
    if name == "elementary_abelian_2":
        if len(params) != 1:
            raise ValueError("elementary_abelian_2 needs one parameter")
        return elementary_abelian_2(params[0])
    if name == "dihedral8":
        return dihedral8()
    if name == "quaternion8":
        return quaternion8()
    if name == "direct_product":
        if not params:
            raise ValueError("direct_product needs cyclic factor orders")
        g = cyclic(params[0])
        for m in params[1:]:
            g = direct_product(g, cyclic(m))
        return g
    raise ValueError(f"unknown preset {name!r}")


def dihedral8_times_c2n(n: int) -> FiniteGroup:
    """D8 x C2^n with the extra involutions labelled y1..yn."""
    g = dihedral8()
    for i in range(1, n + 1):
        c2 = cyclic(2)
        c2 = build_group(
            c2.mul, ["1", f"y{i}"], name=f"C2(y{i})", generators={f"y{i}": 1}
        )
        g = direct_product(g, c2, name=f"D8xC2^{i}")
    return g


# ---------------------------------------------------------------------------
# structural queries


def element_order(g: FiniteGroup, x: int) -> int:
    k = 1
    y = x
    while y != 0:
        y = g.mul[y][x]
        k += 1
    return k


def order_histogram(g: FiniteGroup) -> dict[int, int]:
    hist: dict[int, int] = {}
    for x in g.elements():
        o = element_order(g, x)
        hist[o] = hist.get(o, 0) + 1
    return hist


def exponent(g: FiniteGroup) -> int:
    from math import lcm

    e = 1
    for x in g.elements():
        e = lcm(e, element_order(g, x))
    return e


def is_abelian(g: FiniteGroup) -> bool:
    return all(
        g.mul[x][y] == g.mul[y][x]
        for x in g.elements()
        for y in range(x + 1, g.order)
    )


def centralizer(g: FiniteGroup, x: int) -> frozenset[int]:
    return frozenset(y for y in g.elements() if g.mul[y][x] == g.mul[x][y])


def center(g: FiniteGroup) -> frozenset[int]:
    zs = set(g.elements())
    for x in g.elements():
        zs &= centralizer(g, x)
    return frozenset(zs)


def conjugate(g: FiniteGroup, x: int, by: int) -> int:
    """x^by = by^-1 * x * by."""
    return g.mul[g.mul[g.inv[by]][x]][by]


def subgroup_closure(g: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    elems = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for s in gens:
            for y in (g.mul[x][s], g.mul[s][x]):
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
    return frozenset(elems)


def is_subgroup(g: FiniteGroup, ids: Iterable[int]) -> bool:
    s = set(ids)
    if 0 not in s:
        return False
    for x in s:
        if g.inv[x] not in s:
            return False
        for y in s:
            if g.mul[x][y] not in s:
                return False
    return True


def is_normal(g: FiniteGroup, ids: Iterable[int]) -> bool:
    s = set(ids)
    if not is_subgroup(g, s):
        return False
    return all(conjugate(g, x, t) in s for x in s for t in g.elements())


def all_subgroups(g: FiniteGroup) -> list[frozenset[int]]:
    """Every subgroup, by closing the cyclic subgroups under joins.

    Exhaustive; intended for orders <= 64.
    """
    if g.order > EXHAUSTIVE_ASSOC_CAP:
        raise CapExceededError(f"subgroup enumeration capped at {EXHAUSTIVE_ASSOC_CAP}")
    subs = {frozenset([0])}
    frontier = {frozenset([0])}
    while frontier:
        new: set[frozenset[int]] = set()
        for h in frontier:
            for x in g.elements():
                if x in h:
                    continue
                j = subgroup_closure(g, set(h) | {x})
                if j not in subs:
                    new.add(j)
        subs |= new
        frontier = new
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def is_dedekind(g: FiniteGroup, exhaustive: bool = False) -> bool:
    """True when every subgroup is normal.

    Cyclic subgroups suffice (normality is preserved by joins); with
    exhaustive=True all subgroups are enumerated and checked instead.
    """
    if exhaustive:
        return all(is_normal(g, h) for h in all_subgroups(g))
    seen: set[frozenset[int]] = set()
    for x in g.elements():
        h = subgroup_closure(g, [x])
        if h in seen:
            continue
        seen.add(h)
        if not is_normal(g, h):
            return False
    return True


def is_hamiltonian_2group(g: FiniteGroup) -> bool:
    """Non-abelian 2-group with every subgroup normal (= Q8 x C2^m)."""
    n = g.order
    if n & (n - 1):
        return False
    if is_abelian(g):
        return False
    if n <= EXHAUSTIVE_ASSOC_CAP:
        return is_dedekind(g, exhaustive=True)
    return is_dedekind(g)


def quotient(g: FiniteGroup, normal_ids: Iterable[int]) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup, with the canonical projection.

    Cosets are numbered by their least representative, so the identity
    coset is element 0 of the quotient.
    """
    nset = frozenset(normal_ids)
    if not is_subgroup(g, nset):
        raise ValueError("given id set is not a subgroup")
    if not is_normal(g, nset):
        raise ValueError("subgroup is not normal")
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for x in g.elements():
        if x in coset_of:
            continue
        members = sorted(g.mul[x][n] for n in nset)
        rep_index = len(reps)
        reps.append(members[0])
        for m in members:
            coset_of[m] = rep_index
    order = len(reps)
    perm = sorted(range(order), key=lambda i: reps[i])
    rank = {old: new for new, old in enumerate(perm)}
    reps = [reps[old] for old in perm]
    proj = tuple(rank[coset_of[x]] for x in g.elements())
    mul = [
        [proj[g.mul[reps[i]][reps[j]]] for j in range(order)] for i in range(order)
    ]
    labels = [g.labels[r] for r in reps]
    q = build_group(mul, labels, name=f"{g.name}/N")
    return q, GroupHom(source=g, target=q, map=proj)


def subgroup_as_group(
    g: FiniteGroup, ids: Iterable[int]
) -> tuple[FiniteGroup, GroupHom]:
    """Package a subgroup as its own FiniteGroup plus the embedding."""
    members = sorted(set(ids))
    if not is_subgroup(g, members):
        raise ValueError("given id set is not a subgroup")
    index = {x: i for i, x in enumerate(members)}
    mul = [[index[g.mul[x][y]] for y in members] for x in members]
    labels = [g.labels[x] for x in members]
    h = build_group(mul, labels, name=f"{g.name}|H")
    embed = GroupHom(source=h, target=g, map=tuple(members))
    return h, embed


def hom_from_gen_images(
    source: FiniteGroup, target: FiniteGroup, images: dict[int, int]
) -> GroupHom:
    """Extend generator images to a full homomorphism table (and check it)."""
    table: dict[int, int] = {0: 0}
    frontier = [0]
    pairs = list(images.items())
    while frontier:
        x = frontier.pop()
        for s, t in pairs:
            y = source.mul[x][s]
            v = target.mul[table[x]][t]
            if y in table:
                if table[y] != v:
                    raise ValueError("generator images are inconsistent")
            else:
                table[y] = v
                frontier.append(y)
    if len(table) != source.order:
        raise ValueError("images do not generate the source group")
    hom = GroupHom(source, target, tuple(table[x] for x in source.elements()))
    validate_hom(hom)
    return hom


def validate_hom(h: GroupHom) -> None:
    if h.map[0] != 0:
        raise ValueError("homomorphism does not fix the identity")
    for x in h.source.elements():
        for y in h.source.elements():
            if h.map[h.source.mul[x][y]] != h.target.mul[h.map[x]][h.map[y]]:
                raise ValueError(f"multiplicativity fails at ({x},{y})")


def validate_section(s: Section) -> None:
    lam = s.of
    if not lam.is_surjective():
        raise ValueError("section of a non-surjective homomorphism")
    if s.map[0] != 0:
        raise ValueError("section does not fix the identity")
    for gid in lam.target.elements():
        if lam.map[s.map[gid]] != gid:
            raise ValueError(f"section fails at {gid}")


# ---------------------------------------------------------------------------
# serialization

def group_to_json(g: FiniteGroup) -> dict:
    return {
        "order": g.order,
        "mul": [list(row) for row in g.mul],
        "labels": list(g.labels),
    }


def group_from_json(data: dict) -> FiniteGroup:
    if "preset" in data:
        return build_preset(data["preset"], data.get("params", []))
    if "mul" not in data:
        raise ValueError("group JSON needs 'mul' or 'preset'")
    return build_group(data["mul"], data.get("labels"), name=data.get("name", ""))
