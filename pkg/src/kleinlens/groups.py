"""Finitely presented groups at the scale needed here.

Words in a free group, two-generator presentations for the Klein-bottle group
and its Dehn-filling quotients, and explicit multiplication tables for the
metacyclic groups <u, v | u v u^-1 = v^-1, u^{2n} v^l = 1> on the normal forms
u^j v^k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .abelian import AbelianGroup, cokernel

__all__ = [
    "Word", "Presentation", "MetacyclicTable", "TableCapExceeded",
    "free_reduce", "word", "klein_bottle_group", "peripheral_image",
    "dehn_filling_presentation", "abelianization", "build_metacyclic_table",
    "group_order", "is_abelian", "is_cyclic", "element_order",
    "evaluate_word", "table_abelianization", "check_group_axioms",
    "torsion_diagnostic", "TorsionReport", "DEFAULT_ORDER_CAP", "GEN_NAMES",
]

DEFAULT_ORDER_CAP = 20000
GEN_NAMES = "uvwxyz"

Word = Tuple[Tuple[int, int], ...]


def free_reduce(pairs) -> Word:
    """Merge adjacent equal generators and drop zero exponents."""
    out: List[List[int]] = []
    for g, e in pairs:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def word(*pairs) -> Word:
    return free_reduce(pairs)


def is_freely_reduced(w: Word) -> bool:
    return all(e != 0 for _, e in w) and all(a[0] != b[0] for a, b in zip(w, w[1:]))


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(GEN_NAMES[g] if e == 1 else f"{GEN_NAMES[g]}^{e}" for g, e in w)


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        rels = tuple(free_reduce(r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        for r in rels:
            if any(not 0 <= g < self.generator_count for g, _ in r):
                raise ValueError(f"relator {r} uses an unknown generator")

    def __str__(self) -> str:
        gens = ",".join(GEN_NAMES[i] for i in range(self.generator_count))
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"<{gens} | {rels}>"


U, V = 0, 1


def klein_bottle_group() -> Presentation:
    """pi_1 of the Klein bottle (= pi_1 of nu K): <u, v | u v u^-1 v>."""
    return Presentation(2, (word((U, 1), (V, 1), (U, -1), (V, 1)),))


def peripheral_image(nn: int, ell: int) -> Word:
    """Image of the torus class a^nn b^l under pi_1(T) -> pi_1(nu K)."""
    return word((U, 2 * nn), (V, ell))


def dehn_filling_presentation(n: int, ell: int) -> Presentation:
    return Presentation(2, klein_bottle_group().relators + (peripheral_image(n, ell),))


def abelianization(pres: Presentation) -> AbelianGroup:
    """SNF of the relator exponent-sum matrix."""
    rows = []
    for r in pres.relators:
        row = [0] * pres.generator_count
        for g, e in r:
            row[g] += e
        rows.append(row)
    return cokernel(rows, AbelianGroup((), pres.generator_count))


class TableCapExceeded(MemoryError):
    """Requested multiplication table is larger than the configured cap."""


@dataclass(frozen=True, eq=False)
class MetacyclicTable:
    """The group <u, v | u v u^-1 = v^-1, u^{2n} v^l = 1> on normal forms.

    Element (j, k) = u^j v^k has index ``j * 2|l| + k``; ``table[a, b]`` is the
    index of the product a*b.
    """

    n: int
    ell: int
    table: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return 4 * self.n * abs(self.ell)

    @property
    def v_order_bound(self) -> int:
        return 2 * abs(self.ell)

    def index(self, j: int, k: int) -> int:
        return (j % (2 * self.n)) * self.v_order_bound + k % self.v_order_bound

    def normal_form(self, idx: int) -> Tuple[int, int]:
        return divmod(int(idx), self.v_order_bound)

    @property
    def u(self) -> int:
        return self.index(1, 0)

    @property
    def v(self) -> int:
        return self.index(0, 1)

    identity = 0


def build_metacyclic_table(n: int, ell: int, cap: int = DEFAULT_ORDER_CAP) -> MetacyclicTable:
    """Multiplication table from the rewriting rules.

    (u^j v^k)(u^j' v^k') = u^{j+j'} v^{(-1)^j' k + k'}, since conjugating by u
    inverts v.  If j + j' >= 2n, u^{j+j'} = u^{j+j'-2n} u^{2n} and the trailing
    u^{2n} is replaced by v^{-l} in place, so it sits next to the v-part and
    no centrality is used.  Finally v^{2l} = 1 reduces k.
    """
    if n < 1 or ell == 0:
        raise ValueError(f"need n >= 1 and l != 0, got n={n}, l={ell}")
    order = 4 * n * abs(ell)
    if order > cap:
        raise TableCapExceeded(f"group order {order} exceeds the table cap {cap}")
    m = 2 * abs(ell)
    idx = np.arange(order, dtype=np.int64)
    j, k = np.divmod(idx, m)
    jj, kk = j[:, None], k[:, None]
    j2, k2 = j[None, :], k[None, :]
    sign = np.where(j2 % 2 == 0, 1, -1)
    ju = jj + j2
    kv = sign * kk + k2
    wrap = ju >= 2 * n
    ju = np.where(wrap, ju - 2 * n, ju)
    kv = np.where(wrap, kv - ell, kv)
    kv = np.mod(kv, m)
    table = (ju * m + kv).astype(np.int32)
    table.setflags(write=False)
    return MetacyclicTable(n, ell, table)


def evaluate_word(table: np.ndarray, images: Sequence[int], w: Word,
                  identity: int = 0) -> int:
    """Evaluate a word in a finite group given by its Cayley table."""
    inverses = _inverses(table, identity)
    acc = identity
    for g, e in w:
        x = images[g] if e > 0 else int(inverses[images[g]])
        for _ in range(abs(e)):
            acc = int(table[acc, x])
    return acc


def _inverses(table: np.ndarray, identity: int = 0) -> np.ndarray:
    rows, cols = np.nonzero(table == identity)
    inv = np.empty(table.shape[0], dtype=np.int64)
    inv[rows] = cols
    return inv


def _order_in(table: np.ndarray, a: int, identity: int = 0) -> int:
    x, k = a, 1
    while x != identity:
        x = int(table[x, a])
        k += 1
        if k > table.shape[0]:
            raise ArithmeticError("element order exceeds group order; table is not a group")
    return k


def group_order(t: MetacyclicTable) -> int:
    return int(t.table.shape[0])


def is_abelian(t: MetacyclicTable) -> bool:
    return bool(np.array_equal(t.table, t.table.T))


def element_order(t: MetacyclicTable, j: int, k: int) -> int:
    """Order of u^j v^k by repeated multiplication."""
    return _order_in(t.table, t.index(j, k))


def is_cyclic(t: MetacyclicTable) -> bool:
    n = group_order(t)
    return any(_order_in(t.table, a) == n for a in range(n))


def check_group_axioms(table: np.ndarray, identity: int = 0,
                       exhaustive_limit: int = 200, samples: int = 10_000,
                       seed: int = 0) -> Dict[str, bool]:
    """Identity, Latin-square property and associativity.

    Associativity is checked on every triple up to ``exhaustive_limit``
    elements and on ``samples`` seeded random triples beyond that.
    """
    n = table.shape[0]
    ids = np.arange(n)
    result = {
        "identity": bool(np.array_equal(table[identity], ids)
                         and np.array_equal(table[:, identity], ids)),
        "latin": bool(all(np.array_equal(np.sort(table[i]), ids) for i in range(n))
                      and all(np.array_equal(np.sort(table[:, i]), ids) for i in range(n))),
    }
    t = table.astype(np.int64)
    if n <= exhaustive_limit:
        left = t[t, :]            # left[a, b, c] = (ab)c
        right = t[:, t]           # right[a, b, c] = a(bc)
        result["associative"] = bool(np.array_equal(left, right))
        result["associativity_exhaustive"] = True
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        result["associative"] = bool(np.array_equal(t[t[a, b], c], t[a, t[b, c]]))
        result["associativity_exhaustive"] = False
    return result


def _generated_subgroup(table: np.ndarray, gens: Sequence[int], identity: int = 0) -> set:
    seen = {identity}
    frontier = [identity]
    gens = list(set(int(g) for g in gens))
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(table[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def commutator_subgroup(table: np.ndarray, identity: int = 0) -> set:
    n = table.shape[0]
    inv = _inverses(table, identity)
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    comm = table[table[a, b], table[inv[a], inv[b]]]
    return _generated_subgroup(table, np.unique(comm), identity)


def table_abelianization(t: MetacyclicTable) -> AbelianGroup:
    """G / [G, G] computed from the table alone.

    Collects every (a, b) in [0, ord u) x [0, ord v) with u^a v^b in the
    commutator subgroup (plus the two orders) and takes the cokernel of that
    relation lattice on Z^2.
    """
    tab = t.table
    derived = commutator_subgroup(tab)
    ou = _order_in(tab, t.u)
    ov = _order_in(tab, t.v)
    rows = [[ou, 0], [0, ov]]
    powers_u = [0]
    for _ in range(ou - 1):
        powers_u.append(int(tab[powers_u[-1], t.u]))
    powers_v = [0]
    for _ in range(ov - 1):
        powers_v.append(int(tab[powers_v[-1], t.v]))
    for a, ua in enumerate(powers_u):
        for b, vb in enumerate(powers_v):
            if (a or b) and int(tab[ua, vb]) in derived:
                rows.append([a, b])
    return cokernel(rows, AbelianGroup((), 2))


def quotient_by_v(t: MetacyclicTable) -> Tuple[int, bool]:
    """Order of G/<v> and whether it is cyclic, from coset multiplication."""
    tab = t.table
    sub = _generated_subgroup(tab, [t.v])
    cosets: Dict[int, int] = {}
    reps: List[int] = []
    for g in range(tab.shape[0]):
        key = min(int(tab[g, h]) for h in sub)
        if key not in cosets:
            cosets[key] = len(reps)
            reps.append(g)
    m = len(reps)
    coset_of = {}
    for g in range(tab.shape[0]):
        coset_of[g] = cosets[min(int(tab[g, h]) for h in sub)]
    qt = np.array([[coset_of[int(tab[a, b])] for b in reps] for a in reps])
    ident = coset_of[0]
    cyclic = any(_order_in(qt, c, ident) == m for c in range(m))
    return m, cyclic


@dataclass
class TorsionReport:
    n: int
    ell: int
    element: str
    relation: str
    bound: int
    exact_order: Optional[int]
    witness: str
    verified: bool
    notes: List[str] = field(default_factory=list)

    def lines(self) -> List[Tuple[str, object]]:
        out = [
            ("torsion_element", self.element),
            ("torsion_relation", self.relation),
            ("order_divides", self.bound),
            ("exact_order", self.exact_order if self.exact_order is not None else "unverified"),
            ("witness", self.witness),
            ("witness_verified", self.verified),
        ]
        out += [("note", s) for s in self.notes]
        return out


def torsion_diagnostic(n: int, ell: int, cap: int = DEFAULT_ORDER_CAP) -> TorsionReport:
    """Which generator turns into torsion once u^{2n} v^l = 1 is imposed.

    For l = 0, u^{2n} = 1, and the surjection onto Z_{2n} (u -> 1, v -> 0)
    shows the order is exactly 2n.  For l != 0, conjugating v^l by u gives both
    v^{-l} and v^l, so v^{2l} = 1; for n != 0 the finite table certifies that
    the order is exactly 2|l|.
    """
    if n == 0 and ell == 0:
        raise ValueError("(n, l) = (0, 0) adds no relation")
    pres = dehn_filling_presentation(n, ell)
    if ell == 0:
        m = 2 * abs(n)
        tab = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
        images = [1 % m, 0]
        hom_ok = all(evaluate_word(tab, images, r) == 0 for r in pres.relators)
        order = _order_in(tab, images[U]) if hom_ok else None
        return TorsionReport(n, ell, "u", f"u^{m} = 1", m, order,
                             f"surjection onto Z_{m}, u -> 1, v -> 0",
                             hom_ok and order == m)
    bound = 2 * abs(ell)
    rel = f"v^{bound} = 1"
    if n == 0:
        return TorsionReport(n, ell, "v", rel, bound, None, "none", False,
                             [f"the relator is v^{ell} itself, so the order of v divides {abs(ell)}"])
    # u^{-2n} v^l = 1 is u^{2n} v^{-l} = 1, the same group with l negated
    nn, ll = (n, ell) if n > 0 else (-n, -ell)
    if 4 * nn * abs(ll) > cap:
        return TorsionReport(n, ell, "v", rel, bound, None, "none", False,
                             [f"table of order {4 * nn * abs(ll)} exceeds cap {cap}"])
    t = build_metacyclic_table(nn, ll, cap)
    hom_ok = all(evaluate_word(t.table, [t.u, t.v], r) == 0
                 for r in dehn_filling_presentation(nn, ll).relators)
    order = element_order(t, 0, 1)
    return TorsionReport(n, ell, "v", rel, bound, order,
                         f"metacyclic table of order {t.order}",
                         hom_ok and order == bound)
