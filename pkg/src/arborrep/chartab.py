"""Exact character tables of small permutation groups and decomposition of
permutation characters.

Characters are computed over GF(l) for a prime ``l = 1 (mod e)``, ``e`` the
group exponent, and lifted to exact values in ``Z[zeta_e]``: a value is stored
as the integer vector ``c`` with ``chi(g) = sum_j c[j] zeta_e**j``, where
``c[j]`` counts eigenvalues ``zeta_e**j`` of the representing matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Callable, Sequence

from . import kernels, modp
from .perm import Perm, PermError, enumerate_elements, inverse, is_identity, mul, perm_order, schreier_sims

ORDER_CAP = 20000


class CharacterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Conjugacy classes
# ---------------------------------------------------------------------------


@dataclass
class ClassData:
    elements: list[Perm]
    class_of: list[int]
    classes: list[list[int]]
    exponent: int

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def reps(self) -> list[int]:
        return [c[0] for c in self.classes]

    def __post_init__(self):
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.inverse_class = [self.class_of[self.index[inverse(self.elements[r])]]
                              for r in self.reps]

    def class_of_element(self, g: Perm) -> int:
        return self.class_of[self.index[g]]


def conjugacy_classes(elements: Sequence[Perm],
                      generators: Sequence[Perm] | None = None) -> ClassData:
    """Partition a closed element list into conjugacy classes.

    Conjugation runs over ``generators`` when given, otherwise over all elements.
    Classes are ordered by their first element in list order, identity first.
    """
    elements = [tuple(g) for g in elements]
    if not elements:
        raise CharacterError("empty element list")
    index = {g: i for i, g in enumerate(elements)}
    if len(index) != len(elements):
        raise CharacterError("element list has repeats")
    ident = tuple(range(len(elements[0])))
    if ident not in index:
        raise CharacterError("element list does not contain the identity")
    # spot check of closure
    probe = elements[:8] + ([] if generators is None else list(generators))
    for g in probe:
        for h in probe:
            if mul(g, h) not in index or inverse(g) not in index:
                raise CharacterError("element list is not closed under product and inverse")
    conj = list(generators) if generators is not None else elements
    conj = [(g, inverse(g)) for g in conj if not is_identity(g)]

    class_of = [-1] * len(elements)
    order_first = [index[ident]] + [i for i in range(len(elements)) if i != index[ident]]
    classes: list[list[int]] = []
    for start in order_first:
        if class_of[start] >= 0:
            continue
        cid = len(classes)
        members = [start]
        class_of[start] = cid
        for i in members:
            x = elements[i]
            for g, gi in conj:
                j = index[mul(mul(g, x), gi)]
                if class_of[j] < 0:
                    class_of[j] = cid
                    members.append(j)
        classes.append(sorted(members))
    exponent = lcm(*(perm_order(elements[c[0]]) for c in classes))
    return ClassData(elements, class_of, classes, exponent)


def is_abelian(generators: Sequence[Perm]) -> bool:
    return all(mul(g, h) == mul(h, g) for g in generators for h in generators)


# ---------------------------------------------------------------------------
# Character tables
# ---------------------------------------------------------------------------


@dataclass
class CharacterTable:
    classes: ClassData
    ell: int
    zeta: int                      # image of zeta_e in GF(ell)
    mod_values: list[list[int]]    # mod_values[i][s] = chi_i(class s) in GF(ell)
    cyclotomic: list[list[list[int]]]  # cyclotomic[i][s] = coefficient vector, length e

    @property
    def exponent(self) -> int:
        return self.classes.exponent

    @property
    def degrees(self) -> list[int]:
        return [row[0][0] for row in self.cyclotomic]

    def __len__(self) -> int:
        return len(self.mod_values)

    def value(self, i: int, s: int) -> complex:
        """Numerical value of ``chi_i`` on class ``s`` (for display only)."""
        import cmath
        e = self.exponent
        return sum(c * cmath.exp(2j * cmath.pi * j / e)
                   for j, c in enumerate(self.cyclotomic[i][s]) if c)

    def is_rational(self, i: int) -> bool:
        e = self.exponent
        return all(not any(_reduce_cyclotomic(_sparse(v), e)[1:]) for v in self.cyclotomic[i])


def character_table(cd: ClassData, generators: Sequence[Perm] | None = None) -> CharacterTable:
    if cd.order > ORDER_CAP:
        raise CharacterError(f"group order {cd.order} exceeds cap {ORDER_CAP}")
    ell = modp.dixon_prime(cd.order, cd.exponent)
    zeta = modp.root_of_unity(ell, cd.exponent)
    if generators is not None and is_abelian(generators):
        mod_values = _abelian_characters(cd, generators, ell, zeta)
    elif all(len(c) == 1 for c in cd.classes):
        mod_values = _abelian_characters(cd, [cd.elements[i] for i in range(cd.order)], ell, zeta)
    else:
        mod_values = _dixon_characters(cd, ell)
    cyclo = [_lift_row(cd, row, ell, zeta) for row in mod_values]
    # trivial character first, then by degree, then by values
    triv = next(i for i, row in enumerate(mod_values) if all(v == 1 for v in row))
    rest = sorted((i for i in range(len(mod_values)) if i != triv),
                  key=lambda i: (cyclo[i][0][0], cyclo[i]))
    order = [triv] + rest
    return CharacterTable(cd, ell, zeta, [mod_values[i] for i in order],
                          [cyclo[i] for i in order])


def group_character_table(generators: Sequence[Perm], degree: int,
                          cap: int = ORDER_CAP) -> CharacterTable:
    """Enumerate ``<generators>`` and compute its table."""
    gens = [tuple(g) for g in generators] or [tuple(range(degree))]
    chain = schreier_sims(gens, degree)
    try:
        elements = enumerate_elements(chain, cap)
    except PermError as exc:
        raise CharacterError(str(exc)) from exc
    cd = conjugacy_classes(elements, gens)
    return character_table(cd, gens)


def _abelian_characters(cd: ClassData, generators: Sequence[Perm], ell: int,
                        zeta: int) -> list[list[int]]:
    """Characters of an abelian group as homomorphisms into ``<zeta_e>``.

    The group is built up one generator at a time; a character of the subgroup
    extends along ``g`` in ``d`` ways, where ``d`` is the order of ``g`` modulo
    the subgroup. Values are tracked as exponents of ``zeta_e``.
    """
    e = cd.exponent
    ident = cd.elements[cd.reps[0]]
    # subgroup elements (as element index) -> exponent vector, one per character
    sub = [cd.index[ident]]
    chars: list[dict[int, int]] = [{cd.index[ident]: 0}]
    members = {cd.index[ident]}
    for g in generators:
        gi = cd.index[tuple(g)]
        if gi in members:
            continue
        powers = [ident]
        d = 1
        x = tuple(g)
        while cd.index[x] not in members:
            powers.append(x)
            x = mul(x, tuple(g))
            d += 1
        # x = g^d lies in the subgroup
        xi = cd.index[x]
        new_sub = []
        prods = []
        for j, pw in enumerate(powers):
            for h in sub:
                prods.append((j, h, cd.index[mul(cd.elements[h], pw)]))
        new_sub = [pi for _, _, pi in prods]
        new_chars = []
        for chi in chars:
            c = chi[xi]
            if c % d:
                raise CharacterError("abelian extension failed: inconsistent root")
            for t in range(d):
                val = c // d + t * (e // d)
                new_chars.append({pi: (chi[h] + j * val) % e for j, h, pi in prods})
        sub, chars = new_sub, new_chars
        members = set(sub)
    if len(members) != cd.order:
        raise CharacterError("generators do not generate the enumerated group")
    return [[pow(zeta, chi[cd.reps[s]], ell) for s in range(len(cd.classes))] for chi in chars]


def _class_matrix(cd: ClassData, r: int) -> list[list[int]]:
    """``A[s][t]`` = number of ``x`` in class ``r`` with ``x^-1 z_t`` in class ``s``."""
    k = len(cd.classes)
    a = [[0] * k for _ in range(k)]
    inv_r = [inverse(cd.elements[i]) for i in cd.classes[r]]
    for t in range(k):
        z = cd.elements[cd.reps[t]]
        for xi in inv_r:
            a[cd.class_of_element(mul(xi, z))][t] += 1
    return a


def _dixon_characters(cd: ClassData, ell: int) -> list[list[int]]:
    k = len(cd.classes)
    spaces = [[[1 if i == j else 0 for j in range(k)] for i in range(k)]]
    for r in sorted(range(1, k), key=lambda s: (len(cd.classes[s]), s)):
        if all(len(v) == 1 for v in spaces):
            break
        a = _class_matrix(cd, r)
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            basis, pivots = modp.rref(basis, ell)
            images = [[sum(a[s][t] * b[t] for t in range(k)) % ell for s in range(k)]
                      for b in basis]
            # restricted[i][j]: coefficient of basis[i] in A basis[j]
            restricted = [[img[pc] for img in images] for pc in pivots]
            poly = modp.charpoly(restricted, ell)
            for lam in modp.distinct_roots(poly, ell):
                shifted = [[(restricted[i][j] - (lam if i == j else 0)) % ell
                            for j in range(len(basis))] for i in range(len(basis))]
                null = modp.nullspace(shifted, len(basis), ell)
                vecs = [[sum(c * b[t] for c, b in zip(co, basis)) % ell for t in range(k)]
                        for co in null]
                new_spaces.append(vecs)
        spaces = new_spaces
    if len(spaces) != k or any(len(v) != 1 for v in spaces):
        raise CharacterError("class algebra did not split into one-dimensional eigenspaces")
    rows = []
    order = cd.order
    for (w,) in spaces:
        scale = pow(w[0], ell - 2, ell)
        w = [x * scale % ell for x in w]
        denom = sum(w[s] * w[cd.inverse_class[s]] * pow(len(cd.classes[s]), ell - 2, ell)
                    for s in range(k)) % ell
        dsq = order * pow(denom, ell - 2, ell) % ell
        d = _small_sqrt(dsq, order)
        rows.append([d * w[s] * pow(len(cd.classes[s]), ell - 2, ell) % ell for s in range(k)])
    return rows


def _small_sqrt(value: int, bound: int) -> int:
    from math import isqrt
    r = isqrt(value)
    if r * r != value or value > bound:
        raise CharacterError(f"degree square {value} is not a square at most {bound}")
    return r


def _power_classes(cd: ClassData, s: int) -> list[int]:
    g = cd.elements[cd.reps[s]]
    out = [0]
    x = g
    while not is_identity(x):
        out.append(cd.class_of_element(x))
        x = mul(x, g)
    return out


def _lift_row(cd: ClassData, row: Sequence[int], ell: int, zeta: int) -> list[list[int]]:
    e = cd.exponent
    degree = row[0]
    out = []
    for s in range(len(cd.classes)):
        pcs = _power_classes(cd, s)
        o = len(pcs)
        step = e // o
        z_o = pow(zeta, step, ell)
        inv_o = pow(o, ell - 2, ell)
        vec = [0] * e
        for j in range(o):
            zinv = pow(z_o, (-j) % o, ell)
            acc = sum(row[pcs[k]] * pow(zinv, k, ell) for k in range(o)) * inv_o % ell
            if acc > degree:
                raise CharacterError("eigenvalue multiplicity out of range; inconsistent table")
            vec[j * step] = acc
        out.append(vec)
    return out


# ---------------------------------------------------------------------------
# Exact cyclotomic arithmetic (sparse exponent -> coefficient maps)
# ---------------------------------------------------------------------------


def _sparse(vec: Sequence[int]) -> dict[int, int]:
    return {j: c for j, c in enumerate(vec) if c}


def _conj(vec: dict[int, int], e: int) -> dict[int, int]:
    return {(-j) % e: c for j, c in vec.items()}


def _cyclotomic_poly(e: int) -> list[int]:
    """Integer coefficients of the ``e``-th cyclotomic polynomial, lowest first."""
    num = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            num = _int_divexact(num, _cyclotomic_poly(d))
    return num


def _int_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    return q


_PHI: dict[int, list[int]] = {}


def _reduce_cyclotomic(vec: dict[int, int], e: int) -> list[int]:
    """Canonical coefficients of ``sum c zeta_e^j`` in the power basis of degree phi(e)."""
    if e not in _PHI:
        _PHI[e] = _cyclotomic_poly(e)
    phi = _PHI[e]
    deg = len(phi) - 1
    a = [0] * max(e, deg + 1)
    for j, c in vec.items():
        a[j % e] += c
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i]
        if c:
            for j, pj in enumerate(phi):
                a[i - deg + j] -= c * pj
    return a[:deg]


def _inner_exact(cd: ClassData, x: Sequence[dict[int, int]], y: Sequence[dict[int, int]]) -> list[int]:
    """``sum_s |C_s| x(s) conj(y(s))`` reduced in ``Z[zeta_e]``."""
    e = cd.exponent
    acc: dict[int, int] = {}
    for s, size in enumerate(cd.sizes):
        for j, c in x[s].items():
            for k, d in y[s].items():
                idx = (j - k) % e
                acc[idx] = acc.get(idx, 0) + size * c * d
    return _reduce_cyclotomic(acc, e)


def check_orthogonality(table: CharacterTable) -> bool:
    """Both orthogonality relations, exactly in ``Z[zeta_e]``."""
    cd = table.classes
    k = len(cd.classes)
    if len(table) != k:
        return False
    rows = [[_sparse(v) for v in row] for row in table.cyclotomic]
    for i in range(k):
        for j in range(i, k):
            red = _inner_exact(cd, rows[i], rows[j])
            want = [cd.order if i == j else 0] + [0] * (len(red) - 1)
            if red != want:
                return False
    for s in range(k):
        for t in range(s, k):
            acc: dict[int, int] = {}
            e = cd.exponent
            for row in rows:
                for j, c in row[s].items():
                    for l, d in row[t].items():
                        idx = (j - l) % e
                        acc[idx] = acc.get(idx, 0) + c * d
            red = _reduce_cyclotomic(acc, e)
            want = [cd.order // cd.sizes[s] if s == t else 0] + [0] * (len(red) - 1)
            if red != want:
                return False
    return sum(d * d for d in table.degrees) == cd.order


# ---------------------------------------------------------------------------
# Permutation characters and decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionRecord:
    pairs: tuple[tuple[int, int], ...]
    trivial_removed: bool = False

    @property
    def dimension(self) -> int:
        return sum(d * m for d, m in self.pairs)

    @property
    def sum_squares(self) -> int:
        return sum(m * m for _, m in self.pairs)

    @property
    def multiplicity_free(self) -> bool:
        return all(m == 1 for _, m in self.pairs)

    def as_lists(self) -> list[list[int]]:
        return [[d, m] for d, m in self.pairs]


def permutation_character(cd: ClassData,
                          action: Callable[[Perm], Perm] | None = None) -> list[int]:
    """Fixed-point counts on class representatives."""
    reps = [cd.elements[r] for r in cd.reps]
    if action is not None:
        reps = [action(g) for g in reps]
    return kernels.fixed_points(reps)


def multiplicities(table: CharacterTable, chi: Sequence[int]) -> list[int]:
    """``<chi, chi_i>`` for every irreducible, for an integer-valued class function.

    The exact cyclotomic inner product gives the value; the GF(l) inner
    product must agree with it modulo ``l``. (A symmetric-range lift alone is
    not enough: multiplicities are bounded by ``chi(1)``, not by ``l / 2``.)
    """
    cd = table.classes
    ell = table.ell
    inv_order = pow(cd.order, ell - 2, ell)
    out = []
    for i, row in enumerate(table.mod_values):
        acc = sum(size * c * row[cd.inverse_class[s]]
                  for s, (size, c) in enumerate(zip(cd.sizes, chi))) * inv_order % ell
        exact = _inner_exact(cd, [{0: int(c)} if c else {} for c in chi],
                             [_sparse(v) for v in table.cyclotomic[i]])
        if any(exact[1:]) or exact[0] % cd.order:
            raise CharacterError("class function is not a character of this group")
        value = exact[0] // cd.order
        if value % ell != acc:
            raise CharacterError("modular and exact inner products disagree")
        if value < 0:
            raise CharacterError("negative multiplicity: not a character")
        out.append(value)
    return out


def decompose_character(table: CharacterTable, chi: Sequence[int],
                        remove_trivial: bool = False) -> DecompositionRecord:
    mults = multiplicities(table, chi)
    degrees = table.degrees
    if remove_trivial:
        if mults[0] < 1:
            raise CharacterError("no trivial constituent to remove")
        mults = [mults[0] - 1] + mults[1:]
    pairs = sorted((d, m) for d, m in zip(degrees, mults) if m)
    return DecompositionRecord(tuple(pairs), remove_trivial)


def decompose_action(generators: Sequence[Perm], degree: int,
                     remove_trivial: bool = False, cap: int = ORDER_CAP) -> DecompositionRecord:
    """Decompose ``F[range(degree)]`` under the group generated by ``generators``."""
    table = group_character_table(generators, degree, cap)
    chi = permutation_character(table.classes)
    return decompose_character(table, chi, remove_trivial)


def local_decomposition(group, v, cap: int = ORDER_CAP) -> DecompositionRecord:
    """Constituents of ``F[D(v)]`` minus the trivial line, under ``St(v)``."""
    from .perm import orbits
    gens = group.local_generators(v)
    m = group.shape.valencies[v.level]
    if not orbits(gens, m).is_transitive:
        raise CharacterError(f"stabiliser of {v} is intransitive on its descendants")
    return decompose_action(gens, m, remove_trivial=True, cap=cap)


def decompose_level(group, n: int, cap: int = ORDER_CAP) -> DecompositionRecord:
    """Constituents of ``F[L_n]`` under the image of the group on ``L_n``."""
    return decompose_action(group.level_generators(n), group.shape.level_size(n),
                            cap=min(cap, ORDER_CAP))
