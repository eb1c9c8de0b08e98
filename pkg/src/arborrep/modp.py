"""Linear algebra and polynomial roots over a prime field GF(l).

Polynomials are coefficient lists, lowest degree first, with no trailing zeros.
"""
from __future__ import annotations

from typing import Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime ``l = 1 (mod exponent)`` with ``l > 2 * order``."""
    ell = (2 * order // exponent + 1) * exponent + 1
    while not is_prime(ell):
        ell += exponent
    return ell


def root_of_unity(ell: int, e: int) -> int:
    """A primitive ``e``-th root of unity in GF(l); requires ``e | l - 1``."""
    if (ell - 1) % e:
        raise ValueError(f"{e} does not divide {ell} - 1")
    factors = prime_factors(ell - 1)
    for g in range(2, ell):
        if all(pow(g, (ell - 1) // q, ell) != 1 for q in factors):
            return pow(g, (ell - 1) // e, ell)
    return 1  # ell == 2


# -- polynomials -------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return _trim(q), a


def poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return poly_divmod(prod, f, p)[1]


def poly_powmod(a: Sequence[int], k: int, f: Sequence[int], p: int) -> list[int]:
    result: list[int] = [1]
    base = poly_divmod(a, f, p)[1]
    while k:
        if k & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        k >>= 1
    return poly_divmod(result, f, p)[1]


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def distinct_roots(f: Sequence[int], p: int) -> list[int]:
    """Sorted distinct roots in GF(p) of ``f`` (p an odd prime)."""
    f = _trim([x % p for x in f])
    if len(f) <= 1:
        return []
    g = poly_gcd(f, poly_sub(poly_powmod([0, 1], p, f, p), [0, 1], p), p)
    roots: list[int] = []
    _split(g, p, roots)
    return sorted(roots)


def _split(g: list[int], p: int, out: list[int]) -> None:
    deg = len(g) - 1
    if deg <= 0:
        return
    if deg == 1:
        out.append(-g[0] * pow(g[1], p - 2, p) % p)
        return
    for a in range(p):
        h = poly_gcd(g, poly_sub(poly_powmod([a, 1], (p - 1) // 2, g, p), [1], p), p)
        if 0 < len(h) - 1 < deg:
            _split(h, p, out)
            _split(poly_divmod(g, h, p)[0], p, out)
            return
    raise ArithmeticError("root splitting failed")


# -- matrices ----------------------------------------------------------------


def charpoly(m: Sequence[Sequence[int]], p: int) -> list[int]:
    """Characteristic polynomial via Hessenberg reduction."""
    n = len(m)
    h = [[x % p for x in row] for row in m]
    for k in range(1, n - 1):
        piv = next((i for i in range(k, n) if h[i][k - 1]), None)
        if piv is None:
            continue
        if piv != k:
            h[piv], h[k] = h[k], h[piv]
            for row in h:
                row[piv], row[k] = row[k], row[piv]
        inv = pow(h[k][k - 1], p - 2, p)
        for i in range(k + 1, n):
            u = h[i][k - 1] * inv % p
            if u:
                hi, hk = h[i], h[k]
                for j in range(n):
                    hi[j] = (hi[j] - u * hk[j]) % p
                for row in h:
                    row[k] = (row[k] + u * row[i]) % p
    polys = [[1]]
    for k in range(1, n + 1):
        pk = [0] + polys[k - 1]
        for i, c in enumerate(polys[k - 1]):
            pk[i] = (pk[i] - h[k - 1][k - 1] * c) % p
        t = 1
        for i in range(1, k):
            t = t * h[k - i][k - i - 1] % p
            coef = t * h[k - i - 1][k - 1] % p
            if coef:
                for j, c in enumerate(polys[k - i - 1]):
                    pk[j] = (pk[j] - coef * c) % p
        polys.append(pk)
    return polys[n]


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    a = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(m: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of ``{x : m x = 0}``."""
    red, pivots = rref(m, p) if m else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return basis
