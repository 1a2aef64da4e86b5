"""Dense polynomial arithmetic over an exact coefficient field.

A polynomial is a tuple of coefficient *data* (the raw payloads used by
``fields.FieldDesc``), ascending by degree, with no trailing zeros; the
zero polynomial is ``()``.  Every function takes the coefficient field
descriptor ``F`` first and works for any field exposing the data-level
operations ``dzero/done/dadd/dneg/dmul/dinv/dis_zero/dfrom_int/drandom``.

Factorization, irreducibility and canonical-irreducible selection are
provided for finite coefficient fields (odd order) via squarefree
decomposition, distinct-degree splitting and Cantor-Zassenhaus
equal-degree splitting with a deterministic seed.
"""

import random

from .errors import DivisionByZero, ZeroPolynomial


def pnorm(F, cs):
    """Strip trailing zero coefficients."""
    cs = list(cs)
    while cs and F.dis_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def pdeg(cs):
    return len(cs) - 1


def pconst(F, c):
    return () if F.dis_zero(c) else (c,)


def pfrom_ints(F, ints):
    return pnorm(F, [F.dfrom_int(n) for n in ints])


def pis_zero(cs):
    return not cs


def padd(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.dzero()
        y = b[i] if i < len(b) else F.dzero()
        out.append(F.dadd(x, y))
    return pnorm(F, out)


def pneg(F, a):
    return tuple(F.dneg(c) for c in a)


def psub(F, a, b):
    return padd(F, a, pneg(F, b))


def pmul(F, a, b):
    if not a or not b:
        return ()
    out = [F.dzero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.dis_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.dadd(out[i + j], F.dmul(x, y))
    return pnorm(F, out)


def pscale(F, c, a):
    if F.dis_zero(c):
        return ()
    return pnorm(F, [F.dmul(c, x) for x in a])


def ppow(F, a, n):
    out = (F.done(),)
    base = a
    while n:
        if n & 1:
            out = pmul(F, out, base)
        base = pmul(F, base, base)
        n >>= 1
    return out


def pmonic(F, a):
    """Return (leading coefficient, monic multiple)."""
    if not a:
        raise ZeroPolynomial("monic part of zero polynomial")
    lead = a[-1]
    inv = F.dinv(lead)
    return lead, pnorm(F, [F.dmul(inv, c) for c in a])


def pdivmod(F, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    binv = F.dinv(b[-1])
    rem = list(a)
    quo = [F.dzero()] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        c = F.dmul(rem[shift + len(b) - 1], binv)
        if F.dis_zero(c):
            continue
        quo[shift] = c
        for j, y in enumerate(b):
            rem[shift + j] = F.dadd(rem[shift + j], F.dneg(F.dmul(c, y)))
    return pnorm(F, quo), pnorm(F, rem)


def pquo(F, a, b):
    return pdivmod(F, a, b)[0]


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pgcd(F, a, b):
    """Monic greatest common divisor."""
    while b:
        a, b = b, pmod(F, a, b)
    if not a:
        return ()
    return pmonic(F, a)[1]


def pxgcd(F, a, b):
    """Extended gcd: (g, s, t) with g monic and s*a + t*b = g."""
    r0, r1 = a, b
    s0, s1 = (F.done(),), ()
    t0, t1 = (), (F.done(),)
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, q, t1))
    if not r0:
        return (), s0, t0
    lead, g = pmonic(F, r0)
    inv = F.dinv(lead)
    return g, pscale(F, inv, s0), pscale(F, inv, t0)


def peval(F, a, x):
    acc = F.dzero()
    for c in reversed(a):
        acc = F.dadd(F.dmul(acc, x), c)
    return acc


def pderiv(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.dmul(F.dfrom_int(i), a[i]))
    return pnorm(F, out)


def ppowmod(F, a, n, m):
    out = pmod(F, (F.done(),), m)
    base = pmod(F, a, m)
    while n:
        if n & 1:
            out = pmod(F, pmul(F, out, base), m)
        base = pmod(F, pmul(F, base, base), m)
        n >>= 1
    return out


def pmultiplicity(F, a, b):
    """Largest e with b^e dividing a (a nonzero, deg b >= 1)."""
    e = 0
    while True:
        q, r = pdivmod(F, a, b)
        if r:
            return e, a
        a = q
        e += 1


def polysqrt(F, f, leaf_sqrt):
    """Exact polynomial square root, or None.

    ``leaf_sqrt(c)`` must return a square root of the coefficient c or
    None.  Requires characteristic != 2.
    """
    if not f:
        return ()
    n = pdeg(f)
    if n % 2:
        return None
    m = n // 2
    lead = leaf_sqrt(f[-1])
    if lead is None:
        return None
    s = [F.dzero()] * (m + 1)
    s[m] = lead
    two_lead_inv = F.dinv(F.dadd(lead, lead))
    for k in range(m - 1, -1, -1):
        acc = f[m + k] if m + k < len(f) else F.dzero()
        # ordered convolution over i+j = m+k with k < i, j < m
        conv = F.dzero()
        for i in range(k + 1, m):
            conv = F.dadd(conv, F.dmul(s[i], s[m + k - i]))
        acc = F.dadd(acc, F.dneg(conv))
        s[k] = F.dmul(acc, two_lead_inv)
    cand = pnorm(F, s)
    if pmul(F, cand, cand) == pnorm(F, f):
        return cand
    return None


# ---------------------------------------------------------------------------
# finite-field-only routines


def _pth_root(F, f):
    # f has zero derivative, so f = g(x^p); coefficients get a p-th root
    p = F.char
    q = F.order
    out = []
    for i in range(0, len(f), p):
        out.append(F.dpow(f[i], q // p))
    return pnorm(F, out)


def squarefree_decomposition(F, f):
    """Decompose monic f as prod g^e with the g squarefree and coprime.

    Returns a dict {g: e}.  Characteristic-p steps (vanishing derivative)
    are handled by p-th roots.
    """
    out = {}
    e = 1
    p = F.char
    while pdeg(f) > 0:
        df = pderiv(F, f)
        if not df:
            f = _pth_root(F, f)
            e *= p
            continue
        c = pgcd(F, f, df)
        w = pquo(F, f, c)
        i = 1
        while pdeg(w) > 0:
            y = pgcd(F, w, c)
            z = pquo(F, w, y)
            if pdeg(z) > 0:
                out[z] = out.get(z, 0) + i * e
            w = y
            c = pquo(F, c, y)
            i += 1
        f = c
    return out


def _distinct_degree(F, g):
    """Split squarefree monic g into (product of irreducibles of degree d, d)."""
    q = F.order
    out = []
    x = (F.dzero(), F.done())
    h = pmod(F, x, g)
    d = 0
    rem = g
    while pdeg(rem) >= 2 * (d + 1):
        d += 1
        h = ppowmod(F, h, q, rem)
        gd = pgcd(F, psub(F, h, x), rem)
        if pdeg(gd) > 0:
            out.append((gd, d))
            rem = pquo(F, rem, gd)
            h = pmod(F, h, rem)
    if pdeg(rem) > 0:
        out.append((rem, pdeg(rem)))
    return out


def _random_poly(F, deg, rng):
    cs = [F.drandom(rng) for _ in range(deg)] + [F.done()]
    return pnorm(F, cs)


def _equal_degree(F, f, d, rng):
    """Cantor-Zassenhaus split of squarefree monic f into degree-d irreducibles."""
    n = pdeg(f)
    if n == d:
        return [f]
    q = F.order
    exp = (q**d - 1) // 2
    while True:
        r = _random_poly(F, rng.randrange(1, n), rng)
        g = pgcd(F, r, f)
        if 0 < pdeg(g) < n:
            break
        h = ppowmod(F, r, exp, f)
        g = pgcd(F, psub(F, h, (F.done(),)), f)
        if 0 < pdeg(g) < n:
            break
    return _equal_degree(F, g, d, rng) + _equal_degree(F, pquo(F, f, g), d, rng)


def _poly_sort_key(F, f):
    return (pdeg(f), tuple(F.dsort_key(c) for c in reversed(f)))


def factor(F, f, seed=0):
    """Factor f over the finite field F.

    Returns (leading coefficient, tuple of (monic irreducible, multiplicity))
    sorted canonically.  The Cantor-Zassenhaus stage draws randomness from a
    seeded generator, so output is reproducible.
    """
    if not f:
        raise ZeroPolynomial("cannot factor zero")
    lead, g = pmonic(F, f)
    if pdeg(g) == 0:
        return lead, ()
    rng = random.Random((seed, 0xC0FFEE, pdeg(g)).__hash__())
    out = []
    for sf, mult in squarefree_decomposition(F, g).items():
        for block, d in _distinct_degree(F, sf):
            for irr in _equal_degree(F, block, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: _poly_sort_key(F, t[0]))
    return lead, tuple(out)


def is_irreducible(F, f):
    """Rabin irreducibility test for monic f of degree >= 1."""
    n = pdeg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    q = F.order
    x = (F.dzero(), F.done())
    h = ppowmod(F, x, q**n, f)
    if h != pmod(F, x, f):
        return False
    for r in _prime_divisors(n):
        h = ppowmod(F, x, q ** (n // r), f)
        if pdeg(pgcd(F, psub(F, h, x), f)) != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def min_irreducible(F, d):
    """Lexicographically smallest monic irreducible of degree d over prime F.

    Candidates are ordered by the descending-power coefficient tuple, i.e.
    x^d, x^d + 1, ..., x^d + x, ...
    """
    p = F.order
    for counter in range(p**d):
        digits = []
        n = counter
        for _ in range(d):
            digits.append(n % p)
            n //= p
        cand = pnorm(F, [F.dfrom_int(c) for c in digits] + [F.done()])
        if is_irreducible(F, cand):
            return cand
    raise ZeroPolynomial(f"no irreducible of degree {d}")
