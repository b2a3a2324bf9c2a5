"""The tridiagonal determinant family Q_n(s,t).

Q_n is the determinant of the n x n Toeplitz matrix with t on the main
diagonal and s on the two adjacent ones.  The module keeps two independent
routes to Q_n -- cofactor expansion of the matrix (the oracle) and the
two-term recursion -- plus the generating-function identity, a numeric
check of the complex factorization, and irreducible-factor censuses over
prime fields.  Floating point is confined to roots_numeric_check.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import zip_longest

from .polyring import (
    GF,
    QQ,
    Polynomial,
    PolyRing,
    convert,
    restrict_to_variables,
)

ST_RING = PolyRing(("s", "t"), QQ)

_EDF_SEED = 271828182845


@dataclass(frozen=True)
class ToeplitzMatrix:
    """n x n matrix with t on the diagonal, s beside it, zero elsewhere.

    n = 0 (the empty matrix, determinant 1 by convention) is allowed as a
    value; build_matrix itself requires n >= 1.
    """

    n: int
    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.entries) != self.n:
            raise ValueError("entry grid does not match the declared size")
        s, t = ST_RING.gen("s"), ST_RING.gen("t")
        zero = ST_RING.zero()
        for i, row in enumerate(self.entries):
            if len(row) != self.n:
                raise ValueError("entry grid is not square")
            for j, e in enumerate(row):
                want = t if i == j else s if abs(i - j) == 1 else zero
                if e != want:
                    raise ValueError(f"entry ({i},{j}) breaks the Toeplitz pattern")


def build_matrix(n: int) -> ToeplitzMatrix:
    """The matrix M_n; requires n >= 1."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"matrix size must be a positive integer, got {n}")
    s, t = ST_RING.gen("s"), ST_RING.gen("t")
    zero = ST_RING.zero()
    rows = tuple(
        tuple(t if i == j else s if abs(i - j) == 1 else zero for j in range(n))
        for i in range(n)
    )
    return ToeplitzMatrix(n, rows)


def _det_rows(rows) -> Polynomial:
    if not rows:
        return ST_RING.one()
    if len(rows) == 1:
        return rows[0][0]
    total = ST_RING.zero()
    sign = 1
    for j, head in enumerate(rows[0]):
        if not head.is_zero:
            minor = tuple(row[:j] + row[j + 1:] for row in rows[1:])
            total = total + sign * head * _det_rows(minor)
        sign = -sign
    return total


def det_oracle(M: ToeplitzMatrix) -> Polynomial:
    """Determinant by cofactor expansion.

    Deliberately independent of the recursion it is used to check; the
    empty matrix has determinant 1.
    """
    return _det_rows(M.entries)


@dataclass(frozen=True)
class QnPolynomial:
    n: int
    poly: Polynomial


_QN_CACHE: dict[int, QnPolynomial] = {}


def qn_recursive(n: int) -> QnPolynomial:
    """Q_0 = 1, Q_1 = t, Q_{n+2} = t*Q_{n+1} - s^2*Q_n, memoized."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"index must be a non-negative integer, got {n}")
    if n in _QN_CACHE:
        return _QN_CACHE[n]
    s, t = ST_RING.gen("s"), ST_RING.gen("t")
    a, b = ST_RING.one(), t
    _QN_CACHE.setdefault(0, QnPolynomial(0, a))
    _QN_CACHE.setdefault(1, QnPolynomial(1, b))
    for m in range(2, n + 1):
        a, b = b, t * b - s ** 2 * a
        _QN_CACHE.setdefault(m, QnPolynomial(m, b))
    return _QN_CACHE[n]


def qn_dehomogenized(n: int, p: int | None = None) -> Polynomial:
    """Q_n(1, t) as a univariate polynomial, over Q or over F_p."""
    f = qn_recursive(n).poly.substitute({"s": 1})
    f = restrict_to_variables(f, ("t",))
    if p is None:
        return f
    return convert(f, PolyRing(("t",), GF(p)))


def generating_check(N: int, family=qn_recursive) -> bool:
    """Verify (sum_{n<=N} Q_n z^n) * (1 - t z + s^2 z^2) = 1 + O(z^{N+1}).

    The check runs in truncated polynomial arithmetic with an auxiliary
    variable z; `family` exists so tests can feed a sabotaged sequence.
    """
    if N < 2:
        raise ValueError("truncation order must be at least 2")
    ring = PolyRing(("s", "t", "z"), QQ)
    s, t, z = ring.gens()

    def lift(f: Polynomial) -> Polynomial:
        return Polynomial(ring, {e + (0,): c for e, c in f.terms.items()})

    series = ring.zero()
    for n in range(N + 1):
        series = series + lift(family(n).poly) * z ** n
    product = series * (ring.one() - t * z + s ** 2 * z ** 2)
    truncated = Polynomial(
        ring, {e: c for e, c in product.terms.items() if e[2] <= N}, _normalized=True
    )
    return truncated == ring.one()


def roots_numeric_check(n: int, tol: float = 1e-8) -> bool:
    """Check the complex factorization of Q_n numerically.

    Q_n(1, t) must vanish at t = 2 cos(r pi / (n+1)) for r = 1..n; each
    value is evaluated in floating point and compared against tol.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    f = qn_dehomogenized(n)
    coeffs = [0.0] * (n + 1)
    for e, c in f.terms.items():
        coeffs[e[0]] = float(c)
    for r in range(1, n + 1):
        t_val = 2.0 * math.cos(r * math.pi / (n + 1))
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * t_val + c
        if abs(acc) >= tol:
            return False
    return True


# --------------------------------------------------------------------------
# univariate factorization over F_p
#
# Dense little-endian coefficient lists internally; squarefree
# decomposition, then distinct-degree splitting, then equal-degree
# splitting (Cantor-Zassenhaus for odd p, the trace map for p = 2) with a
# fixed-seed generator so runs are reproducible bit for bit.


def _utrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f

def _udeg(f):
    return len(f) - 1

def _umonic(f, p):
    if not f or f[-1] == 1:
        return list(f)
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]

def _umul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = (out[i + j] + a * b) % p
    return _utrim(out)

def _udivmod(f, g, p):
    f = list(f)
    dg = _udeg(g)
    if dg < 0:
        raise ZeroDivisionError("division by the zero polynomial")
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - dg, 0)
    while _udeg(f) >= dg:
        c = f[-1] * inv % p
        k = _udeg(f) - dg
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - c * b) % p
        _utrim(f)
    return _utrim(q), f

def _ugcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        f, g = g, _udivmod(f, g, p)[1]
    return _umonic(f, p)

def _upow_mod(f, e, mod, p):
    result = [1]
    base = _udivmod(f, mod, p)[1]
    while e:
        if e & 1:
            result = _udivmod(_umul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _udivmod(_umul(base, base, p), mod, p)[1]
    return result

def _uderiv(f, p):
    return _utrim([i * c % p for i, c in enumerate(f)][1:])


def _squarefree(f, p):
    """Squarefree decomposition of a monic f: list of (factor, multiplicity)."""
    if _udeg(f) < 1:
        return []
    d = _uderiv(f, p)
    if not d:
        # f = u(x^p) = u(x)^p over the prime field
        root = _utrim([f[i] for i in range(0, len(f), p)])
        return [(g, m * p) for g, m in _squarefree(root, p)]
    out = []
    g = _ugcd(f, d, p)
    h = _udivmod(f, g, p)[0]
    i = 1
    while _udeg(h) > 0:
        G = _ugcd(g, h, p)
        H = _udivmod(h, G, p)[0]
        if _udeg(H) > 0:
            out.append((H, i))
        h = G
        g = _udivmod(g, G, p)[0]
        i += 1
    if _udeg(g) > 0:
        root = _utrim([g[i] for i in range(0, len(g), p)])
        out.extend((q, m * p) for q, m in _squarefree(root, p))
    return out


def _uadd(f, g, p):
    out = [(x + y) % p for x, y in zip_longest(f, g, fillvalue=0)]
    return _utrim(out)


def _distinct_degree(f, p):
    """Split a squarefree monic f into (product, d) blocks."""
    out = []
    h = [0, 1]  # x
    d = 0
    while _udeg(f) > 0:
        d += 1
        if 2 * d > _udeg(f):
            out.append((f, _udeg(f)))
            break
        h = _upow_mod(h, p, f, p)
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p
        g = _ugcd(_utrim(hx), f, p)
        if _udeg(g) > 0:
            out.append((g, d))
            f = _udivmod(f, g, p)[0]
            if _udeg(f) > 0:
                h = _udivmod(h, f, p)[1]
    return out


def _random_poly(deg_bound, p, rng):
    f = [rng.randrange(p) for _ in range(deg_bound)]
    return _utrim(f)


def _equal_degree(f, d, p, rng):
    """Factor a monic squarefree product of degree-d irreducibles."""
    n = _udeg(f)
    if n == d:
        return [f]
    while True:
        a = _random_poly(n, p, rng)
        if _udeg(a) < 1:
            continue
        g = _ugcd(a, f, p)
        if 0 < _udeg(g) < n:
            break
        if p == 2:
            # trace map: a + a^2 + a^4 + ... + a^(2^(d-1)) splits f
            b = []
            t = _udivmod(a, f, p)[1]
            for _ in range(d):
                b = _uadd(b, t, p)
                t = _upow_mod(t, 2, f, p)
            g = _ugcd(b, f, p) if b else []
        else:
            b = _upow_mod(a, (p ** d - 1) // 2, f, p)
            if b:
                b[0] = (b[0] - 1) % p
            else:
                b = [p - 1]
            g = _ugcd(_utrim(b), f, p)
        if 0 < _udeg(g) < n:
            break
    rest = _udivmod(f, g, p)[0]
    return _equal_degree(g, d, p, rng) + _equal_degree(rest, d, p, rng)


def _factor_dense(f, p):
    """Monic irreducible factors with multiplicities, sorted; f monic."""
    rng = random.Random(_EDF_SEED)
    out = []
    for sq, mult in _squarefree(f, p):
        for block, d in _distinct_degree(sq, p):
            for irr in _equal_degree(block, d, p, rng):
                out.append((tuple(irr), mult))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


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


def irreducibility_certified(f: Polynomial) -> bool:
    """Deterministic irreducibility certificate over F_p (Rabin's test).

    f of degree n is irreducible iff x^(p^n) = x mod f and, for every
    prime divisor l of n, gcd(x^(p^(n/l)) - x, f) = 1.
    """
    ring = f.ring
    if ring.domain.kind != "prime_field" or ring.nvars != 1:
        raise ValueError("irreducibility test expects one variable over F_p")
    p = ring.domain.p
    n = f.total_degree()
    if n < 1:
        return False
    dense = [0] * (n + 1)
    for e, c in f.terms.items():
        dense[e[0]] = c
    dense = _umonic(dense, p)

    def frob_iterate(steps):
        h = [0, 1]
        for _ in range(steps):
            h = _upow_mod(h, p, dense, p)
        return h

    for l in _prime_divisors(n):
        h = frob_iterate(n // l)
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p
        if _udeg(_ugcd(_utrim(hx), dense, p)) != 0:
            return False
    h = frob_iterate(n)
    hx = list(h) + [0] * max(0, 2 - len(h))
    hx[1] = (hx[1] - 1) % p
    return not _utrim(hx) or _udivmod(_utrim(hx), dense, p)[1] == []


def factor_univariate_fp(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Complete factorization of a nonzero univariate polynomial over F_p.

    Returns (monic irreducible, multiplicity) pairs, sorted by degree and
    then by coefficient list; the product of the factors times the leading
    coefficient of f reconstructs f exactly.
    """
    ring = f.ring
    if ring.domain.kind != "prime_field":
        raise ValueError("factorization works over a prime field")
    if ring.nvars != 1:
        raise ValueError("factorization expects one variable")
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    p = ring.domain.p
    dense = [0] * (f.total_degree() + 1)
    for e, c in f.terms.items():
        dense[e[0]] = c
    out = []
    for coeffs, mult in _factor_dense(_umonic(dense, p), p):
        poly = Polynomial(ring, {(i,): c for i, c in enumerate(coeffs) if c})
        out.append((poly, mult))
    return out


# --------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CensusRow:
    n: int
    factors: tuple[str, ...]       # distinct irreducible factors of Q_n(1,t)
    new_factors: tuple[str, ...]   # those not seen at any smaller index
    cumulative_count: int
    factorization: tuple[tuple[str, int], ...]  # with multiplicities


@dataclass(frozen=True)
class FactorCensus:
    p: int
    n_max: int
    rows: tuple[CensusRow, ...]

    @property
    def cumulative_count(self) -> int:
        return self.rows[-1].cumulative_count if self.rows else 0

    def first_occurrence(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for row in self.rows:
            for f in row.new_factors:
                out[f] = row.n
        return out

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "n_max": self.n_max,
            "dehomogenized_at": "s=1",
            "note": (
                "finite-n evidence for the infinitude of distinct irreducible "
                "factors; the variable s itself never occurs as a factor"
            ),
            "first_occurrence": self.first_occurrence(),
            "rows": [
                {
                    "n": r.n,
                    "factors": list(r.factors),
                    "new_factors": list(r.new_factors),
                    "cumulative_count": r.cumulative_count,
                    "factorization": [[f, m] for f, m in r.factorization],
                }
                for r in self.rows
            ],
        }


def factor_census(n_max: int, p: int) -> FactorCensus:
    """Factor Q_n(1,t) over F_p for n = 1..n_max and track distinct factors.

    Q_n is homogeneous of degree n, so distinctness of the irreducible
    factors of Q_n(s,t) reduces to distinctness for Q_n(1,t); s never
    divides Q_n (the t^n coefficient is 1).
    """
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    seen: set[str] = set()
    rows = []
    for n in range(1, n_max + 1):
        f = qn_dehomogenized(n, p)
        factorization = tuple((str(g), m) for g, m in factor_univariate_fp(f))
        factors = tuple(name for name, _ in factorization)
        new = tuple(g for g in factors if g not in seen)
        seen.update(new)
        rows.append(CensusRow(n, factors, new, len(seen), factorization))
    return FactorCensus(p, n_max, tuple(rows))
