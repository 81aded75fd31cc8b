"""Exact number theory: primes, factoring, cyclotomic values, special prime finders.

Everything is arbitrary-precision and deterministic. Primality is
Miller-Rabin with the 12-prime base set, which is a proven deterministic
test below 3.3e24; the desk-scale inputs used here (prime factors of
cyclotomic values with q <= 64, t <= 20) stay far below that threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt, prod

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROVEN_LIMIT = 3_317_044_064_679_887_385_961_981
_POWER_BIT_BUDGET = 10_000


class PowerBudgetError(ValueError):
    """q^t would exceed the configured bit budget."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_PRIMES: list[int] = []


def _pollard_pm1(n: int, bound: int = 20_000) -> int | None:
    """Pollard p-1, stage one; cheap and catches factors with smooth p-1."""
    import math

    a = 2
    log_bound = math.log(bound)
    for p in primes_up_to(bound):
        a = pow(a, p ** max(1, int(log_bound / math.log(p))), n)
    g = gcd(a - 1, n)
    return g if 1 < g < n else None


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        seed += 1
        y, c, m = seed, seed, 256
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * (x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(x - ys, n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {prime: exponent}.

    Trial division, then Pollard p-1, then Brent's rho for what remains.
    """
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    if not _TRIAL_PRIMES:
        _TRIAL_PRIMES.extend(primes_up_to(1000))
    out: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < 1_000_000 or is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = isqrt(m)
        if root * root == m:
            stack.extend([root, root])
            continue
        d = _pollard_pm1(m) or _pollard_rho(m)
        stack.extend([d, m // d])
    return dict(sorted(out.items()))


def radical(n: int) -> int:
    """Product of the distinct primes dividing n; radical(1) = 1."""
    if n <= 0:
        raise ValueError("radical needs a positive integer")
    return prod(factorize(n)) if n > 1 else 1


def greatest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("greatest_prime_factor needs n >= 2")
    return max(factorize(n))


def is_prime_power(q: int) -> tuple[int, int] | None:
    """(p, k) with q = p^k, or None."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    [(p, k)] = fac.items()
    return p, k


def sylvester_prime(m: int, ell: int) -> int:
    """Largest prime p > ell dividing m(m-1)...(m-ell+1).

    Requires all ell consecutive factors to exceed ell, i.e. m - ell + 1 > ell;
    existence is then guaranteed.
    """
    if ell < 1 or m - ell + 1 <= ell:
        raise ValueError(f"need m - ell + 1 > ell >= 1, got m={m}, ell={ell}")
    best = 0
    for k in range(m - ell + 1, m + 1):
        for p in factorize(k):
            if p > ell and p > best:
                best = p
    assert best > ell, "Sylvester's theorem guarantees a prime here"
    return best


def bertrand_mid_prime(m: int) -> int:
    """Largest prime p with m/2 < p <= m - 3 (exists for every m >= 8)."""
    if m < 8:
        raise ValueError("bertrand_mid_prime needs m >= 8")
    for p in range(m - 3, m // 2, -1):
        if is_prime(p):
            return p
    raise AssertionError("no prime in (m/2, m-3] — contradicts Bertrand")


def dominance_holds(m: int, ell: int) -> bool:
    """True iff ell mod p <= m mod p for every prime p >= 5.

    Primes p > m are vacuous: there ell mod p = ell <= m = m mod p, so only
    5 <= p <= m needs checking.
    """
    for p in primes_up_to(m):
        if p >= 5 and ell % p > m % p:
            return False
    return True


def mod_dominance_classify(M: int) -> list[tuple[int, int]]:
    """All pairs (m, ell), 5 <= m <= M, 1 <= ell <= m-1, with the dominance property."""
    if M < 9:
        raise ValueError("classification needs M >= 9")
    out = []
    for m in range(5, M + 1):
        for ell in range(1, m):
            if dominance_holds(m, ell):
                out.append((m, ell))
    return out


@dataclass(frozen=True)
class PpdResult:
    q: int
    t: int
    primitive_divisors: tuple[int, ...]
    exceptional: bool


def _checked_power(q: int, t: int) -> int:
    if t * q.bit_length() > _POWER_BIT_BUDGET:
        raise PowerBudgetError(f"{q}^{t} exceeds the {_POWER_BIT_BUDGET}-bit budget")
    return q ** t


def primitive_prime_divisors(q: int, t: int) -> PpdResult:
    """Primes dividing q^t - 1 but no q^i - 1 for 1 <= i < t.

    The factorization goes through the cyclotomic values Phi_d(q), d | t,
    which keeps every number passed to the factorizer small. The
    ``exceptional`` flag records emptiness, which lands exactly on the
    classical exception pattern: (q, t) = (2, 6), t = 2 with q + 1 a power
    of two (q a Mersenne number), and t = 1 with q = 2.
    """
    if q < 2 or t < 1:
        raise ValueError("primitive_prime_divisors needs q >= 2, t >= 1")
    _checked_power(q, t)
    candidates = factorize(cyclotomic_value(t, q))
    ppds = []
    for p in candidates:
        if all((_checked_power(q, i) - 1) % p for i in range(1, t)):
            ppds.append(p)
    return PpdResult(q, t, tuple(sorted(ppds)), exceptional=not ppds)


def zsigmondy_exception_expected(q: int, t: int) -> bool:
    """The classical exception pattern for q^t - 1 lacking a primitive prime divisor."""
    if t == 1:
        return q == 2
    if t == 2:
        r = q + 1
        return r & (r - 1) == 0
    return (q, t) == (2, 6)


def _mobius(n: int) -> int:
    mu = 1
    for _, e in factorize(n).items():
        if e > 1:
            return 0
        mu = -mu
    return mu


def divisors(n: int) -> list[int]:
    fac = factorize(n)
    out = [1]
    for p, e in fac.items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


def cyclotomic_value(n: int, q: int) -> int:
    """Phi_n(q), computed exactly via the Moebius product over divisors."""
    if n < 1:
        raise ValueError("cyclotomic_value needs n >= 1")
    if q < 2:
        raise ValueError("cyclotomic_value needs q >= 2")
    num = den = 1
    for d in divisors(n):
        mu = _mobius(n // d)
        if mu == 1:
            num *= _checked_power(q, d) - 1
        elif mu == -1:
            den *= _checked_power(q, d) - 1
    assert num % den == 0
    return num // den


def phi_star(n: int, q: int) -> int:
    """Largest divisor of Phi_n(q) coprime to prod_{i<n} (q^i - 1)."""
    value = cyclotomic_value(n, q)
    lower = prod(_checked_power(q, i) - 1 for i in range(1, n)) if n > 1 else 1
    g = gcd(value, lower)
    while g > 1:
        value //= g
        g = gcd(value, lower)
    return value


def power_vs_factorial(m: int) -> bool:
    """Exact check of (m/2)^m >= m!/2, i.e. 2 * m^m >= 2^m * m!."""
    if m < 1:
        raise ValueError("power_vs_factorial needs m >= 1")
    import math

    return 2 * m ** m >= 2 ** m * math.factorial(m)
