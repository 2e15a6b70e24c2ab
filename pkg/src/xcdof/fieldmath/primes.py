"""Prime moduli accepted by the exact linear algebra kernels.

The default modulus is the Mersenne prime 2^61 - 1, large enough that
generic ranks over F_p coincide with the almost-sure ranks of continuously
distributed channels except with probability ~ degree/p (Schwartz-Zippel).
Products of two 61-bit residues are reduced with uint64-only arithmetic,
so the kernels need no 128-bit support.  Any other modulus must be an odd
prime below 2^31 so that plain 64-bit products cannot overflow; the second
prime used to re-examine suspected violations is 2^31 - 1.
"""

from .. import errors

MERSENNE61 = (1 << 61) - 1
DEFAULT_PRIME = MERSENNE61
SECOND_PRIME = (1 << 31) - 1

_SMALL_PRIME_LIMIT = 1 << 31


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def validate_prime(p: int) -> int:
    """Check that *p* is a modulus the kernels can handle; return it."""
    if p == MERSENNE61:
        return p
    if p >= _SMALL_PRIME_LIMIT:
        raise errors.ConfigError(
            f"prime {p} not supported: use {MERSENNE61} or an odd prime < 2^31"
        )
    if p < 3 or not _is_prime(p):
        raise errors.ConfigError(f"{p} is not an odd prime")
    return p
