"""Exact-arithmetic modular multiplicative inverse algorithms.

All functions operate on Python's arbitrary-precision integers. Each
algorithm returns an :class:`InverseOutcome` carrying the inverse, the
Bezout-style witness, the iteration count, and per-operation tallies of
its main loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DomainError(ValueError):
    """Input outside an operation's domain."""


class NoInverseError(ValueError):
    """The operand shares a nontrivial divisor with the modulus."""

    def __init__(self, e: int, n: int, common_divisor: int):
        super().__init__(f"no inverse: gcd({e}, {n}) = {common_divisor}")
        self.e = e
        self.n = n
        self.common_divisor = common_divisor


class InternalConsistencyError(RuntimeError):
    """A provably unreachable iteration cap was exhausted."""


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers."""
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    if a < 0 or b < 0:
        raise DomainError("gcd arguments must be nonnegative")
    return math.gcd(a, b)


@dataclass(frozen=True)
class ModPair:
    """A validated problem instance: find the inverse of e modulo n.

    Construction normalizes e into [1, n) and rejects non-coprime pairs,
    so every ModPair in existence has an inverse.
    """

    e: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"modulus must be >= 2, got {self.n}")
        e = self.e % self.n
        if e == 0:
            raise DomainError(f"operand {self.e} is 0 modulo {self.n}")
        g = math.gcd(e, self.n)
        if g != 1:
            raise NoInverseError(e, self.n, g)
        object.__setattr__(self, "e", e)


def make_pair(e_raw: int, n: int) -> ModPair:
    """Build a ModPair, reducing e_raw modulo n first."""
    return ModPair(e_raw, n)


@dataclass(frozen=True)
class OpCounts:
    """Tallies of the arithmetic operations executed by an algorithm's
    main loop."""

    additions: int = 0
    subtractions: int = 0
    multiplications: int = 0
    divisions: int = 0
    shifts: int = 0
    comparisons: int = 0

    def __add__(self, other: "OpCounts") -> "OpCounts":
        return OpCounts(
            self.additions + other.additions,
            self.subtractions + other.subtractions,
            self.multiplications + other.multiplications,
            self.divisions + other.divisions,
            self.shifts + other.shifts,
            self.comparisons + other.comparisons,
        )


@dataclass(frozen=True)
class InverseOutcome:
    """Result of one inverse computation.

    Satisfies e*d = 1 + k*n exactly, with 1 <= d < n and 0 <= k < e.
    """

    d: int
    k: int
    iterations: int
    ops: OpCounts


def verify_inverse(p: ModPair, d: int) -> bool:
    """True iff d is the canonical inverse of p.e modulo p.n."""
    return 1 <= d < p.n and (p.e * d) % p.n == 1


def witness_k(p: ModPair, d: int) -> int:
    """The integer k with e*d = 1 + k*n; requires d to be the inverse."""
    if not verify_inverse(p, d):
        raise DomainError(f"{d} is not the inverse of {p.e} modulo {p.n}")
    return (p.e * d - 1) // p.n


def _outcome(p: ModPair, d_raw: int, iterations: int, ops: OpCounts) -> InverseOutcome:
    d = d_raw % p.n
    if not verify_inverse(p, d):
        raise InternalConsistencyError(
            f"algorithm produced {d_raw} which is not an inverse of {p.e} mod {p.n}"
        )
    return InverseOutcome(d=d, k=(p.e * d - 1) // p.n, iterations=iterations, ops=ops)


def sequential_inverse(p: ModPair) -> InverseOutcome:
    """Trivial search: try d = 1, 2, 3, ... until e*d is 1 modulo n."""
    e, n = p.e, p.n
    d = 1
    m = e  # e*d mod n, maintained incrementally
    while m != 1:
        d += 1
        m += e
        if m >= n:
            m -= n
        if d >= n:
            raise InternalConsistencyError("sequential scan passed n - 1 candidates")
    # per candidate: one multiply (e*d), one reduction, one compare; d - 1
    # increments of the candidate itself
    ops = OpCounts(additions=d - 1, multiplications=d, divisions=d, comparisons=d)
    return _outcome(p, d, d, ops)


def euclid_inverse(p: ModPair) -> InverseOutcome:
    """Extended Euclid: quotient/remainder steps with coefficient updates."""
    e, n = p.e, p.n
    g, u = n, e
    i, v = 0, 1
    its = 0
    while u > 0:
        q = g // u
        g, u = u, g - q * u
        i, v = v, i - q * v
        its += 1
    # per pass: one division for q, two multiplies, two subtractions, the
    # loop-guard comparison (plus the final failing test)
    ops = OpCounts(
        subtractions=2 * its,
        multiplications=2 * its,
        divisions=its,
        comparisons=its + 1,
    )
    return _outcome(p, i, its, ops)


def stein_inverse(p: ModPair) -> InverseOutcome:
    """Binary extended gcd: halving, addition, subtraction, comparison only.

    Maintains u1*e + u2*n = u3 and v1*e + v2*n = v3; halving an even t3
    uses the (t1 + n)/2, (t2 - e)/2 parity fix when t1, t2 are not both
    even.
    """
    e, n = p.e, p.n
    adds = subs = shifts = cmps = 0
    u1, u2, u3 = 1, 0, e
    v1, v2, v3 = n, 1 - e, n
    if e & 1:
        t1, t2, t3 = 0, -1, -n
    else:
        t1, t2, t3 = 1, 0, e
    its = 0
    cap = 4 * (n.bit_length() + e.bit_length()) + 16
    while True:
        its += 1
        if its > cap:
            raise InternalConsistencyError("binary gcd exceeded its iteration cap")
        while t3 & 1 == 0:
            cmps += 1
            t3 >>= 1
            shifts += 1
            if t1 & 1 == 0 and t2 & 1 == 0:
                t1 >>= 1
                t2 >>= 1
            else:
                t1 = (t1 + n) >> 1
                t2 = (t2 - e) >> 1
                adds += 1
                subs += 1
            shifts += 2
            cmps += 1
        cmps += 1
        if t3 > 0:
            u1, u2, u3 = t1, t2, t3
        else:
            v1, v2, v3 = n - t1, -(e + t2), -t3
            subs += 2
            adds += 1
        cmps += 1
        t1, t2, t3 = u1 - v1, u2 - v2, u3 - v3
        subs += 3
        if t1 < 0:
            t1 += n
            t2 -= e
            adds += 1
            subs += 1
        cmps += 2  # sign fix test and the until test
        if t3 == 0:
            break
    ops = OpCounts(additions=adds, subtractions=subs, shifts=shifts, comparisons=cmps)
    return _outcome(p, u1, its, ops)


def gordon_inverse(p: ModPair) -> InverseOutcome:
    """Euclid variant with power-of-two quotients found by shifting.

    Each pass replaces the true quotient by the largest 2**s with
    2**s * u <= g; a pass with u > g contributes quotient 0 (a plain
    swap). The loop uses no multiplication and no division.
    """
    e, n = p.e, p.n
    adds = subs = shifts = cmps = 0
    g, u = n, e
    i, v = 0, 1
    its = 0
    while u > 0:
        cmps += 1
        its += 1
        if u > g:
            cmps += 1
            g, u = u, g
            i, v = v, i
            continue
        cmps += 1
        s = -1
        t = u
        while t <= g:
            cmps += 1
            s += 1
            t <<= 1
            shifts += 1
            adds += 1
        cmps += 1
        t >>= 1  # back off the one overshoot: t = u << s
        shifts += 1
        t = g - t
        subs += 1
        g, u = u, t
        i, v = v, i - (v << s)
        shifts += 1
        subs += 1
    cmps += 1
    ops = OpCounts(additions=adds, subtractions=subs, shifts=shifts, comparisons=cmps)
    return _outcome(p, i, its, ops)


# Above this many scan steps the accumulator loops below switch to the
# closed-form terminating index (the scans' step counts reach e - 1, which
# is astronomically large for cryptographic-size random operands).
LITERAL_SCAN_LIMIT = 1 << 20


def _smallest_k(e: int, n: int) -> int:
    """Smallest k >= 1 with e dividing 1 + k*n (exists since gcd(e,n)=1)."""
    return -pow(n, -1, e) % e


def baghdad_inverse(p: ModPair) -> InverseOutcome:
    """Repeatedly add n to a running numerator until e divides it.

    The recurrence d = (d + n)/e only ever yields an integer at the final
    step, so the loop keeps the exact numerator 1 + j*n and tests
    divisibility by e instead of testing a real number for integrality.
    """
    e, n = p.e, p.n
    if e == 1:
        # single pass: (1 + n)/1 is already an integer
        return _outcome(p, n + 1, 1, OpCounts(additions=1, divisions=1, comparisons=1))
    if e > LITERAL_SCAN_LIMIT:
        k = _smallest_k(e, n)
        if k > LITERAL_SCAN_LIMIT:
            return _outcome(
                p,
                (1 + k * n) // e,
                k,
                OpCounts(additions=k, divisions=k, comparisons=k),
            )
    step = n % e
    m = (1 + step) % e  # (1 + j*n) mod e at j = 1
    k = 1
    while m:
        m += step
        if m >= e:
            m -= e
        k += 1
        if k > e:
            raise InternalConsistencyError("numerator scan passed e steps")
    # per pass: one addition of n, one division by e, one integrality test
    ops = OpCounts(additions=k, divisions=k, comparisons=k)
    return _outcome(p, (1 + k * n) // e, k, ops)


def ffim_exact_inverse(p: ModPair) -> InverseOutcome:
    """Fraction-integer scan in exact integer arithmetic.

    With a = (n+1) mod e and b = n mod e, finds the smallest i >= 1 such
    that b divides i*e - a, sets r = (i*e - a)/b, and closes with
    d = (n*(r+1) + 1)/e. The a = 0 case is already solved: d = (n+1)/e.
    """
    e, n = p.e, p.n
    if e == 1:
        return _outcome(p, 1, 0, OpCounts())
    a = (n + 1) % e
    b = n % e  # nonzero: e > 1 and gcd(e, n) = 1
    if a == 0:
        return _outcome(p, (n + 1) // e, 0, OpCounts())
    i = None
    if e > LITERAL_SCAN_LIMIT:
        k = _smallest_k(e, n)
        i_exact = ((k - 1) * b + a) // e
        if i_exact > LITERAL_SCAN_LIMIT:
            i = i_exact
    if i is None:
        step = e % b
        m = (e - a) % b  # (i*e - a) mod b at i = 1
        i = 1
        while m:
            m += step
            if m >= b:
                m -= b
            i += 1
            if i > e:
                raise InternalConsistencyError("fraction-integer scan passed e steps")
    num = i * e - a
    if num % b:
        raise InternalConsistencyError("terminating index does not divide evenly")
    r = num // b
    d_num = n * (r + 1) + 1
    if d_num % e:
        raise InternalConsistencyError("closing formula numerator not divisible by e")
    # per pass: one subtraction and one division forming r, one integrality
    # test, one increment of i
    ops = OpCounts(additions=i, subtractions=i, divisions=i, comparisons=i)
    return _outcome(p, d_num // e, i, ops)
