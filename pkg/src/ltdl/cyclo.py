"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are vectors of rationals in the power basis 1, z, ..., z^{phi(m)-1}
modulo the m-th cyclotomic polynomial.  Used for character values, where
conjugation (z -> z^{-1}) and exact inner products are the workhorses.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ParameterError


def euler_phi(m):
    out = m
    k, d = m, 2
    while d * d <= k:
        if k % d == 0:
            out -= out // d
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        out -= out // k
    return out


def _poly_divmod_q(num, den):
    """Exact division of integer/rational polynomial lists (ascending)."""
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    quot = [0] * max(dn - dd + 1, 0)
    for k in range(dn, dd - 1, -1):
        if num[k] == 0:
            continue
        c = Fraction(num[k], den[dd])
        quot[k - dd] = c
        for j in range(dd + 1):
            num[k - dd + j] -= c * den[j]
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Coefficients (ascending, integer) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ParameterError("conductor must be >= 1")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            quot, rem = _poly_divmod_q(poly, cyclotomic_poly(d))
            assert not rem
            poly = quot
    return tuple(int(c) for c in poly)


@lru_cache(maxsize=None)
def _power_table(m):
    """Row j: representation of zeta_m^j in the power basis, j in [0, 2m)."""
    phi = euler_phi(m)
    mod = cyclotomic_poly(m)
    rows = []
    cur = [Fraction(1)] + [Fraction(0)] * (phi - 1)
    for _ in range(2 * m):
        rows.append(tuple(cur))
        nxt = [Fraction(0)] * (phi + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] = c
        lead = nxt[phi]
        if lead:
            for i in range(phi):
                nxt[i] -= lead * mod[i]
        cur = nxt[:phi]
    return tuple(rows)


class CycloElement:
    """An element of Q(zeta_m) with exact rational coordinates."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m, coeffs):
        phi = euler_phi(m)
        if len(coeffs) != phi:
            raise ParameterError(f"need {phi} coefficients for conductor {m}")
        self.m = m
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(m=1):
        return CycloElement(m, (Fraction(0),) * euler_phi(m))

    @staticmethod
    def rational(r, m=1):
        c = [Fraction(0)] * euler_phi(m)
        c[0] = Fraction(r)
        return CycloElement(m, c)

    @staticmethod
    def zeta(m, power=1):
        return CycloElement(m, _power_table(m)[power % m])

    # -- coercion -------------------------------------------------------------

    def coerce(self, M):
        """Rewrite in Q(zeta_M); m must divide M."""
        if M == self.m:
            return self
        if M % self.m != 0:
            raise ParameterError(f"conductor {self.m} does not divide {M}")
        step = M // self.m
        table = _power_table(M)
        phi = euler_phi(M)
        out = [Fraction(0)] * phi
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(i * step) % M]
                for j in range(phi):
                    out[j] += c * row[j]
        return CycloElement(M, out)

    @staticmethod
    def common(a, b):
        if a.m == b.m:
            return a, b
        M = a.m * b.m // gcd(a.m, b.m)
        return a.coerce(M), b.coerce(M)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, CycloElement):
            other = CycloElement.rational(other)
        a, b = CycloElement.common(self, other)
        return CycloElement(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return CycloElement(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, CycloElement):
            other = CycloElement.rational(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycloElement):
            other = CycloElement.rational(other)
        a, b = CycloElement.common(self, other)
        phi = len(a.coeffs)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        mod = cyclotomic_poly(a.m)
        for k in range(2 * phi - 2, phi - 1, -1):
            c = conv[k]
            if c:
                conv[k] = 0
                for j in range(phi):
                    conv[k - phi + j] -= c * mod[j]
        return CycloElement(a.m, conv[:phi])

    def __rmul__(self, other):
        return self * other

    def conj(self):
        """Complex conjugation zeta -> zeta^{-1}."""
        table = _power_table(self.m)
        phi = len(self.coeffs)
        out = [Fraction(0)] * phi
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(-i) % self.m]
                for j in range(phi):
                    out[j] += c * row[j]
        return CycloElement(self.m, out)

    def galois(self, k):
        """The automorphism zeta -> zeta^k (k coprime to the conductor)."""
        if gcd(k, self.m) != 1:
            raise ParameterError(f"{k} not coprime to conductor {self.m}")
        table = _power_table(self.m)
        phi = len(self.coeffs)
        out = [Fraction(0)] * phi
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(i * k) % self.m]
                for j in range(phi):
                    out[j] += c * row[j]
        return CycloElement(self.m, out)

    # -- predicates and extraction --------------------------------------------

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ParameterError(f"not a rational value: {self}")
        return self.coeffs[0]

    def norm_square(self):
        """z * conj(z), returned as an exact CycloElement."""
        return self * self.conj()

    def __eq__(self, other):
        if not isinstance(other, CycloElement):
            if isinstance(other, (int, Fraction)):
                other = CycloElement.rational(other)
            else:
                return NotImplemented
        a, b = CycloElement.common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # hash in a conductor-independent way: reduce to minimal support form
        return hash(("cyclo", self.m, self.coeffs))

    def __repr__(self):
        if self.is_rational():
            return f"cyc({self.coeffs[0]})"
        return f"cyc(m={self.m}, {[str(c) for c in self.coeffs]})"


def zeta_power_sum(m):
    """sum_{j=0}^{m-1} zeta_m^j, for tests (should be 0 for m > 1)."""
    out = CycloElement.zero(m)
    for j in range(m):
        out = out + CycloElement.zeta(m, j)
    return out
