"""Finite fields F_{p^f} with a deterministic primitive-polynomial construction.

Elements are stored in the polynomial basis of the chosen modulus.  The
modulus is the primitive polynomial of degree f over F_p whose coefficient
vector (c_0, ..., c_{f-1}) encodes to the smallest integer sum(c_i * p^i),
so the same (p, f) always yields bit-identical field descriptions.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import ParameterError

MAX_FIELD_SIZE = 1 << 20
MAX_DEGREE = 8


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n):
    """Sorted distinct prime factors of n (trial division; n <= 2^20 here)."""
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


# -- bootstrap polynomial arithmetic over F_p (coefficient tuples, ascending) --

def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mulmod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod_p(a, b, p):
    """Divide a by b over F_p; b must be nonzero. Returns (quot, rem)."""
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(da - db + 1, 0)
    while da >= db and any(a):
        if a[da] == 0:
            da -= 1
            continue
        coef = (a[da] * inv_lead) % p
        quot[da - db] = coef
        for j, bj in enumerate(b):
            a[da - db + j] = (a[da - db + j] - coef * bj) % p
        da -= 1
    return _poly_trim(quot), _poly_trim(a)


def _poly_powmod(base, e, mod, p):
    result = (1,)
    base = _poly_divmod_p(base, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_divmod_p(_poly_mulmod_p(result, base, p), mod, p)[1]
        base = _poly_divmod_p(_poly_mulmod_p(base, base, p), mod, p)[1]
        e >>= 1
    return result


@lru_cache(maxsize=None)
def _monic_irreducibles(p, deg):
    """All monic irreducible polynomials of the given degree over F_p."""
    if deg == 1:
        return tuple((c, 1) for c in range(p))
    smaller = []
    for d in range(1, deg // 2 + 1):
        smaller.extend(_monic_irreducibles(p, d))
    out = []
    for code in range(p ** deg):
        c, k = [], code
        for _ in range(deg):
            c.append(k % p)
            k //= p
        cand = tuple(c) + (1,)
        if all(_poly_divmod_p(cand, s, p)[1] for s in smaller):
            out.append(cand)
    return tuple(out)


def _is_primitive_root_poly(modulus, p, f):
    """True if x generates the multiplicative group of F_p[x]/(modulus)."""
    order = p ** f - 1
    if order == 1:
        return True
    x = (0, 1) if f > 1 else _poly_divmod_p((0, 1), modulus, p)[1]
    if _poly_powmod(x, order, modulus, p) != (1,):
        return False
    for ell in prime_factors(order):
        if _poly_powmod(x, order // ell, modulus, p) == (1,):
            return False
    return True


class FieldDesc:
    """Description of F_{p^f}: modulus, generator, and element arithmetic."""

    __slots__ = ("p", "f", "q", "modulus", "generator", "_tables")

    def __init__(self, p, f, modulus):
        self.p = p
        self.f = f
        self.q = p ** f
        self.modulus = modulus  # ascending coeffs, length f+1, monic
        self._tables = None
        if f == 1:
            gen = (-modulus[0]) % p
            self.generator = FieldElement(self, (gen,))
        else:
            self.generator = FieldElement(self, (0, 1) + (0,) * (f - 2))

    def __eq__(self, other):
        return (isinstance(other, FieldDesc)
                and (self.p, self.f, self.modulus) == (other.p, other.f, other.modulus))

    def __hash__(self):
        return hash((self.p, self.f, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.f})"

    def zero(self):
        return FieldElement(self, (0,) * self.f)

    def one(self):
        return self.from_int(1)

    def elem(self, coeffs):
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.f:
            raise ParameterError(f"need {self.f} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    def from_int(self, k):
        """Decode the canonical integer encoding sum(c_i * p^i), k in [0, q)."""
        k %= self.q
        c = []
        for _ in range(self.f):
            c.append(k % self.p)
            k //= self.p
        return FieldElement(self, tuple(c))

    def scalar(self, k):
        """Image of the integer k under Z -> F_{p^f}."""
        return FieldElement(self, (k % self.p,) + (0,) * (self.f - 1))

    def elements(self):
        """All field elements in canonical-integer order."""
        return [self.from_int(k) for k in range(self.q)]

    def nonzero_elements(self):
        return [self.from_int(k) for k in range(1, self.q)]

    def tables(self):
        """(add, mul) tables indexed by canonical ints; built lazily, q <= 4096."""
        if self._tables is None:
            if self.q > 4096:
                raise ParameterError(f"field too large for tables: q = {self.q}")
            els = self.elements()
            add = [[(a + b).canonical_int() for b in els] for a in els]
            mul = [[(a * b).canonical_int() for b in els] for a in els]
            self._tables = (add, mul)
        return self._tables


class FieldElement:
    __slots__ = ("desc", "coeffs")

    def __init__(self, desc, coeffs):
        self.desc = desc
        self.coeffs = coeffs

    def _check(self, other):
        if self.desc != other.desc:
            raise ParameterError("mixed finite fields")

    def __add__(self, other):
        self._check(other)
        p = self.desc.p
        return FieldElement(self.desc, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.desc.p
        return FieldElement(self.desc, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.desc.p
        return FieldElement(self.desc, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        d = self.desc
        prod = _poly_mulmod_p(self.coeffs, other.coeffs, d.p)
        rem = _poly_divmod_p(prod, d.modulus, d.p)[1]
        return FieldElement(d, rem + (0,) * (d.f - len(rem)))

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero field element")
        return self ** (self.desc.q - 2)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.desc.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self):
        """x -> x^p, the arithmetic Frobenius over F_p."""
        return self ** self.desc.p

    def is_zero(self):
        return not any(self.coeffs)

    def canonical_int(self):
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.desc.p + c
        return k

    def multiplicative_order(self):
        if self.is_zero():
            raise ZeroDivisionError("order of zero")
        order = self.desc.q - 1
        for ell in prime_factors(order):
            while order % ell == 0 and (self ** (order // ell)).canonical_int() == 1:
                order //= ell
        return order

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.desc == other.desc and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.desc.p, self.desc.f, self.coeffs))

    def __repr__(self):
        return f"ff({self.canonical_int()}/{self.desc.q})"


@lru_cache(maxsize=None)
def ff_make(p, f):
    """Deterministic construction of F_{p^f}.

    The modulus is the first primitive polynomial in the canonical coefficient
    order; its root x is the stored generator (for f = 1 the generator is the
    root -c_0, a primitive root mod p).
    """
    if not is_prime(p):
        raise ParameterError(f"p = {p} is not prime")
    if not (1 <= f <= MAX_DEGREE):
        raise ParameterError(f"extension degree f = {f} outside [1, {MAX_DEGREE}]")
    if p ** f > MAX_FIELD_SIZE:
        raise ParameterError(f"p^f = {p ** f} exceeds {MAX_FIELD_SIZE}")
    for code in range(p ** f):
        c, k = [], code
        for _ in range(f):
            c.append(k % p)
            k //= p
        cand = tuple(c) + (1,)
        if f > 1:
            smaller = []
            for d in range(1, f // 2 + 1):
                smaller.extend(_monic_irreducibles(p, d))
            if any(not _poly_divmod_p(cand, s, p)[1] for s in smaller):
                continue
        else:
            if (-cand[0]) % p == 0:
                continue
        if _is_primitive_root_poly(cand, p, f):
            return FieldDesc(p, f, cand)
    raise ParameterError(f"no primitive polynomial found for ({p}, {f})")


def field_for_order(q):
    """The canonical field with q = p^f elements."""
    for p in prime_factors(q):
        f = 0
        m = q
        while m % p == 0:
            m //= p
            f += 1
        if m == 1:
            return ff_make(p, f)
    raise ParameterError(f"q = {q} is not a prime power")


@lru_cache(maxsize=None)
def _embedding_root(sub, sup):
    """Deterministic root of sub.modulus inside sup (smallest canonical int)."""
    if sub.p != sup.p or sup.f % sub.f != 0:
        raise ParameterError(f"no embedding {sub} -> {sup}")
    if sub.f == sup.f:
        if sub != sup:
            raise ParameterError("distinct field descriptions of equal degree")
        return sub.generator
    h = sup.generator ** ((sup.q - 1) // (sub.q - 1))
    roots = []
    cur = sup.one()
    for _ in range(sub.q - 1):
        val = sup.zero()
        power = sup.one()
        for c in sub.modulus:
            if c:
                val = val + sup.scalar(c) * power
            power = power * cur
        if val.is_zero():
            roots.append(cur)
        cur = cur * h
    if not roots:
        raise ParameterError(f"modulus of {sub} has no root in {sup}")
    return min(roots, key=lambda r: r.canonical_int())


def embed(x, sup):
    """Embed x in the larger field sup via the deterministic subfield embedding."""
    sub = x.desc
    if sub == sup:
        return x
    root = _embedding_root(sub, sup)
    out = sup.zero()
    power = sup.one()
    for c in x.coeffs:
        if c:
            out = out + sup.scalar(c) * power
        power = power * root
    return out


def moebius(n):
    out = 1
    for ell in prime_factors(n):
        if n % (ell * ell) == 0:
            return 0
        out = -out
    return out


def gaussian_binomial(n, d, q):
    """Number of d-dimensional F_q-subspaces of F_q^n (exact integer)."""
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (d - i) - 1
    value = Fraction(num, den)
    assert value.denominator == 1
    return int(value)
