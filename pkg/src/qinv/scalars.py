"""Scalar backends: exact cyclotomic numbers with a tracked power of sqrt(r),
and arbitrary-precision complex numbers.

The exact backend works in Q(zeta_r)[sqrt(r)] represented as formal pairs
(even, odd) meaning ``even + odd*sqrt(r)`` with both parts in Q(zeta_r).
For r = 1 mod 4 the square root of r already lies in Q(zeta_r), so adjoining
an indeterminate square root would not give a field; the formal-pair
representation sidesteps that while supporting every value the invariants
produce (always a pure ``c * r^(k/2)``).

The complex embedding always sends zeta_r to exp(2*pi*i/r) and sqrt(r) to the
positive square root.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp

DEFAULT_PRECISION = 128

_F0 = Fraction(0)
_F1 = Fraction(1)


class MixedHalfPowerAddition(ArithmeticError):
    """Strict addition of values whose sqrt(r) parities disagree."""


class DivisionByZero(ZeroDivisionError):
    pass


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_int(a, b):
    # b monic with integer coefficients
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return q, _poly_trim(a)


def cyclotomic_polynomial(n):
    """Integer coefficient list (ascending) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, rem = _poly_divmod_int(poly, cyclotomic_polynomial(d))
            assert not rem
            poly = q
    return poly


class CycRing:
    """Arithmetic context for Q(zeta_r) with the sqrt(r) tag, one per odd r."""

    _cache = {}

    def __new__(cls, r):
        if r in cls._cache:
            return cls._cache[r]
        self = super().__new__(cls)
        cls._cache[r] = self
        self._init(r)
        return self

    def _init(self, r):
        if r < 3 or r % 2 == 0:
            raise ValueError(f"r must be an odd integer >= 3, got {r}")
        self.r = r
        phi_poly = cyclotomic_polynomial(r)
        self.phi = len(phi_poly) - 1
        # x^k mod Phi_r for k up to 2*phi-2 (enough to reduce products)
        modp = [Fraction(-c) for c in phi_poly[:-1]]
        table = []
        cur = list(modp)
        table.append(tuple(cur))
        for _ in range(self.phi - 1):
            top = cur[-1]
            cur = [_F0] + cur[:-1]
            if top:
                cur = [c + top * m for c, m in zip(cur, modp)]
            table.append(tuple(cur))
        self._red = table  # _red[k] = x^(phi+k) reduced, k = 0..phi-2
        self._zeta_pow = {}
        z = [_F0] * self.phi
        z[0] = _F1
        self._zeta_pow[0] = tuple(z)
        self.zero = Cyc(self, None, None)
        self.one = Cyc(self, self._zeta_pow[0], None)
        self.sqrt_r = Cyc(self, None, self._zeta_pow[0])
        self._inv_cache = {}
        self._fraction_cache = {}

    # -- coefficient-vector helpers -------------------------------------

    def _reduce(self, coeffs):
        phi = self.phi
        if len(coeffs) <= phi:
            out = list(coeffs) + [_F0] * (phi - len(coeffs))
            return tuple(out)
        out = list(coeffs[:phi])
        for k in range(phi, len(coeffs)):
            c = coeffs[k]
            if c:
                red = self._red[k - phi]
                for i in range(phi):
                    if red[i]:
                        out[i] += c * red[i]
        return tuple(out)

    def _vmul(self, a, b):
        phi = self.phi
        out = [_F0] * (2 * phi - 1)
        for i in range(phi):
            x = a[i]
            if x:
                for j in range(phi):
                    y = b[j]
                    if y:
                        out[i + j] += x * y
        return self._reduce(out)

    def _vinv(self, a):
        # extended Euclid against Phi_r in Q[x]
        key = a
        hit = self._inv_cache.get(key)
        if hit is not None:
            return hit
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(self.r)]
        r0, r1 = phi_poly, _poly_trim(a)
        t0, t1 = [], [_F1]
        while r1:
            # divmod in Q[x]
            q = [_F0] * max(len(r0) - len(r1) + 1, 1)
            rr = list(r0)
            lead = r1[-1]
            for i in range(len(rr) - len(r1), -1, -1):
                c = rr[i + len(r1) - 1]
                if c:
                    f = c / lead
                    q[i] = f
                    for j, y in enumerate(r1):
                        rr[i + j] -= f * y
            rr = _poly_trim(rr)
            q = _poly_trim(q)
            r0, r1 = r1, rr
            prod = _poly_mul_int(q, t1) if q and t1 else []
            t2 = [x - y for x, y in
                  zip(t0 + [_F0] * max(0, len(prod) - len(t0)),
                      prod + [_F0] * max(0, len(t0) - len(prod)))]
            t0, t1 = t1, _poly_trim(t2)
        if len(r0) != 1:
            raise DivisionByZero("element is a zero divisor (should not happen in a field)")
        c = r0[0]
        inv = self._reduce([x / c for x in t0])
        self._inv_cache[key] = inv
        return inv

    # -- element constructors --------------------------------------------

    def from_fraction(self, q):
        q = Fraction(q)
        hit = self._fraction_cache.get(q)
        if hit is None:
            v = [_F0] * self.phi
            v[0] = q
            hit = Cyc(self, tuple(v), None)
            self._fraction_cache[q] = hit
        return hit

    def from_int(self, n):
        return self.from_fraction(Fraction(n))

    def zeta(self, k=1):
        """zeta_r^k as an element of the ring."""
        k %= self.r
        hit = self._zeta_pow.get(k)
        if hit is None:
            v = [_F0] * (k + 1)
            v[k] = _F1
            hit = self._reduce(v)
            self._zeta_pow[k] = hit
        return Cyc(self, hit, None)

    def q(self, k):
        """q^k for integer k, with q = zeta_r."""
        return self.zeta(k)

    def q_half(self, k):
        """q^(k/2) for integer k: the principal e^(pi i k / r) lies in Q(zeta_r)
        because r is odd; concretely q^(1/2) = -zeta^((r+1)/2)."""
        s = self.zeta(k * ((self.r + 1) // 2))
        return s if k % 2 == 0 else -s

    def rhalf_power(self, k):
        """r^(k/2) as an exact element (k any integer)."""
        q, rem = divmod(k, 2)
        base = self.from_fraction(Fraction(self.r) ** q)
        return base * self.sqrt_r if rem else base

    def brace(self, z):
        """{z} = q^z - q^(-z) for integer or half-integer-doubled z (z integer here)."""
        return self.q(z) - self.q(-z)

    def qint(self, k):
        """[k] = {k}/{1}."""
        return self.brace(k) / self.brace(1)

    def qfact(self, k):
        out = self.one
        for j in range(1, k + 1):
            out = out * self.qint(j)
        return out

    def qbinom(self, n, k):
        if k < 0 or k > n:
            return self.zero
        return self.qfact(n) / (self.qfact(k) * self.qfact(n - k))


class Cyc:
    """Element of Q(zeta_r) + Q(zeta_r)*sqrt(r), immutable."""

    __slots__ = ("ring", "ev", "od")

    def __init__(self, ring, ev, od):
        self.ring = ring
        z = None
        if ev is None or od is None:
            z = tuple([_F0] * ring.phi)
        self.ev = z if ev is None else tuple(ev)
        self.od = z if od is None else tuple(od)

    # parity bookkeeping ---------------------------------------------------

    @property
    def is_zero(self):
        return not (any(self.ev) or any(self.od))

    @property
    def rhalf(self):
        """0 for pure Q(zeta_r) values, 1 for pure sqrt(r) multiples, None mixed."""
        has_ev = any(self.ev)
        has_od = any(self.od)
        if has_ev and has_od:
            return None
        return 1 if has_od else 0

    def __bool__(self):
        return not self.is_zero

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.from_fraction(Fraction(other))
        if not isinstance(other, Cyc) or other.ring is not self.ring:
            raise TypeError(f"incompatible scalar {other!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Cyc(self.ring,
                   tuple(a + b for a, b in zip(self.ev, other.ev)),
                   tuple(a + b for a, b in zip(self.od, other.od)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.ring, tuple(-a for a in self.ev), tuple(-a for a in self.od))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        other = self._check(other)
        R = self.ring
        # (a + b*s)(c + d*s) = (ac + r*bd) + (ad + bc)*s  with s^2 = r
        a, b, c, d = self.ev, self.od, other.ev, other.od
        ha, hb = any(a), any(b)
        hc, hd = any(c), any(d)
        ev = od = None
        if ha and hc:
            ev = R._vmul(a, c)
        if hb and hd:
            bd = R._vmul(b, d)
            bd = tuple(R.r * x for x in bd)
            ev = bd if ev is None else tuple(x + y for x, y in zip(ev, bd))
        if ha and hd:
            od = R._vmul(a, d)
        if hb and hc:
            bc = R._vmul(b, c)
            od = bc if od is None else tuple(x + y for x, y in zip(od, bc))
        return Cyc(R, ev, od)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise DivisionByZero("division by zero")
        R = self.ring
        p = self.rhalf
        if p is None:
            # (a + b*s)^(-1) = (a - b*s) / (a^2 - r b^2) when the norm is invertible
            conj = Cyc(R, self.ev, tuple(-x for x in self.od))
            norm = self * conj
            if norm.rhalf != 0 or norm.is_zero:
                raise DivisionByZero(
                    "division by a mixed-parity value with degenerate norm")
            return conj * norm.inverse()
        if p == 0:
            return Cyc(R, R._vinv(self.ev), None)
        # (b*s)^(-1) = (1/(r*b)) * s
        inv = R._vinv(self.od)
        return Cyc(R, None, tuple(x / R.r for x in inv))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.from_fraction(Fraction(other))
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.ring is other.ring and self.ev == other.ev and self.od == other.od

    def __hash__(self):
        return hash((self.ring.r, self.ev, self.od))

    def conjugate(self):
        """Complex conjugation: zeta -> zeta^(-1), sqrt(r) fixed."""
        R = self.ring

        def conj_vec(v):
            out = [_F0] * R.phi
            for k, c in enumerate(v):
                if c:
                    w = R._zeta_pow.get((-k) % R.r)
                    if w is None:
                        R.zeta(-k)
                        w = R._zeta_pow[(-k) % R.r]
                    for i in range(R.phi):
                        if w[i]:
                            out[i] += c * w[i]
            return tuple(out)

        return Cyc(R, conj_vec(self.ev), conj_vec(self.od))

    def embed(self, precision_bits=DEFAULT_PRECISION):
        """Evaluate at zeta_r = exp(2*pi*i/r), sqrt(r) > 0."""
        with mp.workprec(precision_bits + 16):
            z = mpmath.e ** (2j * mpmath.pi / self.ring.r)
            acc = mpmath.mpc(0)
            zp = mpmath.mpc(1)
            for a, b in zip(self.ev, self.od):
                if a or b:
                    acc += zp * (mpmath.mpf(a.numerator) / a.denominator
                                 + mpmath.sqrt(self.ring.r)
                                 * mpmath.mpf(b.numerator) / b.denominator)
                zp *= z
        return Cx(acc, precision_bits)

    def to_json(self):
        def enc(v):
            return [f"{c.numerator}/{c.denominator}" for c in v]

        p = self.rhalf
        if p is not None:
            return {"coeffs": enc(self.od if p else self.ev), "rhalf": p}
        return {"even": enc(self.ev), "odd": enc(self.od)}

    @classmethod
    def from_json(cls, ring, data):
        def dec(v):
            out = [Fraction(s) for s in v]
            return tuple(out + [_F0] * (ring.phi - len(out)))

        if "coeffs" in data:
            v = dec(data["coeffs"])
            return cls(ring, None, v) if data.get("rhalf") else cls(ring, v, None)
        return cls(ring, dec(data["even"]), dec(data["odd"]))

    def __repr__(self):
        def fmt(v, tag):
            terms = []
            for k, c in enumerate(v):
                if c:
                    terms.append(f"{c}*z^{k}{tag}" if k else f"{c}{tag}")
            return terms

        terms = fmt(self.ev, "") + fmt(self.od, "*s")
        return "Cyc(" + (" + ".join(terms) if terms else "0") + f"; r={self.ring.r})"


def cyc_arith(a, b, op):
    """Strict field arithmetic with r^(k/2) bookkeeping.

    add/sub require equal pure parities (MixedHalfPowerAddition otherwise);
    div requires a pure-parity divisor.
    """
    if op in ("add", "sub"):
        pa, pb = a.rhalf, b.rhalf
        if pa is not None and pb is not None and pa != pb and a and b:
            raise MixedHalfPowerAddition(
                f"cannot {op} values of sqrt(r)-parity {pa} and {pb}")
        return a + b if op == "add" else a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero:
            raise DivisionByZero("division by zero")
        if b.rhalf is None:
            raise DivisionByZero("division restricted to pure-parity values")
        return a / b
    raise ValueError(f"unknown op {op!r}")


class Cx:
    """Arbitrary-precision complex scalar (mpmath backed)."""

    __slots__ = ("v", "prec")

    def __init__(self, value, prec=DEFAULT_PRECISION):
        if prec < 64:
            raise ValueError("precision_bits must be >= 64")
        self.prec = prec
        with mp.workprec(prec):
            self.v = mpmath.mpc(value)

    def _lift(self, other):
        if isinstance(other, Cx):
            return other
        if isinstance(other, Cyc):
            return other.embed(self.prec)
        return Cx(other, self.prec)

    def _binop(self, other, fn):
        other = self._lift(other)
        p = max(self.prec, other.prec)
        with mp.workprec(p):
            return Cx(fn(self.v, other.v), p)

    def __add__(self, other):
        return self._binop(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._lift(other)._binop(self, lambda x, y: x - y)

    def __mul__(self, other):
        return self._binop(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other.is_zero:
            raise DivisionByZero("division by zero")
        return self._binop(other, lambda x, y: x / y)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __neg__(self):
        return Cx(-self.v, self.prec)

    def __pow__(self, n):
        with mp.workprec(self.prec):
            return Cx(self.v ** n, self.prec)

    def inverse(self):
        return Cx(1, self.prec) / self

    def conjugate(self):
        return Cx(mpmath.conj(self.v), self.prec)

    @property
    def is_zero(self):
        return self.v == 0

    def __bool__(self):
        return not self.is_zero

    def __abs__(self):
        with mp.workprec(self.prec):
            return abs(self.v)

    def __eq__(self, other):
        if isinstance(other, (Cx, Cyc, int, float, complex, Fraction)):
            return self.v == self._lift(other).v
        return NotImplemented

    def __hash__(self):
        return hash(complex(self.v))

    def tolerance(self):
        return mpmath.mpf(2) ** (-(self.prec // 2))

    def close_to(self, other, tol=None):
        other = self._lift(other)
        if tol is None:
            tol = self.tolerance()
        return abs((self - other).v) < tol

    def to_json(self):
        with mp.workprec(self.prec):
            return {"re": mpmath.nstr(self.v.real, int(self.prec * 0.302) + 2),
                    "im": mpmath.nstr(self.v.imag, int(self.prec * 0.302) + 2),
                    "prec": self.prec}

    @classmethod
    def from_json(cls, data):
        prec = data["prec"]
        with mp.workprec(prec):
            return cls(mpmath.mpc(mpmath.mpf(data["re"]), mpmath.mpf(data["im"])), prec)

    def __repr__(self):
        with mp.workprec(self.prec):
            return f"Cx({mpmath.nstr(self.v, 12)}, prec={self.prec})"


def embed_complex(a, precision_bits=DEFAULT_PRECISION):
    """Embedding Q(zeta_r)[sqrt(r)] -> C at the principal root choices."""
    if isinstance(a, Cx):
        return Cx(a.v, precision_bits)
    return a.embed(precision_bits)


def q_power(r, exponent, precision_bits=DEFAULT_PRECISION):
    """q^exponent = e^(2*pi*i*exponent/r).

    Rational exponents with denominator dividing 2 return the exact backend;
    anything else returns a Cx at the requested precision.
    """
    ring = CycRing(r)
    if isinstance(exponent, int):
        return ring.q(exponent)
    if isinstance(exponent, Fraction):
        if exponent.denominator == 1:
            return ring.q(exponent.numerator)
        if exponent.denominator == 2:
            return ring.q_half(exponent.numerator)
        # fall through to numeric
    with mp.workprec(precision_bits + 16):
        if isinstance(exponent, Fraction):
            z = mpmath.mpf(exponent.numerator) / exponent.denominator
        elif isinstance(exponent, Cx):
            z = exponent.v
        else:
            z = mpmath.mpc(exponent)
        return Cx(mpmath.e ** (2j * mpmath.pi * z / r), precision_bits)


def numeric_tolerance(precision_bits=DEFAULT_PRECISION):
    return mpmath.mpf(2) ** (-(precision_bits // 2))
