"""Exact arithmetic in the real field Q(theta), theta = 2cos(pi/N).

Every value of the bilinear form and every root coordinate of a Coxeter
system lives in one such field.  Elements are stored as an integer
numerator vector over a common positive denominator, reduced modulo the
(monic, integral) minimal polynomial of theta.

Signs are decided exactly: theta is enclosed in a dyadic interval that is
refined by bisection on the minimal polynomial, and a polynomial in theta
is evaluated on the interval until the enclosure excludes zero.

>>> F = make_field({4})
>>> F.minpoly
(-2, 0, 1)
>>> t = F.theta()
>>> (t * t) == F(2)
True
>>> sign_of(t - 1)
1
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import reduce

__all__ = ["FieldSpec", "Scalar", "get_field", "make_field", "two_cos", "sign_of", "cyclotomic"]


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polydiv_exact(num, den):
    """Divide integer polynomials (low degree first); den must be monic."""
    num = list(num)
    dn = len(den) - 1
    assert den[-1] == 1
    q = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            q[k - dn] = c
            for j in range(dn + 1):
                num[k - dn + j] -= c * den[j]
    assert not any(num), "inexact division"
    return q


_cyclo_cache: dict[int, tuple[int, ...]] = {}


def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n in _cyclo_cache:
        return _cyclo_cache[n]
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _polydiv_exact(p, cyclotomic(d))
    _cyclo_cache[n] = tuple(p)
    return _cyclo_cache[n]


def _chebyshev_like(k: int) -> list[list[int]]:
    """T_0..T_k with T_j(x + 1/x) = x^j + x^-j."""
    ts = [[2], [0, 1]]
    while len(ts) <= k:
        a, b = ts[-1], ts[-2]
        nxt = [0] + a
        for i, c in enumerate(b):
            nxt[i] -= c
        ts.append(nxt)
    return ts


def _theta_minpoly(N: int) -> tuple[int, ...]:
    if N == 1:
        # theta = 2cos(pi) = -2; only used as a carrier for the rationals
        return (2, 1)
    phi = cyclotomic(2 * N)
    e = (len(phi) - 1) // 2
    ts = _chebyshev_like(e)
    out = [0] * (e + 1)
    out[0] += phi[e]
    for j in range(1, e + 1):
        c = phi[e + j]
        for i, tc in enumerate(ts[j]):
            out[i] += c * tc
    return tuple(out)


class FieldSpec:
    """The field Q(2cos(pi/N)) with an exact, refinable enclosure of theta."""

    def __init__(self, N: int):
        self.N = N
        self.minpoly = _theta_minpoly(N)
        self.degree = len(self.minpoly) - 1
        self._lock = threading.Lock()
        self._zero = None
        if self.degree > 1:
            approx = 2 * math.cos(math.pi / N)
            prec = 40
            lo = math.floor((approx - 1e-9) * (1 << prec))
            hi = 2 << prec
            # theta is the largest root and all roots are < 2
            assert self._mp_sign(lo, prec) < 0 < self._mp_sign(hi, prec)
            self._prec = prec
            self._lo, self._hi = lo, hi
            self._cache = {}
            self._refine_to(64)

    # --- theta enclosure -------------------------------------------------
    def _mp_sign(self, a: int, prec: int) -> int:
        # sign of minpoly(a / 2^prec), via the homogenised integer polynomial
        d = self.degree
        v = sum(c * a**i * (1 << (prec * (d - i))) for i, c in enumerate(self.minpoly))
        return (v > 0) - (v < 0)

    def _refine_to(self, prec: int):
        with self._lock:
            while self._prec < prec:
                lo, hi = 2 * self._lo, 2 * self._hi
                p = self._prec + 1
                while hi - lo > 1:
                    mid = (lo + hi) // 2
                    if self._mp_sign(mid, p) < 0:
                        lo = mid
                    else:
                        hi = mid
                self._lo, self._hi, self._prec = lo, hi, p
                self._cache[p] = (lo, hi)

    def theta_interval(self, prec: int) -> tuple[int, int, int]:
        """Return (lo, hi, p) with lo/2^p < theta < hi/2^p and hi - lo = 1."""
        if prec not in self._cache:
            self._refine_to(prec)
            if prec not in self._cache:
                # a coarser request than the current enclosure
                lo, hi = self._lo >> (self._prec - prec), (self._hi >> (self._prec - prec)) + 1
                return lo, hi, prec
        lo, hi = self._cache[prec]
        return lo, hi, prec

    # --- construction helpers -------------------------------------------
    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        q = Fraction(value)
        num = [0] * self.degree
        num[0] = q.numerator
        return Scalar._make(self, num, q.denominator)

    def zero(self) -> "Scalar":
        if self._zero is None:
            self._zero = self(0)
        return self._zero

    def theta(self) -> "Scalar":
        if self.degree == 1:
            return self(-self.minpoly[0])
        num = [0] * self.degree
        num[1] = 1
        return Scalar._make(self, num, 1)

    def from_coeffs(self, coeffs) -> "Scalar":
        fr = [Fraction(c) for c in coeffs]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fr), 1)
        num = [int(f * den) for f in fr]
        return Scalar._make(self, self._reduce(num), den)

    def _reduce(self, num: list[int]) -> list[int]:
        d = self.degree
        mp = self.minpoly
        num = list(num)
        for k in range(len(num) - 1, d - 1, -1):
            c = num[k]
            if c:
                num[k] = 0
                for j in range(d):
                    num[k - d + j] -= c * mp[j]
        num = num[:d]
        num += [0] * (d - len(num))
        return num

    def __repr__(self):
        return f"FieldSpec(N={self.N}, degree={self.degree})"


class Scalar:
    """An element of a FieldSpec.  Immutable and hashable."""

    __slots__ = ("field", "num", "den", "_sign", "_hash")

    @classmethod
    def _make(cls, field: FieldSpec, num, den: int) -> "Scalar":
        g = den
        for c in num:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    break
        if den < 0:
            g = -g
        self = object.__new__(cls)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den
        self._sign = None
        self._hash = None
        return self

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ValueError("scalars from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return Scalar._make(self.field, [a + b for a, b in zip(self.num, o.num)], self.den)
        return Scalar._make(self.field, [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
                            self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Scalar._make(self.field, [a * other for a in self.num], self.den)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.field.degree == 1:
            return Scalar._make(self.field, [self.num[0] * o.num[0]], self.den * o.den)
        prod = _polymul(self.num, o.num)
        return Scalar._make(self.field, self.field._reduce(prod), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        F = self.field
        d = F.degree
        # solve (self) * x = 1 via the multiplication matrix over Q
        cols = []
        for j in range(d):
            e = [0] * d
            e[j] = 1
            cols.append(F._reduce(_polymul(self.num, e)))
        M = [[Fraction(cols[j][i], self.den) for j in range(d)] + [Fraction(int(i == 0))]
             for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if M[r][c] != 0)
            M[c], M[piv] = M[piv], M[c]
            pv = M[c][c]
            M[c] = [x / pv for x in M[c]]
            for r in range(d):
                if r != c and M[r][c] != 0:
                    f = M[r][c]
                    M[r] = [x - f * y for x, y in zip(M[r], M[c])]
        return F.from_coeffs([M[i][d] for i in range(d)])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def sign(self) -> int:
        if self._sign is None:
            self._sign = _sign(self)
        return self._sign

    def __float__(self):
        t = 2 * math.cos(math.pi / self.field.N) if self.field.degree > 1 else 0.0
        return sum(c * t**i for i, c in enumerate(self.num)) / self.den

    def to_str(self, var: str = "t") -> str:
        """Polynomial string in theta, e.g. '1/2*t^2 - 1'."""
        terms = []
        for i in range(len(self.num) - 1, -1, -1):
            c = Fraction(self.num[i], self.den)
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            a = abs(c)
            if mono:
                coef = "" if a == 1 else f"{a}*"
                body = coef + mono
            else:
                body = str(a)
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for s, b in terms[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"Scalar({self.to_str()})"


def _sign(a: Scalar) -> int:
    num = a.num
    if not any(num):
        return 0
    F = a.field
    d = F.degree
    if d == 1 or not any(num[1:]):
        return 1 if num[0] > 0 else -1
    prec = 64
    while True:
        lo, hi, p = F.theta_interval(prec)
        # theta > 0, so each monomial is monotone on [lo, hi]/2^p
        low = high = 0
        for i, c in enumerate(num):
            if not c:
                continue
            scale = 1 << (p * (d - 1 - i))
            if c > 0:
                low += c * lo**i * scale
                high += c * hi**i * scale
            else:
                low += c * hi**i * scale
                high += c * lo**i * scale
        if low > 0:
            return 1
        if high < 0:
            return -1
        prec *= 2


def sign_of(a: Scalar) -> int:
    """Exact sign of a field element: -1, 0 or +1."""
    return a.sign()


def _lcm(values) -> int:
    return reduce(lambda x, y: x * y // math.gcd(x, y), values, 1)


_fields: dict[int, FieldSpec] = {}
_fields_lock = threading.Lock()


def get_field(N: int) -> FieldSpec:
    """The shared FieldSpec for N (scalars only combine within one instance)."""
    with _fields_lock:
        if N not in _fields:
            _fields[N] = FieldSpec(N)
        return _fields[N]


def make_field(labels) -> FieldSpec:
    """The field for a set of Coxeter labels (ints >= 2 or math.inf)."""
    finite = []
    for m in labels:
        if m == math.inf or m is None:
            continue
        if int(m) != m or m < 2:
            raise ValueError(f"bad Coxeter label {m!r}")
        if m >= 3:
            finite.append(int(m))
    return get_field(_lcm(finite))


def two_cos(field: FieldSpec, m: int) -> Scalar:
    """2cos(pi/m) as an element of field; m must divide N (m=2, 3 always allowed)."""
    if m == 2:
        return field(0)
    if m == 3:
        return field(1)
    if m == 1:
        return field(-2)
    if field.N % m:
        raise ValueError(f"2cos(pi/{m}) does not lie in Q(2cos(pi/{field.N}))")
    k = field.N // m
    theta = field.theta()
    p_prev, p = field(2), theta
    for _ in range(k - 1):
        p_prev, p = p, theta * p - p_prev
    return p if k >= 1 else p_prev
