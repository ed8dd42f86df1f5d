"""
Exact polynomial arithmetic over the integers.

`UniPoly` stores a dense coefficient tuple (index i is the coefficient of
x^i). `BiPoly` stores a sparse map (i, j) -> coefficient of x^i y^j.
Resultants and principal subresultant coefficients come from the
subresultant polynomial remainder sequence computed over Z[t][v], where v is
the eliminated variable and t the other one; elements of Z[t][v] are kept as
lists of UniPoly ("v-lists").
"""
import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from types import MappingProxyType

from .arith import Dyadic, DyadicInterval
from .backend import MPZ
from .errors import BadVariableError, ZeroPolynomialError

VARIABLES = ("x", "y")

# below this many coefficients schoolbook products beat Kronecker packing
KRONECKER_CROSSOVER = 48


def _schoolbook_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _pack(coeffs, nbytes):
    # coeffs must be nonnegative and < 256**nbytes
    return int.from_bytes(
        b"".join(int(c).to_bytes(nbytes, "little") for c in coeffs), "little"
    )


def kronecker_mul(a, b):
    """
    Product of two integer coefficient lists by Kronecker substitution: both
    are packed into single integers at a power of two large enough to hold
    every product coefficient, multiplied once, and unpacked with a bias so
    that signed coefficients come out of plain byte slices.
    """
    if not a or not b:
        return []
    bound = (
        max(abs(c) for c in a).bit_length()
        + max(abs(c) for c in b).bit_length()
        + min(len(a), len(b)).bit_length()
        + 1
    )
    nbytes = (bound + 7) // 8
    k = 8 * nbytes

    def signed_pack(coeffs):
        pos = _pack([c if c > 0 else 0 for c in coeffs], nbytes)
        neg = _pack([-c if c < 0 else 0 for c in coeffs], nbytes)
        return pos - neg

    n = len(a) + len(b) - 1
    product = int(MPZ(signed_pack(a)) * MPZ(signed_pack(b)))
    half = 1 << (k - 1)
    bias = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * n, "little")
    raw = (product + bias).to_bytes(nbytes * n, "little")
    return [
        int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(n)
    ]


def mul_coeffs(a, b):
    if not a or not b:
        return []
    if min(len(a), len(b)) < KRONECKER_CROSSOVER:
        return _schoolbook_mul(a, b)
    return kronecker_mul(a, b)


def horner_ratio(coeffs, num, den):
    """den**d * p(num/den) for p given by `coeffs` of degree d, as an int."""
    if not coeffs:
        return 0
    num, den = MPZ(num), MPZ(den)
    acc = MPZ(coeffs[-1])
    den_power = MPZ(1)
    for c in reversed(coeffs[:-1]):
        den_power *= den
        acc = acc * num + c * den_power
    return int(acc)


class UniPoly:
    """Dense univariate polynomial with integer coefficients, trailing zeros trimmed."""

    __slots__ = ("coeffs", "_key")

    def __init__(self, coeffs=()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self._key = None

    @classmethod
    def constant(cls, value):
        return cls([value])

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"

    def key(self):
        """Stable md5 fingerprint, used to tie isolating intervals to their polynomial."""
        if self._key is None:
            text = ",".join(str(c) for c in self.coeffs)
            self._key = hashlib.md5(text.encode("utf-8")).hexdigest()
        return self._key

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __add__(self, other):
        other = _as_unipoly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_unipoly(other))

    def __rsub__(self, other):
        return _as_unipoly(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return UniPoly([c * other for c in self.coeffs]) if other else UniPoly()
        other = _as_unipoly(other)
        return UniPoly(mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative exponent")
        result, base = UniPoly([1]), self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self):
        """Integer content, signed like the leading coefficient (0 for the zero polynomial)."""
        if not self.coeffs:
            return 0
        g = reduce(math.gcd, self.coeffs, 0)
        return g if self.lc > 0 else -g

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        return self.exquo_ground(self.content())

    def exquo_ground(self, k):
        out = []
        for c in self.coeffs:
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"{k} does not divide {self!r}")
            out.append(q)
        return UniPoly(out)

    def exquo(self, other):
        """Exact quotient in Z[t]; raises ArithmeticError when `other` does not divide."""
        other = _as_unipoly(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        if other.degree == 0:
            return self.exquo_ground(other.lc)
        r = list(self.coeffs)
        dg, lg, g = other.degree, other.lc, other.coeffs
        if len(r) - 1 < dg:
            if r:
                raise ArithmeticError(f"{other!r} does not divide {self!r}")
            return UniPoly()
        q = [0] * (len(r) - dg)
        for i in range(len(r) - 1, dg - 1, -1):
            c = r[i]
            if not c:
                continue
            t, rem = divmod(c, lg)
            if rem:
                raise ArithmeticError(f"{other!r} does not divide {self!r}")
            q[i - dg] = t
            base = i - dg
            for j, gj in enumerate(g):
                if gj:
                    r[base + j] -= t * gj
        if any(r[:dg]):
            raise ArithmeticError(f"{other!r} does not divide {self!r}")
        return UniPoly(q)

    def prem(self, other):
        """Pseudo-remainder lc(other)**(deg self - deg other + 1) * self mod other."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        dg = other.degree
        r = list(self.coeffs)
        if len(r) - 1 < dg:
            return self
        lg, g = other.lc, other.coeffs
        n = len(r) - 1 - dg + 1
        while len(r) - 1 >= dg and r:
            lr = r[-1]
            j = len(r) - 1 - dg
            r = [c * lg for c in r]
            for k, gk in enumerate(g):
                r[j + k] -= lr * gk
            n -= 1
            while r and r[-1] == 0:
                r.pop()
        return UniPoly(r) * (lg**n)

    def __call__(self, value):
        """Exact value at an int, Fraction or Dyadic."""
        if isinstance(value, Dyadic):
            num, den = value.as_ratio()
            if den == 1:
                return Dyadic(horner_ratio(self.coeffs, num, 1), 0)
            return Dyadic(
                horner_ratio(self.coeffs, num, den), value.e * max(self.degree, 0)
            )
        value = Fraction(value)
        den = value.denominator
        return Fraction(
            horner_ratio(self.coeffs, value.numerator, den),
            den ** max(self.degree, 0),
        )


def _as_unipoly(value):
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, int):
        return UniPoly([value])
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


ONE = UniPoly([1])
ZERO = UniPoly()


class BiPoly:
    """
    Sparse bivariate polynomial {(i, j): c} meaning sum c * x^i * y^j.
    Zero coefficients are never stored; the term map is read-only.
    """

    __slots__ = ("_terms", "deg_x", "deg_y", "_key")

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = int(c)
            if c:
                if i < 0 or j < 0:
                    raise ValueError("negative exponent")
                clean[(int(i), int(j))] = c
        self._terms = clean
        self.deg_x = max((i for i, _ in clean), default=-1)
        self.deg_y = max((j for _, j in clean), default=-1)
        self._key = None

    @classmethod
    def from_terms(cls, items):
        """Builds from (i, j, c) triples, summing repeated monomials."""
        acc = {}
        for i, j, c in items:
            acc[(i, j)] = acc.get((i, j), 0) + int(c)
        return cls(acc)

    @classmethod
    def constant(cls, value):
        return cls({(0, 0): value})

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    @property
    def total_degree(self):
        return max((i + j for i, j in self._terms), default=-1)

    def degree_in(self, var):
        return self.deg_x if _check_var(var) == "x" else self.deg_y

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == BiPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"BiPoly({dict(sorted(self._terms.items()))})"

    def key(self):
        if self._key is None:
            text = ";".join(f"{i},{j}:{c}" for (i, j), c in sorted(self._terms.items()))
            self._key = hashlib.md5(text.encode("utf-8")).hexdigest()
        return self._key

    def __neg__(self):
        return BiPoly({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        other = _as_bipoly(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return BiPoly(acc)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_bipoly(other))

    def __rsub__(self, other):
        return _as_bipoly(other) - self

    def __mul__(self, other):
        other = _as_bipoly(other)
        acc = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                acc[k] = acc.get(k, 0) + c1 * c2
        return BiPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative exponent")
        result, base = BiPoly.constant(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def diff(self, var):
        if _check_var(var) == "x":
            return BiPoly({(i - 1, j): i * c for (i, j), c in self._terms.items() if i})
        return BiPoly({(i, j - 1): j * c for (i, j), c in self._terms.items() if j})

    def coeffs_in(self, var):
        """
        Coefficients with respect to `var`: entry k is the coefficient of
        var^k, a UniPoly in the other variable.
        """
        main = 0 if _check_var(var) == "x" else 1
        deg = self.deg_x if main == 0 else self.deg_y
        rows = [dict() for _ in range(deg + 1)]
        for key, c in self._terms.items():
            rows[key[main]][key[1 - main]] = c
        return [
            UniPoly([row.get(t, 0) for t in range(max(row, default=-1) + 1)])
            for row in rows
        ]

    @classmethod
    def from_coeffs_in(cls, var, coeffs):
        main = 0 if _check_var(var) == "x" else 1
        terms = {}
        for k, u in enumerate(coeffs):
            for t, c in enumerate(u.coeffs):
                if c:
                    terms[(k, t) if main == 0 else (t, k)] = c
        return cls(terms)

    def lc_in(self, var):
        coeffs = self.coeffs_in(var)
        return coeffs[-1] if coeffs else ZERO

    def content(self):
        g = reduce(math.gcd, self._terms.values(), 0)
        return g

    def primitive(self):
        """Divides out the integer content; the sign is left as is."""
        g = self.content()
        if g in (0, 1):
            return self
        return BiPoly({k: c // g for k, c in self._terms.items()})

    def __call__(self, x, y):
        """Exact value at rational (or dyadic) coordinates, as a Fraction."""
        x = x.to_fraction() if isinstance(x, Dyadic) else Fraction(x)
        y = y.to_fraction() if isinstance(y, Dyadic) else Fraction(y)
        total = Fraction(0)
        for u_index, u in enumerate(self.coeffs_in("y")):
            if u:
                total += u(x) * y**u_index
        return total


def _as_bipoly(value):
    if isinstance(value, BiPoly):
        return value
    if isinstance(value, int):
        return BiPoly.constant(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


def _check_var(var):
    if var not in VARIABLES:
        raise BadVariableError(f"unknown variable {var!r}, expected 'x' or 'y'")
    return var


@dataclass(frozen=True)
class Magnitude:
    """Total degree n and coefficient bitlength tau (max |c| < 2**tau)."""

    n: int
    tau: int


def magnitude(p):
    if p.is_zero():
        raise ZeroPolynomialError("magnitude of the zero polynomial")
    if isinstance(p, UniPoly):
        return Magnitude(p.degree, max(abs(c) for c in p.coeffs).bit_length())
    return Magnitude(p.total_degree, max(abs(c) for c in p.terms.values()).bit_length())


def eval_point(p, q):
    """Exact p(q) by Horner's scheme on the homogenized numerator."""
    return p(Fraction(q))


def _horner_interval(coeffs, iv):
    if not coeffs:
        return DyadicInterval.point(0)
    acc = DyadicInterval.point(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * iv + DyadicInterval.point(c)
    return acc


def eval_box(F, bx, by):
    """
    Enclosure of F over bx x by: Horner in y whose interval coefficients come
    from Horner in x. The scheme is fixed so results are reproducible.
    """
    acc = None
    for u in reversed(F.coeffs_in("y")):
        cx = _horner_interval(u.coeffs, bx)
        acc = cx if acc is None else acc * by + cx
    return acc if acc is not None else DyadicInterval.point(0)


def gcd_uni(p, q):
    """Primitive gcd with positive leading coefficient; gcd(0, p) = primitive part of p."""
    a, b = p.primitive(), q.primitive()
    if not a:
        return b
    if not b:
        return a
    if a.degree < b.degree:
        a, b = b, a
    while b:
        if b.degree == 0:
            return ONE
        a, b = b, a.prem(b).primitive()
    return a.primitive()


def squarefree_part(p):
    if not p:
        raise ZeroPolynomialError("square-free part of the zero polynomial")
    if p.degree <= 0:
        return ONE
    g = gcd_uni(p, p.derivative())
    return p.exquo(g).primitive()


# -- arithmetic on v-lists: polynomials in v with UniPoly coefficients ------


def _vtrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _vdeg(p):
    return len(p) - 1


def _vlc(p):
    return p[-1] if p else ZERO


def _vmul_uni(p, u):
    if not u:
        return []
    return _vtrim(c * u for c in p)


def _vexquo_uni(p, u):
    return _vtrim(c.exquo(u) for c in p)


def _vsub(p, q):
    n = max(len(p), len(q))
    return _vtrim(
        (p[i] if i < len(p) else ZERO) - (q[i] if i < len(q) else ZERO) for i in range(n)
    )


def _vshift(p, k):
    return [ZERO] * k + list(p) if p else []


def _vprem(f, g):
    """Pseudo-remainder in Z[t][v]."""
    dg = _vdeg(g)
    if dg < 0:
        raise ZeroDivisionError("polynomial division by zero")
    r, dr = f, _vdeg(f)
    if dr < dg:
        return f
    n = dr - dg + 1
    lc_g = _vlc(g)
    while True:
        lc_r = _vlc(r)
        j, n = dr - dg, n - 1
        r = _vsub(_vmul_uni(r, lc_g), _vshift(_vmul_uni(g, lc_r), j))
        dr = _vdeg(r)
        if dr < dg:
            break
    return _vmul_uni(r, lc_g**n)


def _vmul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return _vtrim(out)


def _vexquo(f, g):
    """Exact quotient in Z[t][v]; raises ArithmeticError when g does not divide f."""
    dg = _vdeg(g)
    if dg < 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = _vtrim(f)
    if _vdeg(r) < dg:
        if r:
            raise ArithmeticError("inexact bivariate division")
        return []
    q = [ZERO] * (_vdeg(r) - dg + 1)
    lc_g = _vlc(g)
    while r and _vdeg(r) >= dg:
        j = _vdeg(r) - dg
        t = _vlc(r).exquo(lc_g)
        q[j] = t
        r = _vsub(r, _vshift(_vmul_uni(g, t), j))
    if r:
        raise ArithmeticError("inexact bivariate division")
    return _vtrim(q)


def _vcontent(p):
    """Content in Z[t]: primitive gcd of the coefficients times their integer gcd."""
    if not p:
        return ZERO
    u = reduce(gcd_uni, p, ZERO)
    ic = reduce(math.gcd, (c for v in p for c in v.exquo(u).coeffs), 0)
    return u * ic


def _vprimitive(p):
    if not p:
        return []
    q = _vexquo_uni(p, _vcontent(p))
    if _vlc(q).lc < 0:
        q = [-c for c in q]
    return q


def _vgcd(f, g):
    """gcd in Z[t][v] by the primitive remainder sequence, normalized positive."""
    if not f or not g:
        h = g if not f else f
        if not h:
            return []
        return _vmul_uni(_vprimitive(h), _vcontent(h).primitive())
    content = gcd_uni(_vcontent(f), _vcontent(g))
    a, b = _vprimitive(f), _vprimitive(g)
    if _vdeg(a) < _vdeg(b):
        a, b = b, a
    while b:
        if _vdeg(b) == 0:
            a = [ONE]
            break
        a, b = b, _vprimitive(_vprem(a, b))
    return _vmul_uni(_vprimitive(a), content)


def bipoly_gcd(F, G):
    """Greatest common divisor in Z[x, y], up to the integer content."""
    return BiPoly.from_coeffs_in("y", _vgcd(F.coeffs_in("y"), G.coeffs_in("y")))


def bipoly_exquo(F, G):
    return BiPoly.from_coeffs_in("y", _vexquo(F.coeffs_in("y"), G.coeffs_in("y")))


def bipoly_squarefree_part(F):
    """Primitive square-free part: F / gcd(F, dF/dx, dF/dy)."""
    if not F:
        raise ZeroPolynomialError("square-free part of the zero polynomial")
    F = F.primitive()
    g = bipoly_gcd(bipoly_gcd(F, F.diff("x")), F.diff("y"))
    if g.total_degree <= 0:
        return F
    return bipoly_exquo(F, g).primitive()


# -- subresultants ------------------------------------------------------------


def _inner_subresultants(f, g):
    """
    Subresultant PRS of v-lists f, g with deg f >= deg g >= 0.

    Returns (R, S): R is the remainder sequence starting with f, g; S[i] for
    i >= 1 is the principal subresultant coefficient of index deg R[i].
    """
    n, m = _vdeg(f), _vdeg(g)
    if not g:
        return [f], [ONE]
    R = [f, g]
    d = n - m
    b = (-1) ** (d + 1)
    h = _vmul_uni(_vprem(f, g), UniPoly([b]))
    lc = _vlc(g)
    c = lc**d
    S = [ONE, c]
    c = -c
    while h:
        k = _vdeg(h)
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c**d
        h = _vexquo_uni(_vprem(f, g), b)
        lc = _vlc(g)
        if d > 1:
            q = c ** (d - 1)
            c = ((-lc) ** d).exquo(q)
        else:
            c = -lc
        S.append(-c)
    return R, S


def resultant(F, G, var):
    """
    Resultant of F and G as polynomials in `var`, a UniPoly in the other
    variable. Equals the Sylvester-matrix determinant with the formal degrees
    deg_var F and deg_var G.
    """
    f, g = F.coeffs_in(var), G.coeffs_in(var)
    m, n = _vdeg(f), _vdeg(g)
    if m < 1 and n < 1:
        raise BadVariableError(f"both polynomials are constant in {var}")
    if not f or not g:
        return ZERO
    sign = 1
    if m < n:
        f, g, m, n = g, f, n, m
        if (m * n) % 2:
            sign = -1
    R, S = _inner_subresultants(f, g)
    if _vdeg(R[-1]) > 0:
        return ZERO
    return S[-1] * sign


def subresultant_coeffs(F, G, var):
    """
    Principal subresultant coefficients sres_0, ..., sres_d (d = deg_var G)
    as polynomials in the other variable. sres_0 is the resultant; indices
    skipped by a defective remainder sequence are zero.
    """
    f, g = F.coeffs_in(var), G.coeffs_in(var)
    m, d = _vdeg(f), _vdeg(g)
    if m < 1:
        raise BadVariableError(f"deg_{var} F must be at least 1")
    if d > m:
        raise ValueError(f"deg_{var} F must be at least deg_{var} G")
    if d < 0:
        return [ZERO]
    R, S = _inner_subresultants(f, g)
    sres = [ZERO] * (d + 1)
    for poly, coeff in zip(R[1:], S[1:]):
        sres[_vdeg(poly)] = coeff
    return sres
