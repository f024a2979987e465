"""Lie-theoretic data: Cartan matrices, the symmetric bilinear form, positive
roots from a reduced word, rho, the lattices involved in the periodicity
group, coset representatives, and the critical-set / typicality predicates.

Weights are stored in the simple-root half-basis: a weight with coordinates
(c_1, ..., c_n) is sum_i c_i * alpha_i / 2.  With this choice the weight
lattice is the integer vectors and the root lattice the even ones (for sl2),
and every pairing of integral weights is a half-integer.

Root and lattice computations work for all finite types; only the rank-1
algebra is instantiated downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .scalars import Cx, numeric_tolerance


class NotReducedWord(ValueError):
    pass


def _cartan_matrix(lie_type, rank):
    t = lie_type.upper()
    n = rank

    def chain(n):
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
            if i + 1 < n:
                a[i][i + 1] = -1
                a[i + 1][i] = -1
        return a

    if t == "A":
        return chain(n), [1] * n
    if t == "B":
        if n < 2:
            raise ValueError("B requires rank >= 2")
        a = chain(n)
        a[n - 1][n - 2] = -2  # short root reflects long neighbour twice
        d = [2] * n
        d[n - 1] = 1
        return a, d
    if t == "C":
        if n < 2:
            raise ValueError("C requires rank >= 2")
        a = chain(n)
        a[n - 2][n - 1] = -2
        d = [1] * n
        d[n - 1] = 2
        return a, d
    if t == "D":
        if n < 3:
            raise ValueError("D requires rank >= 3")
        a = chain(n - 1)
        for row in a:
            row.append(0)
        a.append([0] * n)
        a[n - 1][n - 1] = 2
        a[n - 3][n - 1] = -1
        a[n - 1][n - 3] = -1
        return a, [1] * n
    if t == "E":
        if n not in (6, 7, 8):
            raise ValueError("E requires rank 6, 7 or 8")
        a = chain(n - 1)
        for row in a:
            row.append(0)
        a.append([0] * n)
        a[n - 1][n - 1] = 2
        a[2][n - 1] = -1
        a[n - 1][2] = -1
        return a, [1] * n
    if t == "F":
        if n != 4:
            raise ValueError("F requires rank 4")
        a = chain(4)
        a[1][2] = -2
        return a, [1, 1, 2, 2]
    if t == "G":
        if n != 2:
            raise ValueError("G requires rank 2")
        return [[2, -3], [-1, 2]], [1, 3]
    raise ValueError(f"unknown type {lie_type!r}")


class CartanDatum:
    """Cartan matrix, root lengths and the working root of unity order r."""

    def __init__(self, lie_type, rank, r):
        self.lie_type = lie_type.upper()
        self.rank = rank
        if r < 3 or r % 2 == 0:
            raise ValueError("r must be odd and >= 3")
        if self.lie_type == "G" and r % 3 == 0:
            raise ValueError("r must not be a multiple of 3 for type G2")
        self.r = r
        self.A, self.d = _cartan_matrix(lie_type, rank)
        for i in range(rank):
            for j in range(rank):
                if self.d[i] * self.A[i][j] != self.d[j] * self.A[j][i]:
                    raise AssertionError("d_i a_ij = d_j a_ji violated")
        self._lattice = None

    def pairing_form(self, i, j):
        """<alpha_i, alpha_j> = d_i a_ij."""
        return Fraction(self.d[i] * self.A[i][j])

    def weight(self, *coords):
        return WeightVector(self, tuple(coords))

    def simple_root(self, i):
        c = [0] * self.rank
        c[i] = 2
        return WeightVector(self, tuple(Fraction(x) for x in c))

    def det_cartan(self):
        a = [[Fraction(x) for x in row] for row in self.A]
        n = self.rank
        det = Fraction(1)
        for col in range(n):
            piv = next((k for k in range(col, n) if a[k][col]), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det *= a[col][col]
            for k in range(col + 1, n):
                f = a[k][col] / a[col][col]
                if f:
                    a[k] = [x - f * y for x, y in zip(a[k], a[col])]
        return det

    def to_json(self):
        return {"type": self.lie_type, "rank": self.rank, "r": self.r}

    @classmethod
    def from_json(cls, data):
        return cls(data["type"], data["rank"], data["r"])

    def __repr__(self):
        return f"CartanDatum({self.lie_type}{self.rank}, r={self.r})"


def _is_exact(x):
    return isinstance(x, (int, Fraction))


class WeightVector:
    """Weight in the simple-root half-basis; coordinates exact or complex."""

    __slots__ = ("datum", "coords")

    def __init__(self, datum, coords):
        self.datum = datum
        cs = []
        for c in coords:
            cs.append(Fraction(c) if isinstance(c, int) else c)
        self.coords = tuple(cs)
        if len(self.coords) != datum.rank:
            raise ValueError("coordinate length does not match rank")

    @property
    def is_exact(self):
        return all(_is_exact(c) for c in self.coords)

    @property
    def is_integral(self):
        return self.is_exact and all(Fraction(c).denominator == 1 for c in self.coords)

    @property
    def in_root_lattice(self):
        return self.is_integral and all(Fraction(c).numerator % 2 == 0 for c in self.coords)

    def __add__(self, other):
        assert other.datum is self.datum
        return WeightVector(self.datum,
                            tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        assert other.datum is self.datum
        return WeightVector(self.datum,
                            tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return WeightVector(self.datum, tuple(-a for a in self.coords))

    def scale(self, k):
        return WeightVector(self.datum, tuple(k * a for a in self.coords))

    def __eq__(self, other):
        return (isinstance(other, WeightVector) and other.datum is self.datum
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Weight{self.coords}"

    def to_json(self):
        return [str(c) if _is_exact(c) else c.to_json() for c in self.coords]


def pairing(mu, nu):
    """Symmetric bilinear form; exact when both arguments are rational."""
    assert mu.datum is nu.datum
    datum = mu.datum
    total = None
    for i, a in enumerate(mu.coords):
        for j, b in enumerate(nu.coords):
            form = datum.pairing_form(i, j)
            if form == 0:
                continue
            term = a * b * form / 4
            total = term if total is None else total + term
    if total is None:
        return Fraction(0)
    return total


def _reflect(datum, i, root_coords):
    # s_i(alpha_j) = alpha_j - a_ij * alpha_i, applied to integer root coords
    out = list(root_coords)
    out[i] -= sum(datum.A[i][j] * root_coords[j] for j in range(datum.rank))
    return tuple(out)


def positive_roots(datum, reduced_word):
    """Ordered positive roots beta_k from a reduced word of the longest
    Weyl element, as WeightVectors.  Raises NotReducedWord on repeats or
    negative roots."""
    word = [i - 1 if i >= 1 else i for i in reduced_word]  # accept 1-based
    for i in word:
        if not 0 <= i < datum.rank:
            raise ValueError("word letter out of range")
    betas = []
    seen = set()
    for k, ik in enumerate(word):
        coords = [0] * datum.rank
        coords[ik] = 1
        for pos in range(k - 1, -1, -1):
            coords = list(_reflect(datum, word[pos], coords))
        beta = tuple(coords)
        if any(c < 0 for c in beta) or not any(beta):
            raise NotReducedWord(f"letter {k} produces a non-positive root {beta}")
        if beta in seen:
            raise NotReducedWord(f"letter {k} repeats root {beta}")
        seen.add(beta)
        betas.append(WeightVector(datum, tuple(Fraction(2 * c) for c in beta)))
    return betas


def default_reduced_word(datum):
    """A reduced word for the longest element, found greedily: repeatedly
    reflect a strictly dominant vector until it reaches its negative."""
    n = datum.rank
    rho_like = None
    # start from sum of fundamental weights expressed against simple roots:
    # use omega_i implicitly through pairings, tracking <v, alpha_j> values
    pair = [[datum.pairing_form(i, j) for j in range(n)] for i in range(n)]
    # v = rho has <rho, alpha_j> = d_j for all j
    vals = [Fraction(datum.d[j]) for j in range(n)]
    word = []
    guard = 4 * n * n * 30
    while any(v > 0 for v in vals):
        i = next(j for j in range(n) if vals[j] > 0)
        # s_i: <s_i v, alpha_j> = <v, alpha_j> - a_ij <v, alpha_i> * (d_i/d_i)
        vi = vals[i]
        coeff = 2 * vi / pair[i][i]
        vals = [vals[j] - coeff * pair[i][j] for j in range(n)]
        word.append(i + 1)
        guard -= 1
        if guard < 0:
            raise RuntimeError("reduced word search did not terminate")
    return tuple(word)


@dataclass
class LatticeData:
    rho: WeightVector
    Z_generators: list
    Hr_reps: list
    Hr_order: int
    N: int
    positive_roots: list


def lattice_data(datum, reduced_word=None):
    """rho, the periodicity lattice, coset representatives of the root lattice
    modulo it, and the number of positive roots."""
    if datum._lattice is not None and reduced_word is None:
        return datum._lattice
    word = reduced_word or default_reduced_word(datum)
    betas = positive_roots(datum, word)
    n, r = datum.rank, datum.r
    rho = WeightVector(datum, tuple(
        sum(b.coords[i] for b in betas) / 2 for i in range(n)))
    # Z = {c in Z^n root coords : A c = 0 mod r}; enumerate the kernel mod r
    if n > 3:
        raise NotImplementedError("lattice enumeration implemented for rank <= 3")
    kernel = []
    for idx in range(r ** n):
        c = []
        t = idx
        for _ in range(n):
            c.append(t % r)
            t //= r
        if all(sum(datum.A[j][i] * c[i] for i in range(n)) % r == 0 for j in range(n)):
            kernel.append(tuple(c))
    gens = []
    for c in kernel:
        if any(c):
            gens.append(WeightVector(datum, tuple(Fraction(2 * x) for x in c)))
    for i in range(n):
        e = [0] * n
        e[i] = r
        gens.append(WeightVector(datum, tuple(Fraction(2 * x) for x in e)))
    # coset representatives of (Z/r)^n modulo the kernel subgroup
    kernel_set = set(kernel)
    seen = set()
    reps = []
    for idx in range(r ** n):
        c = []
        t = idx
        for _ in range(n):
            c.append(t % r)
            t //= r
        c = tuple(c)
        if c in seen:
            continue
        reps.append(c)
        for k in kernel_set:
            seen.add(tuple((x + y) % r for x, y in zip(c, k)))
    reps_w = [WeightVector(datum, tuple(Fraction(2 * x) for x in c)) for c in reps]
    assert reps_w[0].coords == tuple(Fraction(0) for _ in range(n))
    data = LatticeData(rho=rho, Z_generators=gens, Hr_reps=reps_w,
                       Hr_order=len(reps_w), N=len(betas), positive_roots=betas)
    if reduced_word is None:
        datum._lattice = data
    return data


def _near_integer(x, tol):
    if isinstance(x, (int, Fraction)):
        return Fraction(x).denominator == 1
    if isinstance(x, Cx):
        x = x.v
    with mp.workprec(96):
        return abs(mpmath.im(x)) < tol and abs(mpmath.re(x) - mpmath.nint(mpmath.re(x))) < tol


def _in_set_rZ(x, rmod, tol):
    if isinstance(x, (int, Fraction)):
        q = Fraction(x) / rmod
        return q.denominator == 1
    if isinstance(x, Cx):
        x = x.v
    with mp.workprec(96):
        y = x / rmod
        return abs(mpmath.im(y)) < tol and abs(mpmath.re(y) - mpmath.nint(mpmath.re(y))) < tol


def is_critical(xi, precision_bits=128):
    """Whether the class of xi meets the critical set: some positive root
    pairs half-integrally with it."""
    data = lattice_data(xi.datum)
    tol = numeric_tolerance(precision_bits)
    for beta in data.positive_roots:
        if _near_integer(2 * _pair_num(beta, xi), tol):
            return True
    return False


def _pair_num(mu, nu):
    p = pairing(mu, nu)
    return p


def is_typical(mu, precision_bits=128):
    """Typicality of the highest-weight module at mu: no quantum denominator
    degenerates, i.e. 2<beta, mu+rho> + m<beta,beta> avoids rZ for every
    positive root and 1 <= m <= r-1."""
    datum = mu.datum
    data = lattice_data(datum)
    tol = numeric_tolerance(precision_bits)
    shifted = mu + data.rho
    for beta in data.positive_roots:
        base = 2 * pairing(beta, shifted)
        bb = pairing(beta, beta)
        for m in range(1, datum.r):
            if _in_set_rZ(base + m * bb, datum.r, tol):
                return False
    return True
