"""Arithmetic in the radical extension L = K(alpha) with alpha^p = a.

Elements are length-p coordinate vectors over K in the power basis of alpha;
multiplication reduces via alpha^p = a.  Integrality of an element is a
predicate (characteristic polynomial with integral coefficients), not a
representation constraint, so the ring arithmetic stays denominator-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

import sympy

from .basefield import (
    DEFAULT_MAX_NORM,
    BaseField,
    KElem,
    KIdeal,
    PrimeIdeal,
    factor_ideal,
    is_principal,
    split_prime,
    units,
)
from .errors import DegenerateExtensionError, DomainError
from .lattices import IntegerLattice


def _is_pth_power(field: BaseField, a: KElem, p: int, fac) -> bool:
    """True iff a = b^p for some b in K (equivalently in O_K)."""
    if any(v % p for _, v in fac):
        return False
    root_ideal = KIdeal.unit_ideal(field)
    for P, v in fac:
        root_ideal = root_ideal * P.ideal() ** (v // p)
    res = is_principal(field, root_ideal)
    if not res.principal:
        return False
    u = a / res.generator ** p
    return any((w ** p) == u for w in units(field))


@dataclass(frozen=True)
class RadicandContext:
    """The extension L = K(a^(1/p)): base field, odd prime p, radicand a.

    Requires p unramified in K (p does not divide disc K) and a a nonzero
    algebraic integer that is not a p-th power, so [L:K] = p.
    """

    field: BaseField
    p: int
    a: KElem
    max_norm: int = DEFAULT_MAX_NORM
    _fac: tuple = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.p == 2 or not sympy.isprime(self.p):
            raise DomainError(f"p must be an odd prime, got {self.p}")
        if self.field.discriminant % self.p == 0:
            raise DomainError(f"p = {self.p} ramifies in {self.field.label()}")
        if self.a.field != self.field:
            raise DomainError("radicand from a different field")
        if self.a.is_zero():
            raise DomainError("radicand must be nonzero")
        if not self.a.is_integral():
            raise DomainError(f"radicand {self.a} is not an algebraic integer")
        fac = factor_ideal(self.field, self.a, self.max_norm)
        if _is_pth_power(self.field, self.a, self.p, fac):
            raise DegenerateExtensionError(
                f"{self.a} is a {self.p}-th power in {self.field.label()}")
        object.__setattr__(self, "_fac", tuple(fac))

    @property
    def radicand_factorization(self) -> tuple:
        return self._fac

    @cached_property
    def is_normalized(self) -> bool:
        """a = 1 mod p^2 O_K."""
        m = self.p * self.p
        diff = self.a - self.field.one()
        return diff.x % m == 0 and diff.y % m == 0

    def primes_above_p(self) -> tuple[PrimeIdeal, ...]:
        return split_prime(self.field, self.p)

    def support_primes(self) -> list[PrimeIdeal]:
        """Primes dividing a*O_K or p*O_K, canonically sorted."""
        prs = {P for P, _ in self._fac} | set(self.primes_above_p())
        return sorted(prs, key=lambda P: P.sort_key())

    def v_a(self, P: PrimeIdeal) -> int:
        for Q, v in self._fac:
            if Q == P:
                return v
        return 0

    def zero(self) -> "LElem":
        return LElem(self, (self.field.zero(),) * self.p)

    def one(self) -> "LElem":
        return self.from_k(self.field.one())

    def from_k(self, c: KElem) -> "LElem":
        coords = [c] + [self.field.zero()] * (self.p - 1)
        return LElem(self, tuple(coords))

    def alpha_power(self, j: int) -> "LElem":
        """alpha^j for any j >= 0, reduced via alpha^p = a."""
        q, r = divmod(j, self.p)
        coords = [self.field.zero()] * self.p
        coords[r] = self.a ** q
        return LElem(self, tuple(coords))

    def from_coords(self, coords) -> "LElem":
        vec = []
        for c in coords:
            if isinstance(c, KElem):
                vec.append(c)
            else:
                vec.append(self.field.elem(Fraction(c)))
        if len(vec) != self.p:
            raise DomainError(f"expected {self.p} coordinates, got {len(vec)}")
        return LElem(self, tuple(vec))


@dataclass(frozen=True)
class LElem:
    """sum_j coords[j] * alpha^j."""

    ctx: RadicandContext
    coords: tuple[KElem, ...]

    def _check(self, other: "LElem"):
        if self.ctx != other.ctx:
            raise DomainError("elements of different extensions")

    def __add__(self, other: "LElem") -> "LElem":
        self._check(other)
        return LElem(self.ctx, tuple(u + v for u, v in zip(self.coords, other.coords)))

    def __sub__(self, other: "LElem") -> "LElem":
        self._check(other)
        return LElem(self.ctx, tuple(u - v for u, v in zip(self.coords, other.coords)))

    def __neg__(self) -> "LElem":
        return LElem(self.ctx, tuple(-u for u in self.coords))

    def __mul__(self, other: "LElem") -> "LElem":
        self._check(other)
        p, a = self.ctx.p, self.ctx.a
        out = [self.ctx.field.zero()] * p
        for i, u in enumerate(self.coords):
            if u.is_zero():
                continue
            for j, v in enumerate(other.coords):
                if v.is_zero():
                    continue
                k = i + j
                term = u * v
                if k >= p:
                    k -= p
                    term = term * a
                out[k] = out[k] + term
        return LElem(self.ctx, tuple(out))

    def scale(self, c: KElem) -> "LElem":
        return LElem(self.ctx, tuple(u * c for u in self.coords))

    def scale_rat(self, q) -> "LElem":
        q = Fraction(q)
        return LElem(self.ctx, tuple(u.scale(q) for u in self.coords))

    def __pow__(self, n: int) -> "LElem":
        if n < 0:
            raise DomainError("negative powers of L-elements are not supported")
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        den = 1
        for c in self.coords:
            d = c.denominator()
            den = den * d // math.gcd(den, d)
        parts: list[str] = []
        for j, c in enumerate(self.coords):
            cs = c.scale(den)
            if cs.is_zero():
                continue
            sym = "" if j == 0 else ("a" if j == 1 else f"a^{j}")
            if not sym:
                term = str(cs)
            elif cs.is_one():
                term = sym
            elif cs == -self.ctx.field.one():
                term = f"-{sym}"
            elif cs.y != 0:
                term = f"({cs})*{sym}"
            else:
                term = f"{cs}*{sym}"
            if parts and not term.startswith("-"):
                parts.append(f"+ {term}")
            elif parts:
                parts.append(f"- {term[1:]}")
            else:
                parts.append(term)
        body = " ".join(parts)
        return body if den == 1 else f"({body})/{den}"


def l_mul(ctx: RadicandContext, u: LElem, v: LElem) -> LElem:
    if u.ctx != ctx or v.ctx != ctx:
        raise DomainError("context mismatch")
    return u * v


def multiplication_matrix(ctx: RadicandContext, u: LElem) -> list[list[KElem]]:
    """Row j holds the power-basis coordinates of u * alpha^j."""
    rows = []
    for j in range(ctx.p):
        rows.append(list((u * ctx.alpha_power(j)).coords))
    return rows


def min_poly(ctx: RadicandContext, u: LElem) -> list[KElem]:
    """Characteristic polynomial of multiplication by u, coefficients
    [c_0, ..., c_p] with c_p = 1.

    Faddeev-LeVerrier over K; valid in characteristic zero.  Since p is prime
    this is the minimal polynomial unless u lies in K, where it degenerates to
    (x - u)^p.  u is integral over O_K iff every coefficient lies in O_K.
    """
    if u.ctx != ctx:
        raise DomainError("context mismatch")
    p = ctx.p
    zero, one = ctx.field.zero(), ctx.field.one()
    M = multiplication_matrix(ctx, u)

    def mat_mul(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(p)), zero)
                 for j in range(p)] for i in range(p)]

    def trace(A):
        return sum((A[i][i] for i in range(p)), zero)

    coeffs = [one]          # leading coefficient
    N = [[one if i == j else zero for j in range(p)] for i in range(p)]
    c = one
    for k in range(1, p + 1):
        MN = mat_mul(M, N)
        c = trace(MN).scale(Fraction(-1, k))
        coeffs.append(c)
        N = [[MN[i][j] + (c if i == j else zero) for j in range(p)]
             for i in range(p)]
    coeffs.reverse()        # [c_0, ..., c_p]
    return coeffs


def is_integral(ctx: RadicandContext, u: LElem) -> bool:
    return all(c.is_integral() for c in min_poly(ctx, u))


# ---------------------------------------------------------------------------
# Flattening to Z-lattices and local-to-global gluing

def flatten_elems(ctx: RadicandContext, elems: list[LElem]) -> list[list[Fraction]]:
    """Z-generators of the O_K-span of elems, as rows over Q.

    Over Q each element is its own row (length p); over a quadratic field each
    element contributes rows for g and w*g (length 2p, coordinates interleaved
    as x_0, y_0, x_1, y_1, ...).
    """
    rows = []
    if ctx.field.is_rational:
        for g in elems:
            rows.append([c.x for c in g.coords])
        return rows
    w = ctx.field.elem(0, 1)
    for g in elems:
        for h in (g, g.scale(w)):
            row = []
            for c in h.coords:
                row.extend([c.x, c.y])
            rows.append(row)
    return rows


def lattice_dim(ctx: RadicandContext) -> int:
    return ctx.p if ctx.field.is_rational else 2 * ctx.p


def span_lattice(ctx: RadicandContext, elems: list[LElem]) -> IntegerLattice:
    return IntegerLattice.from_rational_rows(flatten_elems(ctx, elems),
                                             lattice_dim(ctx))


def power_basis_lattice(ctx: RadicandContext) -> IntegerLattice:
    return span_lattice(ctx, [ctx.alpha_power(j) for j in range(ctx.p)])


def hnf_glue(ctx: RadicandContext,
             conditions: list[tuple[PrimeIdeal, list[LElem]]]) -> IntegerLattice:
    """Assemble the lattice whose localization at each given prime is the span
    of that prime's basis, and the power-basis span elsewhere.

    Each local basis must carry denominators only at the residue
    characteristic of its prime and contain the power basis locally there;
    under those conditions the lattice sum has the prescribed localizations
    (each summand localizes into the power span away from its own prime).
    """
    glued = power_basis_lattice(ctx)
    reference = glued
    for P, elems in conditions:
        local = span_lattice(ctx, elems)
        for row in local.rational_rows():
            for v in row:
                den = v.denominator
                while den % P.q == 0:
                    den //= P.q
                if den != 1:
                    raise DomainError(
                        f"local basis at {P} has denominator away from {P.q}")
        for row in reference.rational_rows():
            if not local.contains_locally(row, P.q):
                raise DomainError(
                    f"local basis at {P} does not contain the power basis at {P.q}")
        glued = glued.add(local)
    return glued
