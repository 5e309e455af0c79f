"""Dedekind's criterion for Z[alpha], alpha a root of f = x^p - a, at a
rational prime q.

Factor f mod q as prod g_i^(e_i); with gstar = prod g_i (the radical) and
hstar = fbar / gstar, lift both monically to Z[x] and set T = (g*h - f)/q.
Z[alpha] is maximal at q iff gcd(T mod q, gstar, hstar) = 1 over F_q.

This module is the designated independent oracle for the integral-basis
machinery, so it implements its own dense polynomial arithmetic over F_q
(coefficient lists, ascending degree) and shares no code with the local-basis
construction.  The radical is computed by the characteristic-q squarefree
decomposition, which never needs a full factorization of f.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .errors import DomainError

Poly = tuple[int, ...]          # coefficients mod q, ascending, trimmed


def _trim(c: list[int]) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(u: Poly, v: Poly, q: int) -> Poly:
    if not u or not v:
        return ()
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] = (out[i + j] + a * b) % q
    return _trim(out)


def _pdivmod(u: Poly, v: Poly, q: int) -> tuple[Poly, Poly]:
    if not v:
        raise ZeroDivisionError("division by the zero polynomial")
    inv = pow(v[-1], -1, q)
    rem = list(u)
    quo = [0] * max(0, len(u) - len(v) + 1)
    while len(rem) >= len(v) and any(rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        shift = len(rem) - len(v)
        coef = rem[-1] * inv % q
        quo[shift] = coef
        for i, b in enumerate(v):
            rem[shift + i] = (rem[shift + i] - coef * b) % q
        rem.pop()
    return _trim(quo), _trim(rem)


def _pgcd(u: Poly, v: Poly, q: int) -> Poly:
    while v:
        u, v = v, _pdivmod(u, v, q)[1]
    if not u:
        return ()
    inv = pow(u[-1], -1, q)
    return tuple(c * inv % q for c in u)


def _pderiv(u: Poly, q: int) -> Poly:
    return _trim([i * c % q for i, c in enumerate(u)][1:])


def _qth_root(u: Poly, q: int) -> Poly:
    # u = g(x^q) over F_q; coefficients are their own q-th roots (Fermat)
    return _trim([u[i] for i in range(0, len(u), q)])


def _radical(u: Poly, q: int) -> Poly:
    """Product of the distinct monic irreducible factors of u."""
    if len(u) <= 1:
        return (1,)
    du = _pderiv(u, q)
    if not du:
        return _radical(_qth_root(u, q), q)
    w = _pdivmod(u, _pgcd(u, du, q), q)[0]       # factors with exponent not div by q
    rest = u
    while True:
        g = _pgcd(rest, w, q)
        if len(g) <= 1:
            break
        rest = _pdivmod(rest, g, q)[0]
    # rest = product of factors with exponent divisible by q
    inv = pow(w[-1], -1, q)
    w = tuple(c * inv % q for c in w)
    return _pmul(w, _radical(rest, q), q)


@dataclass(frozen=True)
class MaximalityWitness:
    """Transcript of one Dedekind-criterion run; recheck() recomputes it."""

    q: int
    p: int
    a: int
    fbar: Poly
    gstar: Poly
    hstar: Poly
    tbar: Poly
    gcd: Poly
    maximal: bool

    def recheck(self) -> bool:
        fresh = dedekind_maximality_oracle(self.q, self.p, self.a)
        return fresh == self


def dedekind_maximality_oracle(q: int, p: int, a: int) -> MaximalityWitness:
    """Apply Dedekind's criterion to f = x^p - a at q (base field Q only)."""
    if not sympy.isprime(q):
        raise DomainError(f"{q} is not prime")
    a = int(a)
    f = [-a] + [0] * (p - 1) + [1]
    fbar = _trim([c % q for c in f])
    gstar = _radical(fbar, q)
    hstar = _pdivmod(fbar, gstar, q)[0]

    # monic lifts with coefficients in [0, q)
    g_lift = [c % q for c in gstar]
    h_lift = [c % q for c in hstar]
    gh = [0] * (len(g_lift) + len(h_lift) - 1)
    for i, u in enumerate(g_lift):
        for j, v in enumerate(h_lift):
            gh[i + j] += u * v
    t = [gh[i] - (f[i] if i < len(f) else 0) for i in range(len(gh))]
    assert all(c % q == 0 for c in t), "g*h = f mod q must hold"
    tbar = _trim([(c // q) % q for c in t])

    g1 = _pgcd(tbar, gstar, q)
    g2 = _pgcd(g1, hstar, q)
    return MaximalityWitness(q, p, a, fbar, gstar, hstar, tbar, g2,
                             maximal=len(g2) <= 1)
