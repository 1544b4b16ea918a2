"""The unit group (Z/lZ)* with a canonical discrete-log ordering.

Every coefficient vector in the package is indexed by discrete logarithm
with respect to the least primitive root: position ``k`` holds the
coefficient of ``s(g^k)``.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from sympy import factorint, isprime

from .errors import CompositeInput, NotADivisor, NotAUnit


def least_primitive_root(l):
    if l == 2:
        return 1
    primes = list(factorint(l - 1))
    for g in range(2, l):
        if all(pow(g, (l - 1) // q, l) != 1 for q in primes):
            return g
    raise CompositeInput(f"{l} has no primitive root")


@dataclass(frozen=True)
class PrimeContext:
    l: int
    g: int
    elements: tuple = field(repr=False)   # elements[k] = g^k mod l
    dlog: dict = field(repr=False, compare=False, hash=False)

    @property
    def order(self):
        return len(self.elements)

    def log(self, u):
        u %= self.l
        try:
            return self.dlog[u]
        except KeyError:
            raise NotAUnit(f"{u} is not a unit modulo {self.l}") from None

    def inverse(self, u):
        return self.elements[-self.log(u) % self.order]

    def minus_one(self):
        """The unit l-1 (complex conjugation); 1 when l = 2."""
        return (self.l - 1) % self.l or 1


@lru_cache(maxsize=None)
def make_context(l):
    l = int(l)
    if l < 2 or not isprime(l):
        raise CompositeInput(f"{l} is not prime")
    g = least_primitive_root(l)
    if l == 2:
        elements = (1,)
    else:
        elements = tuple(pow(g, k, l) for k in range(l - 1))
    dlog = {u: k for k, u in enumerate(elements)}
    return PrimeContext(l, g, elements, dlog)


@dataclass(frozen=True)
class SubgroupSpec:
    """The unique subgroup of order ``d``; ``elements[k] = rho^k``."""

    parent: PrimeContext
    d: int
    elements: tuple = field(repr=False)

    @property
    def order(self):
        return self.d

    @property
    def rho(self):
        return self.elements[1] if self.d > 1 else 1

    @property
    def index(self):
        return self.parent.order // self.d

    def log(self, u):
        """Exponent k with rho^k = u, for u in the subgroup."""
        k = self.parent.log(u)
        step = self.index
        if k % step:
            raise NotAUnit(f"{u} is not in the subgroup of order {self.d}")
        return k // step

    def __contains__(self, u):
        k = self.parent.dlog.get(u % self.parent.l)
        return k is not None and k % self.index == 0

    def is_full(self):
        return self.d == self.parent.order


@lru_cache(maxsize=None)
def subgroup_of_order(ctx, d):
    d = int(d)
    if d < 1 or ctx.order % d:
        raise NotADivisor(f"{d} does not divide {ctx.order}")
    step = ctx.order // d
    return SubgroupSpec(ctx, d, tuple(ctx.elements[k * step] for k in range(d)))


def subgroup_orders(ctx):
    n = ctx.order
    return [d for d in range(1, n + 1) if n % d == 0]


def quadratic_character(ctx, u):
    if ctx.l == 2:
        raise NotAUnit("no quadratic character modulo 2")
    if gcd(u, ctx.l) != 1:
        raise NotAUnit(f"{u} is not a unit modulo {ctx.l}")
    return 1 if ctx.log(u) % 2 == 0 else -1


def primes_between(lo, hi):
    from sympy import primerange
    return list(primerange(lo, hi + 1))
