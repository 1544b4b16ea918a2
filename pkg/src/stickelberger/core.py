"""The Stickelberger element, its ideal, and the indices derived from it.

Everything is integral: the element theta is stored as the vector l*theta,
whose coefficient at s(a^-1) is a.  The multiple (c - s(c))*theta has
coefficient floor(c*a/l) at s(a^-1).

J is spanned over Z by l*theta and the (c - s(c))*theta for 2 <= c <= l-1:
the ideal generated by the c - s(c) is, as a group, the kernel of
sum x_a s(a) -> sum x_a a (mod l), which has the Z-basis l, c - s(c).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

from .class_numbers import h_quadratic, residue_sums
from .cyclic import PrimeContext, make_context, subgroup_of_order
from .errors import NotCoprime, RankDeficient, WrongResidueClass
from .group_ring import (RingElem, multiply, project_pi_H, quadratic_quotient,
                         quotient_map_r)
from .lattice import (INFINITE, HNFBuilder, IntegerLattice, contains,
                      hnf_from_generators, index_in, intersect, is_sublattice,
                      smallest_positive_on_axis)


def theta(ctx):
    """The integer vector l*theta."""
    if ctx.l == 2:
        return RingElem(ctx, [1])
    return RingElem(ctx, [ctx.inverse(u) for u in ctx.elements])


def fractional_multiple(ctx, c):
    """(c - s(c)) * theta, computed from the floor-function pattern."""
    l = ctx.l
    if c < 1 or gcd(c, l) != 1:
        raise NotCoprime(f"{c} is not a positive integer coprime to {l}")
    if l == 2:
        return RingElem(ctx, [(c - 1) // 2])
    return RingElem(ctx, [c * ctx.inverse(u) // l for u in ctx.elements])


def fractional_multiple_exact(ctx, c):
    """(c - s(c)) * theta by rational convolution; raises if not integral."""
    l = ctx.l
    if c < 1 or gcd(c, l) != 1:
        raise NotCoprime(f"{c} is not a positive integer coprime to {l}")
    lt = theta(ctx)
    factor = RingElem.scalar(ctx, c) - RingElem.sigma(ctx, c % l)
    prod = multiply(factor, lt)
    out = [Fraction(x, l) for x in prod.coeffs]
    if any(q.denominator != 1 for q in out):
        raise ArithmeticError(f"(c - s(c))*theta is not integral for c={c}, l={l}")
    return RingElem(ctx, [int(q) for q in out])


def ideal_generators(ctx):
    """A Z-spanning set of J: l*theta, then (c - s(c))*theta for c = 2..l-1."""
    gens = [theta(ctx)]
    gens += [fractional_multiple(ctx, c) for c in range(2, ctx.l) if gcd(c, ctx.l) == 1]
    return gens


def orbit_generators(ctx):
    """s(a)*(c - s(c))*theta for every a and 2 <= c <= l+1, c != l."""
    l = ctx.l
    base = [fractional_multiple(ctx, c)
            for c in range(2, l + 2) if gcd(c, l) == 1]
    out = []
    n = ctx.order
    for v in base:
        for k in range(n):
            out.append(RingElem(ctx, v.coeffs[-k:] + v.coeffs[:-k] if k else v.coeffs))
    return out


def _lattice_of(elems, n):
    return hnf_from_generators([e.coeffs for e in elems], n)


def ideal_by_intersection(ctx):
    """Z[D]*theta meets Z[D], from the lattice l*Z[D]*theta and l*Z^n."""
    n, l = ctx.order, ctx.l
    lt = theta(ctx).coeffs
    shifts = [lt[-k:] + lt[:-k] if k else lt for k in range(n)]
    big = hnf_from_generators(shifts, n)
    scaled = IntegerLattice(n, tuple(
        tuple(l if i == j else 0 for i in range(n)) for j in range(n)))
    meet = intersect(big, scaled)
    return hnf_from_generators([[x // l for x in row] for row in meet.basis], n)


def minus_ambient_lattice(ctx):
    """(1 - s(-1)) Z[D]: rows e_k - e_{k+half}."""
    n = ctx.order
    half = n // 2
    rows = []
    for k in range(half):
        r = [0] * n
        r[k], r[k + half] = 1, -1
        rows.append(tuple(r))
    return IntegerLattice(n, tuple(rows))


def _minus_ideal_fast(ctx):
    """J meets Z[D]^-.

    (1 + s(-1)) sends every generator of J to a multiple of the norm
    element (l for l*theta, c - 1 for (c - s(c))*theta), so J^- is the
    kernel of that scalar.  Since (2 - s(2))*theta has scalar 1, the kernel
    is spanned by g - scalar(g) * (2 - s(2))*theta.  Those vectors satisfy
    x_{k+half} = -x_k, so the HNF is built on the first half and lifted.
    """
    n, l = ctx.order, ctx.l
    half = n // 2
    g2 = fractional_multiple(ctx, 2).coeffs
    gens = [(theta(ctx).coeffs, l)]
    gens += [(fractional_multiple(ctx, c).coeffs, c - 1) for c in range(3, l)]
    builder = HNFBuilder(half)
    for v, s in gens:
        builder.add([v[k] - s * g2[k] for k in range(half)])
    halfbasis = builder.lattice().basis
    return IntegerLattice(n, tuple(tuple(r) + tuple(-x for x in r) for r in halfbasis))


@dataclass
class StickelbergerData:
    ctx: PrimeContext
    l_theta: RingElem
    _ideal: IntegerLattice = field(default=None, repr=False)
    _minus_ideal: IntegerLattice = field(default=None, repr=False)

    @property
    def l(self):
        return self.ctx.l

    @property
    def ideal(self):
        if self._ideal is None:
            self._ideal = _lattice_of(ideal_generators(self.ctx), self.ctx.order)
        return self._ideal

    @cached_property
    def minus_ambient(self):
        return minus_ambient_lattice(self.ctx)

    @property
    def minus_ideal(self):
        if self._minus_ideal is None:
            self._minus_ideal = _minus_ideal_fast(self.ctx)
        return self._minus_ideal

    def to_json(self):
        return {"l": self.l, "l_theta": list(self.l_theta.coeffs),
                "ideal": self.ideal.to_json(),
                "minus_ideal": self.minus_ideal.to_json()}

    @classmethod
    def from_json(cls, data):
        ctx = make_context(data["l"])
        lt = RingElem(ctx, data["l_theta"])
        if lt != theta(ctx):
            raise ValueError("stored l*theta does not match the prime")
        return cls(ctx, lt, IntegerLattice.from_json(data["ideal"]),
                   IntegerLattice.from_json(data["minus_ideal"]))


def ideal_lattice(ctx, method="generators"):
    """Build J.  ``method`` is "generators" (default), "orbit" or "intersection"."""
    if method == "generators":
        lat = _lattice_of(ideal_generators(ctx), ctx.order)
    elif method == "orbit":
        lat = _lattice_of(orbit_generators(ctx), ctx.order)
    elif method == "intersection":
        lat = ideal_by_intersection(ctx)
    else:
        raise ValueError(f"unknown construction {method!r}")
    return StickelbergerData(ctx, theta(ctx), lat)


def minus_ideal_by_intersection(ctx, ideal):
    return intersect(ideal, minus_ambient_lattice(ctx))


def minus_index(ctx, data=None):
    """[Z[D]^- : J^-], which is h_l^- by Iwasawa's formula."""
    if ctx.l == 2:
        return 1
    if data is None:
        data = StickelbergerData(ctx, theta(ctx))
    idx = index_in(data.minus_ideal, data.minus_ambient)
    if idx == INFINITE:
        raise RankDeficient(f"J^- has rank {data.minus_ideal.rank} for l={ctx.l}")
    return idx


# projections to a subgroup

def projected_ideal(ctx, H, basis=None):
    """pi_H(J) in Z^|H| (coordinates rho^0, ..., rho^(d-1)).

    By default the projections of the spanning set of J are used; pass
    ``basis`` (rows in Z^(l-1)) to project another spanning set instead.
    """
    step = H.index
    if basis is None:
        rows = [g.coeffs[::step] for g in ideal_generators(ctx)]
    else:
        rows = [tuple(r)[::step] for r in basis]
    return hnf_from_generators(rows, H.d)


def norm_ideal_of_half(H):
    """(1 + rho + ... + rho^(d/2 - 1)) Z[H] for even d."""
    d = H.d
    f = [1] * (d // 2) + [0] * (d - d // 2)
    rows = [f[-k:] + f[:-k] if k else f for k in range(d)]
    return hnf_from_generators(rows, d)


def is_ideal(lattice, n, shift=1):
    """True when multiplication by the cyclic generator preserves the lattice."""
    for row in lattice.basis:
        rotated = tuple(row[-shift:]) + tuple(row[:-shift]) if n > 1 else tuple(row)
        if not contains(lattice, rotated):
            return False
    return True


@dataclass(frozen=True)
class ProjectionReport:
    l: int
    d: int
    parity: str
    index: int | None              # [Z[H] : pi_H(J)], odd d
    n_H: int | None                # even d
    smallest_integer: int | None   # least positive integer in pi_H(J), odd d
    in_half_norm_ideal: bool | None
    closed_under_rho: bool

    @property
    def value(self):
        return self.index if self.parity == "odd" else self.n_H

    def to_json(self):
        return {"l": self.l, "subgroup_order": self.d, "parity": self.parity,
                "index": self.index, "n_H": self.n_H,
                "smallest_integer_annihilator": self.smallest_integer,
                "in_half_norm_ideal": self.in_half_norm_ideal,
                "closed_under_rho": self.closed_under_rho}


def projected_index(ctx, H, lattice=None):
    if lattice is None:
        lattice = projected_ideal(ctx, H)
    d = H.d
    closed = is_ideal(lattice, d)
    if d % 2:
        if not lattice.is_full_rank():
            raise RankDeficient(f"pi_H(J) has rank {lattice.rank} < {d}")
        idx = 1
        for row, c in zip(lattice.basis, lattice.pivot_columns):
            idx *= row[c]
        m = smallest_positive_on_axis(lattice, 0)
        return ProjectionReport(ctx.l, d, "odd", idx, None, m, None, closed)
    sup = norm_ideal_of_half(H)
    inside = is_sublattice(lattice, sup)
    n_H = None
    if inside:
        n_H = index_in(lattice, sup)
        if n_H == INFINITE:
            raise RankDeficient(f"pi_H(J) has rank {lattice.rank} < {sup.rank}")
    # for d = 2 the half-norm element is 1 and pi_H(J) is all of Z[H]
    m = smallest_positive_on_axis(lattice, 0)
    if d >= 4 and m is not None:
        raise ArithmeticError(f"pi_H(J) contains the integer {m} for even |H|={d}")
    return ProjectionReport(ctx.l, d, "even", None, n_H, m, inside, closed)


# image in the group ring of the quadratic subfield

@dataclass(frozen=True)
class QuadraticImageReport:
    l: int
    r_ideal: IntegerLattice
    r_theta: tuple          # (A, B): r(theta) = A + B j
    bezout: tuple           # (a, b) with 3a + lb = 1
    r_theta_in_ideal: bool
    h_quadratic: int
    lemma_integer: int      # ((l-1)/2) h(-l)
    lemma_identity: bool    # lemma_integer == B^2 - A^2
    lemma_integer_in_ideal: bool
    smallest_integer: int | None

    def to_json(self):
        return {"l": self.l, "r_ideal": self.r_ideal.to_json(),
                "r_theta": list(self.r_theta), "bezout": list(self.bezout),
                "r_theta_in_ideal": self.r_theta_in_ideal,
                "h_quadratic": self.h_quadratic,
                "lemma_integer": self.lemma_integer,
                "lemma_identity": self.lemma_identity,
                "lemma_integer_in_ideal": self.lemma_integer_in_ideal,
                "smallest_integer": self.smallest_integer}


def quadratic_image(ctx):
    l = ctx.l
    if l % 4 != 3 or l == 3:
        raise WrongResidueClass(f"need a prime l = 3 mod 4 with l > 3, got {l}")
    squares = subgroup_of_order(ctx, ctx.order // 2)
    Q = quadratic_quotient(ctx)
    images = [quotient_map_r(g, squares) for g in ideal_generators(ctx)]
    r_ideal = hnf_from_generators([x.coeffs for x in images], 2)

    R, N = residue_sums(l)
    A, B = R // l, N // l
    r_lt = quotient_map_r(theta(ctx), squares)
    assert r_lt.coeffs == (R, N)

    # r(4 - s(4)) = 3 and r(l + 1 - s(l+1)) = l, so a*3 + b*l = 1 gives an
    # element of J whose image is r(theta)
    from .lattice import xgcd
    _, a, b = xgcd(3, l)
    x = a * fractional_multiple(ctx, 4) + b * fractional_multiple(ctx, l + 1)
    rx = quotient_map_r(x, squares)
    witness = rx == RingElem(Q, [A, B])
    member = witness and contains(r_ideal, rx.coeffs)

    h = h_quadratic(l)
    n = (l - 1) // 2 * h
    return QuadraticImageReport(
        l, r_ideal, (A, B), (a, b), member, h, n, n == B * B - A * A,
        contains(r_ideal, (n, 0)), smallest_positive_on_axis(r_ideal, 0))
