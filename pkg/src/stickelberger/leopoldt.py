"""Annihilation of class-group modules by the Stickelberger ideal.

A module is a finite abelian group Z/d_1 x ... x Z/d_k together with an
integer matrix giving the action of the group's canonical generator
(g for the full unit group, rho for a subgroup) on column vectors.  Row i
of every matrix is kept reduced modulo d_i.
"""
from dataclasses import dataclass
from functools import cached_property
from math import prod

from .core import (StickelbergerData, ideal_generators, projected_ideal,
                   projected_index, theta)
from .cyclic import PrimeContext, SubgroupSpec
from .errors import ActionOrderMismatch, BadInvariantFactors, GroupMismatch
from .lattice import IntegerLattice, hnf_from_generators


def _reduce_rows(M, factors):
    return [[x % d for x in row] for row, d in zip(M, factors)]


def _matmul(A, B, factors):
    k = len(factors)
    out = []
    for i in range(k):
        Ai = A[i]
        d = factors[i]
        out.append([sum(Ai[m] * B[m][j] for m in range(k)) % d for j in range(k)])
    return out


def _identity(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


class ActionModule:
    """Z/d_1 x ... x Z/d_k with a generator action; the d_i need not form a chain."""

    def __init__(self, factors, action, group_order):
        self.factors = tuple(int(d) for d in factors)
        self.group_order = int(group_order)
        k = len(self.factors)
        if len(action) != k or any(len(r) != k for r in action):
            raise ActionOrderMismatch(f"action must be a {k}x{k} matrix")
        for j, dj in enumerate(self.factors):
            for i, di in enumerate(self.factors):
                if (action[i][j] * dj) % di:
                    raise ActionOrderMismatch(
                        f"action is not a homomorphism (entry {i},{j})")
        self.action = tuple(map(tuple, _reduce_rows(action, self.factors)))
        if self.power(self.group_order) != _reduce_rows(_identity(k), self.factors):
            raise ActionOrderMismatch(
                f"generator action does not have order dividing {self.group_order}")

    @property
    def rank(self):
        return len(self.factors)

    @property
    def cardinality(self):
        return prod(self.factors)

    def power(self, e):
        k = self.rank
        result = _reduce_rows(_identity(k), self.factors)
        base = [list(r) for r in self.action]
        while e:
            if e & 1:
                result = _matmul(result, base, self.factors)
            base = _matmul(base, base, self.factors)
            e >>= 1
        return result

    @cached_property
    def powers(self):
        out = [_reduce_rows(_identity(self.rank), self.factors)]
        A = [list(r) for r in self.action]
        for _ in range(1, self.group_order):
            out.append(_matmul(out[-1], A, self.factors))
        return out

    def endomorphism(self, coeffs):
        """Matrix of sum_k coeffs[k] * gen^k."""
        if len(coeffs) != self.group_order:
            raise GroupMismatch(
                f"ring element has {len(coeffs)} coefficients, group has order {self.group_order}")
        k = self.rank
        out = [[0] * k for _ in range(k)]
        for c, P in zip(coeffs, self.powers):
            if c:
                for i in range(k):
                    oi, pi = out[i], P[i]
                    for j in range(k):
                        oi[j] += c * pi[j]
        return _reduce_rows(out, self.factors)

    def kills(self, coeffs):
        return not any(any(r) for r in self.endomorphism(coeffs))

    def apply(self, coeffs, x):
        E = self.endomorphism(coeffs)
        return tuple(sum(E[i][j] * x[j] for j in range(self.rank)) % d
                     for i, d in enumerate(self.factors))

    def act(self, x):
        """Image of the element x under the generator."""
        A = self.action
        return tuple(sum(A[i][j] * x[j] for j in range(self.rank)) % d
                     for i, d in enumerate(self.factors))

    def elements(self):
        from itertools import product
        return product(*(range(d) for d in self.factors))


class FiniteModule(ActionModule):
    """A module in invariant-factor form over a named group."""

    def __init__(self, factors, action, group):
        factors = [int(d) for d in factors]
        if any(d < 2 for d in factors):
            raise BadInvariantFactors("invariant factors must be at least 2")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise BadInvariantFactors("invariant factors must form a divisibility chain")
        self.group = group
        super().__init__(factors, action, group.order)

    def __repr__(self):
        return f"FiniteModule(factors={list(self.factors)}, order={self.group_order})"


def make_module(factors, action, group):
    return FiniteModule(factors, action or [], group)


class InducedModule(ActionModule):
    """[D:H] copies of an H-module, permuted freely by D/H.

    With m = [D:H] and rho = g^m, the generator g sends copy i to copy i+1
    unchanged and sends copy m-1 back to copy 0 through the rho-action.
    """

    def __init__(self, ctx, H, base):
        if base.group_order != H.d:
            raise GroupMismatch("module is not over the given subgroup")
        m = H.index
        k = base.rank
        factors = list(base.factors) * m
        A = [[0] * (k * m) for _ in range(k * m)]
        for c in range(m - 1):
            for i in range(k):
                A[(c + 1) * k + i][c * k + i] = 1
        for i in range(k):
            for j in range(k):
                A[i][(m - 1) * k + j] = base.action[i][j]
        self.base = base
        self.copies = m
        self.ctx = ctx
        self.H = H
        super().__init__(factors, A, ctx.order)


def induce(ctx, H, M):
    if not isinstance(H, SubgroupSpec) or H.parent.l != ctx.l:
        raise GroupMismatch("H is not a subgroup of the unit group")
    if M.group_order != H.d:
        raise GroupMismatch("module is not over the given subgroup")
    if H.is_full():
        return M
    return InducedModule(ctx, H, M)


def annihilates(ideal, M):
    """True iff every basis vector of ``ideal`` acts as zero on M."""
    if isinstance(ideal, IntegerLattice):
        if ideal.ambient_rank != M.group_order:
            raise GroupMismatch(
                f"ideal lives in Z^{ideal.ambient_rank}, module group has order {M.group_order}")
        rows = ideal.basis
    else:
        rows = [tuple(r) for r in ideal]
    if M.rank == 0:
        return True
    return all(M.kills(row) for row in rows)


def _ideal_of(ctx, data):
    if data is not None:
        return data.ideal
    return hnf_from_generators([g.coeffs for g in ideal_generators(ctx)], ctx.order)


def is_leopoldt(ctx, H, M, data=None):
    """Whether J kills the induced module, i.e. the C_l-Leopoldt criterion."""
    if M.rank == 0:
        return True
    return annihilates(_ideal_of(ctx, data), induce(ctx, H, M))


def projection_necessary_check(ctx, H, M):
    """Whether pi_H(J) kills M directly; implied by is_leopoldt."""
    if M.group_order != H.d:
        raise GroupMismatch("module is not over the given subgroup")
    if M.rank == 0:
        return True
    return annihilates(projected_ideal(ctx, H), M)


@dataclass(frozen=True)
class ExponentBound:
    l: int
    d: int
    parity: str
    integer: int | None   # least positive integer in pi_H(J)
    n_H: int | None       # even |H|: bound for the (1 - J)-part only

    def to_json(self):
        return {"l": self.l, "subgroup_order": self.d, "parity": self.parity,
                "integer_annihilator": self.integer, "n_H": self.n_H}


def exponent_bound(ctx, H):
    rep = projected_index(ctx, H)
    return ExponentBound(ctx.l, H.d, rep.parity, rep.smallest_integer, rep.n_H)
