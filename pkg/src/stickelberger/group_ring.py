"""Integer group rings of cyclic groups attached to (Z/lZ)*.

A ring element stores one integer per group element, in the group's
canonical generator order (``coeffs[k]`` is the coefficient of the k-th
power of the generator).  Three kinds of group occur: the full unit group,
a subgroup H, and a quotient of the unit group by a subgroup.
"""
import re
from dataclasses import dataclass
from functools import lru_cache

from .cyclic import PrimeContext, SubgroupSpec, subgroup_of_order
from .errors import GroupMismatch, NoConjugation, NotAUnit


@dataclass(frozen=True)
class QuotientGroup:
    """The cyclic group (Z/lZ)* / kernel; coset k contains g^k."""

    parent: PrimeContext
    kernel: SubgroupSpec

    @property
    def order(self):
        return self.parent.order // self.kernel.d

    @property
    def elements(self):
        # least unit representative of each coset, for rendering
        n = self.order
        reps = [None] * n
        for k, u in enumerate(self.parent.elements):
            c = k % n
            if reps[c] is None or u < reps[c]:
                reps[c] = u
        return tuple(reps)

    def log(self, u):
        return self.parent.log(u) % self.order

    def __contains__(self, u):
        return u % self.parent.l in self.parent.dlog


def group_key(group):
    if isinstance(group, PrimeContext):
        return ("full", group.l)
    if isinstance(group, SubgroupSpec):
        if group.is_full():
            return ("full", group.parent.l)
        return ("sub", group.parent.l, group.d)
    return ("quot", group.parent.l, group.kernel.d)


def _as_full(group):
    if isinstance(group, SubgroupSpec) and group.is_full():
        return group.parent
    return group


class RingElem:
    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs):
        group = _as_full(group)
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != group.order:
            raise GroupMismatch(
                f"expected {group.order} coefficients, got {len(coeffs)}")
        self.group = group
        self.coeffs = coeffs

    # construction helpers

    @classmethod
    def zero(cls, group):
        return cls(group, [0] * group.order)

    @classmethod
    def scalar(cls, group, n):
        c = [0] * group.order
        c[0] = n
        return cls(group, c)

    @classmethod
    def sigma(cls, group, a):
        """The group element s(a) for a unit a lying in ``group``."""
        c = [0] * group.order
        c[group.log(a)] = 1
        return cls(group, c)

    @classmethod
    def norm_element(cls, group):
        return cls(group, [1] * group.order)

    @classmethod
    def from_units(cls, group, mapping):
        """Build from a dict {unit: coefficient}."""
        c = [0] * group.order
        for u, x in mapping.items():
            c[group.log(u)] += x
        return cls(group, c)

    # accessors

    def coeff(self, a):
        return self.coeffs[self.group.log(a)]

    def as_dict(self):
        els = self.group.elements
        return {els[k]: c for k, c in enumerate(self.coeffs) if c}

    # arithmetic

    def _check(self, other):
        if not isinstance(other, RingElem):
            return NotImplemented
        if group_key(self.group) != group_key(other.group):
            raise GroupMismatch(
                f"{group_key(self.group)} vs {group_key(other.group)}")
        return other

    def __add__(self, other):
        if isinstance(other, int):
            other = RingElem.scalar(self.group, other)
        other = self._check(other)
        return RingElem(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.group, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = RingElem.scalar(self.group, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElem(self.group, [other * a for a in self.coeffs])
        other = self._check(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return RingElem(self.group, [other * a for a in self.coeffs])
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = RingElem.scalar(self.group, other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return group_key(self.group) == group_key(other.group) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((group_key(self.group), self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"RingElem({group_key(self.group)}, {render(self)!r})"

    def __str__(self):
        return render(self)


def multiply(x, y):
    """Group-ring convolution; the coefficient of s(c) is sum_{ab=c} x_a y_b."""
    x._check(y)
    n = x.group.order
    out = [0] * n
    yc = y.coeffs
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j, b in enumerate(yc):
            if b:
                out[(i + j) % n] += a * b
    return RingElem(x.group, out)


def augmentation(x):
    return sum(x.coeffs)


def minus_part_image(x):
    """Return (1 - s(-1)) * x."""
    n = x.group.order
    if n == 1:
        return RingElem.zero(x.group)
    if n % 2:
        raise NoConjugation("group of odd order has no element s(-1)")
    half = n // 2
    c = x.coeffs
    return RingElem(x.group, [c[k] - c[(k - half) % n] for k in range(n)])


def conjugation(group):
    """The order-2 element of an even-order cyclic group, i.e. s(-1)."""
    n = group.order
    if n % 2:
        raise NoConjugation("group of odd order has no element s(-1)")
    c = [0] * n
    c[n // 2] = 1
    return RingElem(group, c)


def project_pi_H(x, H):
    """Keep only the coefficients of elements of H (linear, not multiplicative)."""
    if not isinstance(x.group, PrimeContext):
        raise GroupMismatch("pi_H is defined on the full group ring")
    if not isinstance(H, SubgroupSpec) or H.parent.l != x.group.l:
        raise GroupMismatch("H is not a subgroup of the element's group")
    step = H.index
    return RingElem(H, x.coeffs[::step])


def quotient_map_r(x, kernel):
    """Sum coefficients over cosets of ``kernel``; a ring homomorphism."""
    if not isinstance(x.group, PrimeContext):
        raise GroupMismatch("r is defined on the full group ring")
    if not isinstance(kernel, SubgroupSpec) or kernel.parent.l != x.group.l:
        raise GroupMismatch("kernel is not a subgroup of the element's group")
    Q = quotient_group(x.group, kernel.d)
    m = Q.order
    out = [0] * m
    for k, c in enumerate(x.coeffs):
        out[k % m] += c
    return RingElem(Q, out)


@lru_cache(maxsize=None)
def quotient_group(ctx, kernel_order):
    return QuotientGroup(ctx, subgroup_of_order(ctx, kernel_order))


def quadratic_quotient(ctx):
    """Quotient by the squares: the two-element group {1, j}."""
    return quotient_group(ctx, ctx.order // 2)


# text form: "3*s(1) - 2*s(4)"

_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*s\(\s*(\d+)\s*\)\s*")


def render(x):
    els = x.group.elements
    terms = [(els[k], c) for k, c in enumerate(x.coeffs) if c]
    if not terms:
        return "0"
    terms.sort()
    out = []
    for i, (u, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        body = f"{abs(c)}*s({u})"
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def parse(text, group):
    text = text.strip()
    c = [0] * group.order
    if text == "0":
        return RingElem(group, c)
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse ring element near {text[pos:]!r}")
        sign, num, unit = m.groups()
        coef = int(num) if num else 1
        if sign == "-":
            coef = -coef
        try:
            c[group.log(int(unit))] += coef
        except NotAUnit:
            raise ValueError(f"s({unit}) is not in the group") from None
        pos = m.end()
    return RingElem(group, c)
