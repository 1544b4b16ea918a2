"""Identity suite run by ``stickel verify``.

Each check returns a ``Check(name, ok, detail)``; nothing raises on a
failed identity.
"""
from dataclasses import dataclass
from math import gcd

from . import class_numbers as cn
from .core import (fractional_multiple, fractional_multiple_exact, ideal_lattice,
                   is_ideal, minus_ideal_by_intersection, projected_ideal,
                   quadratic_image, theta)
from .cyclic import subgroup_of_order, subgroup_orders
from .group_ring import RingElem, conjugation, project_pi_H
from .lattice import contains

CONSTRUCTION_LIMIT = 31


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.name}" + (f": {self.detail}" if self.detail else "")


def _run(name, fn):
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed identity, reported as such
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    return Check(name, bool(ok), detail)


def identity_suite(session):
    ctx = session.ctx
    l = ctx.l
    checks = []
    add = lambda name, fn: checks.append(_run(name, fn))
    lt = theta(ctx)

    def theta_shape():
        perm = sorted(lt.coeffs) == list(range(1, l)) if l > 2 else lt.coeffs == (1,)
        return lt.coeff(1) == 1 and perm, f"l*theta = {lt}"
    add("theta_shape", theta_shape)

    coprime = [c for c in range(2, 2 * l + 1) if gcd(c, l) == 1]

    def integrality():
        bad = [c for c in coprime
               if fractional_multiple(ctx, c) != fractional_multiple_exact(ctx, c)]
        return not bad, f"{len(coprime)} values of c" + (f"; mismatch at {bad}" if bad else "")
    add("integrality", integrality)

    def augmentation_values():
        bad = [c for c in coprime
               if sum(fractional_multiple(ctx, c).coeffs) != (c - 1) * (l - 1) // 2]
        return not bad, "eps((c - s(c))theta) = (c-1)(l-1)/2" + (f"; fails at {bad}" if bad else "")
    add("augmentation", augmentation_values)

    if l > 2:
        def symmetry():
            lhs = (1 + conjugation(ctx)) * lt
            return lhs == l * RingElem.norm_element(ctx), "(1 + s(-1)) l*theta = l*N"
        add("symmetry", symmetry)

    J = session.ideal()

    def theta_in_J():
        return contains(J, lt.coeffs), f"rank J = {J.rank}"
    add("theta_in_ideal", theta_in_J)

    if l <= CONSTRUCTION_LIMIT:
        def constructions():
            a = ideal_lattice(ctx, "orbit").ideal
            b = ideal_lattice(ctx, "intersection").ideal
            return a == J and b == J, "generators = orbit = intersection"
        add("construction_equivalence", constructions)

        if l > 2:
            def minus_construction():
                return (minus_ideal_by_intersection(ctx, J) == session.stick.minus_ideal,
                        "J^- from the scalar kernel = J meet Z[D]^-")
            add("minus_ideal_equivalence", minus_construction)

    def closure():
        return is_ideal(J, ctx.order), "s(g) J in J"
    add("ideal_closure", closure)

    h_minus = session.minus_index()

    if l > 2:
        def maillet():
            m = cn.h_minus_maillet(l)
            return m == h_minus, f"lattice index {h_minus}, Maillet {m}"
        add("h_minus_two_routes", maillet)

    hq = None
    if l % 4 == 3 and l > 3:
        hq = cn.h_quadratic(l)

        def quadratic():
            f = cn.h_forms(l)
            return f == hq and h_minus % hq == 0, f"h(-{l}) = {hq}, forms {f}, divides h^- = {h_minus % hq == 0}"
        add("h_quadratic", quadratic)

        def lemma():
            rep = quadratic_image(ctx)
            ok = rep.lemma_identity and rep.lemma_integer_in_ideal and rep.r_theta_in_ideal
            return ok, (f"((l-1)/2)h(-l) = {rep.lemma_integer} = B^2 - A^2 with "
                        f"(A, B) = {rep.r_theta}; least integer in r(J) = {rep.smallest_integer}")
        add("quadratic_image_lemma", lemma)

        def coprimality():
            res = cn.coprimality_lemma(l, h_minus)
            return res.holds, res.note
        add("coprimality_lemma", coprimality)

    # subgroup projections
    reports = {}
    for d in subgroup_orders(ctx):
        H = subgroup_of_order(ctx, d)

        def projection(H=H, d=d):
            rep = session.projection(d)
            reports[d] = rep
            ok = rep.closed_under_rho
            parts = [f"closed={rep.closed_under_rho}"]
            if rep.parity == "odd":
                ok = ok and h_minus % rep.index == 0
                ok = ok and rep.smallest_integer is not None and h_minus % rep.smallest_integer == 0
                parts.append(f"index={rep.index} | h^-, least integer {rep.smallest_integer}")
            else:
                ok = ok and rep.in_half_norm_ideal and h_minus % rep.n_H == 0
                if d >= 4:
                    ok = ok and rep.smallest_integer is None
                parts.append(f"n_H={rep.n_H} | h^-, in half-norm ideal={rep.in_half_norm_ideal}, "
                             f"integers={rep.smallest_integer}")
            return ok, "; ".join(parts)
        add(f"projection[d={d}]", projection)

        if l <= CONSTRUCTION_LIMIT and d < ctx.order:
            def projection_routes(H=H):
                return (projected_ideal(ctx, H, J.basis) == projected_ideal(ctx, H),
                        "pi_H(HNF basis) = pi_H(generators)")
            add(f"projection_routes[d={d}]", projection_routes)

    if l > 2:
        def conjugation_projection():
            H = subgroup_of_order(ctx, 2)
            a = project_pi_H(lt, H)
            b = project_pi_H(fractional_multiple(ctx, 2), H)
            s = RingElem.sigma(H, l - 1)
            return a == 1 + (l - 1) * s and b == s, f"pi_H(l*theta) = {a}, pi_H((2 - s(2))theta) = {b}"
        add("order_two_projection", conjugation_projection)

    def nested():
        odd = sorted(d for d in reports if d % 2 and reports[d].index is not None)
        bad = [(a, b) for a in odd for b in odd
               if a < b and b % a == 0 and reports[b].index % reports[a].index]
        return not bad, f"{len(odd)} odd subgroups" + (f"; fails for {bad}" if bad else "")
    add("nested_odd_divisibility", nested)

    if hq is not None:
        def half_group():
            d = (l - 1) // 2
            idx = reports[d].index
            return idx * hq == h_minus, f"[Z[H]:pi_H(J)] = {idx}, h(-l) = {hq}, h^- = {h_minus}"
        add("half_group_formula", half_group)

    return checks
