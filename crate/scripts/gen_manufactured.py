#!/usr/bin/env python3
"""Regenerate crates/core/src/cases/generated.rs.

Every manufactured case is derived symbolically here and emitted as plain
Rust closed forms.  Run from the repository root:

    python3 scripts/gen_manufactured.py

Conventions (must match the assembly):
  * phase "pos" is phi > 0 (outer fluid), phase "neg" is phi < 0 (drop);
  * viscous form  (mu D(u), D(v)) with D(u) = grad u + grad u^T, so the
    consistent Cauchy stress is  sigma = -p I + 2 mu D(u);
  * momentum forcing  g = rho du/dt - div(2 mu D(u)) + grad p   (no advection);
  * interface load    h = (sigma_neg - sigma_pos) n + tau kappa n,
    n = grad phi / |grad phi| (from neg to pos), kappa = div n.
    The discrete right-hand side is  int_Gamma (-tau kappa n + h) . v.
"""

import os
import sys

import sympy as sp

x, y, z, t = sp.symbols("x y z t", real=True)

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "src", "cases", "generated.rs")


def grad(f, xs):
    return sp.Matrix([sp.diff(f, v) for v in xs])


def jac(u, xs):
    return sp.Matrix([[sp.diff(ui, v) for v in xs] for ui in u])


def sym_d(u, xs):
    j = jac(u, xs)
    return j + j.T


def div_tensor(m, xs):
    return sp.Matrix([sum(sp.diff(m[i, j], xs[j]) for j in range(len(xs))) for i in range(len(xs))])


def forcing(u, p, rho, mu, xs):
    du = sp.Matrix([sp.diff(ui, t) for ui in u])
    return rho * du - div_tensor(2 * mu * sym_d(u, xs), xs) + grad(p, xs)


def stress(u, p, mu, xs):
    return -p * sp.eye(len(xs)) + 2 * mu * sym_d(u, xs)


def normal_and_curvature(phi, xs):
    g = grad(phi, xs)
    ng = sp.sqrt(sum(c**2 for c in g))
    n = g / ng
    kappa = sum(sp.diff(n[i], xs[i]) for i in range(len(xs)))
    return n, kappa


class Emitter:
    def __init__(self):
        self.chunks = []

    def function(self, name, args, exprs, doc=None):
        """Emit `fn name(args) -> [f64; len]` using common subexpressions."""
        exprs = [sp.sympify(e) for e in exprs]
        repl, red = sp.cse(exprs, symbols=sp.numbered_symbols("c"), optimizations="basic")
        lines = []
        if doc:
            lines.append(f"/// {doc}")
        sig = ", ".join(f"{a}: f64" for a in args)
        lines.append("#[allow(clippy::all, unused_variables, non_snake_case)]")
        lines.append(f"pub fn {name}({sig}) -> [f64; {len(red)}] {{")
        for s, e in repl:
            lines.append(f"    let {s} = {rust(e)};")
        body = ", ".join(rust(e) for e in red)
        lines.append(f"    [{body}]")
        lines.append("}")
        self.chunks.append("\n".join(lines))

    def text(self):
        head = (
            "// @generated by scripts/gen_manufactured.py -- do not edit by hand.\n"
            "#![allow(clippy::all, unused_parens)]\n"
        )
        return head + "\n\n".join(self.chunks) + "\n"


def rust(e):
    """Fully parenthesised f64 Rust expression (sympy's own printer mixes ints and floats)."""
    if e.is_number:
        v = float(sp.N(e, 20))
        return f"({v!r}_f64)"
    if e.is_Symbol:
        return str(e)
    if e.is_Add:
        return "(" + " + ".join(rust(a) for a in e.args) + ")"
    if e.is_Mul:
        return "(" + " * ".join(rust(a) for a in e.args) + ")"
    if e.is_Pow:
        b, q = e.args
        if q.is_Integer:
            n = int(q)
            if n == -1:
                return f"(1.0 / {rust(b)})"
            if n < 0:
                return f"(1.0 / {rust(b)}.powi({-n}))"
            return f"{rust(b)}.powi({n})"
        if q == sp.Rational(1, 2):
            return f"{rust(b)}.sqrt()"
        if q == -sp.Rational(1, 2):
            return f"(1.0 / {rust(b)}.sqrt())"
        return f"{rust(b)}.powf({float(q)!r})"
    for fn, name in ((sp.sin, "sin"), (sp.cos, "cos"), (sp.exp, "exp")):
        if isinstance(e, fn):
            return f"{rust(e.args[0])}.{name}()"
    raise ValueError(f"cannot print {e!r}")


def assert_zero(expr, subs_list, what, tol=1e-10):
    f = sp.lambdify((x, y, z, t), expr, "mpmath")
    for s in subs_list:
        v = complex(f(*s))
        if abs(v) > tol:
            sys.exit(f"check failed: {what} = {v} at {s}")


# ---------------------------------------------------------------- 2D disk
R2 = sp.Rational(1, 4)  # drop radius^2
A2 = sp.Rational(9, 16)  # support radius^2 of the velocity
c2d = (2 * t - 1) / 4  # drop centre height, moves from -1/4 to 1/4
X, Y = x, y - c2d
S = X**2 + Y**2
phi2 = S - R2
XS = (x, y)
KAPPA2 = 2  # 1/R


def disk_points(n=7):
    import math

    pts = []
    for k in range(n):
        th = 2 * math.pi * (k + 0.3) / n
        for tt in (0.1, 0.55, 0.9):
            cy = (2 * tt - 1) / 4
            pts.append((0.5 * math.cos(th), cy + 0.5 * math.sin(th), 0, tt))
    return pts


def smooth2d(em):
    rho = {"pos": 1, "neg": 10}
    mu = {"pos": 1, "neg": 5}
    tau = 2
    s = sp.symbols("s")
    beta = sp.symbols("beta")
    G = (s - A2) ** 4 * (1 + beta * s)
    cond = (G + 2 * s * sp.diff(G, s) + s**2 * sp.diff(G, s, 2)).subs(s, R2)
    b = sp.solve(cond, beta)[0]
    G = G.subs(beta, b)
    amp = sp.Rational(40)  # keeps |u| = O(1)
    psi = amp * sp.sin(2 * t) * X * Y * G.subs(s, S)
    u = sp.Matrix([sp.diff(psi, y), -sp.diff(psi, x)])
    d = sym_d(u, XS)
    r = sp.Matrix([X, Y])
    p = {"pos": sp.Integer(0), "neg": tau * KAPPA2 + 2 * (mu["neg"] - mu["pos"]) * (r.T * d * r)[0] / R2}
    n, kappa = normal_and_curvature(phi2, XS)
    jump = (stress(u, p["neg"], mu["neg"], XS) - stress(u, p["pos"], mu["pos"], XS)) * n + tau * kappa * n
    for c in jump:
        assert_zero(c, disk_points(), "disk smooth interface balance")
    assert_zero(sp.diff(u[0], x) + sp.diff(u[1], y), disk_points(), "disk smooth divergence")
    em.function("disk_smooth_u", ["x", "y", "t"], list(u), "Velocity inside the support disk |x - c| < 3/4.")
    em.function("disk_smooth_grad_u", ["x", "y", "t"], list(jac(u, XS)), "Row-major d u_i / d x_j.")
    for ph in ("pos", "neg"):
        em.function(f"disk_smooth_p_{ph}", ["x", "y", "t"], [p[ph]])
        em.function(f"disk_smooth_g_{ph}", ["x", "y", "t"], list(forcing(u, p[ph], rho[ph], mu[ph], XS)))
    return u


def kink2d(em):
    rho = {"pos": 1, "neg": 5}
    mu = {"pos": 1, "neg": 2}
    tau = 2
    s = sp.symbols("s")
    amp = sp.Rational(160)
    f_out = amp * (s - A2) ** 4
    f_in = f_out.subs(s, R2) + sp.Rational(mu["pos"], mu["neg"]) * sp.diff(f_out, s).subs(s, R2) * (s - R2)
    swirl = sp.Matrix([-Y, X])
    u = {"pos": sp.sin(2 * t) * f_out.subs(s, S) * swirl, "neg": sp.sin(2 * t) * f_in.subs(s, S) * swirl}
    p = {"pos": sp.Integer(0), "neg": sp.Integer(tau * KAPPA2)}
    n, kappa = normal_and_curvature(phi2, XS)
    jump = (stress(u["neg"], p["neg"], mu["neg"], XS) - stress(u["pos"], p["pos"], mu["pos"], XS)) * n + tau * kappa * n
    for c in jump:
        assert_zero(c, disk_points(), "disk kink interface balance")
    for c in u["neg"] - u["pos"]:
        assert_zero(c, disk_points(), "disk kink continuity")
    for ph in ("pos", "neg"):
        em.function(f"disk_kink_u_{ph}", ["x", "y", "t"], list(u[ph]))
        em.function(f"disk_kink_grad_u_{ph}", ["x", "y", "t"], list(jac(u[ph], XS)))
        em.function(f"disk_kink_p_{ph}", ["x", "y", "t"], [p[ph]])
        em.function(f"disk_kink_g_{ph}", ["x", "y", "t"], list(forcing(u[ph], p[ph], rho[ph], mu[ph], XS)))


# ---------------------------------------------------------------- 3D sphere
XS3 = (x, y, z)
phi3 = x**2 + y**2 + (z - t) ** 2 - sp.Rational(1, 2)


def paper3d(em, name, u, p, rho, mu, tau):
    n, kappa = normal_and_curvature(phi3, XS3)
    for ph in ("pos", "neg"):
        em.function(f"{name}_u_{ph}", ["x", "y", "z", "t"], list(u[ph]))
        em.function(f"{name}_grad_u_{ph}", ["x", "y", "z", "t"], list(jac(u[ph], XS3)))
        em.function(f"{name}_p_{ph}", ["x", "y", "z", "t"], [p[ph]])
        em.function(f"{name}_g_{ph}", ["x", "y", "z", "t"], list(forcing(u[ph], p[ph], rho[ph], mu[ph], XS3)))
    h = (stress(u["neg"], p["neg"], mu["neg"], XS3) - stress(u["pos"], p["pos"], mu["pos"], XS3)) * n + tau * kappa * n
    em.function(f"{name}_h", ["x", "y", "z", "t"], [sp.simplify(c) for c in h], "Interface load correction.")


def case1(em):
    u = sp.sin(2 * t) * sp.Matrix(
        [
            sp.Rational(1, 5) * (x**2 + 5 * y**2 - 10 * t * z + 5 * z**2) * y,
            sp.Rational(1, 5) * (10 * t**2 + 5 * x**2 + y**2 - 10 * t * z + 5 * z**2 - 8) * x,
            sp.Rational(4, 5) * (t - z) * x * y,
        ]
    )
    p = {"pos": sp.Integer(0), "neg": sp.Rational(96, 5) * sp.sin(2 * t) * x * y + 2 * sp.sqrt(2)}
    paper3d(em, "sphere_smooth", {"pos": u, "neg": u}, p, {"pos": 1, "neg": 10}, {"pos": 1, "neg": 25}, 2)


def case2(em):
    e = sp.exp(-((t - z) ** 2) - x**2 - y**2)
    sw = sp.sin(2 * t) * sp.Matrix([-y, x, 0])
    u = {"pos": sw * e / 2, "neg": sw * (-sp.exp(-sp.Rational(1, 2)) / 2 + e)}
    p = {"pos": sp.Integer(0), "neg": 2 * sp.sqrt(2)}
    paper3d(em, "sphere_kink", u, p, {"pos": 1, "neg": 5}, {"pos": 1, "neg": 2}, 2)


def main():
    em = Emitter()
    smooth2d(em)
    kink2d(em)
    case1(em)
    case2(em)
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w") as fh:
        fh.write(em.text())
    print("wrote", os.path.normpath(OUT))


if __name__ == "__main__":
    main()
