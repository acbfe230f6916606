"""Independent reference values for the C++ test suites.

Everything here is computed symbolically with sympy (or with mpmath
quadrature) straight from the defining formulas, without sharing any code
path with the library. Run it and paste the printed constants into
tests/fixtures.hpp when a fixture needs to change.
"""
import mpmath as mp
import sympy as sp

s_, b_, n_ = sp.symbols("s b n")


def bracket(consts, x, y):
    dim = len(x)
    out = [0] * dim
    for (i, j, k), c in consts.items():
        out[k] += c * (x[i] * y[j] - x[j] * y[i])
    return out


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def s_curvature_expr(consts, v, phi, ys):
    """S(H, y) via the generic (alpha, beta) assembly, as a sympy expression."""
    n = len(v)
    alpha = sp.sqrt(dot(ys, ys))
    beta = dot(v, ys)
    b = sp.sqrt(dot(v, v))
    d1 = sp.diff(phi, s_)
    Q = d1 / (phi - s_ * d1)
    Qp = sp.diff(Q, s_)
    Qpp = sp.diff(Q, s_, 2)
    Delta = 1 + s_ * Q + (b**2 - s_**2) * Qp
    Phi = -(Q - s_ * Qp) * (n * Delta + 1 + s_ * Q) - (b**2 - s_**2) * (1 + s_ * Q) * Qpp
    vy = bracket(consts, v, ys)
    p = dot(vy, ys)
    q = dot(vy, v)
    expr = Phi / (2 * alpha * Delta**2) * (p + alpha * Q * q)
    return expr.subs(s_, beta / alpha)


def report_berwald(label, consts, v, phi, yval):
    n = len(v)
    ys = sp.symbols(f"y0:{n}")
    S = s_curvature_expr(consts, v, phi, list(ys))
    sub = dict(zip(ys, [sp.nsimplify(t) for t in yval]))
    print(f"// {label}")
    print(f"//   S = {sp.N(S.subs(sub), 20)}")
    for i in range(n):
        row = []
        for j in range(n):
            e = sp.Rational(1, 2) * sp.diff(S, ys[i], ys[j])
            row.append(sp.N(e.subs(sub), 20))
        print("//   E[%d] = %s" % (i, ", ".join(str(x) for x in row)))


heis = {(0, 1, 2): 1}
solv = {(0, 1, 1): 1}
su2 = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1}
half = sp.Rational(1, 2)
exp_phi = sp.exp(s_)
inf_phi = s_**2 / (s_ - 1)

# Christoffel symbols at the origin, Heisenberg, identity frame,
# displayed formula for i >= j and mirrored to i < j.
def gamma(consts, l, i, j):
    e = lambda k: [1 if t == k else 0 for t in range(3)]
    if i < j:
        i, j = j, i
    return half * (-dot(bracket(consts, e(i), e(j)), e(l))
                   + dot(bracket(consts, e(l), e(i)), e(j))
                   + dot(bracket(consts, e(l), e(j)), e(i)))

print("// Heisenberg Gamma^l_ij (0-based l,i,j), mirrored convention")
for l in range(3):
    for i in range(3):
        for j in range(3):
            g = gamma(heis, l, i, j)
            if g != 0:
                print(f"//   Gamma[{l}][{i}][{j}] = {g}")

# S for Heisenberg, v = e1/2, exponential, y = (1,1,1)
ys = sp.symbols("y0:3")
S = s_curvature_expr(heis, [half, 0, 0], exp_phi, list(ys))
print("// heisenberg3 exponential S(1,1,1) =", sp.N(S.subs(dict(zip(ys, [1, 1, 1]))), 20))
S = s_curvature_expr(su2, [half, 0, 0], inf_phi, list(ys))
print("// su2_like infinite_series S(0.3,-1,0.7) =",
      sp.N(S.subs(dict(zip(ys, [sp.Rational(3, 10), -1, sp.Rational(7, 10)]))), 20))

report_berwald("solvable2 exponential y=(1,0.3)", solv, [0, half], exp_phi, [1, sp.Rational(3, 10)])
report_berwald("solvable2 infinite_series y=(1,0.3)", solv, [0, half], inf_phi, [1, sp.Rational(3, 10)])
report_berwald("heisenberg3 exponential y=(0.2,1,-0.4)", heis, [half, 0, 0], exp_phi,
               [sp.Rational(1, 5), 1, sp.Rational(-2, 5)])
report_berwald("su2_like infinite_series y=(0.3,-1,0.7)", su2, [half, 0, 0], inf_phi,
               [sp.Rational(3, 10), -1, sp.Rational(7, 10)])

# Holmes-Thompson coefficient, exponential, n = 2, b = 0.3.
mp.mp.dps = 30
b = mp.mpf("0.3")
T = lambda t: mp.e**(2 * b * mp.cos(t)) * (1 - b * mp.cos(t) + b**2 - (b * mp.cos(t))**2)
print("// exponential HT f(0.3), n=2 =", mp.quad(T, [0, mp.pi]) / mp.pi)
# Busemann-Hausdorff coefficient, exponential, n = 3, b = 0.5.
b = mp.mpf("0.5")
num = mp.quad(lambda t: mp.sin(t), [0, mp.pi])
den = mp.quad(lambda t: mp.sin(t) / mp.e**(3 * b * mp.cos(t)), [0, mp.pi])
print("// exponential BH f(0.5), n=3 =", num / den)

# Mean Berwald near the Delta = 0 locus, heisenberg3, infinite series: a
# 60-digit finite-difference Hessian of S, where a double-precision stencil
# is no longer reliable.
mp.mp.dps = 60
b = mp.mpf("0.5")


def S_heis_inf(y0, y1, y2):
    alpha = mp.sqrt(y0**2 + y1**2 + y2**2)
    s = b * y0 / alpha
    Q, Qp, Qpp = 1 - 2 / s, 2 / s**2, -4 / s**3
    D = 1 + s * Q + (b * b - s * s) * Qp
    Phi = -(Q - s * Qp) * (3 * D + 1 + s * Q) - (b * b - s * s) * (1 + s * Q) * Qpp
    # [v, y]_m = 0.5 y1 e3, so <[v,y],y> = 0.5 y1 y2 and <[v,y],v> = 0.
    return Phi / (2 * alpha * D**2) * (0.5 * y1 * y2)


y = [mp.mpf("-0.700304"), mp.mpf("-0.211886"), mp.mpf("-0.540647")]
print("// heisenberg3 infinite_series near Delta = 0, y =", [str(t) for t in y])
for i in range(3):
    row = []
    for j in range(3):
        o = [0, 0, 0]
        o[i] += 1
        o[j] += 1
        row.append(mp.nstr(mp.diff(S_heis_inf, y, tuple(o)) / 2, 20))
    print("//   E[%d] = %s" % (i, ", ".join(row)))
