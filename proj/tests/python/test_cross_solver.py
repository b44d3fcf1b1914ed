"""Cross-checks against independent convex solvers.

These run only where scipy / cvxpy happen to be installed; the shipped test
suite does not depend on them.
"""

import math
import random

import pytest

import minent as me


def random_joint(rng, nx, ny, zeros=True):
    t = [[0.0 if (zeros and rng.random() < 0.15) else rng.random() for _ in range(ny)]
         for _ in range(nx)]
    s = sum(sum(row) for row in t)
    if s == 0:
        t[0][0] = 1.0
        s = 1.0
    return [[v / s for v in row] for row in t]


def test_trace_lp_against_scipy():
    linprog = pytest.importorskip("scipy.optimize").linprog

    rng = random.Random(123)
    for _ in range(40):
        nx, ny = rng.randint(1, 4), rng.randint(1, 4)
        joint = random_joint(rng, nx, ny)
        eps = rng.choice([0.05, 0.1, 0.3])
        mine = me.hmin_trace_lp(joint, eps)

        # variables [lambda, S.flat, W.flat]; scipy wants A_ub x <= b_ub
        ns = nx * ny
        nvar = 1 + 2 * ns
        c = [0.0] * nvar
        c[0] = 1.0
        a_ub, b_ub = [], []
        py = [sum(joint[x][y] for x in range(nx)) for y in range(ny)]
        for x in range(nx):
            for y in range(ny):
                i = x * ny + y
                row = [0.0] * nvar  # S <= lambda P(y)
                row[0] = -py[y]
                row[1 + i] = 1.0
                a_ub.append(row)
                b_ub.append(0.0)
                row = [0.0] * nvar  # -S - W <= -P
                row[1 + i] = -1.0
                row[1 + ns + i] = -1.0
                a_ub.append(row)
                b_ub.append(-joint[x][y])
        row = [0.0] * nvar  # sum W <= eps
        for i in range(ns):
            row[1 + ns + i] = 1.0
        a_ub.append(row)
        b_ub.append(eps)
        for y in range(ny):  # column sums of S <= P(y)
            row = [0.0] * nvar
            for x in range(nx):
                row[1 + x * ny + y] = 1.0
            a_ub.append(row)
            b_ub.append(py[y])

        ref = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=(0, None), method="highs")
        assert ref.success
        assert mine == pytest.approx(ref.fun, abs=1e-8)


def test_imax_lp_against_scipy():
    linprog = pytest.importorskip("scipy.optimize").linprog

    rng = random.Random(321)
    for _ in range(40):
        nx, ny = rng.randint(1, 4), rng.randint(1, 4)
        joint = random_joint(rng, nx, ny)
        eps = rng.choice([0.05, 0.2])
        mine = me.imax_global(joint, eps)[0]

        ns = nx * ny
        nvar = 2 * ns + ny  # Q, T, R
        px = [sum(joint[x]) for x in range(nx)]
        c = [0.0] * nvar
        for y in range(ny):
            c[2 * ns + y] = 1.0
        a_ub, b_ub = [], []
        for x in range(nx):
            for y in range(ny):
                i = x * ny + y
                row = [0.0] * nvar  # Q <= P_X(x) R(y)
                row[i] = 1.0
                row[2 * ns + y] = -px[x]
                a_ub.append(row)
                b_ub.append(0.0)
                row = [0.0] * nvar  # -T - Q <= -P
                row[ns + i] = -1.0
                row[i] = -1.0
                a_ub.append(row)
                b_ub.append(-joint[x][y])
        row = [0.0] * nvar
        for i in range(ns):
            row[ns + i] = 1.0
        a_ub.append(row)
        b_ub.append(eps)
        a_eq = [[1.0 if j < ns else 0.0 for j in range(nvar)]]
        b_eq = [1.0]

        ref = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=(0, None),
                      method="highs")
        assert ref.success
        assert mine == pytest.approx(ref.fun, abs=1e-8)


def test_smoothing_program_against_cvxpy():
    cp = pytest.importorskip("cvxpy")

    rng = random.Random(7)
    for _ in range(12):
        d = rng.randint(1, 6)
        raw = [rng.random() + 1e-3 for _ in range(d)]
        s = sum(raw)
        p = [v / s for v in raw]
        eps = rng.choice([0.1, 0.3, 0.6])
        target = math.sqrt(1 - eps * eps)

        g = cp.Variable(d)
        prob = cp.Problem(cp.Minimize(cp.sum_squares(g)),
                          [g >= 0, g <= 1, cp.sum(cp.multiply(p, g)) >= target])
        prob.solve(solver=cp.CLARABEL)
        assert prob.status == "optimal"
        mine = 2 ** me.solve_qp(p, eps).log2_f
        assert mine == pytest.approx(prob.value, abs=1e-7)


def test_purified_smoothing_against_cvxpy():
    # The sqrt-cone formulation is solved to modest accuracy only (Clarabel
    # tends to report optimal_inaccurate on it), so this cross-check pins the
    # program shape rather than the last digits; a wrong constraint or a
    # partial/global mixup shifts values by 1e-3 or more.
    cp = pytest.importorskip("cvxpy")
    np = pytest.importorskip("numpy")

    rng = random.Random(99)
    tables = [[[0.25, 0.25], [0.0, 0.5]]] + [random_joint(rng, 2, 3, zeros=False)
                                             for _ in range(6)]
    for joint in tables:
        table = np.array(joint)
        nx, ny = table.shape
        py = table.sum(axis=0)
        eps = 0.1
        target = math.sqrt(1 - eps * eps)
        for mode, enum in (("partial", me.SmoothMode.PARTIAL), ("global", me.SmoothMode.GLOBAL)):
            lam = cp.Variable(nonneg=True)
            s = cp.Variable((nx, ny), nonneg=True)
            cons = [cp.sum(cp.sqrt(cp.multiply(table, s))) >= target]
            for x in range(nx):
                for y in range(ny):
                    cons.append(s[x, y] <= lam * py[y])
            if mode == "partial":
                for y in range(ny):
                    cons.append(cp.sum(s[:, y]) <= py[y])
            else:
                cons.append(cp.sum(s) <= 1)
            prob = cp.Problem(cp.Minimize(lam), cons)
            prob.solve(solver=cp.CLARABEL)
            assert prob.status in ("optimal", "optimal_inaccurate"), (joint, mode)
            mine = me.hmin_purified_classical(joint, eps, enum)
            assert mine == pytest.approx(lam.value, abs=5e-5), (joint, mode)
