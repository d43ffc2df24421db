"""Independent reference values for the staggered dynamic transport problem.

Solves the same convex program with cvxpy (Clarabel conic solver) and writes
frozen_values.hpp. Rerun after changing a case:

    python3 tests/oracles/dynamic_transport.py > tests/oracles/frozen_values.hpp
"""

import cvxpy as cp
import numpy as np


def staggered_distance(n, edges, p0, p1, k):
    p0 = np.asarray(p0, float)
    p1 = np.asarray(p1, float)
    oriented = []
    for a, b in edges:
        oriented += [(a, b), (b, a)]
    d = np.zeros((len(oriented), n))
    for r, (v, w) in enumerate(oriented):
        d[r, v] = -1.0
        d[r, w] = 1.0
    q = [p0] + [cp.Variable(n, nonneg=True) for _ in range(k - 1)] + [p1]
    flows = [cp.Variable(len(oriented), nonneg=True) for _ in range(k)]
    terms, cons = [], []
    for i in range(1, k + 1):
        cons.append(d.T @ flows[i - 1] == q[i] - q[i - 1])
        for r, (v, w) in enumerate(oriented):
            for den in (q[i - 1][v], q[i][w]):
                if isinstance(den, (float, np.floating)):
                    if den > 0:
                        terms.append(cp.square(flows[i - 1][r]) / (2 * den))
                    else:
                        cons.append(flows[i - 1][r] == 0)
                else:
                    terms.append(cp.quad_over_lin(flows[i - 1][r], den) / 2)
    prob = cp.Problem(cp.Minimize(k * cp.sum(cp.hstack(terms))), cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10)
    assert prob.status == "optimal", prob.status
    # prob.value re-evaluates J^2/q at the solution and gives 0/0 where both vanish.
    return float(np.sqrt(prob.solution.opt_val))


def line(n):
    return [(i, i + 1) for i in range(n - 1)]


def delta(n, i):
    e = np.zeros(n)
    e[i] = 1.0
    return e


def cases():
    out = []
    for k in [1, 2, 4, 8, 16, 32, 64, 128]:
        out.append(("two_node_k%d" % k, 2, [(0, 1)], delta(2, 0), delta(2, 1), k))
    for dd, ks in [(2, [4, 10, 25, 50]), (3, [6, 10, 25, 50]), (5, [10, 25, 50])]:
        for k in ks:
            out.append(("line_d%d_k%d" % (dd, k), dd + 1, line(dd + 1), delta(dd + 1, 0), delta(dd + 1, dd), k))
    cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    out.append(("cycle5_k4", 5, cycle, [0.4, 0.3, 0.2, 0.1, 0.0], [0.0, 0.1, 0.2, 0.3, 0.4], 4))
    star = [(0, 1), (0, 2), (0, 3), (0, 4)]
    out.append(("star4_k6", 5, star, [0.0, 0.5, 0.5, 0.0, 0.0], [0.0, 0.0, 0.0, 0.25, 0.75], 6))
    mixed = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]
    out.append(("mixed6_k5", 6, mixed, [0.3, 0.2, 0.1, 0.1, 0.2, 0.1], [0.05, 0.15, 0.3, 0.25, 0.0, 0.25], 5))
    out.append(("grid_k8", 6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)],
                delta(6, 0), [0.0, 0.0, 0.5, 0.0, 0.0, 0.5], 8))
    return out


def staggered_feasible(n, edges, p0, p1, k, cap=1e3):
    """Finite-energy path exists iff this LP (J <= cap * density at both ends
    of each flow) is feasible for some cap. An infeasible verdict carries a
    Farkas certificate; a feasible one is checked on the returned point."""
    from scipy.optimize import linprog

    oriented = []
    for a, b in edges:
        oriented += [(a, b), (b, a)]
    m2 = len(oriented)
    nq, nj = (k - 1) * n, k * m2
    qi = lambda i, v: (i - 1) * n + v
    ji = lambda i, r: nq + (i - 1) * m2 + r
    fixed = lambda i, v: p0[v] if i == 0 else p1[v]
    a_eq, b_eq, a_ub, b_ub = [], [], [], []
    for i in range(1, k + 1):
        for v in range(n):
            row, rhs = np.zeros(nq + nj), 0.0
            for r, (x, y) in enumerate(oriented):
                row[ji(i, r)] += (y == v) - (x == v)
            if i < k:
                row[qi(i, v)] -= 1.0
            else:
                rhs += fixed(k, v)
            if i > 1:
                row[qi(i - 1, v)] += 1.0
            else:
                rhs -= fixed(0, v)
            a_eq.append(row)
            b_eq.append(rhs)
    for i in range(1, k + 1):
        for r, (x, y) in enumerate(oriented):
            for sl, v in ((i - 1, x), (i, y)):
                row = np.zeros(nq + nj)
                row[ji(i, r)] = 1.0
                if sl in (0, k):
                    a_ub.append(row)
                    b_ub.append(cap * fixed(sl, v))
                else:
                    row[qi(sl, v)] = -cap
                    a_ub.append(row)
                    b_ub.append(0.0)
    res = linprog(np.zeros(nq + nj), A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if res.status == 2:
        return False
    assert res.status == 0, res.message
    x = res.x
    assert np.max(np.abs(np.asarray(a_eq) @ x - b_eq)) < 1e-9
    dens = lambda sl, v: fixed(sl, v) if sl in (0, k) else x[qi(sl, v)]
    for i in range(1, k + 1):
        for r, (a, b) in enumerate(oriented):
            if x[ji(i, r)] > 1e-12:
                assert dens(i - 1, a) > 1e-6 and dens(i, b) > 1e-6
    return True


def random_cases(count=60, seed=515):
    """Small random graphs with sparse endpoints and k <= 3: feasibility and
    distance, including paths that cross several hops in one step."""
    rng = np.random.default_rng(seed)
    out = []
    for t in range(count):
        n = int(rng.integers(4, 8))
        edges = set()
        for v in range(1, n):
            edges.add((int(rng.integers(0, v)), v))
        for _ in range(int(rng.integers(0, 3))):
            a, b = sorted(int(x) for x in rng.choice(n, 2, replace=False))
            edges.add((a, b))
        ends = []
        for _ in range(2):
            w = np.where(rng.random(n) < 0.4, 0.2 + rng.random(n), 0.0)
            if w.sum() == 0:
                w[int(rng.integers(0, n))] = 1.0
            ends.append(w / w.sum())
        k = int(rng.integers(1, 4))
        out.append(("random%d" % t, n, sorted(edges), ends[0], ends[1], k))
    return out


def fmt(values):
    return "{" + ", ".join(repr(float(v)) for v in values) + "}"


def main():
    print("// Generated by dynamic_transport.py (cvxpy + Clarabel). Do not edit.")
    print("#pragma once\n")
    print("#include <limits>\n#include <utility>\n#include <vector>\n")
    print("namespace oracle {\n")
    print("struct Case {")
    print("  const char* name;")
    print("  int n;")
    print("  std::vector<std::pair<int, int>> edges;")
    print("  std::vector<double> p0, p1;")
    print("  int k;")
    print("  double distance;")
    print("};\n")
    print("inline const std::vector<Case>& cases() {")
    print("  static const std::vector<Case> all = {")
    for name, n, edges, p0, p1, k in cases():
        value = staggered_distance(n, edges, p0, p1, k)
        e = "{" + ", ".join("{%d, %d}" % ab for ab in edges) + "}"
        print('      {"%s", %d, %s, %s, %s, %d, %r},' % (name, n, e, fmt(p0), fmt(p1), k, value))
    print("  };")
    print("  return all;")
    print("}\n")
    print("// distance is +infinity where no finite-energy path exists and NaN where")
    print("// the conic solver did not reach a clean optimum (feasibility still holds).")
    print("inline const std::vector<Case>& random_cases() {")
    print("  static const std::vector<Case> all = {")
    for name, n, edges, p0, p1, k in random_cases():
        if not staggered_feasible(n, edges, p0, p1, k):
            v = "std::numeric_limits<double>::infinity()"
        else:
            try:
                v = repr(staggered_distance(n, edges, p0, p1, k))
            except (AssertionError, cp.error.SolverError):
                v = "std::numeric_limits<double>::quiet_NaN()"
        e = "{" + ", ".join("{%d, %d}" % ab for ab in edges) + "}"
        print('      {"%s", %d, %s, %s, %s, %d, %s},' % (name, n, e, fmt(p0), fmt(p1), k, v))
    print("  };")
    print("  return all;")
    print("}\n")
    print("}  // namespace oracle")


if __name__ == "__main__":
    main()
