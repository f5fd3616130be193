#!/usr/bin/env python3
"""Solve an exported LP file with scipy's MILP solver.

One-time oracle used to confirm that the exported models reproduce the
exact solvers' objectives on the demo fixture; the confirmed values are
frozen into the acceptance suite. Usage:

    python3 tools/ilp_crosscheck.py model.lp
"""

import re
import sys

import numpy as np
from scipy.optimize import LinearConstraint, milp


def tokenize(expr):
    """Yield (coefficient, variable) pairs from a linear expression."""
    for sign, num, var in re.findall(
        r"([+-]?)\s*(\d+(?:\.\d+)?)?\s*([A-Za-z]\w*)", expr
    ):
        coeff = float(num) if num else 1.0
        if sign == "-":
            coeff = -coeff
        yield coeff, var


def parse_lp(text):
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("\\")]
    body = "\n".join(lines)

    def section(name, until):
        m = re.search(rf"{name}\s*\n(.*?)\n(?={until})", body, re.S | re.I)
        return m.group(1) if m else ""

    objective = section("Minimize", "Subject To")
    constraints = section("Subject To", "Binary|Bounds|End")
    binaries = set(section("Binary", "End").split())

    objective = re.sub(r"^\s*\w+:", "", objective.replace("\n", " "))

    # Re-join wrapped constraint bodies, then split on "name:" anchors.
    joined = constraints.replace("\n", " ")
    parts = re.split(r"\s(?=\w+:)", joined.strip())
    rows = []
    for part in parts:
        m = re.match(r"\s*\w+:\s*(.*?)\s*(<=|>=|=)\s*([-\d.]+)\s*$", part)
        if not m:
            raise ValueError(f"cannot parse constraint: {part!r}")
        rows.append((dict(), m.group(2), float(m.group(3))))
        for coeff, var in tokenize(m.group(1)):
            rows[-1][0][var] = rows[-1][0].get(var, 0.0) + coeff

    obj = {}
    for coeff, var in tokenize(objective):
        obj[var] = obj.get(var, 0.0) + coeff

    variables = sorted(
        set(obj) | binaries | {v for row, _, _ in rows for v in row}
    )
    return variables, obj, rows, binaries


def solve(path):
    with open(path) as fh:
        variables, obj, rows, binaries = parse_lp(fh.read())
    index = {v: i for i, v in enumerate(variables)}
    c = np.zeros(len(variables))
    for v, coeff in obj.items():
        c[index[v]] = coeff

    a = np.zeros((len(rows), len(variables)))
    lb = np.full(len(rows), -np.inf)
    ub = np.full(len(rows), np.inf)
    for r, (coeffs, op, rhs) in enumerate(rows):
        for v, coeff in coeffs.items():
            a[r, index[v]] = coeff
        if op in ("<=", "="):
            ub[r] = rhs
        if op in (">=", "="):
            lb[r] = rhs

    integrality = np.array([1 if v in binaries else 0 for v in variables])
    upper = np.array([1.0 if v in binaries else np.inf for v in variables])
    bounds = LinearConstraint(np.eye(len(variables)), 0.0, upper)

    res = milp(
        c=c,
        constraints=[LinearConstraint(a, lb, ub), bounds],
        integrality=integrality,
    )
    if not res.success:
        raise RuntimeError(f"milp failed: {res.message}")
    return res.fun


if __name__ == "__main__":
    for path in sys.argv[1:]:
        print(f"{path}: objective = {solve(path):.6f}")
