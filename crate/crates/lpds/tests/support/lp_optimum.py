"""Solve a CPLEX LP file written by `lpds emit-ip --relax` with HiGHS.

Handles exactly the subset the emitter produces: one objective row, rows of
`+/- [coef] var` terms with `<=`, `>=` or `=` against an integer, and
`0 <= var <= 1` bounds. Prints the optimum as a decimal.
"""
import re
import sys

from scipy.optimize import linprog

TERM = re.compile(r"([+-]?)\s*(\d+)?\s*([A-Za-z_][A-Za-z0-9_]*)")


def parse_terms(text):
    found = TERM.findall(text)
    return [(-1 if s == "-" else 1) * int(c or 1) for s, c, _ in found], [v for _, _, v in found]


def main(path):
    section = None
    objective = ""
    rows = []
    pending = ""
    for raw in open(path):
        line = raw.strip()
        if line in ("Minimize", "Subject To", "Bounds", "Binary", "End"):
            section = line
            continue
        if section == "Minimize":
            objective += " " + line.split(":", 1)[-1]
        elif section == "Subject To":
            pending += " " + line
            m = re.search(r"(<=|>=|=)\s*(-?\d+)\s*$", pending)
            if m:
                rest = pending[: m.start()].split(":", 1)[1]
                rows.append((rest, m.group(1), int(m.group(2))))
                pending = ""
    names = {}
    for body, _, _ in rows:
        for v in parse_terms(body)[1]:
            names.setdefault(v, len(names))
    for v in parse_terms(objective)[1]:
        names.setdefault(v, len(names))
    c = [0.0] * len(names)
    for coef, v in zip(*parse_terms(objective)):
        c[names[v]] += coef
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for body, sense, rhs in rows:
        row = [0.0] * len(names)
        for coef, v in zip(*parse_terms(body)):
            row[names[v]] += coef
        if sense == "<=":
            a_ub.append(row)
            b_ub.append(rhs)
        elif sense == ">=":
            a_ub.append([-x for x in row])
            b_ub.append(-rhs)
        else:
            a_eq.append(row)
            b_eq.append(rhs)
    res = linprog(
        c,
        A_ub=a_ub or None,
        b_ub=b_ub or None,
        A_eq=a_eq or None,
        b_eq=b_eq or None,
        bounds=[(0, 1)] * len(names),
        method="highs",
    )
    if res.status != 0:
        sys.exit("solver status %d: %s" % (res.status, res.message))
    print("%.9f" % res.fun)


if __name__ == "__main__":
    main(sys.argv[1])
