#!/usr/bin/env python3
"""DIMACS in, SAT-competition output out, backed by CaDiCaL from python-sat.

Talks to the compiled pysolvers module directly so that the interpreter can
start with -S; pass its directory through PYTHONPATH in that case.
"""

import sys

try:
    import pysolvers
except ImportError:
    import site

    site.main()
    import pysolvers


def read_dimacs(path):
    num_vars = 0
    clauses = []
    current = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line[0] == "c":
                continue
            if line[0] == "p":
                num_vars = int(line.split()[2])
                continue
            for tok in line.split():
                lit = int(tok)
                if lit == 0:
                    clauses.append(current)
                    current = []
                else:
                    current.append(lit)
    if current:
        clauses.append(current)
    return num_vars, clauses


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: pysat_solver.py FILE.cnf", file=sys.stderr)
        return 1
    num_vars, clauses = read_dimacs(sys.argv[1])
    solver = pysolvers.cadical153_new()
    try:
        for c in clauses:
            pysolvers.cadical153_add_cl(solver, c)
        if not pysolvers.cadical153_solve(solver, [], 0):
            print("s UNSATISFIABLE")
            return 20
        model = set(pysolvers.cadical153_model(solver) or [])
    finally:
        pysolvers.cadical153_del(solver, None)
    print("s SATISFIABLE")
    values = [v if v in model else -v for v in range(1, num_vars + 1)]
    print("v " + " ".join(map(str, values + [0])))
    return 10


if __name__ == "__main__":
    sys.exit(main())
