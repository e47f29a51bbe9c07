#!/usr/bin/env python3
"""Regenerate src/filledgroups/data/fixtures.json.

Each fixture group is built here from matrices or an explicit multiplication
rule (not from the package's own constructors), closed under
multiplication, and written out as the right-regular permutations of its
generators in cycle notation. Small hand-written permutation groups are
stored as given.
"""

import json
import sys
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "filledgroups" / "data" / "fixtures.json"


def close(ident, gens, mul, key):
    elems = [ident]
    index = {key(ident): 0}
    i = 0
    while i < len(elems):
        for g in gens:
            h = mul(elems[i], g)
            if key(h) not in index:
                index[key(h)] = len(elems)
                elems.append(h)
        i += 1
    return elems, index


def regular_cycles(ident, gens, mul, key):
    elems, index = close(ident, gens, mul, key)
    out = []
    for g in gens:
        perm = [index[key(mul(x, g))] for x in elems]
        out.append(cycles(perm))
    return len(elems), out


def cycles(perm):
    seen = [False] * len(perm)
    parts = []
    for s in range(len(perm)):
        if seen[s] or perm[s] == s:
            continue
        cyc, p = [], s
        while not seen[p]:
            seen[p] = True
            cyc.append(str(p + 1))
            p = perm[p]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def mat_key(m):
    return tuple((round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0) for z in m.ravel())


def matrix_group(gens):
    gens = [np.array(g, dtype=complex) for g in gens]
    return regular_cycles(np.eye(len(gens[0]), dtype=complex), gens, lambda a, b: a @ b, mat_key)


def rule_group(ident, gens, mul):
    return regular_cycles(ident, gens, mul, lambda x: x)


I2 = np.eye(2)
rot90 = np.array([[0, -1], [1, 0]])
refl = np.array([[1, 0], [0, -1]])
qi = np.array([[1j, 0], [0, -1j]])
qj = np.array([[0, 1], [-1, 0]])
omega = np.exp(1j * np.pi / 3)


def fixtures():
    fx = []

    def add(name, description, degree, gens, order):
        fx.append(
            {"name": name, "description": description, "degree": degree, "order": order, "generators": gens}
        )

    add("S3", "symmetric group on 3 points (dihedral of order 6)", 3, ["(1 2 3)", "(1 2)"], 6)
    add("D8", "dihedral, symmetries of a square", 4, ["(1 2 3 4)", "(1 3)"], 8)
    add("D10", "dihedral, symmetries of a pentagon", 5, ["(1 2 3 4 5)", "(2 5)(3 4)"], 10)
    add("D12", "dihedral, symmetries of a hexagon", 6, ["(1 2 3 4 5 6)", "(2 6)(3 5)"], 12)
    add("D14", "dihedral, symmetries of a heptagon", 7, ["(1 2 3 4 5 6 7)", "(2 7)(3 6)(4 5)"], 14)
    add("A4", "alternating group on 4 points", 4, ["(1 2 3)", "(1 2)(3 4)"], 12)
    add("D16", "dihedral, symmetries of an octagon", 8, ["(1 2 3 4 5 6 7 8)", "(2 8)(3 7)(4 6)"], 16)
    add("D8xC2", "direct product of D8 and C2", 6, ["(1 2 3 4)", "(1 3)", "(5 6)"], 16)
    # a = x -> x+1 and b = x -> 3x (resp. 5x) on Z/8, written on points 1..8
    add("SD16", "semidihedral: a^8 = b^2 = 1, bab = a^3", 8, ["(1 2 3 4 5 6 7 8)", "(2 4)(3 7)(6 8)"], 16)
    add("M16", "modular: a^8 = b^2 = 1, bab = a^5", 8, ["(1 2 3 4 5 6 7 8)", "(2 6)(4 8)"], 16)

    n, g = matrix_group([qi, qj])
    add("Q8", "quaternion group, unit quaternions {+-1, +-i, +-j, +-k}", n, g, 8)
    a = np.diag([omega, omega.conjugate()])
    n, g = matrix_group([a, qj])
    add("Q12", "dicyclic of order 12: a^6 = 1, b^2 = a^3, bab^-1 = a^-1", n, g, 12)
    n, g = matrix_group([np.diag([1j, -1j, 1]), np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]]), np.diag([1, 1, -1])])
    add("Q8xC2", "direct product of Q8 and C2", n, g, 16)
    pauli_x = np.array([[0, 1], [1, 0]])
    pauli_z = np.array([[1, 0], [0, -1]])
    n, g = matrix_group([pauli_x, pauli_z, 1j * I2])
    add("Pauli", "Pauli group C4 o D8, generated by X, Z and iI", n, g, 16)

    # (i, j) with i in Z4, j in Z4: b a b^-1 = a^-1
    n, g = rule_group((0, 0), [(1, 0), (0, 1)], lambda x, y: ((x[0] + (-1) ** x[1] * y[0]) % 4, (x[1] + y[1]) % 4))
    add("C4:C4", "C4 x| C4 with b a b^-1 = a^-1", n, g, 16)

    # (v, j) with v in (Z2)^2 as a 2-bit int, j in Z4 acting by swapping the bits
    def swap(v, j):
        return ((v & 1) << 1 | v >> 1) if j % 2 else v

    n, g = rule_group((0, 0), [(1, 0), (0, 1)], lambda x, y: (x[0] ^ swap(y[0], x[1]), (x[1] + y[1]) % 4))
    add("C2^2:C4", "(C2 x C2) x| C4, the generator of C4 swapping the two C2 factors", n, g, 16)

    # central products inside GL4(C): A (x) B with A in D8 (real 2x2), B in Q8 or D8
    n, g = matrix_group([np.kron(rot90, I2), np.kron(refl, I2), np.kron(I2, qi), np.kron(I2, qj)])
    add("D8*Q8", "central product of D8 and Q8 (extraspecial of order 32, minus type)", n, g, 32)
    n, g = matrix_group([np.kron(rot90, I2), np.kron(refl, I2), np.kron(I2, rot90), np.kron(I2, refl)])
    add("D8*D8", "central product of D8 and D8 (extraspecial of order 32, plus type)", n, g, 32)
    return fx


def main():
    fx = fixtures()
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"fixtures": fx}, indent=1) + "\n")
    print(f"wrote {len(fx)} fixtures to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
