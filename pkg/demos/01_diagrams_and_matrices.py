"""Diagrams, exact Cartan data, and Kronecker matrices.

Walks through the A/D/E/T families: adjacency and Cartan matrices, Coxeter
numbers checked against the adjacency spectrum, and the Kronecker matrices
C(X) (x) C(X')^{-1} that drive everything else.  The (A1, T_n) family
reproduces the Andrews-Gordon matrices with entries 2*min(i, j).
"""
import numpy as np

from adet import (
    adjacency_matrix,
    cartan_matrix,
    coxeter_number,
    bipartition,
    nahm_matrix,
    parse_diagram,
)


def show(m):
    for row in m.entries:
        print("   [" + "  ".join(f"{str(v):>4}" for v in row) + "]")


for name in ("A3", "D4", "E6", "T2"):
    d = parse_diagram(name)
    print(f"{name}: Coxeter number h = {coxeter_number(d)}, bipartition {bipartition(d)}")
    print("  Cartan matrix:")
    show(cartan_matrix(d))

print("\nSpectral check: largest adjacency eigenvalue vs 2 cos(pi/h)")
for name in ("A5", "D6", "E7", "E8", "T4"):
    d = parse_diagram(name)
    lam = np.linalg.eigvalsh(adjacency_matrix(d).to_float()).max()
    target = 2 * np.cos(np.pi / coxeter_number(d))
    print(f"  {name:3}: lambda_max = {lam:.12f}, 2cos(pi/h) = {target:.12f}, "
          f"gap = {abs(lam - target):.2e}")

print("\nKronecker matrices C(X) (x) C(X')^{-1}:")
for a, b in (("A1", "T1"), ("A1", "T3"), ("A2", "A1")):
    print(f"  ({a}, {b}):")
    show(nahm_matrix(parse_diagram(a), parse_diagram(b)))
