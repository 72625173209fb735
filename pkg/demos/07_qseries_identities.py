"""Rogers-Ramanujan and Andrews-Gordon identities with exact coefficients.

Sum sides are Nahm-type series  sum_n q^{n^t A n/2 + B^t n} / prod (q)_{n_i};
product sides are residue-class products  prod_{n = r mod m} (1-q^n)^{-1}.
All arithmetic is exact integers, so agreement is coefficient-for-coefficient.
"""
from fractions import Fraction

from adet import compare_series, eta_like_product, f_abc

print("first Rogers-Ramanujan identity, matrix part (2), prefactor q^(-1/60):")
lhs = f_abc([[2]], [0], Fraction(-1, 60), 200)
rhs = eta_like_product({1, 4}, 5, 200, prefactor_exp=Fraction(-1, 60))
rep = compare_series(lhs, rhs)
print("  sum side    :", lhs.head(10))
print("  product side:", rhs.head(10))
print("  exact match through q^200:", rep.passed)

print("\nsecond Rogers-Ramanujan identity, B = (1), prefactor q^(11/60):")
lhs = f_abc([[2]], [1], Fraction(11, 60), 200)
rhs = eta_like_product({2, 3}, 5, 200, prefactor_exp=Fraction(11, 60))
print("  sum side    :", lhs.head(10))
print("  exact match through q^200:", compare_series(lhs, rhs).passed)

print("\nAndrews-Gordon, rank-2 matrix [[2,2],[2,4]] vs modulus 7, residues {1,2,5,6}:")
lhs = f_abc([[2, 2], [2, 4]], [0, 0], 0, 100)
rhs = eta_like_product({1, 2, 5, 6}, 7, 100)
print("  sum side    :", lhs.head(10))
print("  exact match through q^100:", compare_series(lhs, rhs).passed)

print("\nthe quadratic form of the rank-2 matrix is (n1+n2)^2 + n2^2, the")
print("Andrews-Gordon exponent with N1 = n1+n2, N2 = n2.")
