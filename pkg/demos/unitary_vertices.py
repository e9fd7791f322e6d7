#!/usr/bin/env python3
"""Special vertices of ramified quasi-split SU_n and their type counts.

Each vertex case reduces to an involution on SL_n expressed through the
hermitian Gram matrix in the relevant lattice basis; the Gram matrices are
derived here symbolically (valuation and sign per entry), never
hard-coded.
"""

from parahoric import su_special_vertex_types
from parahoric.slmodel import (
    gram_conjugate,
    gram_unit_part,
    hermitian_gram,
)


def show_gram(n, exponents, title):
    gram = hermitian_gram(n, exponents)
    print(f"  {title}: lattice exponents {exponents}")
    rows = []
    for j in range(n):
        i = gram.perm[j]
        sign = "+" if gram.signs[j] > 0 else "-"
        rows.append(f"col {j + 1} -> row {i + 1}: {sign}pi^{gram.valuations[j]}")
    print("    " + "; ".join(rows))
    unit = gram_unit_part(gram_conjugate(gram))
    if unit is None:
        print("    mixed valuations: no unit normalization of the form exists")
    else:
        print(f"    constant valuation; unit part has entries "
              f"{tuple(map(str, unit.entries))}")


print("Gram matrices in the lattice bases:")
show_gram(5, (1, 1, 0, 0, 0), "odd case B  (n = 5)")
show_gram(4, (1, 1, 0, 0), "even case Lm (n = 4)")
show_gram(4, (0, 0, 0, 0), "even case L0 (n = 4)")

print()
print("Type counts at the special vertices:")
for n, case in [(5, "odd-A"), (5, "odd-B"), (7, "odd-A"), (7, "odd-B"),
                (4, "even-Lm"), (4, "even-L0"), (6, "even-Lm"), (6, "even-L0")]:
    report = su_special_vertex_types(n, case)
    print(f"  SU_{n} {case:7s}: involution {report.involution_kind:7s} "
          f"H1(T) order {report.torus_h1_order}, {report.type_count} type(s)")

print()
report = su_special_vertex_types(5, "odd-B")
print("odd-B derivation note:")
print("  " + report.derivation)
