"""The (2m+2n+1)-dimensional realization and its graded brackets.

Prints the generator matrices for m = n = 1, shows which brackets are
commutators and which are anticommutators, and measures the even span.
"""

from parastat.matrixrep import (
    expected_span_rank,
    generator,
    graded_bracket,
    jacobi_residual,
    span_rank,
    spanning_elements,
    verify_defining_relations,
)

for spec in ("f1+", "f1-", "b1+", "b1-"):
    X = generator(spec, 1, 1)
    print(f"{spec}  degree {X.degree}")
    print(X.to_text())
    print()

f_up, b_up, b_dn = generator("f1+", 1, 1), generator("b1+", 1, 1), generator("b1-", 1, 1)
for name, x, y in (("f1+, b1+", f_up, b_up), ("b1-, b1+", b_dn, b_up)):
    kind = "an anticommutator" if sum(a * b for a, b in zip(x.degree, y.degree)) % 2 else "a commutator"
    print(f"[[{name}]] is {kind}:")
    print(graded_bracket(x, y).to_text())
    print()

X = graded_bracket(f_up, b_up)
print("{f1+, b1+}^2 is zero:", (X @ X).is_zero())
print("Jacobi residual for (f1+, b1+, b1-) is zero:", jacobi_residual(f_up, b_up, b_dn).is_zero())

for m, n in ((1, 1), (2, 1), (2, 2)):
    parts = spanning_elements(m, n)
    rank = span_rank(parts["f"] + parts["ff"] + parts["bb"])
    rep = verify_defining_relations(m, n)
    print(f"(m, n) = ({m}, {n}): even span {rank} (so + sp: {expected_span_rank(m, n)}), "
          f"{rep['checked']} relations exact: {rep['ok']}")
