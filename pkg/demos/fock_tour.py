"""Walk through the Fock space of one parafermion and one paraboson.

Builds the truncated basis for p = 2, shows the reduced matrix elements,
acts with the creation operators on the vacuum and checks one mixed triple
relation in both gradings.
"""

from parastat import GeneratorLabel, Signature, basis, matrix, verify_relations
from parastat.fockmodule import Bracket, Gen, apply, evaluate
from parastat.exactnum import ONE
from parastat.gzbasis import top_rows, vacuum
from parastat.reduced import G

sig = Signature(1, 1, 2, 4)

print(f"basis for m = n = 1, p = {sig.p}, levels <= {sig.level_cap}")
for pat in basis(sig):
    print(f"  level {pat.level}:  {pat}")

print("\nreduced matrix elements G_k(top row)")
for level in range(3):
    for top in top_rows(1, 1, level, sig.p):
        print(f"  {top}:  G_1 = {G(1, top, 1, sig.p)}   G_2 = {G(2, top, 1, sig.p)}")

# creation operators on the vacuum
vac = {vacuum(1, 1): ONE}
for spec in ("f1+", "b1+"):
    out = apply(GeneratorLabel.parse(spec), vac, sig)
    print(f"\n{spec} |0> =", "  ".join(f"{v} |{k}>" for k, v in out.items()))

# <0| f1- f1+ |0> = p
f_up, f_dn = GeneratorLabel.parse("f1+"), GeneratorLabel.parse("f1-")
back = apply(f_dn, apply(f_up, vac, sig), sig)
print("<0| f1- f1+ |0> =", back[vacuum(1, 1)])

# the same word is -2 b in one grading and +2 b in the other
for variant in ("osp", "pso"):
    f_up = GeneratorLabel("f", 1, 1, variant)
    f_dn = GeneratorLabel("f", 1, -1, variant)
    b_up = GeneratorLabel("b", 1, 1, variant)
    word = Bracket(Bracket(Gen(f_up), Gen(b_up)), Gen(f_dn))
    lhs = evaluate(word, sig, 1)
    b = matrix(b_up, sig).restrict(1)
    for coeff in (-2, 2):
        if (lhs - b.scale(coeff)).is_zero():
            print(f"{variant}: [[f1+, b1+], f1-] = {coeff:+d} b1+ on levels <= 1")

for variant in ("osp", "pso"):
    rep = verify_relations(sig, variant)
    print(f"{variant}: {rep['checked']} triple relations, all exact: {rep['ok']}")
