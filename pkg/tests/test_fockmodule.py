import pytest

from parastat import fockmodule, isoscalar
from parastat.exactnum import ONE, ZERO, RadicalSum
from parastat.fockmodule import (
    EXPECTED_KINDS,
    Bracket,
    Gen,
    GeneratorLabel,
    apply,
    bracket,
    bracket_kinds,
    depth,
    evaluate,
    generators,
    matrix,
    relation_specs,
    verify_adjointness,
    verify_cartan,
    verify_closed_form,
    verify_gl_embedding,
    verify_nilpotency,
    verify_phase_link,
    verify_relations,
    verify_vacuum,
)
from parastat.gzbasis import GZPattern, Signature, basis, vacuum
from oracles import action_11, signed_square


def P(m, n, *rows):
    return GZPattern(m, n, tuple(tuple(r) for r in rows))


def L(spec, variant="osp"):
    return GeneratorLabel.parse(spec, variant)


def clear_caches():
    fockmodule._creation_terms.cache_clear()
    fockmodule._annihilation_terms.cache_clear()
    fockmodule._matrix_cached.cache_clear()


@pytest.fixture
def fresh_caches():
    clear_caches()
    yield
    clear_caches()


# ------------------------------------------------------------------ labels


def test_label_parsing_and_degrees():
    f = L("f1+", "pso")
    assert (f.family, f.index, f.sign) == ("f", 1, 1)
    assert f.degree == (1, 1)
    assert L("b2-", "pso").degree == (1, 0)
    assert L("f1-").degree == (0, 0)
    assert L("b1+").degree == (1, 0)
    assert L("b2-").unified(3) == 5
    assert L("f1+").adjoint() == L("f1-")
    for bad in ("g1+", "f+", "f1", "fx+"):
        with pytest.raises(ValueError):
            L(bad)
    with pytest.raises(ValueError):
        GeneratorLabel("f", 1, 1, "gl")


def test_out_of_range_generator():
    with pytest.raises(IndexError):
        matrix(L("f2+"), Signature(1, 1, 1, 2))


def test_bracket_kinds():
    # [PAPER] f~ with f~ commutes, f~ with b~ and b~ with b~ anticommute
    ff = Bracket(Bracket(Gen(L("f1+", "pso")), Gen(L("f1-", "pso"))), Gen(L("b1+", "pso")))
    assert bracket_kinds(ff) == "[["
    fb = Bracket(Bracket(Gen(L("f1+", "pso")), Gen(L("b1+", "pso"))), Gen(L("f1-", "pso")))
    assert bracket_kinds(fb) == "{{"
    bb = Bracket(Bracket(Gen(L("b1+", "pso")), Gen(L("b1-", "pso"))), Gen(L("b1+", "pso")))
    assert bracket_kinds(bb) == "{["
    fbo = Bracket(Bracket(Gen(L("f1+")), Gen(L("b1+"))), Gen(L("f1-")))
    assert bracket_kinds(fbo) == "[["


def test_relation_specs_cover_every_triple():
    for variant in ("osp", "pso"):
        specs = list(relation_specs(2, 1, variant))
        names = {s[0] for s in specs}
        assert names == set(EXPECTED_KINDS[variant])
        # 8 sign choices for each index triple
        assert sum(1 for s in specs if s[0] == "fff") == 8 * 2 ** 3
        assert sum(1 for s in specs if s[0] == "fbf") == 8 * 2 * 1 * 2
        assert all(depth(s[3]) == 3 for s in specs)


# ---------------------------------------------------------------- actions


def test_creation_on_vacuum():
    sig = Signature(1, 1, 2, 3)
    vac = vacuum(1, 1)
    # [DERIVED] G_1 = sqrt p, unit CGC
    assert apply(L("f1+"), {vac: ONE}, sig) == {P(1, 1, (1, 0), (1,)): RadicalSum.sqrt(2)}
    # [TRIVIAL] level 0 carries the sign +1
    assert apply(L("f1+", "pso"), {vac: ONE}, sig) == apply(L("f1+"), {vac: ONE}, sig)
    assert apply(L("b1+"), {vac: ONE}, sig) == {P(1, 1, (1, 0), (0,)): RadicalSum.sqrt(2)}
    for g in ("f1-", "b1-"):
        assert apply(L(g), {vac: ONE}, sig) == {}


def test_two_term_action_on_fill_deficient_pattern():
    # [PAPER] f+ on (1,0 / 0) at p = 2 has the two printed terms
    sig = Signature(1, 1, 2, 3)
    out = apply(L("f1+"), {P(1, 1, (1, 0), (0,)): ONE}, sig)
    got = {(t.top[0], t.top[1], t.rows[1][0]): signed_square(v) for t, v in out.items()}
    assert got == action_11("f+", 1, 0, 0, 2)
    assert set(got) == {(2, 0, 1), (1, 1, 1)}


def test_linearity_of_apply():
    sig = Signature(2, 1, 2, 3)
    b = basis(sig)
    v = {b[1]: RadicalSum.sqrt(3), b[2]: RadicalSum.rational(-2)}
    gen = L("f2+", "pso")
    combined = apply(gen, v, sig)
    split = {}
    for pat, c in v.items():
        for t, x in apply(gen, {pat: ONE}, sig).items():
            split[t] = split.get(t, ZERO) + c * x
    assert combined == {t: x for t, x in split.items() if x}


@pytest.mark.parametrize("p", [1, 2, 3])
def test_all_two_label_actions_match_closed_forms(p):
    # [PAPER] every entry of the four m = n = 1 generators up to level 6
    sig = Signature(1, 1, p, 6)
    for pat in basis(sig):
        a, b = pat.top
        fill = pat.rows[1][0]
        for g in ("f+", "f-", "b+", "b-"):
            out = apply(L(g[0] + "1" + g[1]), {pat: ONE}, sig)
            got = {(t.top[0], t.top[1], t.rows[1][0]): signed_square(v) for t, v in out.items()}
            want = {k: v for k, v in action_11(g, a, b, fill, p).items() if sum(k[:2]) <= 6}
            assert got == want, (g, pat)


def test_matrix_entries_connect_adjacent_levels():
    sig = Signature(2, 1, 2, 3)
    for gen in generators(sig, "pso"):
        M = matrix(gen, sig)
        assert M.level_shift == gen.sign
        for row, col, v in M.entries():
            assert row.level - col.level == gen.sign and v


def test_single_column_example():
    # [DERIVED] c_1^+ at (1,1,p=1,N=1) only acts on the vacuum
    sig = Signature(1, 1, 1, 1)
    M = matrix(L("f1+"), sig)
    cols = {c for _, c, _ in M.entries()}
    assert cols == {vacuum(1, 1)}
    assert M.nnz() == 1


def test_adjoint_and_vacuum_column():
    sig = Signature(2, 1, 2, 4)
    for variant in ("osp", "pso"):
        for gen in generators(sig, variant):
            if gen.sign > 0:
                assert matrix(gen.adjoint(), sig).diff_entry(matrix(gen, sig).transpose()) is None
            else:
                assert not any(c == vacuum(2, 1) for _, c, _ in matrix(gen, sig).entries())


def test_matrix_json_shape():
    sig = Signature(1, 1, 2, 2)
    obj = matrix(L("b1+"), sig).to_json_obj()
    assert obj["m"] == 1 and obj["level_shift"] == 1
    assert len(obj["basis"]) == len(basis(sig))
    assert all(set(e) >= {"row", "col", "value"} for e in obj["entries"])


# ---------------------------------------------------------------- brackets


def test_graded_bracket_signs():
    sig = Signature(1, 1, 2, 4)
    A, B = matrix(L("f1+", "pso"), sig), matrix(L("b1+", "pso"), sig)
    anti = bracket(A, B, 2)
    assert anti.degree == (0, 1)
    by_hand = (A @ B.restrict(2)) + (B @ A.restrict(2))
    assert (anti - by_hand.restrict(2)).is_zero()
    C = matrix(L("f1-", "pso"), sig)
    comm = bracket(A, C, 2)
    assert comm.degree == (0, 0)
    assert (comm - ((A @ C.restrict(2)) - (C @ A.restrict(2))).restrict(2)).is_zero()


def test_depth_and_truncation_guard():
    sig = Signature(1, 1, 2, 3)
    w = Bracket(Bracket(Gen(L("f1+")), Gen(L("f1-"))), Gen(L("f1+")))
    assert depth(w) == 3
    evaluate(w, sig, 0)
    with pytest.raises(ValueError):
        evaluate(w, sig, 1)


def test_fff_example():
    # [TRIVIAL] [[f+, f-], f+] = 2 f+
    sig = Signature(1, 1, 2, 5)
    w = Bracket(Bracket(Gen(L("f1+")), Gen(L("f1-"))), Gen(L("f1+")))
    assert (evaluate(w, sig, 2) - matrix(L("f1+"), sig).restrict(2).scale(2)).is_zero()


@pytest.mark.parametrize("sign", ["+", "-"])
def test_mixed_identity_signs_differ_between_variants(sign):
    # [PAPER] [[f+, b], f-] = -2 b but {{f~+, b~}, f~-} = +2 b~
    sig = Signature(1, 1, 2, 5)
    for variant, coeff in (("osp", -2), ("pso", 2)):
        w = Bracket(Bracket(Gen(L("f1+", variant)), Gen(L("b1" + sign, variant))), Gen(L("f1-", variant)))
        rhs = matrix(L("b1" + sign, variant), sig).restrict(2).scale(coeff)
        assert (evaluate(w, sig, 2) - rhs).is_zero()


# --------------------------------------------------------------- verifiers


def test_relations_small():
    for variant in ("osp", "pso"):
        rep = verify_relations(Signature(1, 1, 2, 4), variant)
        assert rep["ok"], [r for r in rep["results"] if r["status"] != "ok"][:3]
        assert rep["max_source_level"] == 1
        assert {"relation", "indices", "signs", "status"} <= set(rep["results"][0])


def test_relations_need_depth():
    with pytest.raises(ValueError):
        verify_relations(Signature(1, 1, 2, 2), "osp")


def test_gl_embedding_small():
    rep = verify_gl_embedding(Signature(2, 1, 2, 3), "pso")
    assert rep["ok"]
    assert rep["checked"] == 9 * 9 + 3


def test_vacuum_adjoint_cartan_nilpotency_small():
    sig = Signature(2, 1, 2, 4)
    for variant in ("osp", "pso"):
        assert verify_vacuum(sig, variant)["ok"]
        assert verify_adjointness(sig, variant)["ok"]
        assert verify_cartan(sig, variant)["ok"]
    assert verify_nilpotency(sig)["ok"]


def test_closed_form_small():
    rep = verify_closed_form(2, 5)
    assert rep["ok"] and rep["suite"] == "closed-form"


def test_phase_link_twist_clauses():
    rep = verify_phase_link(Signature(2, 1, 2, 3))
    twist = [r for r in rep["results"] if r["relation"] == "twist"]
    assert twist and all(r["status"] == "ok" for r in twist)


def test_threads_give_identical_matrices(monkeypatch, fresh_caches):
    sig = Signature(2, 1, 2, 3)
    one = matrix(L("f1+", "pso"), sig).to_json_obj()
    clear_caches()
    monkeypatch.setenv("PARASTAT_THREADS", "4")
    assert matrix(L("f1+", "pso"), sig).to_json_obj() == one


# ---------------------------------------------------------------- mutations


def test_mutation_signed_prefactor_breaks_relations(monkeypatch, fresh_caches):
    # the printed reading of the two-fermion-label factor flips the sign when k > q
    orig = isoscalar.iso_super

    def printed(case, k, q, t, mu):
        v = orig(case, k, q, t, mu)
        return -v if case == "f-f" and q is not None and k > q else v

    monkeypatch.setattr(isoscalar, "iso_super", printed)
    rep = verify_relations(Signature(2, 1, 1, 4), "osp")
    assert not rep["ok"]
    bad = next(r for r in rep["results"] if r["status"] != "ok")
    assert "counterexample" in bad


def test_mutation_missing_twist_breaks_pso(monkeypatch, fresh_caches):
    orig = fockmodule._basis_action

    def untwisted(gen, mu, sig, route):
        return orig(GeneratorLabel(gen.family, gen.index, gen.sign, "osp"), mu, sig, route)

    monkeypatch.setattr(fockmodule, "_basis_action", untwisted)
    # at p <= 2 the untwisted matrices happen to satisfy the relations as well
    assert not verify_relations(Signature(1, 1, 3, 6), "pso")["ok"]


def test_mutation_flipped_generator_breaks_relations(monkeypatch, fresh_caches):
    orig = fockmodule.matrix
    target = L("b1-")

    def flipped(gen, sig, route="twist"):
        M = orig(gen, sig, route)
        return M.scale(-1) if gen == target else M

    monkeypatch.setattr(fockmodule, "matrix", flipped)
    rep = verify_relations(Signature(1, 1, 2, 4), "osp")
    assert not rep["ok"]
    assert {r["relation"] for r in rep["results"] if r["status"] != "ok"} & {"bbb", "fbb"}


def test_mutation_wrong_vacuum_norm(monkeypatch, fresh_caches):
    sig = Signature(1, 1, 3, 3)
    monkeypatch.setattr(fockmodule, "_reduced_fn", lambda route: (lambda k, top, m, p: RadicalSum.sqrt(p + 1)))
    assert not verify_vacuum(sig, "osp")["ok"]
    assert not verify_cartan(sig, "osp")["ok"]
