"""Chain operators, cyclic identities, functionals, and towers."""

import random
from fractions import Fraction

import pytest

from ainfty.errors import ConfigurationError
from ainfty.exactla import rank
from ainfty.hochschild import (
    CocycleTower,
    Functional,
    HochschildChain,
    chain_bar,
    chain_degree,
    coboundary_tower,
    connecting_map,
    connes_B_reduced,
    cyclic_t,
    dual_B_star,
    dual_b_star,
    hochschild_b,
    iter_basis_chains,
    operator_N,
    tabulate,
    validate_negative_cocycle,
)

from conftest import (
    make_e1, make_e2, make_g1, make_p1, make_q1,
    poincare_tower, random_coboundary_tower, random_functional, ring,
)


def random_chain(algebra, rng, max_len=5):
    basis = algebra.basis
    unit = basis.require_unit()
    letters = [i for i in range(len(basis)) if i != unit]
    terms = {}
    for _ in range(rng.randint(1, 4)):
        word = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))
        module = rng.randrange(len(basis))
        coeff = ring(algebra.spec, Fraction(rng.randint(-3, 3)),
                     lam=Fraction(rng.randint(0, 2), 2), e=rng.randint(-1, 1))
        if coeff:
            terms[(module, word)] = coeff
    return HochschildChain(basis, terms, reduced=True)


def test_reduced_chains_drop_unit_words(e2):
    chain = HochschildChain(e2.basis, {(1, (0, 1)): e2.one_ring()}, reduced=True)
    assert chain.is_zero()
    unreduced = HochschildChain(e2.basis, {(1, (0, 1)): e2.one_ring()}, reduced=False)
    assert not unreduced.is_zero()


def test_b_on_zero_chain(e2):
    assert hochschild_b(e2, HochschildChain(e2.basis, {}, reduced=True)).is_zero()


def test_b_on_length_zero_chain():
    algebra = make_g1()
    chain = HochschildChain.generator(algebra.basis, 1, (), algebra.one_ring())
    out = hochschild_b(algebra, chain)
    # only the wrap-around m1 contributes, with sign +1
    expected = HochschildChain.generator(
        algebra.basis, 3, (), ring(algebra.spec, -1, lam=Fraction(1, 2))
    )
    assert out == expected


def test_curvature_insertions_die_in_reduced(e2):
    # interior arity-0 insertions produce unit tensor slots
    chain = HochschildChain.generator(e2.basis, 1, (1,), e2.one_ring())
    out = hochschild_b(e2, chain)
    for (module, word) in out.terms:
        assert 0 not in word


@pytest.mark.parametrize("maker", (make_e2, make_g1, make_p1, make_q1))
def test_chain_identities(maker):
    algebra = maker()
    basis = algebra.basis
    rng = random.Random(23)
    for _ in range(120):
        c = random_chain(algebra, rng)
        assert hochschild_b(algebra, hochschild_b(algebra, c)).is_zero()
        assert connes_B_reduced(basis, connes_B_reduced(basis, c)).is_zero()
        anti = hochschild_b(algebra, connes_B_reduced(basis, c)) + connes_B_reduced(
            basis, hochschild_b(algebra, c)
        )
        assert anti.is_zero()
        u = c.unreduced()
        assert chain_bar(algebra, chain_bar(algebra, u)).is_zero()
        lhs = hochschild_b(algebra, u - cyclic_t(basis, u))
        bar = chain_bar(algebra, u)
        rhs = bar - cyclic_t(basis, bar)
        assert (lhs - rhs).is_zero()
        assert (chain_bar(algebra, operator_N(basis, u))
                - operator_N(basis, hochschild_b(algebra, u))).is_zero()
        assert operator_N(basis, u - cyclic_t(basis, u)).is_zero()


def test_rotation_is_periodic(g1, rng):
    basis = g1.basis
    for _ in range(50):
        c = random_chain(g1, rng, max_len=4).unreduced()
        n_fold = c
        lengths = {1 + len(word) for (_, word) in c.terms}
        if len(lengths) != 1:
            continue
        (n,) = lengths
        for _ in range(n):
            n_fold = cyclic_t(basis, n_fold)
        assert n_fold == c


def test_N_on_length_one_component(e2):
    c = HochschildChain.generator(e2.basis, 1, (), e2.one_ring()).unreduced()
    assert operator_N(e2.basis, c) == c


def test_telescoping_both_orders(g1, rng):
    basis = g1.basis
    for _ in range(40):
        c = random_chain(g1, rng, max_len=4).unreduced()
        assert operator_N(basis, c - cyclic_t(basis, c)).is_zero()
        n_of_c = operator_N(basis, c)
        assert (n_of_c - cyclic_t(basis, n_of_c)).is_zero()


def test_plain_bar_differential_squares_to_zero(e2, rng):
    from ainfty.hochschild import bar_differential

    letters = (0, 1)
    for _ in range(60):
        word = tuple(rng.choice(letters) for _ in range(rng.randint(0, 5)))
        once = bar_differential(e2, {word: e2.one_ring()})
        twice: dict = {}
        for w, coeff in once.items():
            for w2, c2 in bar_differential(e2, {w: coeff}).items():
                if w2 in twice:
                    total = twice[w2] + c2
                    if total:
                        twice[w2] = total
                    else:
                        del twice[w2]
                elif c2:
                    twice[w2] = c2
        assert twice == {}


def test_bar_differential_on_plain_words(e1, e2):
    from ainfty.hochschild import bar_differential

    assert bar_differential(e1, {(): e1.one_ring()}) == {}
    out = bar_differential(e1, {(1,): e1.one_ring()})
    assert out == {}  # m1 = 0 on E1


def test_B_requires_reduced(e2):
    c = HochschildChain.generator(e2.basis, 1, (1,), e2.one_ring()).unreduced()
    with pytest.raises(ConfigurationError):
        connes_B_reduced(e2.basis, c)


def test_B_on_length_zero(e2):
    c = HochschildChain.generator(e2.basis, 1, (), e2.one_ring())
    out = connes_B_reduced(e2.basis, c)
    assert out == HochschildChain.generator(e2.basis, 0, (1,), e2.one_ring())


def test_B_kills_unit_module(e2):
    c = HochschildChain.generator(e2.basis, 0, (1, 1), e2.one_ring())
    assert connes_B_reduced(e2.basis, c).is_zero()


def test_functional_rejects_nonreduced_entries(e2):
    with pytest.raises(ConfigurationError):
        Functional(e2.basis, e2.spec, {(1, (0,)): e2.one_ring()})


def test_functional_homogeneity_enforced(e2):
    table = {
        (0, (1,)): e2.one_ring(),
        (1, (1,)): e2.one_ring(),  # different functional degree
    }
    with pytest.raises(ConfigurationError):
        Functional(e2.basis, e2.spec, table)


def test_dual_operators_square_to_zero(g1, rng):
    f = random_functional(g1, rng, d=2, max_len=3)
    for _ in range(60):
        c = random_chain(g1, rng, max_len=3)
        assert dual_b_star(g1, dual_b_star(g1, f)).apply(c).is_zero()
        assert dual_B_star(g1, dual_B_star(g1, f)).apply(c).is_zero()
        mixed = dual_b_star(g1, dual_B_star(g1, f)).apply(c) + dual_B_star(
            g1, dual_b_star(g1, f)
        ).apply(c)
        assert mixed.is_zero()


def test_poincare_tower_validates():
    for maker in (make_e1, make_e2):
        algebra = maker()
        assert validate_negative_cocycle(algebra, poincare_tower(algebra)).passed


def test_zero_tower_validates(e2):
    tower = CocycleTower((Functional(e2.basis, e2.spec, {}),))
    assert validate_negative_cocycle(e2, tower).passed


def test_tower_mutation_fails_validation(g1):
    # over G1 the differential couples entries, so flipping a coupled entry
    # breaks the cocycle condition (over E1 the reduced differential
    # vanishes identically and no single-entry mutation is detectable)
    rng = random.Random(31)
    tower = random_coboundary_tower(g1, rng, d_base=1)
    while all(p.is_zero() for p in tower.levels):
        tower = random_coboundary_tower(g1, rng, d_base=1)
    assert validate_negative_cocycle(g1, tower).passed
    psi0 = tower.levels[0]
    killed = 0
    for key in sorted(psi0.table):
        mutated_table = dict(psi0.table)
        mutated_table[key] = -mutated_table[key]
        mutated = CocycleTower((Functional(g1.basis, g1.spec, mutated_table),)
                               + tower.levels[1:])
        if not validate_negative_cocycle(g1, mutated).passed:
            killed += 1
    assert killed > 0


def test_coboundary_towers_validate(g1, p1, rng):
    for algebra, d in ((g1, 1), (p1, 0)):
        for _ in range(4):
            tower = random_coboundary_tower(algebra, rng, d_base=d)
            assert validate_negative_cocycle(algebra, tower).passed


def test_tower_degree_ladder_enforced(e2):
    f0 = Functional(e2.basis, e2.spec, {(0, (1,)): e2.one_ring()})  # degree 0
    f2 = Functional(e2.basis, e2.spec, {(0, (1,)): ring(e2.spec, 1, e=1)})  # degree 2
    CocycleTower((f0, f2))  # ladder 0, 2 is legal
    with pytest.raises(ConfigurationError):
        CocycleTower((f0, f0))  # level 1 must sit two degrees higher


def test_connecting_map_of_trace(e1):
    # the u^0 trace: any functional is b*-closed over E1, so its image validates
    trace = Functional(e1.basis, e1.spec, {(0, (1, 1)): e1.one_ring()})
    tower = connecting_map(e1, [trace], l_max=4)
    assert validate_negative_cocycle(e1, tower).passed
    assert not tower.psi0.is_zero()


def test_connecting_map_zero_input(e1):
    tower = connecting_map(e1, [Functional(e1.basis, e1.spec, {})], l_max=4)
    assert all(level.is_zero() for level in tower.levels)


def test_invalid_tower_reports_offending_word(g1):
    # an arbitrary functional is not a cocycle; the report names a witness
    psi0 = Functional(g1.basis, g1.spec, {(3, (1,)): ring(g1.spec, 1, e=1)})
    report = validate_negative_cocycle(g1, CocycleTower((psi0,)))
    assert not report.passed
    assert any("level 0 at [" in msg for msg in report.failures)


def test_cyclic_cohomology_window_dims_match():
    """Connecting-map dimension count on E1, by exact rank over a window.

    Over E1 the reduced module differential vanishes identically, so in a
    fixed total degree the windowed negative cyclic cochain cohomology is
    ker(B* on the degree-0 functionals) while the matching positive one is
    coker(B* into the degree-1 functionals).  The connecting isomorphism
    predicts equal dimensions; over the rationals both come out 1 (the
    kernel is spanned by the length-0 dual, the cokernel by the window
    boundary), and the equality genuinely uses characteristic 0: B* scales
    by the rotation count, so no interior dual generator dies.
    """
    e1 = make_e1()
    basis = e1.basis
    L = 6
    f_keys = [(0, (1,) * k) for k in range(L + 1)]       # duals of degree-0 chains
    g_keys = [(1, (1,) * k) for k in range(L + 1)]       # duals of degree-1 chains
    g_index = {k: i for i, k in enumerate(g_keys)}

    # verify b = 0 exactly on the window, so B alone controls both sides
    for module, word in f_keys + g_keys:
        chain = HochschildChain.generator(basis, module, word, e1.one_ring())
        assert hochschild_b(e1, chain).is_zero()

    # matrix of B* from the f-window to the g-window: (B*f)(c) = f(B c)
    rows = []
    for fm, fw in f_keys:
        row = [Fraction(0)] * len(g_keys)
        for gi, (gm, gw) in enumerate(g_keys):
            chain = HochschildChain.generator(basis, gm, gw, e1.one_ring())
            image = connes_B_reduced(basis, chain)
            coeff = image.terms.get((fm, fw))
            if coeff:
                row[gi] = Fraction(coeff.coefficient(e1.spec.one_monomial()))
        rows.append(row)
    r = rank(rows)
    dim_negative = len(f_keys) - r   # ker(B* on f-duals): the cocycle window
    dim_positive = len(g_keys) - r   # coker(B* into g-duals): the quotient window
    assert dim_negative == dim_positive == 1


def test_tabulate_materializes_lazy_functionals(g1, rng):
    f = random_functional(g1, rng, d=2, max_len=2)
    lazy = dual_b_star(g1, f)
    table = tabulate(g1, lazy, 3)
    for module, word in iter_basis_chains(g1, 3):
        chain = HochschildChain.generator(g1.basis, module, word, g1.one_ring())
        assert table.apply(chain) == lazy.apply(chain)
