import itertools
import random

import pytest

from gentlecat import homs as H
from gentlecat import oracle as O
from gentlecat.presentation import random_gentle
from gentlecat.strings import (
    GradedBand, enumerate_bands, enumerate_strings, parse_object_literal,
    projective_object, shift,
)


@pytest.fixture(scope="module")
def seed5():
    return random_gentle(6, random.Random(5))


@pytest.fixture(scope="module")
def band6(pres):
    return parse_object_literal(pres, "band: ~d ~e ~f c b a | mu0=0 lambda=1")


def check_against_oracle(M, N, prime=O.DEFAULT_PRIME):
    """Basis count == Hom dimension, every map is a chain map, and the family
    is linearly independent modulo homotopy."""
    basis = H.hom_basis(M, N)
    CM, CN = O.realize(M, prime), O.realize(N, prime)
    fmaps = [H.morphism_matrix(f) for f in basis]
    for f, fm in zip(basis, fmaps):
        assert O.is_chain_map(CM, CN, fm, prime), f.describe()
    assert len(basis) == O.hom_space_dims(CM, CN, prime)[2], (M, N)
    assert O.independent_mod_homotopy(CM, CN, fmaps, prime)
    return basis


def test_stalk_single_maps(pres):
    P0, P1, P3 = (projective_object(pres, v) for v in "013")
    b = H.hom_basis(P1, P0)
    assert [f.describe() for f in b] == [
        {"kind": "single", "config": "i", "at": [0, 0], "path": "a"}]
    assert [f.describe() for f in H.hom_basis(P1, P3)] == [
        {"kind": "single", "config": "i", "at": [0, 0], "path": "a*f"}]
    assert H.hom_basis(P3, P1) == []


def test_stalk_identity_graph_map(pres):
    P0 = projective_object(pres, "0")
    b = H.hom_basis(P0, P0)
    assert len(b) == 1 and b[0].kind == "graph"
    assert b[0].describe()["overlap"] == {
        "source_nodes": [0], "target_nodes": [0], "letters": 0, "full": False}


def test_identity_maps_are_boundary_without_dual(pres):
    # a degreewise isomorphism extends nothing, so no reversed quasi exists
    for lit in ("v:0 | mu0=0", "a | mu0=0", "c b | mu0=1"):
        M = parse_object_literal(pres, lit)
        (g,) = H.graph_maps(M, M)
        assert H.is_boundary_graph_map(g)
        assert H.dual_morphism(g) is None
        assert H.hom_basis(M, shift(M, 1)) == []


def test_exclusion_rule_applies_in_every_configuration(pres):
    # literal reading of the two exclusion rules keeps a config-(iii) single
    # with p=c alongside this quasi; the oracle dimension is 1
    M = parse_object_literal(pres, "~c | mu0=0")
    N = shift(parse_object_literal(pres, "d*c b a | mu0=0"), -2)
    b = check_against_oracle(M, N)
    assert [f.describe() for f in b] == [{"kind": "quasi", "overlap": {
        "source_nodes": [1], "target_nodes": [2], "letters": 0, "full": False}}]


def test_quasi_represented_by_flank_pair(pres):
    # no single identity-flank component is a chain map here; the
    # representative is the two-component map through both right flanks
    M = parse_object_literal(pres, "d ~a | mu0=0")
    N = shift(parse_object_literal(pres, "~f c | mu0=0"), -1)
    b = check_against_oracle(M, N)
    assert len(b) == 1 and b[0].kind == "quasi"
    assert H.quasi_representative(b[0]) is None
    fm = H.morphism_matrix(b[0])
    CM, CN = O.realize(M), O.realize(N)
    assert O.is_chain_map(CM, CN, fm)
    assert not O.is_null_homotopic(CM, CN, fm)


def test_band_self_extension_table(pres, band6):
    table = {k: [f.describe() for f in maps]
             for k, maps in H.hom_table(band6, band6).items()}
    full = {"source_nodes": [0, 1, 2, 3, 4, 5],
            "target_nodes": [0, 1, 2, 3, 4, 5], "letters": 6, "full": True}
    assert table == {
        -2: [{"kind": "quasi", "overlap": {"source_nodes": [0],
                                           "target_nodes": [3],
                                           "letters": 0, "full": False}}],
        0: [{"kind": "graph", "overlap": full}],
        1: [{"kind": "quasi", "overlap": full}],
        3: [{"kind": "graph", "overlap": {"source_nodes": [3],
                                          "target_nodes": [0],
                                          "letters": 0, "full": False}}],
    }


def test_band_parameter_splits_isomorphism_class(pres, band6):
    B3 = GradedBand(pres, band6.letters, mu0=0, lam=3)
    table = {k: len(v) for k, v in H.hom_table(band6, B3).items()}
    assert table == {-2: 1, 3: 1}
    for k in (-2, 0, 1, 3):
        check_against_oracle(band6, shift(B3, k))


def test_no_graph_map_out_of_longer_string(pres):
    M = parse_object_literal(pres, "b a | mu0=0")
    N = parse_object_literal(pres, "a | mu0=0")
    assert H.graph_maps(M, N) == []


def test_nonzero_turn_composite_blocks_the_dual(pres):
    # compose(a, f) = a*f != 0, so the reversed one-node overlap admits no
    # quasi reading even though it reaches no common end
    A = parse_object_literal(pres, "a | mu0=0")
    F = parse_object_literal(pres, "f | mu0=0")
    (g,) = H.graph_maps(shift(F, -1), A)
    assert H.is_boundary_graph_map(g)
    assert H.dual_morphism(g) is None
    with pytest.raises(H.HomError, match="common end"):
        H.endpoint_cone(g)
    assert H.hom_basis(A, F) == []
    assert O.object_hom_dims(A, F)[2] == 0


def test_factoring_flank_kills_candidate_overlap(seed5):
    # nL = mR * r1 lets a stationary-plus-factor homotopy cancel the would-be
    # quasi; the oracle confirms the Hom space is zero
    M = parse_object_literal(seed5, "r1 | mu0=0")
    N = shift(parse_object_literal(seed5, "~r4 r1*r3 | mu0=0"), 1)
    assert H.hom_basis(M, N) == []
    assert O.object_hom_dims(M, N)[2] == 0


def test_basis_matches_oracle_strings(pres):
    objs = enumerate_strings(pres, 3)
    for M, N in itertools.product(objs, objs):
        for k in H.shift_window(M, N):
            check_against_oracle(M, shift(N, k))


@pytest.mark.parametrize("prime", [32003, 101])
def test_basis_matches_oracle_alt_prime(pres, prime):
    objs = enumerate_strings(pres, 2)
    for M, N in itertools.product(objs, objs):
        if M.n + N.n > 3:
            continue
        for k in H.shift_window(M, N):
            check_against_oracle(M, shift(N, k), prime)


def test_basis_matches_oracle_bands(pres, band6):
    B3 = GradedBand(pres, band6.letters, mu0=0, lam=3)
    probes = enumerate_strings(pres, 1)
    for B in (band6, B3):
        for S in probes:
            for k in H.shift_window(B, S):
                check_against_oracle(B, shift(S, k))
            for k in H.shift_window(S, B):
                check_against_oracle(S, shift(B, k))


def test_basis_matches_oracle_seed5(seed5):
    objs = enumerate_strings(seed5, 2) + enumerate_bands(seed5, 4)
    kinds = set()
    for M, N in itertools.product(objs, objs):
        if M.n + N.n > 4:
            continue
        for k in H.shift_window(M, N):
            for f in check_against_oracle(M, shift(N, k)):
                kinds.add(f.kind)
    # this quiver admits nonzero length-two paths, so the sweep must
    # exercise every basis species
    assert kinds == {"graph", "quasi", "single", "double"}


def test_boundary_dichotomy_and_dual_certificates(pres):
    objs = enumerate_strings(pres, 3)
    n_boundary = n_dual = 0
    for M, N in itertools.product(objs, objs):
        for k in H.shift_window(M, N):
            Nk = shift(N, k)
            gms = H.graph_maps(M, Nk)
            if not gms:
                continue
            quasi_there = [f.describe()["overlap"]
                           for f in H.hom_basis(Nk, shift(M, 1))
                           if f.kind == "quasi"]
            for g in gms:
                boundary = H.is_boundary_graph_map(g)
                dual = H.dual_morphism(g)
                assert (dual is None) == boundary
                rev = H.BasisMorphism("quasi", Nk, shift(M, 1),
                                      overlap=H._reverse_overlap(g.overlap))
                assert (rev.describe()["overlap"] in quasi_there) != boundary
                if boundary:
                    n_boundary += 1
                else:
                    n_dual += 1
                    CM, CN, fm = H.realized(dual)
                    assert O.is_chain_map(CM, CN, fm)
                    assert not O.is_null_homotopic(CM, CN, fm)
    assert n_boundary > 100 and n_dual > 50


def test_single_and_double_duals_certified(pres):
    objs = enumerate_strings(pres, 2)
    seen = set()
    for M, N in itertools.product(objs, objs):
        for k in H.shift_window(M, N):
            for f in H.hom_basis(M, shift(N, k)):
                if f.kind not in ("single", "double"):
                    continue
                dual = H.dual_morphism(f)
                if f.kind == "single" and f.config == "i":
                    assert dual is None
                    continue
                if dual is None:
                    continue
                seen.add((f.kind, f.config))
                CM, CN, fm = H.realized(dual)
                assert O.is_chain_map(CM, CN, fm)
                assert not O.is_null_homotopic(CM, CN, fm)
    assert ("single", "ii") in seen and ("single", "iii") in seen


def test_endpoint_cone_matches_oracle(pres):
    objs = enumerate_strings(pres, 2)
    matched = zeros = turns = 0
    for M, N in itertools.product(objs, objs):
        for k in H.shift_window(M, N):
            Nk = shift(N, k)
            targets = [g for g in H.hom_basis(M, Nk)
                       if (g.kind == "graph" and H.is_boundary_graph_map(g))
                       or (g.kind == "single" and g.config == "i")]
            for g in targets:
                try:
                    cone = H.endpoint_cone(g)
                except H.HomError:
                    turns += 1
                    continue
                CM, CN, fm = H.realized(g)
                rb = O.string_readback(O.minimize(O.cone(CM, CN, fm)))
                if cone is O.ZERO:
                    zeros += 1
                    assert rb is O.ZERO
                else:
                    matched += 1
                    assert rb == cone.canonical()
    assert matched > 100 and zeros >= len(objs) and turns > 0


def test_endpoint_cone_named_examples(pres):
    P0, P1 = (projective_object(pres, v) for v in "01")
    (f,) = H.hom_basis(P1, P0)
    assert H.endpoint_cone(f) == parse_object_literal(pres, "a | mu0=0")
    (ident,) = H.hom_basis(P0, P0)
    assert H.endpoint_cone(ident) is O.ZERO


INF_LITERALS = [
    "inf-left: b a | mu0=0",
    "inf-left: a | mu0=0",
    "inf-both: a ~d | mu0=0",
    "inf-both: c b a ~d | mu0=0",
]


@pytest.mark.parametrize("lit", INF_LITERALS)
@pytest.mark.parametrize("reps", [2, 3, 4])
def test_period_endomorphism(pres, lit, reps):
    inf = parse_object_literal(pres, lit)
    S, T, fmap, m = H.period_endomorphism(inf, reps)
    assert m == 3
    assert T == inf.truncate(reps, reps)[0]
    CS, CT = O.realize(S), O.realize(T)
    assert O.is_chain_map(CS, CT, fmap)
    assert not O.is_null_homotopic(CS, CT, fmap)


@pytest.mark.parametrize("reps", [2, 3, 4])
def test_period_endomorphism_stalk_composites_null(pres, reps):
    # stalk maps supported on the stable nodes; components touching the
    # artificial cut at the deep end are excluded
    checked = 0
    for lit in INF_LITERALS:
        inf = parse_object_literal(pres, lit)
        S, T, fmap, _ = H.period_endomorphism(inf, reps)
        CS, CT = O.realize(S), O.realize(T)
        lo, hi = H.stable_node_window(inf, T)
        out_slots = {sl: t for t, sl in H._slots(T).items()}
        in_slots = {sl: t for t, sl in H._slots(S).items()}
        degrees = sorted(set(CS.degrees()) | set(CT.degrees()))
        for v in pres.vertices:
            for j in degrees:
                CP = O.realize(projective_object(pres, v, mu0=j))
                for g in O.chain_map_basis(CT, CP):
                    if all(lo <= out_slots[(jj, c)] <= hi for jj, _, c in g):
                        comp = O.compose_maps(pres, fmap, g)
                        assert O.is_null_homotopic(CS, CP, comp)
                        checked += 1
                for g in O.chain_map_basis(CP, CS):
                    if all(lo <= in_slots[(jj, r)] <= hi for jj, r, _ in g):
                        comp = O.compose_maps(pres, g, fmap)
                        assert O.is_null_homotopic(CP, CT, comp)
                        checked += 1
    assert checked >= 10


def stalk_probes(pres, C):
    for v in pres.vertices:
        for j in C.degrees():
            yield O.realize(projective_object(pres, v, mu0=j))


def test_stalk_composites_vanish_for_named_single_configs(pres):
    # out-direction for configs (iii)/(iv), in-direction for (ii)/(iv)
    objs = enumerate_strings(pres, 2)
    checked = 0
    for M, N in itertools.product(objs, objs):
        if M.n + N.n > 3:
            continue
        for k in H.shift_window(M, N):
            Nk = shift(N, k)
            singles = [f for f in H.hom_basis(M, Nk) if f.kind == "single"]
            if not singles:
                continue
            CM, CN = O.realize(M), O.realize(Nk)
            for f in singles:
                fm = H.morphism_matrix(f)
                if f.config in ("iii", "iv"):
                    for CP in stalk_probes(pres, CN):
                        for g in O.chain_map_basis(CN, CP):
                            comp = O.compose_maps(pres, fm, g)
                            assert O.is_null_homotopic(CM, CP, comp)
                            checked += 1
                if f.config in ("ii", "iv"):
                    for CP in stalk_probes(pres, CM):
                        for g in O.chain_map_basis(CP, CM):
                            comp = O.compose_maps(pres, g, fm)
                            assert O.is_null_homotopic(CP, CN, comp)
                            checked += 1
    assert checked > 100


def test_stalk_composites_vanish_for_band_quasi(pres, band6):
    B3 = GradedBand(pres, band6.letters, mu0=0, lam=3)
    for B in (band6, B3):
        Bm = shift(B, -1)
        (f,) = [f for f in H.hom_basis(Bm, B)
                if f.kind == "quasi" and f.overlap.full]
        CM, CN = O.realize(Bm), O.realize(B)
        fm = H.morphism_matrix(f)
        assert not O.is_null_homotopic(CM, CN, fm)
        for CP in stalk_probes(pres, CN):
            for g in O.chain_map_basis(CN, CP):
                comp = O.compose_maps(pres, fm, g)
                assert O.is_null_homotopic(CM, CP, comp)
        for CP in stalk_probes(pres, CM):
            for g in O.chain_map_basis(CP, CM):
                comp = O.compose_maps(pres, g, fm)
                assert O.is_null_homotopic(CP, CN, comp)


def test_double_map_stalk_composites_need_not_vanish(seed5):
    # negative control: the vanishing statements cover non-singleton doubles
    # only, and every basis double is singleton
    M = parse_object_literal(seed5, "r0*r1 | mu0=0")
    N = parse_object_literal(seed5, "r1*r3 | mu0=0")
    doubles = [f for f in H.hom_basis(M, N) if f.kind == "double"]
    assert len(doubles) == 1
    CM, CN = O.realize(M), O.realize(N)
    fm = H.morphism_matrix(doubles[0])
    survivors = 0
    for CP in stalk_probes(seed5, CN):
        for g in O.chain_map_basis(CN, CP):
            comp = O.compose_maps(seed5, fm, g)
            if not O.is_null_homotopic(CM, CP, comp):
                survivors += 1
    assert survivors > 0
