import random

import pytest
from hypothesis import given, settings, strategies as st

from gentlecat.presentation import (
    GentlePresentation, PresentationError, RUNNING_EXAMPLE, least_rotation,
    parse_presentation, random_gentle,
)


def test_running_example_is_valid(pres):
    report = pres.validate()
    assert report.valid, report.issues


def test_running_example_dimension(pres):
    assert pres.dimension() == 13


def test_path_basis_contents(pres):
    words = sorted(p.arrows for p in pres.path_basis())
    trivials = [w for w in words if not w]
    singles = [w for w in words if len(w) == 1]
    doubles = [w for w in words if len(w) == 2]
    assert len(trivials) == 5
    assert singles == [('a',), ('b',), ('c',), ('d',), ('e',), ('f',)]
    # the only nonzero length-2 composites
    assert doubles == [('a', 'f'), ('d', 'c')]
    assert len(words) == 13


def test_full_relation_cycles(pres):
    assert pres.full_relation_cycles() == [('a', 'b', 'c'), ('d', 'e', 'f')]


def test_compose(pres):
    a = pres.path(['a'])
    f = pres.path(['f'])
    b = pres.path(['b'])
    af = pres.compose(a, f)
    assert af is not None and af.arrows == ('a', 'f')
    assert af.source == '3' and af.target == '1'
    assert pres.compose(b, a) is None  # (b, a) is a relation
    e3 = pres.trivial('3')
    assert pres.compose(af, e3) == af
    assert pres.compose(pres.trivial('1'), af) == af


def test_trivial_and_unknown_vertex(pres):
    assert pres.trivial('0').is_trivial
    with pytest.raises(PresentationError):
        pres.trivial('9')
    with pytest.raises(PresentationError):
        pres.path(['a', 'b'])  # t(b) = 2 but s(a) = 0: not composable


def test_a2_and_point_dimensions(a2, point):
    assert a2.dimension() == 3
    assert point.dimension() == 1


def test_parse_error_names_line():
    with pytest.raises(PresentationError, match="line 3"):
        parse_presentation("algebra x\nvertex 0\nbogus stuff\n")


# -- the six single-axiom perturbations --------------------------------------
#
# Each perturbation is built to break one named axiom; touching the quiver
# can violate neighbouring axioms too, so the tests assert the expected
# condition is among those reported.

def _perturbed(extra="", drop=()):
    lines = [l for l in RUNNING_EXAMPLE.splitlines() if l not in drop]
    return "\n".join(lines) + "\n" + extra


def _conditions(text):
    report = parse_presentation(text).validate()
    assert not report.valid
    return report.conditions()


def test_perturbation_vertex_degree_out():
    # third arrow out of vertex 0; the extra unforbidden compositions then
    # also trip (2), (3) and the dimension check
    conds = _conditions(_perturbed(extra="arrow g 0 2\n"))
    assert "condition (1)" in conds


def test_perturbation_vertex_degree_in():
    # third arrow into vertex 0
    conds = _conditions(_perturbed(extra="arrow g 3 0\n"))
    assert "condition (1)" in conds


def test_perturbation_two_forbidden_continuations():
    # both (d, c) and (a, c) in the ideal
    conds = _conditions(_perturbed(extra="rel d c\n"))
    assert "condition (2)" in conds


def test_perturbation_two_forbidden_arrivals():
    # both (a, f) and (a, c) in the ideal
    conds = _conditions(_perturbed(extra="rel a f\n"))
    assert "condition (3)" in conds


def test_perturbation_non_composable_relation():
    with pytest.raises(PresentationError, match=r"condition \(4\)"):
        parse_presentation(_perturbed(extra="rel b d\n"))


def test_perturbation_infinite_dimensional():
    text = _perturbed(drop=("rel b a", "rel c b", "rel a c"))
    conds = _conditions(text)
    assert "finite-dimensionality" in conds
    report = parse_presentation(text).validate()
    witness = [i.witness for i in report.issues
               if i.condition == "finite-dimensionality"]
    assert witness and "cycle" in witness[0]
    with pytest.raises(PresentationError, match="infinite dimensional"):
        parse_presentation(text).path_basis()


def test_least_rotation():
    assert least_rotation(('c', 'a', 'b')) == ('a', 'b', 'c')
    assert least_rotation(('a',)) == ('a',)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_gentle_is_valid(seed):
    pres = random_gentle(6, rng=random.Random(seed))
    report = pres.validate()
    assert report.valid, report.issues
    # finite dimensional by construction
    assert pres.dimension() >= len(pres.vertices)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_gentle_path_basis_closed_under_factors(seed):
    pres = random_gentle(5, rng=random.Random(seed))
    basis = {p.arrows for p in pres.path_basis()}
    for word in basis:
        for i in range(len(word)):
            for j in range(i + 1, len(word) + 1):
                assert word[i:j] in basis
