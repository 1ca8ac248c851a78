from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.bitcore.bitstring import Bit, BitString, EnsembleParams
from app.exceptions import DomainError, ShapeError
from app.dynamics.measurement import cluster_counts, measure_cluster
from app.dynamics.padic import PAdicLabel, padic_distance, padic_valuation, position_label
from app.dynamics.unitary import UnitaryProgram, enumerate_unitary_images, evolve, invert, is_unitary_image
from app.states.qubit import bloch_state
from app.states.skeleton import SkeletonPoint
from tests.strategies import strings_with_nulls


def state(m, n, N, n_X=0):
    return bloch_state(SkeletonPoint(m=m, n=n, params=EnsembleParams(N=N, n_X=n_X)))


# unitary


def test_single_step_program():
    unit = BitString.unit(EnsembleParams(N=1))
    assert evolve(UnitaryProgram(steps=[(1, 1)]), unit).to_list() == [1, 1, -1, -1]
    for N in (2, 5, 9):
        unit = BitString.unit(EnsembleParams(N=N))
        assert evolve(UnitaryProgram(steps=[(N, N)]), unit) == state(N, N, N)


def test_program_composition():
    a = UnitaryProgram(steps=[(1, 2)])
    b = a + (0, 3) + UnitaryProgram(steps=[(2, 0)])
    assert b.steps == [(1, 2), (0, 3), (2, 0)]
    assert len(b) == 3
    assert UnitaryProgram.from_json(b.to_json()) == b
    with pytest.raises(TypeError):
        a + "x"


def test_program_range_checked():
    unit = BitString.unit(EnsembleParams(N=2))
    with pytest.raises(DomainError):
        evolve(UnitaryProgram(steps=[(5, 0)]), unit)
    with pytest.raises(DomainError):
        evolve(UnitaryProgram(steps=[(0, 8)]), unit)


def test_random_programs_round_trip():
    rng = np.random.default_rng(1234)
    for _ in range(1000):
        N = int(rng.integers(1, 65))
        params = EnsembleParams(N=N)
        steps = [
            (int(rng.integers(0, 2 * N + 1)), int(rng.integers(0, params.p)))
            for _ in range(int(rng.integers(0, 33)))
        ]
        program = UnitaryProgram(steps=steps)
        unit = BitString.unit(params)
        assert invert(program, evolve(program, unit)) == unit


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_single_step_inverse_exhaustive(N):
    unit = BitString.unit(EnsembleParams(N=N))
    for m in range(2 * N + 1):
        for n in range(4 * N):
            program = UnitaryProgram(steps=[(m, n)])
            assert invert(program, evolve(program, unit)) == unit


def test_shifted_nulls_stay_put_under_interp():
    unit = BitString.unit(EnsembleParams(N=2, n_X=1))
    program = UnitaryProgram(steps=[(1, 1), (1, 0)])
    out = evolve(program, unit)
    assert str(out) == "x+-+-+-+-"
    assert invert(program, out) == unit


@settings(max_examples=200, deadline=None)
@given(strings_with_nulls(max_N=24, max_nulls=7), st.data())
def test_programs_with_nulls_round_trip(s, data):
    N, p = s.N, s.params.p
    step = st.tuples(st.integers(0, 2 * N), st.integers(0, p - 1))
    steps = data.draw(st.lists(step, max_size=16))
    program = UnitaryProgram(steps=steps)
    out = evolve(program, s)
    assert out.count(Bit.NULL) == s.params.n_X
    assert invert(program, out) == s


def test_is_unitary_image_recovers_parameters():
    assert is_unitary_image(state(3, 5, N=4)) == (3, 5)
    assert is_unitary_image(BitString.unit(EnsembleParams(N=4))) == (0, 0)
    assert is_unitary_image(BitString.from_symbols([1, -1, 1, 1])) is None


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_unitary_image_count(N):
    images = enumerate_unitary_images(EnsembleParams(N=N))
    assert len(images) == (2 * N - 1) * 4 * N + 2
    for s, (m, n) in list(images.items())[:: max(1, len(images) // 10)]:
        assert is_unitary_image(s) == (m, n)


def test_shuffled_images_are_rarely_images():
    rng = np.random.default_rng(50)
    N = 4
    hits = 0
    for seed in range(50):
        s = state(int(rng.integers(3, 6)), int(rng.integers(0, 4 * N)), N)
        shuffled = measure_cluster(s, seed).disordered
        found = is_unitary_image(shuffled)
        if found is not None:
            hits += 1
            assert state(found[0], found[1], N) == shuffled
    assert hits <= 2


# measurement


def test_measure_is_seeded():
    s = state(3, 2, N=4, n_X=1)
    a, b = measure_cluster(s, 11), measure_cluster(s, 11)
    assert a.disordered == b.disordered
    assert a.permutation_digest == b.permutation_digest
    assert measure_cluster(s, 12).permutation_digest != a.permutation_digest


def test_measure_preserves_counts():
    s = state(5, 1, N=4, n_X=2)
    outcome = measure_cluster(s, 3)
    assert outcome.counts == cluster_counts(s) == {"plus": 6, "minus": 10, "null": 2}
    clustered = outcome.clustered().to_list()
    assert clustered == [1] * 6 + [0] * 2 + [-1] * 10
    assert outcome.to_dict()["seed"] == 3


# padic


@pytest.mark.parametrize("n, p, v", [(12, 2, 2), (-75, 5, 2), (7, 5, 0), (13**3, 13, 3)])
def test_valuation(n, p, v):
    assert padic_valuation(n, p) == v


def test_valuation_of_zero():
    with pytest.raises(DomainError):
        padic_valuation(0, 5)


def test_position_label_digits():
    params = EnsembleParams(N=1, n_X=1)
    label = position_label(37, params, depth=4)
    assert label.base == 5
    assert label.digits == [2, 2, 1, 0]


def test_distance_examples():
    params = EnsembleParams(N=1, n_X=1)
    u, v = position_label(0, params, 4), position_label(25, params, 4)
    d = padic_distance(u, v)
    assert (d.k, d.value) == (2, Fraction(1, 25))
    same = padic_distance(u, u)
    assert (same.k, float(same)) == (None, 0.0)
    with pytest.raises(ShapeError):
        padic_distance(u, position_label(0, params, 3))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 5**6 - 1), st.integers(0, 5**6 - 1))
def test_distance_is_inverse_power_of_valuation(i, j):
    params = EnsembleParams(N=1, n_X=1)
    d = padic_distance(position_label(i, params, 6), position_label(j, params, 6))
    if i == j:
        assert d.value == 0
    else:
        assert d.value == Fraction(1, 5 ** padic_valuation(i - j, 5))


@pytest.mark.parametrize("base, depth", [(5, 1), (5, 2), (5, 3), (13, 1), (13, 2)])
def test_ultrametric_exhaustive(base, depth):
    labels = [
        PAdicLabel(base=base, digits=[(i // base**k) % base for k in range(depth)])
        for i in range(base**depth)
    ]
    D = np.array([[float(padic_distance(u, v)) for v in labels] for u in labels])
    assert np.all(D[:, None, :] <= np.maximum(D[:, :, None], D[None, :, :]))


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([5, 13]), st.integers(1, 6), st.data())
def test_ultrametric_random(base, depth, data):
    digits = st.lists(st.integers(0, base - 1), min_size=depth, max_size=depth)
    u, v, w = (PAdicLabel(base=base, digits=data.draw(digits)) for _ in range(3))
    assert padic_distance(u, w).value <= max(padic_distance(u, v).value, padic_distance(v, w).value)


def test_base_checks():
    params = EnsembleParams(N=3, n_X=1)
    assert position_label(1, params, 2, pythagorean=True).base == 13
    with pytest.raises(DomainError):
        position_label(1, params, 2, base=7, pythagorean=True)
    with pytest.raises(DomainError):
        position_label(1, params, 2, base=6, require_prime=True)
    with pytest.raises(DomainError):
        PAdicLabel(base=5, digits=[5])
