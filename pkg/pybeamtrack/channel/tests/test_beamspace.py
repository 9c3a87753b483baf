import numpy as np
import pytest
from numpy.testing import assert_allclose


def single_path(alpha=1.0, theta_a=0.4, theta_d=1.1):
    from pybeamtrack.channel import PathState, UserChannel

    alpha = complex(alpha)
    return UserChannel((PathState(alpha.real, alpha.imag, theta_a=theta_a, theta_d=theta_d),))


def test_spatial_channel_rank_one():
    from pybeamtrack.channel import ArrayGeometry, spatial_channel, steering_vector

    rx, tx = ArrayGeometry(8), ArrayGeometry(16)
    channel = single_path(0.5 - 0.2j)
    H = spatial_channel(rx, tx, channel)

    assert H.shape == (8, 16)
    assert np.linalg.matrix_rank(H) == 1

    expected = np.sqrt(8 * 16) * (0.5 - 0.2j) * np.outer(
        steering_vector(rx, 0.4), steering_vector(tx, 1.1).conj()
    )
    assert_allclose(H, expected)


def test_spatial_channel_power():
    from pybeamtrack.channel import ArrayGeometry, spatial_channel, PathState, UserChannel

    rx, tx = ArrayGeometry(4), ArrayGeometry(4)
    # two paths, the Frobenius norm of each rank one term is sqrt(N_t N_r / L)
    channel = UserChannel((
        PathState(1.0, 0.0, theta_a=0.2, theta_d=0.3),
        PathState(0.0, 0.0, theta_a=1.0, theta_d=2.0),
    ))
    H = spatial_channel(rx, tx, channel)
    assert np.isclose(np.sum(np.abs(H) ** 2), 4 * 4 / 2)


def test_beamspace_transform_preserves_power(rng):
    from pybeamtrack.channel import beamspace_transform, dft_matrix

    H = rng.normal(size=(8, 16)) + 1j * rng.normal(size=(8, 16))
    Hb = beamspace_transform(H, dft_matrix(8), dft_matrix(16))

    assert Hb.shape == (8, 16)
    assert np.isclose(Hb.power, np.sum(np.abs(H) ** 2))


def test_beamspace_transform_zero():
    from pybeamtrack.channel import beamspace_transform, dft_matrix

    Hb = beamspace_transform(np.zeros((4, 2)), dft_matrix(4), dft_matrix(2))
    assert Hb.power == 0


def test_beamspace_transform_shape_mismatch():
    from pybeamtrack.channel import beamspace_transform, dft_matrix
    from pybeamtrack.exceptions import ConfigurationError

    with pytest.raises(ConfigurationError):
        beamspace_transform(np.ones((8, 16)), dft_matrix(16), dft_matrix(8))

    with pytest.raises(ConfigurationError):
        beamspace_transform(np.ones(8), dft_matrix(8), dft_matrix(8))


def test_user_beamspace_channel_sparse():
    from pybeamtrack.channel import ArrayGeometry, user_beamspace_channel, virtual_angles

    # a path exactly on a virtual angle concentrates in a single beam
    rx, tx = ArrayGeometry(8), ArrayGeometry(16)
    theta_a = np.arcsin(2 * virtual_angles(8)[5])
    theta_d = np.arcsin(2 * virtual_angles(16)[3])

    Hb = user_beamspace_channel(rx, tx, single_path(1.0, theta_a, theta_d))
    magnitude = np.abs(Hb.entries)

    assert np.unravel_index(np.argmax(magnitude), magnitude.shape) == (5, 3)
    assert np.isclose(magnitude[5, 3] ** 2, Hb.power)
    assert np.isclose(Hb.power, 8 * 16)


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_dirichlet_peak(n):
    from pybeamtrack.channel import dirichlet

    assert dirichlet(n, 0) == n
    assert dirichlet(n, 0.0) == n


def test_dirichlet_values():
    from pybeamtrack.channel import dirichlet

    # zeros at multiples of 1 / n
    assert np.isclose(dirichlet(8, 1 / 8), 0, atol=1e-12)
    assert np.isclose(dirichlet(8, 3 / 8), 0, atol=1e-12)

    # removable singularities at integers
    assert dirichlet(8, 1.0) == -8
    assert dirichlet(9, 1.0) == 9
    assert dirichlet(8, 2.0) == 8

    # near the singularity the limit is approached continuously
    assert np.isclose(dirichlet(8, 1e-9), 8)

    phi = np.linspace(-0.45, 0.45, 11)
    values = dirichlet(5, phi)
    assert values.shape == (11,)
    assert_allclose(values, np.sin(5 * np.pi * phi) / np.sin(np.pi * phi))
    # even function
    assert_allclose(dirichlet(5, -phi), values)


def test_beamspace_element_matches_transform(rng):
    from pybeamtrack.channel import (
        ArrayGeometry,
        beamspace_element,
        dft_matrix,
        steering_vector,
        virtual_angles,
    )

    for _ in range(100):
        n_t, n_r = rng.choice([2, 4, 8, 16], size=2)
        rx, tx = ArrayGeometry(n_r), ArrayGeometry(n_t)
        theta_a, theta_d = rng.uniform(0, np.pi, 2)
        v, c = rng.integers(n_r), rng.integers(n_t)

        response = np.outer(steering_vector(rx, theta_a), steering_vector(tx, theta_d).conj())
        expected = n_t * n_r * (dft_matrix(n_r) @ response @ dft_matrix(n_t).conj().T)[v, c]

        value = beamspace_element(
            phi_a=0.5 * np.sin(theta_a),
            phi_d=0.5 * np.sin(theta_d),
            psi_t=virtual_angles(n_t)[c],
            psi_r=virtual_angles(n_r)[v],
            n_t=n_t,
            n_r=n_r,
        )
        assert np.isclose(value, expected, rtol=0, atol=1e-9)


def test_beamspace_element_on_grid():
    from pybeamtrack.channel import beamspace_element

    # path on the beam's own virtual angle gives the full array gain
    assert np.isclose(beamspace_element(0.125, -0.25, -0.25, 0.125, 16, 8), 16 * 8)
    # one beam off on the receive side vanishes
    assert np.isclose(beamspace_element(0.125, -0.25, -0.25, 0.25, 16, 8), 0, atol=1e-9)


def test_beamspace_power_focusing(rng):
    from pybeamtrack.channel import ArrayGeometry, random_user_channel, user_beamspace_channel

    # a single path concentrates its power in a few neighbouring beams
    rx, tx = ArrayGeometry(16), ArrayGeometry(8)
    fractions = []
    for _ in range(1000):
        Hb = user_beamspace_channel(rx, tx, random_user_channel(1, rng))
        power = np.sort(np.abs(Hb.entries).ravel() ** 2)
        fractions.append(power[-4:].sum() / power.sum())

    fractions = np.array(fractions)
    # worst case is half a beam off in both dimensions, about 0.81²
    assert np.all(fractions >= 0.6)
    assert np.mean(fractions) >= 0.75
