import numpy as np
import pytest
from numpy.testing import assert_allclose


def beamspace(entries):
    from pybeamtrack.channel import BeamspaceChannel

    return BeamspaceChannel(np.asanyarray(entries, dtype=complex))


def test_beam_selector():
    from pybeamtrack.link import BeamSelector
    from pybeamtrack.exceptions import ConfigurationError

    selector = BeamSelector(2, 4)
    assert_allclose(selector.vector, [0, 0, 1, 0])

    with pytest.raises(ConfigurationError):
        BeamSelector(4, 4)

    with pytest.raises(ConfigurationError):
        BeamSelector(-1, 4)


def test_link_config_defaults():
    from pybeamtrack.link import LinkConfig
    from pybeamtrack.exceptions import ConfigurationError

    config = LinkConfig(3, 0.1)
    assert config.path_loss == (1.0, 1.0, 1.0)
    assert config.pilots == (1.0, 1.0, 1.0)

    with pytest.raises(ConfigurationError):
        LinkConfig(2, 0.1, path_loss=(1.0,))

    with pytest.raises(ConfigurationError):
        LinkConfig(1, 0.1, pilots=(2.0,))

    with pytest.raises(ConfigurationError):
        LinkConfig(1, -0.1)

    with pytest.raises(ConfigurationError):
        LinkConfig(1, 0.1, path_loss=(0.0,))


def test_select_beams():
    from pybeamtrack.link import select_beams

    entries = np.zeros((4, 3), dtype=complex)
    entries[2, 1] = 3 - 4j
    entries[0, 0] = 1
    rx, tx = select_beams(beamspace(entries))
    assert (rx.index, rx.length) == (2, 4)
    assert (tx.index, tx.length) == (1, 3)


def test_select_beams_ties():
    from pybeamtrack.link import select_beams

    # ties are resolved in row-major order
    entries = np.zeros((3, 3), dtype=complex)
    entries[1, 2] = 1j
    entries[2, 0] = -1
    entries[1, 1] = 1
    rx, tx = select_beams(beamspace(entries))
    assert (rx.index, tx.index) == (1, 1)


def test_select_beams_degenerate():
    from pybeamtrack.link import select_beams
    from pybeamtrack.exceptions import DegenerateChannelError

    with pytest.raises(DegenerateChannelError):
        select_beams(beamspace(np.zeros((4, 4))))


def test_select_beams_on_grid_path():
    from pybeamtrack.channel import (
        ArrayGeometry, PathState, UserChannel, user_beamspace_channel, virtual_angles,
    )
    from pybeamtrack.link import select_beams

    theta_a = np.arcsin(2 * virtual_angles(8)[6])
    theta_d = np.arcsin(2 * virtual_angles(16)[9])
    channel = UserChannel((PathState(1.0, 0.0, theta_a=theta_a, theta_d=theta_d),))
    rx, tx = select_beams(user_beamspace_channel(ArrayGeometry(8), ArrayGeometry(16), channel))
    assert (rx.index, tx.index) == (6, 9)


def test_dl_received_noiseless():
    from pybeamtrack.link import BeamSelector, LinkConfig, dl_received

    rng = np.random.default_rng(0)
    H0 = np.arange(12).reshape(3, 4) * (1 + 1j)
    H1 = np.ones((3, 4))
    precoders = [BeamSelector(1, 4), BeamSelector(3, 4)]
    combiner = BeamSelector(2, 3)

    config = LinkConfig(2, 0.0)
    y = dl_received(0, [beamspace(H0), beamspace(H1)], precoders, combiner, config, rng)
    # signal of user 0 plus interference of user 1's precoder through user 0's channel
    assert np.isclose(y, H0[2, 1] + H0[2, 3])

    config = LinkConfig(1, 0.0, pilots=(1j,))
    y = dl_received(0, [beamspace(H0)], precoders[:1], combiner, config, rng)
    assert np.isclose(y, 1j * H0[2, 1])


def test_dl_received_noise_statistics():
    from pybeamtrack.link import BeamSelector, LinkConfig, dl_received

    rng = np.random.default_rng(0)
    config = LinkConfig(1, 0.5)
    H = beamspace(np.zeros((2, 2)))
    y = np.array([
        dl_received(0, [H], [BeamSelector(0, 2)], BeamSelector(1, 2), config, rng)
        for _ in range(20000)
    ])
    assert np.isclose(np.var(y.real), 0.25, rtol=0.05)
    assert np.isclose(np.var(y.imag), 0.25, rtol=0.05)
    assert np.isclose(np.mean(y), 0, atol=0.03)


def test_dl_received_invalid():
    from pybeamtrack.link import BeamSelector, LinkConfig, dl_received
    from pybeamtrack.exceptions import ConfigurationError

    rng = np.random.default_rng(0)
    H = beamspace(np.ones((3, 4)))
    config = LinkConfig(1, 0.0)

    with pytest.raises(ConfigurationError):
        dl_received(0, [H], [BeamSelector(0, 5)], BeamSelector(0, 3), config, rng)

    with pytest.raises(ConfigurationError):
        dl_received(1, [H], [BeamSelector(0, 4)], BeamSelector(0, 3), config, rng)


def test_ul_received_noiseless():
    from pybeamtrack.link import BeamSelector, LinkConfig, ul_received

    rng = np.random.default_rng(0)
    H = [beamspace(np.arange(8).reshape(4, 2) + k) for k in range(2)]
    combiners = [BeamSelector(0, 4), BeamSelector(3, 4)]
    precoders = [BeamSelector(1, 2), BeamSelector(0, 2)]
    config = LinkConfig(2, 0.0, path_loss=(1.0, 4.0))

    y = ul_received(H, combiners, precoders, config, rng)
    assert y.shape == (2,)

    # every combiner sees all users, scaled by 1 / sqrt(ρ_k)
    expected = [
        H[0].entries[w.index, 1] + H[1].entries[w.index, 0] / 2 for w in combiners
    ]
    assert_allclose(y, expected)


def test_ul_dl_consistency():
    from pybeamtrack.link import BeamSelector, LinkConfig, dl_received, ul_received

    # single user, unit path loss and pilot: both directions observe the same entry
    H = beamspace(np.arange(12).reshape(3, 4) * (1 - 2j))
    combiner, precoder = BeamSelector(1, 3), BeamSelector(2, 4)

    y_dl = dl_received(0, [H], [precoder], combiner, LinkConfig(1, 0.3), np.random.default_rng(3))
    y_ul = ul_received([H], [combiner], [precoder], LinkConfig(1, 0.3), np.random.default_rng(3))
    assert np.isclose(y_dl, y_ul[0])


def test_ul_received_invalid():
    from pybeamtrack.link import BeamSelector, LinkConfig, ul_received
    from pybeamtrack.exceptions import ConfigurationError

    rng = np.random.default_rng(0)
    H = [beamspace(np.ones((4, 2)))]
    config = LinkConfig(2, 0.0)

    with pytest.raises(ConfigurationError):
        ul_received(H, [BeamSelector(0, 4)], [BeamSelector(0, 2)], config, rng)


def test_snr_to_noise_var():
    from pybeamtrack.link import reference_power, snr_to_noise_var
    from pybeamtrack.exceptions import ConfigurationError

    ref = reference_power(16, 8, 1)
    assert ref == 128
    assert reference_power(16, 8, 4) == 32
    assert np.isclose(snr_to_noise_var(20, ref), 1.28)
    assert np.isclose(snr_to_noise_var(0, ref), 128)

    with pytest.raises(ConfigurationError):
        snr_to_noise_var(10, 0)


def test_dl_received_linear_in_pilots(rng):
    from pybeamtrack.link import BeamSelector, LinkConfig, dl_received

    H = beamspace(rng.normal(size=(8, 16)) + 1j * rng.normal(size=(8, 16)))
    precoders = [BeamSelector(3, 16), BeamSelector(7, 16)]
    combiner = BeamSelector(5, 8)

    def received(pilots):
        config = LinkConfig(2, 0.0, pilots=pilots)
        return dl_received(0, [H, H], precoders, combiner, config, rng)

    s1, s2 = np.exp(0.3j), np.exp(-1.2j)
    # flipping one pilot isolates the contribution of its precoder
    assert np.isclose(received((s1, s2)) - received((-s1, s2)), 2 * s1 * H.entries[5, 3])
    assert np.isclose(received((s1, s2)) - received((s1, -s2)), 2 * s2 * H.entries[5, 7])

    # a common phase rotates the observation
    phase = np.exp(0.7j)
    assert np.isclose(received((phase * s1, phase * s2)), phase * received((s1, s2)))


def test_dl_received_without_interference_matches_single_user():
    from pybeamtrack.link import BeamSelector, LinkConfig, dl_received

    rng = np.random.default_rng(3)
    entries = rng.normal(size=(8, 16)) + 1j * rng.normal(size=(8, 16))
    combiner = BeamSelector(2, 8)
    own, other = BeamSelector(4, 16), BeamSelector(9, 16)

    # the other user's beam sees no power through this user's channel
    entries[:, other.index] = 0
    H = beamspace(entries)

    single = dl_received(
        0, [H], [own], combiner, LinkConfig(1, 0.5), np.random.default_rng(11),
    )
    multi = dl_received(
        0, [H, H], [own, other], combiner, LinkConfig(2, 0.5), np.random.default_rng(11),
    )
    assert multi == single
