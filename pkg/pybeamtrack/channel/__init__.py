"""
Geometric mmWave channels, their beamspace representation and evolution
"""
from .array import (
    ArrayGeometry,
    dft_matrix,
    element_positions,
    steering_vector,
    virtual_angles,
)
from .beamspace import (
    BeamspaceChannel,
    beamspace_element,
    beamspace_transform,
    dirichlet,
    spatial_channel,
    user_beamspace_channel,
)
from .evolution import (
    PARAMETERS_PER_PATH,
    EvolutionParams,
    PathState,
    UserChannel,
    evolve,
    process_noise_cov,
    random_user_channel,
    transition_matrix,
)


__all__ = [
    "ArrayGeometry",
    "BeamspaceChannel",
    "EvolutionParams",
    "PARAMETERS_PER_PATH",
    "PathState",
    "UserChannel",
    "beamspace_element",
    "beamspace_transform",
    "dft_matrix",
    "dirichlet",
    "element_positions",
    "evolve",
    "process_noise_cov",
    "random_user_channel",
    "spatial_channel",
    "steering_vector",
    "transition_matrix",
    "user_beamspace_channel",
    "virtual_angles",
]
