"""cohwit: fidelity-witness tests, certificates, circuits, and measures for
quantum coherence."""

from .faithful import (
    DecompositionCertificate,
    FaithfulnessReport,
    decompose_witness,
    enumerate_sign_vectors,
    is_faithful,
    is_faithful_bipartite,
    qubit_faithful,
    reduced_family,
    screen_reduced,
)
from .measures import (
    CmaxResult,
    MeasureReport,
    c_max,
    d_max,
    d_min,
    relative_entropy_coherence,
    rfcw_bound,
    von_neumann_entropy,
)
from .states import (
    BlochVector,
    DensityMatrix,
    IncoherentState,
    PureState,
    bloch_to_density,
    dephase,
    density_to_bloch,
    maximally_coherent,
    random_density,
    validate,
)
from .witness import FidelityWitness, RFCW, alpha_of, build_witness, evaluate, rfcw_state

__all__ = [
    "BlochVector",
    "CmaxResult",
    "DecompositionCertificate",
    "DensityMatrix",
    "FaithfulnessReport",
    "FidelityWitness",
    "IncoherentState",
    "MeasureReport",
    "PureState",
    "RFCW",
    "alpha_of",
    "bloch_to_density",
    "build_witness",
    "c_max",
    "d_max",
    "d_min",
    "decompose_witness",
    "dephase",
    "density_to_bloch",
    "enumerate_sign_vectors",
    "evaluate",
    "is_faithful",
    "is_faithful_bipartite",
    "maximally_coherent",
    "qubit_faithful",
    "random_density",
    "reduced_family",
    "relative_entropy_coherence",
    "rfcw_bound",
    "rfcw_state",
    "screen_reduced",
    "validate",
    "von_neumann_entropy",
]

__version__ = "0.1.0"
