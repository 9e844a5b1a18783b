"""Triangular blocked tensors: structure recognition, products,
determinants, spectra, inverses, M-tensor classification and normal
forms, with a JSON command line front end."""

from . import errors
from .blocked import (
    BlockKind,
    Partition,
    blocked_partitions,
    compositions,
    diagonal_blocks,
    is_blocked,
)
from .core import (
    Permutation,
    Tensor,
    apply,
    diagonal_tensor,
    is_row_diagonal,
    majorization_matrix,
    new_tensor,
    permute_similar,
    principal_subtensor,
    representation_matrix,
    row_diagonal_from_matrix,
    tensor_from_matrix,
    unit_tensor,
)
from .inverse import (
    RightFormRecovery,
    has_left_inverse,
    left_k_inverse,
    recover_right_form,
    right_k_inverse,
    verify_inverse,
)
from .mtensor import (
    ZSplit,
    is_m_tensor,
    is_nonsingular_m_tensor,
    is_positive_tensor,
    is_z_tensor,
    m_tensor_report,
    z_split,
)
from .product import general_product
from .spectra import (
    OracleReport,
    SpectralResult,
    SpectrumFactored,
    SpectrumItem,
    det_blocked,
    det_diagonal,
    det_dim1,
    singularity_oracle,
    spectral_radius,
    spectrum_blocked,
)
from .structure import (
    Hypergraph,
    NormalForm,
    adjacency_tensor,
    connected_components,
    exists_first_type_normal_form,
    find_reducing_set,
    find_weakly_reducing_set,
    is_irreducible,
    is_weakly_irreducible,
    normal_form_2nd,
    normal_form_3rd,
    reducing_to_utb,
    strongly_reduces,
    weakly_reduces,
)

__version__ = "0.1.0"

__all__ = [
    "BlockKind",
    "Hypergraph",
    "NormalForm",
    "OracleReport",
    "Partition",
    "Permutation",
    "RightFormRecovery",
    "SpectralResult",
    "SpectrumFactored",
    "SpectrumItem",
    "Tensor",
    "ZSplit",
    "adjacency_tensor",
    "apply",
    "blocked_partitions",
    "compositions",
    "connected_components",
    "det_blocked",
    "det_diagonal",
    "det_dim1",
    "diagonal_blocks",
    "diagonal_tensor",
    "errors",
    "exists_first_type_normal_form",
    "find_reducing_set",
    "find_weakly_reducing_set",
    "general_product",
    "has_left_inverse",
    "is_blocked",
    "is_irreducible",
    "is_m_tensor",
    "is_nonsingular_m_tensor",
    "is_positive_tensor",
    "is_row_diagonal",
    "is_weakly_irreducible",
    "is_z_tensor",
    "left_k_inverse",
    "m_tensor_report",
    "majorization_matrix",
    "new_tensor",
    "normal_form_2nd",
    "normal_form_3rd",
    "permute_similar",
    "principal_subtensor",
    "recover_right_form",
    "reducing_to_utb",
    "representation_matrix",
    "right_k_inverse",
    "row_diagonal_from_matrix",
    "singularity_oracle",
    "spectral_radius",
    "spectrum_blocked",
    "strongly_reduces",
    "tensor_from_matrix",
    "unit_tensor",
    "verify_inverse",
    "weakly_reduces",
    "z_split",
]
