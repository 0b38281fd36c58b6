from .eigen import eigen, match_multisets, null_vectors
from .expm import expm
from .matrix import as_matrix, overlap
from .polynomial import char_poly, cluster_roots, poly_roots, scaled_residuals
