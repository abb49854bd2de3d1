"""
Compression-matrix ensembles.
"""

from enum import Enum

import numpy as np


class MatrixEnsemble(Enum):
    """i.i.d. Gaussian entries, or uniformly random orthonormal rows"""
    IID_GAUSSIAN = "iid_gaussian"
    ROW_ORTHOGONAL = "row_orthogonal"

    @classmethod
    def parse(cls, name: str) -> "MatrixEnsemble":
        aliases = {"gaussian": cls.IID_GAUSSIAN, "orthogonal": cls.ROW_ORTHOGONAL}
        key = name.strip().lower()
        return aliases[key] if key in aliases else cls(key)


def sample_matrix(ensemble: MatrixEnsemble, p_rows: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """P x N matrix from the ensemble"""
    if p_rows < 1 or n < 1:
        raise ValueError(f"dimensions must be positive, got p_rows={p_rows}, n={n}")
    if p_rows > n:
        raise ValueError(f"p_rows={p_rows} exceeds n={n}")

    if ensemble is MatrixEnsemble.IID_GAUSSIAN:
        # variance 1/N keeps |y| comparable to |x0|
        return rng.standard_normal((p_rows, n)) / np.sqrt(n)

    gaussian = rng.standard_normal((n, p_rows))
    q, r = np.linalg.qr(gaussian)
    # sign fix makes q Haar-distributed instead of biased by the QR convention
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return np.ascontiguousarray((q * signs).T)
