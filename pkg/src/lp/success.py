import numpy as np

from config import config


def reconstruction_error(x_hat: np.ndarray, x0: np.ndarray) -> float:
    """||x_hat - x0||_2 / max(1, ||x0||_2)"""
    x_hat = np.asarray(x_hat, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    if x_hat.shape != x0.shape:
        raise ValueError(f"length mismatch: {x_hat.shape} vs {x0.shape}")
    return float(np.linalg.norm(x_hat - x0) / max(1.0, np.linalg.norm(x0)))


def reconstruction_success(x_hat: np.ndarray, x0: np.ndarray, tol: float = config.SUCCESS_TOL) -> bool:
    """Whether x_hat reproduces x0 up to a relative L2 tolerance"""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    return reconstruction_error(x_hat, x0) <= tol
