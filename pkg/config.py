"""
lpthreshold's Configuration System
"""

import os
from pathlib import Path
from typing import Dict, Any

import psutil
from dotenv import load_dotenv

load_dotenv()


def _default_workers() -> int:
    """Physical cores, falling back to logical ones when psutil cannot tell"""
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


class Config:
    """Configuration management for lpthreshold"""

    def __init__(self):
        # Base paths
        self.BASE_DIR = Path(os.path.dirname(os.path.abspath(__file__)))
        self.DATA_DIR = Path(os.getenv("LPTHRESH_DATA_DIR", str(self.BASE_DIR / "data")))
        self.LOG_DIR = self.BASE_DIR / "logs"

        # Create necessary directories
        self.DATA_DIR.mkdir(parents=True, exist_ok=True)
        self.LOG_DIR.mkdir(exist_ok=True)

        self.LOG_FILE = self.LOG_DIR / "lpthreshold.log"
        self.LOG_LEVEL = os.getenv("LPTHRESH_LOG_LEVEL", "INFO")

        # Worker pool
        self.DEFAULT_WORKERS = int(os.getenv("LPTHRESH_WORKERS", "0")) or _default_workers()

        # Theory
        self.QUADRATURE_ORDER = 200
        self.DAMPING = 0.5
        self.MAX_ITERATIONS = 10_000
        self.FIXED_POINT_TOL = 1e-13
        self.ROOT_TOL = 1e-14
        self.CHI_HAT_BRACKET = (1e-8, 1e8)
        self.WORST_CASE_ALPHA_CAP = 10.0

        # Linear programming
        self.OPTIMALITY_TOL = 1e-9
        self.FEASIBILITY_TOL = 1e-9
        self.PIVOT_TOL = 1e-11

        # Experiments
        self.SUCCESS_TOL = 1e-4
        self.TRIALS_PER_POINT = 10_000
        self.ALPHA_WINDOW = 0.15

    @property
    def as_dict(self) -> Dict[str, Any]:
        """Return configuration as a dictionary"""
        return {
            "base_dir": str(self.BASE_DIR),
            "data_dir": str(self.DATA_DIR),
            "log_dir": str(self.LOG_DIR),
            "log_level": self.LOG_LEVEL,
            "default_workers": self.DEFAULT_WORKERS,
            "quadrature_order": self.QUADRATURE_ORDER,
            "damping": self.DAMPING,
            "max_iterations": self.MAX_ITERATIONS,
            "fixed_point_tol": self.FIXED_POINT_TOL,
            "optimality_tol": self.OPTIMALITY_TOL,
            "feasibility_tol": self.FEASIBILITY_TOL,
            "pivot_tol": self.PIVOT_TOL,
            "success_tol": self.SUCCESS_TOL,
            "trials_per_point": self.TRIALS_PER_POINT,
            "alpha_window": self.ALPHA_WINDOW,
        }


config = Config()
