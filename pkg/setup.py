from setuptools import find_packages, setup

setup(
    name="lpthreshold",
    version="1.0.0",
    description="Replica thresholds and Monte Carlo phase boundaries of Lp compressed-sensing reconstruction",
    packages=find_packages(include=["src", "src.*"]),
    py_modules=["config", "run"],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "python-dotenv>=1.0.0",
        "loguru>=0.7.2",
        "psutil>=5.9.8",
        "tqdm>=4.66.0",
    ],
    entry_points={
        "console_scripts": [
            "lpthreshold=src.cli.main:main",
        ],
    },
)
