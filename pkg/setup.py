"""Packaging for the XY-chain entanglement toolkit.

Install with ``pip install -e .``; the ``xy-entanglement`` console script is
the same click group as the root ``cli.py``.
"""

from pathlib import Path

from setuptools import find_namespace_packages, setup

_REPO_ROOT = Path(__file__).resolve().parent

setup(
    name="xy-entanglement",
    version="0.1.0",
    description="Two-spin entanglement and critical scaling of the XY chain in a transverse field",
    long_description=(_REPO_ROOT / "README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    python_requires=">=3.10",
    packages=find_namespace_packages(include=["src", "src.*"]),
    py_modules=["cli"],
    install_requires=[
        "numpy>=1.23",
        "scipy>=1.10",
        "click>=8.1",
        "python-dotenv>=1.0",
    ],
    entry_points={"console_scripts": ["xy-entanglement=src.pipeline.cli:main"]},
)
