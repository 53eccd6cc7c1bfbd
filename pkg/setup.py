#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.
import re
from pathlib import Path
from setuptools import setup, find_packages


def get_version():
    init_file = Path(__file__).parent / "src" / "belieftree" / "__init__.py"
    content = init_file.read_text()
    match = re.search(r'__version__\s*=\s*["\']([^"\']+)["\']', content)
    if match:
        return match.group(1)
    raise RuntimeError("Cannot find version string.")


# Setup the project
setup(
    name="belieftree",
    version=get_version(),
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    python_requires=">=3.9",
    install_requires=[
        "numpy",
        "pandas>=1.5",
        "networkx",
        "setuptools",
    ],
    extras_require={
        "test": [
            "pytest>=7",
            "pytest-asyncio",
            "hypothesis",
        ],
    },
    entry_points={
        "console_scripts": [
            "belieftree=belieftree.cli.main:main",
        ],
    },
    author="belieftree contributors",
    description="Junction-tree inference with approximation and compression of belief tables",
    long_description="This is a Python inference engine for causal probabilistic networks. \
        Networks are compiled into junction trees of belief universes and evidence is \
        propagated exactly. Small belief-table entries can be annihilated and the \
        resulting sparse tables compressed, with worst-case bounds on the error of \
        every posterior.",
)
