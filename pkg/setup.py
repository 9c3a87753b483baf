from setuptools import setup, find_packages
import os


extras_require = {
    "docs": [
        "sphinx",
        "sphinx_rtd_theme",
        "sphinx_automodapi",
        "numpydoc",
        "towncrier",
    ],
    "tests": [
        "pytest",
        "pytest-cov",
    ],
}
extras_require["dev"] = extras_require["tests"] + [
    "setuptools_scm",
]

all_extras = set()
for extra in extras_require.values():
    all_extras.update(extra)
extras_require["all"] = list(all_extras)

setup(
    use_scm_version={
        "write_to": os.path.join("pybeamtrack", "_version.py"),
        "fallback_version": "0.1.0",
    },
    packages=find_packages(exclude=['pybeamtrack._dev_version']),
    install_requires=[
        "astropy>=5.3,<7.0.0a0",
        "numpy>=1.21",
        "scipy",
        "tqdm",
        "tomli>=1.1; python_version < '3.11'",
    ],
    include_package_data=True,
    extras_require=extras_require,
    entry_points={
        "console_scripts": [
            "pybeamtrack = pybeamtrack.cli:main",
        ],
    },
)
