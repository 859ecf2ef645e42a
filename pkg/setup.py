from setuptools import setup, find_packages

setup(
    name="ballpark",
    version="0.1.0",
    description="Lattice points in balls: exact counts and Bessel-function error bounds",
    packages=find_packages(where="packages/python/src", include=["ballpark*"]),
    package_dir={"": "packages/python/src"},
    python_requires=">=3.10",
    install_requires=["numpy>=1.24", "scipy>=1.10"],
    entry_points={"console_scripts": ["ballpark = ballpark.cli:main"]},
)
