from setuptools import setup, find_packages

setup(
    name="ballpark",
    version="0.1.0",
    description="Lattice points in balls: ripples, fence, scaffold, headcount, crucible, knobs, hideaway, blueprint",
    packages=find_packages(where="src", include=["ballpark*"]),
    package_dir={"": "src"},
    python_requires=">=3.10",
    install_requires=["numpy>=1.24", "scipy>=1.10"],
    entry_points={"console_scripts": ["ballpark = ballpark.cli:main"]},
)
