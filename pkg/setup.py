import datetime

from setuptools import setup, find_packages

setup(
    name="aggcorrect",
    version=datetime.datetime.now(datetime.timezone.utc).strftime("%Y.%m.%d.%H.%M.%S"),
    description="Bayesian correction of misclassification bias in classification-based aggregates",
    packages=find_packages(where="src", include=["aggcorrect*"]),
    package_dir={"": "src"},
    package_data={"aggcorrect.io_cli": ["configs/*.toml"]},
    python_requires=">=3.11",
    install_requires=[
        "numpy",
        "scipy",
        "pandas",
        "dacite",
        "dataclass_csv"
    ],
    entry_points={
        "console_scripts": [
            "aggcorrect = aggcorrect.io_cli.cli:main"
        ]
    }
)
