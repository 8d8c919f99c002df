import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="pyqiemi",
    version="1.0.0",
    description="Qi wireless charging simulator for adapter-side electromagnetic interference",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=("tests", "tests.*", "examples", "examples.*")),
    package_data={"pyqiemi.config": ["profiles.yaml", "demos/*.yaml"]},
    install_requires=["numpy>=1.19", "scipy>=1.5", "PyYAML>=5.3", "click>=7.1"],
    extras_require={"test": ["pytest>=6.0"]},
    entry_points={"console_scripts": ["pyqiemi=pyqiemi.cli:cli"]},
    exclude=["*test.py", "tests"],
    keywords="qi wireless-charging emi simulation side-channel",
    license="MIT",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
)
