try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup

with open('README.md', 'rb') as f:
    readme = f.read().decode('utf-8')

setup(
    name="geoloop",
    version="0.1",
    description="Geodesic words, the group G(M,inf) and piecewise-geodesic loops on Riemannian manifolds",
    long_description=readme,
    long_description_content_type="text/markdown",
    packages=[
        "geoloop",
    ],
    install_requires=[
        "numpy>=1.17",
    ],
    entry_points={
        "console_scripts": [
            "geoloop=geoloop.cli:entry",
        ],
    },
    include_package_data=True,
    license="MIT",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.6",
    keywords='loop space, geodesic, riemannian manifold, fundamental group',
)
