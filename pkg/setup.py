# -*- coding: utf-8 -*-

"""Pack the distribution of LNCAD."""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from re import MULTILINE, search
from os.path import join as pth_join
from setuptools import setup, find_packages


def read(path: str):
    with open(path, 'r') as f:
        return f.read()


def find_version(path: str):
    m = search(r"^__version__ = ['\"]([^'\"]*)['\"]", read(path), MULTILINE)
    if m:
        return m.group(1)
    raise RuntimeError("Unable to find version string.")


setup(
    name='lncad',
    version=find_version(pth_join('lncad', '__init__.py')),
    author=__author__,
    license=__license__,
    description="Detection post-processing and lesion-level evaluation for lymph node CAD.",
    long_description=read("README.md"),
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=('tests', 'tests.*')),
    package_data={'lncad': ['py.typed']},
    entry_points={'console_scripts': ['lncad=lncad.__main__:main']},
    zip_safe=False,
    python_requires=">=3.8",
    install_requires=read('requirements.txt').splitlines(),
    extras_require={'test': ['pytest', 'hypothesis']},
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Environment :: Console",
        "Topic :: Scientific/Engineering :: Medical Science Apps.",
        "License :: OSI Approved :: GNU Affero General Public License v3 or later (AGPLv3+)",
        "Operating System :: OS Independent",
        "Typing :: Typed",
    ]
)
