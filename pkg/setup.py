# -*- coding: utf-8 -*-
from codecs import open  # To use a consistent encoding
from os import path

from setuptools import find_packages, setup  # Always prefer setuptools over distutils

import skcf

here = path.abspath(path.dirname(__file__))

# Get the long description from the relevant file
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='''skcf''',

    # Versions should comply with PEP440.
    version=skcf.__version__,

    description='''State Kronecker canonical forms and SLOCC classification of 2 x m x n pure states''',
    long_description=long_description,
    long_description_content_type='text/markdown',

    license='MIT',

    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        'Development Status :: 4 - Beta',
        'License :: OSI Approved :: MIT',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics',
    ],

    keywords='''quantum entanglement SLOCC matrix pencil Kronecker canonical form''',

    packages=find_packages(exclude=['contrib', 'docs']),

    python_requires='>=3.6',
    install_requires=[
        # Pinned versions live in requirements.py3.txt
        'click',
        'numpy',
        'scipy',
        'sympy',
    ],

    include_package_data=True,
    package_data={},

    # To provide executable scripts, use entry points in preference to the
    # "scripts" keyword.
    entry_points='''
        [console_scripts]
        skcf=skcf.commands:skcf
    ''',
)
