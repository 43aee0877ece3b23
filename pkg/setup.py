#!/usr/bin/env python3

import os
import sys
import re
from setuptools import setup, find_packages

if sys.argv[-1] == 'publish':
    os.system('python3 setup.py sdist')
    os.system('twine upload dist/*')
    sys.exit()

def readme():
    with open('README.rst') as readme_file:
        return readme_file.read()

def find_version():
    with open('pulsetrain/__init__.py', 'r') as fd:
        version = re.search(r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]',fd.read(), re.MULTILINE).group(1)
    if not version:
        raise RuntimeError('Cannot find version information')
    return version

REQUIRES = [
    "docopt >= 0.6.2",
    "jsonpickle >= 2.0.0",
    "numpy >= 1.17.0",
    "scipy >= 1.6.0"
]

setup(
    name='pulsetrain',
    version=find_version(),
    description='Propagators of multistate quantum systems driven by trains of identical pulses',
    keywords='Cayley-Klein parameters, Majorana decomposition, Morris-Shore transformation, pulse train, propagator',
    license='Modified Clear BSD License',
    packages=find_packages(exclude=['tests']),
    package_data={'pulsetrain': ['conf/*.json*']},
    platforms='any',
    long_description=readme(),
    python_requires='>=3.8',
    install_requires=REQUIRES,
    extras_require={'test': ['pytest >= 6.0']},
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Physics',
        'Topic :: Software Development :: Libraries :: Python Modules',
    ],
    entry_points={"console_scripts": ["pulsetrain = pulsetrain.__main__:main"]},
)
