#!/usr/bin/env python
"""Setuptools file."""

# pylint: disable=E0611,F0401
from setuptools import setup
from os import path

with open(path.join(path.dirname(__file__), 'README.rst'), encoding="utf-8") as long_d_f:
    LONG_DESCRIPTION = long_d_f.read()

with open(path.join(path.dirname(__file__), 'cartanquot', '__init__.py'), encoding="utf-8") as init_f:
    VERSION = next(line.split('"')[1] for line in init_f if line.startswith('__version__'))

setup(name='cartanquot',
      version=VERSION,
      description='Cartan domains, their 2-proper quotients and Bergman kernels',
      long_description=LONG_DESCRIPTION,
      author='cartanquot developers',
      setup_requires=['wheel'],
      packages=['cartanquot'],
      install_requires=['numpy', 'simplejson'],
      extras_require={'progress': ['progressbar2']},
      tests_require=['pytest', 'hypothesis'],
      entry_points={'console_scripts': ['cartanquot=cartanquot.cli:main']},
      python_requires='>=3.8',
      classifiers=['Development Status :: 4 - Beta',
                   'Programming Language :: Python :: 3.8',
                   'Programming Language :: Python :: 3.9',
                   'Programming Language :: Python :: 3.10',
                   'Programming Language :: Python :: 3.11',
                   'Intended Audience :: Science/Research',
                   'Topic :: Scientific/Engineering :: Mathematics',
                   'License :: OSI Approved :: Apache Software License'],
      license='apache')
