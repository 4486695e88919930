#!/usr/bin/env python
# -*- coding: utf8 -*-
# vim: ts=4 sw=4 et ai:

import pathlib
from setuptools import setup,find_packages

base = pathlib.Path(__file__).parent

README = (base / 'README.md').read_text()

setup(
      name='vistawise',
      version='0.1.0',
      description='Knowledge-graph driven agent for a blockworld crafting game',
      long_description=README,
      long_description_content_type='text/markdown',
      packages=find_packages(include=['vistawise', 'vistawise.*']),
      package_data={
          'vistawise': ['requirements.txt', 'data/*.kg', 'data/*.json',
                        'data/scenarios/*.json', 'data/bench/*.json',
                        'data/bench/*.txt'],
      },
      python_requires='>=3.7',
      install_requires=[
        'networkx>=2.5',
        'requests>=2.25',
        'pathvalidate',
      ],
      extras_require={
        'tests': ['hypothesis>=6.0'],
      },
      entry_points={
        'console_scripts': ['vistawise = vistawise.harness.cli:main'],
      },
      test_suite='tests',
      classifiers=[
        'Programming Language :: Python :: 3.7',
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',
        'Topic :: Games/Entertainment',
        ]
      )
