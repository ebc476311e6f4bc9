import sys
from setuptools import setup

try:
    import numpy as np
except ImportError:
    print("You don't seem to have NumPy installed. Please get a")
    print("copy from www.numpy.org and install it")
    sys.exit(1)

def readme():
    with open('README.rst') as f:
        text = f.read()
    return text

setup(
      name = 'stochheis',
      description = 'Exact and Monte Carlo verification of Heisenberg-type '
                    'inequalities for martingales',
      packages = ['stochheis', 'stochheis.algebra', 'stochheis.verify'],
      install_requires = ['numpy>=1.17', 'scipy>=1.6'],
      extras_require = {'test': ['pytest', 'hypothesis']},
      scripts = ['bin/stochheis-verify.py'],
      license = 'MIT',
      version = '1.0.0',
      python_requires = '>=3.7',
      long_description = readme()
      )
