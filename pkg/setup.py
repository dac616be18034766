#!/usr/bin/env python
import os

from setuptools import setup, find_packages

import fracmp


def read(name):
    filename = os.path.join(os.path.dirname(__file__), name)
    with open(filename) as fp:
        return fp.read()


def requirements(name):
    install_requires = []
    dependency_links = []

    for line in read(name).split('\n'):
        if line.startswith('-e '):
            link = line[3:].strip()
            if link == '.':
                continue
            dependency_links.append(link)
            line = link.split('=')[1]
        line = line.strip()
        if line and not line.startswith('-r '):
            install_requires.append(line)

    return install_requires, dependency_links


meta = dict(
    name='fracmp',
    version=fracmp.__version__,
    description=fracmp.__doc__,
    author=fracmp.__author__,
    license="BSD",
    long_description=read('README.rst'),
    include_package_data=True,
    python_requires='>=3.8',
    install_requires=requirements('requirements/hard.txt')[0],
    tests_require=requirements('requirements/test.txt')[0],
    setup_requires=['wheel'],
    packages=find_packages(include=['fracmp', 'fracmp.*']),
    entry_points={
        "console_scripts": [
            "fracmp = fracmp.__main__:main"
        ]
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics']
)


if __name__ == '__main__':
    setup(**meta)
