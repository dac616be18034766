# -*- coding: utf-8 -
"""Fractional p-Laplacian mountain pass solver"""
from .utils.version import get_version


VERSION = (0, 1, 0, 'final', 0)


__version__ = version = get_version(VERSION)
__author__ = "fracmp developers"


PACKAGE_NAME = 'fracmp'
