"""
@summary:       sdmred: exact mod p reductions of semistable Galois representations of weight r+2
@run:           import sdmred
@license:       MIT
"""
__version__ = "0.1.0"
