"""Exact modular representation theory of small finite groups.

Permutation groups, group algebras over small finite fields, Brauer
constructions, block theory and the trivial-source Grothendieck-group
machinery needed to verify p-permutation equivalences between blocks.
"""

__version__ = '0.1.0'
