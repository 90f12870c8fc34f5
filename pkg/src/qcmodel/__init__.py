"""Exact homological algebra over finite poset ring diagrams.

Submodules: ``exact_arith`` (rationals, univariate rings, Smith normal form,
presented modules), ``diagram`` (poset ring representations and their
modules), ``reps`` and ``homotopy_algebra`` (Ext, lifting, cotorsion pairs,
small object argument), ``model_structures`` (Hovey triples), ``complexes``,
``cech`` and the ``qcmodel`` command line in ``cli``.
"""

from qcmodel.linalg import KERNEL

__version__ = "0.1.0"
__all__ = ["KERNEL", "__version__"]
