"""gfunkit: exact arithmetic for period power series and their diagnostics.

The package provides, over Q and small number fields:

* places, valuations, normalized absolute values and Weil heights (`arith`);
* sparse truncated multivariate power series with composition and the
  diagonal operator (`series`);
* the truncated relative logarithmic de Rham complex and its normal-form
  reduction (`logdr`);
* order-by-order formal inversion of etale coordinate maps with bad-prime
  and scaling analysis (`inversion`);
* size, radius and relevance diagnostics plus functional-relation search for
  vectors of power series (`gfun`);
* algebraic relations on dual coordinates induced by an endomorphism matrix
  (`relations`);
* dual complexes of normal-crossing degenerations and their Betti numbers
  (`degen`);
* a deterministic command line front end (`cli`).
"""

__version__ = "0.1.0"

from .numberfield import QQ, NumberField, NumberFieldElement  # noqa: F401
