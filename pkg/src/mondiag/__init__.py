"""Algebraic monoidal diagrams over free strict monoidal signatures.

Validation of the diagram axioms, segmentation into layers, resolution of
layer-skipping edges, readout into layered terms, attachment and vertical
composition, finite unbiased tensors, and an exact rational matrix semantics.
"""

from .diagram import Diagram, cc_closure, induced_first_order, make_diagram, validate_diagram
from .errors import (ClosureError, CompositionError, DiagramError, InvariantError,
                     LayerOrderError, ModelError, ParseError, StructureError, UsageError,
                     ValidityError)
from .formats import parse_diagram, print_diagram, read_diagram, render_dot
from .iso import diagram_iso
from .layering import layer_order, rank, segmentation, unresolved_edges
from .readout import (attach, check_validity, compose_vertical, reading, readout,
                      readout_functor_check)
from .resolution import incise, resolve
from .semantics import MatrixModel, RationalMatrix, eval_term, parse_model
from .signature import Gen, IdOn, Signature, parse_signature, word_concat
from .term import LayeredTerm
from .unbiased import (check_coherence, check_interchange, derived_tensor,
                       enumerate_partitions, flatten)

__version__ = "0.1.0"
