"""wEMV-algebra workbench."""

from .algebra import Algebra, ConeAlgebra, FiniteAlgebra, PerfectAlgebra, ProductAlgebra
from .axioms import validate
from .constructors import make_chain, make_cone, make_kn, make_perfect, make_product, make_sum, mv_with_ominus
from .documents import dump_algebra, from_document, load_algebra, to_document
from .errors import (
    ConsistencyError,
    DocumentError,
    EvaluationError,
    InputError,
    TableError,
    TermSyntaxError,
    UnsupportedError,
    WemvError,
)
from .ideals import is_prime, quotient, spec, subdirect_embedding
from .ops import is_cancellative, is_emv, is_strict, local_mv, odot
from .pierce import boolean_spectrum, sections, semisimple_sheaf_embedding
from .properties import property_suite
from .structure import decompose, representing, split_at_idempotent
from .terms import parse_identity, parse_term
from .varieties import check_identity, membership

__all__ = [
    "Algebra", "ConeAlgebra", "FiniteAlgebra", "PerfectAlgebra", "ProductAlgebra",
    "validate", "make_chain", "make_cone", "make_kn", "make_perfect", "make_product", "make_sum",
    "mv_with_ominus", "dump_algebra", "from_document", "load_algebra", "to_document",
    "ConsistencyError", "DocumentError", "EvaluationError", "InputError", "TableError",
    "TermSyntaxError", "UnsupportedError", "WemvError", "is_prime", "quotient", "spec",
    "subdirect_embedding", "is_cancellative", "is_emv", "is_strict", "local_mv", "odot",
    "boolean_spectrum", "sections", "semisimple_sheaf_embedding", "property_suite", "decompose",
    "representing", "split_at_idempotent", "parse_identity", "parse_term", "check_identity",
    "membership",
]
