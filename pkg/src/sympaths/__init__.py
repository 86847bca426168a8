"""Membership and certificates for intersections of free-group kernels.

Given two finite-set surjections f: A -> B and h: A -> C whose kernel pairs
commute, every element of Ker(Fg(f)) and of the intersection with Ker(Fg(h))
can be rewritten constructively as a symmetric path; this package decides
membership, produces the certificates, and verifies them independently.
"""

from .errors import (
    AlphabetMismatch,
    FormatError,
    GroundMismatch,
    InstanceInvalid,
    KernelPairsDoNotCommute,
    LengthMismatch,
    NoCompletion,
    NotInKernel,
    NotInKernelF,
    NotInKernelH,
    NotSurjectiveF,
    NotSurjectiveH,
    ParseError,
    PreconditionError,
    SpecOutOfBounds,
    SympathsError,
    UnknownGenerator,
)
from .freegroup import (
    FiniteMap,
    Letter,
    Word,
    apply_map,
    format_word,
    is_kernel_member,
    parse_word,
    reduce,
    word_inverse,
    word_product,
)
from .instances import (
    GEN_FORMAT_VERSION,
    GenSpec,
    Instance,
    gen_instance,
    gen_intersection_element,
    gen_kernel_element,
    instance_from_json,
    instance_to_json,
    load_instance,
    validate_instance,
)
from .pairing import Pairing, extract_pairing, validate_pairing
from .relations import (
    Partition,
    Relation,
    complete_square,
    compose_relations,
    eq_partition,
    identity_relation,
    kernel_pair_relation,
    relations_commute,
)
from .symmetric import (
    PairCertificate,
    QuadCertificate,
    RewriteState,
    cert_conjugate,
    cert_inverse,
    make_rewrite_state,
    one_dim_decompose,
    parse_certificate,
    parse_pair_certificate,
    parse_quad_certificate,
    run_rewrite,
    test_pair_step,
    two_dim_decompose,
    verify_pair_certificate,
    verify_quad_certificate,
)

__version__ = "0.1.0"
