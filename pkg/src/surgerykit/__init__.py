"""Surgery presentations of 3-manifolds as framed-link diagrams, with
exact integer-lattice invariants, certified Kirby-move scripts, and the
Donaldson-type diagonalizability obstruction."""

from .calculus import (EmbeddingCertificate, MoveScript, ObstructionReport,
                       build_embedding_certificate, donaldson_obstruction,
                       reduce_free_word, replay, unknotify, verify_certificate,
                       word_from_intersections)
from .intlattice import (AbelianGroupPresentation, Inertia, IntegralLattice,
                         blow_down, congruence_slide, determinant,
                         diagonalizable_over_Z, direct_sum, e8_matrix,
                         homology_from_linking, inertia, short_vectors,
                         smith_normal_form, stabilize)
from .linkdiag import (FramedLinkDiagram, GadgetRecord, add_split_unknot,
                       blow_down_gadget, descending_switch_set,
                       insert_crossing_gadget, linking_matrix, linking_number,
                       reverse_component, switch_crossing, validate_diagram)

__version__ = "0.1.0"
