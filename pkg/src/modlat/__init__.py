"""Finite modular lattices via racks.

Reduce lattices to racks by removing removable doubly irreducible
elements, count and rebuild all decorations exactly with cycle-index
arithmetic, generate the modular vi families exhaustively at desk scale,
and expose virtual listings (iterate, unrank, seeded sampling) backed by
a seekable record store.
"""

from .canon import (
    SiteAction,
    automorphism_group,
    canonical_form,
    canonical_labeling,
    is_isomorphic,
    site_action,
)
from .census import (
    MListing,
    MvListing,
    cycle_index_census,
    listing_iterate,
    listing_m,
    listing_mv,
    listing_sample,
    listing_unrank,
    m_count,
    mv_count,
    verify_store,
)
from .d6 import Digraph6Error, decode_digraph6, encode_digraph6
from .generate import (
    GenerationBudgetError,
    GenerationJob,
    filter_racks,
    generate_family_up_to,
    generate_modular_vi,
    generate_modular_vi_racks,
    run_job,
)
from .lattice import (
    Lattice,
    LatticeError,
    covers_text,
    from_covers,
    parse_covers_text,
    vertical_compose,
)
from .orbits import (
    OrbitVectorFamily,
    canonical_vector,
    list_decoration_vectors,
    rank,
    sample_uniform,
    unrank,
)
from .polya import (
    CycleIndex,
    count_decorations,
    cycle_index,
    decoration_count_for_index,
    figure_series,
    function_series,
)
from .racks import (
    DecorationSite,
    decorate,
    decoration_sites,
    decoration_vector_of,
    is_rack,
    rack_of,
    trinkets,
)
from .render import render_dot
from .store import (
    MemoryStore,
    RackStore,
    RecordMeta,
    StoreError,
    store_get,
    store_open,
    store_write,
)

__version__ = "0.1.0"
