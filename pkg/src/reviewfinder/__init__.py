"""reviewfinder: citation-network exploration and conflict-checked reviewer
recommendation over a scholarly corpus."""

from .corpus import (
    CorpusIndex,
    IngestFilter,
    PaperRecord,
    clean_non_papers,
    ingest_corpus,
    ingest_file,
    load_snapshot,
    save_snapshot,
    search_titles,
)
from .errors import (
    ConflictError,
    DanglingIdError,
    IngestError,
    NotFoundError,
    PreconditionError,
    ReviewFinderError,
    SchemaError,
)
from .export import export_reviewer_list, render_export_json, render_export_text
from .network import (
    PaperNetworkState,
    RelevanceParams,
    ReviewerCandidate,
    Thresholds,
    add_seed,
    candidate_reviewers,
    coauthors,
    deselect_paper,
    init_network,
    paper_network_view,
    relevance_score,
    remove_seed,
    researcher_network,
    select_paper,
)
from .session import (
    Role,
    Session,
    SessionFlags,
    create_session,
    load_session,
    remove_reviewer,
    role_of,
    save_session,
    select_reviewer,
    set_submitting_authors,
    substitutes,
    swap_reviewer,
    update_settings,
)

__version__ = "0.1.0"
