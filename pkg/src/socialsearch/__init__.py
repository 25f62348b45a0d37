"""Socially-ranked retrieval over a k-partite graph, with leaderboards.

Results blend topical relevance (trigram partial match plus tf-idf exact
match) with how close a result sits to the searcher in the social graph,
approximated through landmark distance tables. The package also ships
pre-typing query suggestions, a gamified activity leaderboard, an HTTP
service, a synthetic dataset generator and a concurrent load harness.
"""

from .bench import BenchPlan, BenchReport, LevelStats, run_bench
from .datagen import generate_dataset
from .distances import (
    CompressionReport,
    DistanceIndex,
    INFINITE,
    approx_distance,
    build_distance_index,
    compression_report,
    default_landmark_count,
    user_similarity,
)
from .engine import (
    ScoredResult,
    SearchEngine,
    SimilarityWeights,
    overall_similarity,
)
from .graph import (
    AUTOCOMPLETE_KINDS,
    SEARCH_KINDS,
    Edge,
    Entity,
    EntityKind,
    GraphSnapshot,
    SocialGraph,
    write_ingest_file,
)
from .leaderboard import (
    POINTS_TENTHS,
    ActionKind,
    Activity,
    ActivityLedger,
    Design,
    LeaderboardKind,
    LeaderboardRow,
    LeaderboardView,
    Window,
)
from .service import RequestLogRecord, ServiceConfig, ServiceHandle, serve
from .suggest import QueryLog, QueryLogEntry, Suggester, Suggestion
from .text import (
    TextIndex,
    build_text_index,
    exact_similarity,
    normalize,
    partial_similarity,
    qgrams,
)

__all__ = [name for name in dir() if not name.startswith("_")]
