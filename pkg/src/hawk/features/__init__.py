from .config import DEFAULT_CONFIG, FeatureConfig
from .engagements import Engagement, segment_engagements, view_angle_deg
from .grouping import (
    STRUCTURED_PERF,
    STRUCTURED_PERF_IDX,
    STRUCTURED_SENSE,
    STRUCTURED_SENSE_IDX,
    TEMPORAL_PERF,
    TEMPORAL_SENSE,
)
from .ranking import mannwhitney_u, rank_features_mannwhitney
from .streams import (
    STREAM_COLUMNS,
    STREAM_NAMES,
    STREAM_SCHEMA_VERSION,
    TemporalStreams,
    extract_streams,
    schema_dict,
)
from .structured import (
    FEATURE_NAMES,
    StructuredVector,
    aiming_features,
    elimination_features,
    feature_vector,
    firing_features,
    props_features,
)

__all__ = [
    "DEFAULT_CONFIG",
    "FeatureConfig",
    "Engagement",
    "segment_engagements",
    "view_angle_deg",
    "STRUCTURED_PERF",
    "STRUCTURED_PERF_IDX",
    "STRUCTURED_SENSE",
    "STRUCTURED_SENSE_IDX",
    "TEMPORAL_PERF",
    "TEMPORAL_SENSE",
    "mannwhitney_u",
    "rank_features_mannwhitney",
    "STREAM_COLUMNS",
    "STREAM_NAMES",
    "STREAM_SCHEMA_VERSION",
    "TemporalStreams",
    "extract_streams",
    "schema_dict",
    "FEATURE_NAMES",
    "StructuredVector",
    "aiming_features",
    "elimination_features",
    "feature_vector",
    "firing_features",
    "props_features",
]
