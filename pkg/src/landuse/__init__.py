"""Land-use identification from geo-tagged short-text posts."""

from .classifier import (
    MnbModel,
    PosSequenceFilter,
    PredictionResult,
    classify_pipeline,
    fit_pos_filter,
    is_location_post,
    load_model,
    predict,
    save_model,
    train_mnb,
)
from .errors import ConfigError, GeometryError, InputError, LanduseError, ModelFormatError
from .evaluation import ConfusionMatrix, MetricsReport, confusion, metrics
from .features import FeatureConfig, Vocabulary, extract_ngrams, extract_pos_ngrams, fit_vocabulary, vectorize
from .geo import BlockMap, GeoPoint, Polygon, assign_blocks, filter_by_region, load_geojson, point_in_polygon
from .ingest import LabeledPost, RawPost, dedupe_and_filter, load_posts, split_corpus
from .taxonomy import LandUseClass, Parent, Sub
from .textprep import CleanPost, lcs_ratio, preprocess, spell_correct

__version__ = "0.1.0"

__all__ = [
    "MnbModel",
    "PosSequenceFilter",
    "PredictionResult",
    "classify_pipeline",
    "fit_pos_filter",
    "is_location_post",
    "load_model",
    "predict",
    "save_model",
    "train_mnb",
    "ConfigError",
    "GeometryError",
    "InputError",
    "LanduseError",
    "ModelFormatError",
    "ConfusionMatrix",
    "MetricsReport",
    "confusion",
    "metrics",
    "FeatureConfig",
    "Vocabulary",
    "extract_ngrams",
    "extract_pos_ngrams",
    "fit_vocabulary",
    "vectorize",
    "BlockMap",
    "GeoPoint",
    "Polygon",
    "assign_blocks",
    "filter_by_region",
    "load_geojson",
    "point_in_polygon",
    "LabeledPost",
    "RawPost",
    "dedupe_and_filter",
    "load_posts",
    "split_corpus",
    "LandUseClass",
    "Parent",
    "Sub",
    "CleanPost",
    "lcs_ratio",
    "preprocess",
    "spell_correct",
]
