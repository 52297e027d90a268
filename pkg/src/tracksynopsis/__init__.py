"""Video synopsis from object track logs.

The engine learns what normal motion looks like per object class, flags the
detections that do not fit, and condenses the recording into a short cut
list of the intervals worth watching.
"""

from .anomaly import AnomalyEvent, detect, events_to_jsonl, prune_isolated, prune_sparse_objects
from .classifier import OnlineClassifier
from .config import SynopsisConfig, load_config
from .errors import (ConfigError, ConsistencyError, DataError, EngineError,
                     ParseError, StateError)
from .features import FeatureVector, RunningNormalizer, TrackHistory
from .pipeline import (AnnotationSidecar, ClipCut, RenderPlan, SidecarEntry,
                       build_sidecar, plan_render, run_single, run_stereo)
from .scenarios import (PRESETS, ActorSpec, Scenario, StereoSetup, clean_scenario,
                        generate, generate_stereo, load_scenario,
                        scenario_from_json, scenario_to_json, stereo_scenario,
                        trend_scenario, wrong_way_scenario)
from .segments import (CutList, Segment, SummaryReport, build_segments,
                       drop_small_segments, intersect_stereo, load_cutlist,
                       merge_close, pad_segments, report)
from .tracklog import (Detection, TrackLog, filter_by_confidence, load_track_log,
                       parse_mot_csv, parse_track_log, serialize_track_log)

__version__ = "0.1.0"
