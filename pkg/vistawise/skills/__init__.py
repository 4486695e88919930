"""Skill library: registry, action grammar and execution against input-event
backends."""

from .types import (ParamType,ParamSpec,SkillSpec,ActionDecision,EventKind,
                    InputEvent,balanced)
from .library import (SkillLibrary,register_skill,library_text,core_library,
                      default_library)
from .grammar import format_action,parse_action,MARKER
from .backend import Backend,RecordingBackend,ExecutionReport,execute
