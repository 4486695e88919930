"""The action grammar.

    Action: <skill>(<int>, <int>, ...)

Policy output may narrate several candidate actions; the last `Action:`
marker is the one that counts."""

import logging
import re

from typing import Union

from vistawise.exceptions import VistaActionError
from .types import ActionDecision,ParamType
from .library import SkillLibrary

logger = logging.getLogger('vistawise.skills.grammar')

MARKER = 'Action:'

_CALL = re.compile(r'\s*([A-Za-z_][A-Za-z0-9_]*)\s*\(([^()]*)\)')
_INT = re.compile(r"^[+-]?[0-9]{1,9}$")

def format_action(action: ActionDecision) -> str:
    return f"{MARKER} {action.skill}({', '.join(str(a) for a in action.args)})"

def parse_action(raw: Union[str, bytes], library: SkillLibrary) -> ActionDecision:
    """Extract and validate the action in a policy output.

    Args:
        raw (str): policy output, bytes are decoded leniently
        library (SkillLibrary): skills the action must name

    Raises:
        VistaActionError: with reason no_marker, malformed, unknown_skill,
            arity, hotbar_range or out_of_range

    Returns:
        ActionDecision: the validated action
    """

    if isinstance(raw, (bytes, bytearray)):
        raw = bytes(raw).decode('utf8', errors='replace')

    at = raw.rfind(MARKER)
    if at < 0:
        raise VistaActionError("no 'Action:' marker in policy output", reason='no_marker')

    match = _CALL.match(raw, at + len(MARKER))
    if match is None:
        raise VistaActionError("can not read a skill call after the marker", reason='malformed')

    name, arglist = match.groups()
    values = []
    if arglist.strip():
        for token in arglist.split(','):
            token = token.strip()
            if not _INT.match(token):
                raise VistaActionError(f"argument {token!r} is not an integer", reason='malformed')
            values.append(int(token))

    if name not in library:
        raise VistaActionError(f"unknown skill {name}", reason='unknown_skill')

    spec = library.get(name)
    if len(values) != spec.arity:
        raise VistaActionError(f"{name} takes {spec.arity} arguments, got {len(values)}", reason='arity')

    for param, value in zip(spec.params, values):
        low, high = param.ptype.bounds
        if low <= value <= high:
            continue
        if param.ptype is ParamType.HOTBAR_KEY:
            raise VistaActionError(f"{name}: hotbar key {param.name}={value} outside 1..9", reason='hotbar_range')
        raise VistaActionError(f"{name}: {param.name}={value} outside {low}..{high}", reason='out_of_range')

    return ActionDecision(name, tuple(values))
