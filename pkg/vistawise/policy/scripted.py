# vim: ts=4 sw=4 et ai:
# -*- coding: utf8 -*-
"""This module implements the scripted decision provider. It reads the
structured sections of a synthesized prompt and walks the milestone chain
with a fixed set of rules, so a full episode can run without a language
model."""

import logging
import time

from typing import List,Optional

from vistawise.skills.grammar import format_action
from .base import DecisionProvider,PolicyRequest,PolicyResponse
from .stages import Stage,SCAN,parse_prompt,default_stages

logger = logging.getLogger('vistawise.policy.scripted')

class ScriptedPolicy(DecisionProvider):
    """Deterministic stand-in for the model. The same prompt always yields
    the same response text."""

    name = 'scripted'

    def __init__(self, stages: Optional[List[Stage]] =None) -> None:
        self.stages = stages if stages is not None else default_stages()

    def choose(self, prompt: str):
        """Return (stage name, action) for a prompt.

        Raises:
            VistaResponseError: a prompt section can not be read
        """

        view = parse_prompt(prompt)
        for stage in self.stages:
            action = stage.handle(view)
            if action is not None:
                return str(stage), action
        return 'Scan', SCAN

    def decide(self, req: PolicyRequest) -> PolicyResponse:
        start = time.monotonic()
        stage, action = self.choose(req.prompt)
        logger.debug(f"{stage} chose {format_action(action)}")

        text = f"Stage: {stage}.\n{format_action(action)}"
        return PolicyResponse(text, latency_ms=(time.monotonic() - start) * 1000)

def scripted_decide(req: PolicyRequest) -> PolicyResponse:
    return ScriptedPolicy().decide(req)
