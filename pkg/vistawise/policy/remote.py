# vim: ts=4 sw=4 et ai:
# -*- coding: utf8 -*-
"""This module implements the remote decision provider, a client for any
chat-completion style HTTP endpoint. Configure it with an endpoint document
and call decide() once per step."""

import json
import logging
import os
import pathlib
import time

from dataclasses import dataclass,field
from typing import Dict,Optional,Union

import requests

from vistawise.shared import REMOTE_TIMEOUT_MS,REMOTE_RETRIES,REMOTE_BACKOFF_MS
from vistawise.exceptions import (VistaConfigError,VistaTransportError,
                                  VistaTimeout,VistaResponseError)
from .base import DecisionProvider,PolicyRequest,PolicyResponse

logger = logging.getLogger('vistawise.policy.remote')

DEFAULT_PATH = '/chat/completions'
DEFAULT_OUTPUT_PATH = 'choices.0.message.content'

@dataclass(frozen=True)
class EndpointConfig:
    base_url: str
    model: str
    credential_env: str
    timeout_ms: int = REMOTE_TIMEOUT_MS
    # Total attempts, the first one included.
    max_retries: int = REMOTE_RETRIES
    backoff_ms: int = REMOTE_BACKOFF_MS
    path: str = DEFAULT_PATH
    output_path: str = DEFAULT_OUTPUT_PATH
    # Decoding parameters passed through untouched (temperature, top_p, ...).
    params: Dict[str, object] = field(default_factory=dict)

    @property
    def url(self) -> str:
        return self.base_url.rstrip('/') + '/' + self.path.lstrip('/')

    @classmethod
    def from_dict(cls, data: dict) -> 'EndpointConfig':
        """Build and validate an endpoint config.

        Raises:
            VistaConfigError: a field is missing or out of range
        """

        if not isinstance(data, dict):
            raise VistaConfigError("endpoint config must be a JSON object")

        for key in ('base_url', 'model', 'credential_env'):
            if not isinstance(data.get(key), str) or not data[key]:
                raise VistaConfigError(f"endpoint config needs a non-empty '{key}'")

        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise VistaConfigError(f"unknown endpoint config fields: {', '.join(sorted(unknown))}")

        cfg = cls(**data)
        if not isinstance(cfg.timeout_ms, int) or cfg.timeout_ms <= 0:
            raise VistaConfigError("endpoint 'timeout_ms' must be a positive integer")
        if not isinstance(cfg.max_retries, int) or cfg.max_retries < 1:
            raise VistaConfigError("endpoint 'max_retries' must be at least 1")
        if not isinstance(cfg.backoff_ms, int) or cfg.backoff_ms < 0:
            raise VistaConfigError("endpoint 'backoff_ms' must not be negative")
        if not isinstance(cfg.params, dict):
            raise VistaConfigError("endpoint 'params' must be an object")
        return cfg

def load_endpoint(path: Union[str, pathlib.Path]) -> EndpointConfig:
    try:
        with open(path, 'r', encoding='utf8') as fileobj:
            data = json.load(fileobj)
    except OSError as err:
        raise VistaConfigError(f"can not read endpoint config {path}: {err}")
    except json.JSONDecodeError as err:
        raise VistaConfigError(f"endpoint config {path} is not JSON: {err}")
    return EndpointConfig.from_dict(data)

def extract(body, output_path: str):
    """Follow a dotted path into a decoded JSON body. Numeric parts index
    lists.

    Raises:
        VistaResponseError: the path does not resolve to a string
    """

    node = body
    for part in output_path.split('.'):
        try:
            node = node[int(part)] if isinstance(node, list) else node[part]
        except (KeyError, IndexError, TypeError, ValueError):
            raise VistaResponseError(f"response has no '{output_path}'")
    if not isinstance(node, str):
        raise VistaResponseError(f"'{output_path}' is not text")
    return node

class RemotePolicy(DecisionProvider):
    """Client of a chat-completion endpoint. The credential is read from the
    environment variable the config names, once, when the client is built."""

    name = 'remote'

    def __init__(self, cfg: EndpointConfig, session: Optional[requests.Session] =None) -> None:
        """Raises:
            VistaConfigError: the credential variable is unset
        """

        token = os.environ.get(cfg.credential_env)
        if not token:
            raise VistaConfigError(f"environment variable {cfg.credential_env} is not set")

        self.cfg = cfg
        self.session = session or requests.Session()
        self.session.headers.update({'Authorization': f"Bearer {token}",
                                     'Content-Type': 'application/json'})
        self.attempts = 0

    def payload(self, req: PolicyRequest) -> dict:
        body = {'model': self.cfg.model,
                'messages': [{'role': 'user', 'content': req.prompt}],
                'max_tokens': req.max_output}
        body.update(self.cfg.params)
        return body

    def decide(self, req: PolicyRequest) -> PolicyResponse:
        """Send the prompt and return the raw text of the reply. The whole
        call, backoff included, stays within timeout_ms per attempt.

        Raises:
            VistaTimeout: every attempt timed out or the time budget ran out
            VistaTransportError: connection failures, 5xx on every attempt,
                or any 4xx
            VistaResponseError: the body is not JSON or lacks the output text
        """

        payload = self.payload(req)
        timeout = self.cfg.timeout_ms / 1000
        budget = timeout * self.cfg.max_retries
        deadline = time.monotonic() + budget
        last_error = None

        for attempt in range(self.cfg.max_retries):
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                break

            self.attempts += 1
            start = time.monotonic()
            try:
                response = self.session.post(self.cfg.url, json=payload, timeout=min(timeout, remaining))
                response.raise_for_status()
            except requests.Timeout as err:
                last_error = VistaTimeout(f"no answer from {self.cfg.url} within {self.cfg.timeout_ms} ms")
                logger.warning(f"Attempt {attempt + 1} timed out: {err}")
            except requests.HTTPError as err:
                status = err.response.status_code
                if 400 <= status < 500:
                    raise VistaTransportError(f"HTTP {status}: {err.response.text[:500]}")
                last_error = VistaTransportError(f"HTTP {status} from {self.cfg.url}")
                logger.warning(f"Attempt {attempt + 1} failed with HTTP {status}")
            except requests.RequestException as err:
                last_error = VistaTransportError(f"can not reach {self.cfg.url}: {err}")
                logger.warning(f"Attempt {attempt + 1} failed: {err}")
            else:
                latency = (time.monotonic() - start) * 1000
                return self.response(response, latency)

            if attempt < self.cfg.max_retries - 1:
                pause = min(self.cfg.backoff_ms * 2 ** attempt / 1000, deadline - time.monotonic())
                if pause > 0:
                    time.sleep(pause)

        if time.monotonic() >= deadline:
            logger.error(f"Giving up, the {budget:.2f} s budget is spent")
            raise VistaTimeout(f"no usable answer from {self.cfg.url} within {budget * 1000:.0f} ms: {last_error}")

        logger.error(f"Giving up after {self.cfg.max_retries} attempts")
        raise last_error

    def response(self, response: requests.Response, latency: float) -> PolicyResponse:
        try:
            body = response.json()
        except ValueError:
            raise VistaResponseError("response body is not JSON")

        text = extract(body, self.cfg.output_path)
        usage = None
        if isinstance(body, dict) and isinstance(body.get('usage'), dict):
            counts = body['usage']
            if isinstance(counts.get('prompt_tokens'), int) and isinstance(counts.get('completion_tokens'), int):
                usage = (counts['prompt_tokens'], counts['completion_tokens'])

        logger.debug(f"Reply in {latency:.0f} ms: {text!r}")
        return PolicyResponse(text, latency_ms=latency, token_usage=usage)

    def close(self) -> None:
        self.session.close()

def remote_decide(req: PolicyRequest, cfg: EndpointConfig) -> PolicyResponse:
    policy = RemotePolicy(cfg)
    try:
        return policy.decide(req)
    finally:
        policy.close()
