"""Chat-style transports for the extraction pipeline.

A transport is anything with ``send(messages) -> str``: messages go in
as ``[{"role": ..., "content": ...}]``, the model's text comes back.
Two implementations ship:

* ``HttpTransport`` speaks the common OpenAI-compatible wire shape
  (JSON body with model/messages/temperature/max_tokens, reply text in
  the first choice's message content). The API key is read from the
  environment variable named in the config and is never stored.
* ``MockTransport`` replays scripted responses from a newline-delimited
  file, one response per line, consumed in order. A line that parses as
  a JSON string is unescaped first, which is how multi-line responses
  are scripted.
"""

from __future__ import annotations

import json
import os
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Protocol


class TransportError(Exception):
    """Network, auth, timeout, script, or response-shape failure."""


@dataclass(frozen=True)
class TransportConfig:
    transport_kind: str = "http"  # "http" or "mock"
    endpoint: str = ""
    model_id: str = ""
    temperature: float = 0.0
    max_output_tokens: int = 4096
    auth_token_env_var: str = "LLM_API_TOKEN"
    timeout_seconds: float = 120.0
    scripted_responses_path: str | None = None

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TransportConfig:
        return cls(
            transport_kind=data.get("transport_kind", "http"),
            endpoint=data.get("endpoint", ""),
            model_id=data.get("model_id", ""),
            temperature=float(data.get("temperature", 0.0)),
            max_output_tokens=int(data.get("max_output_tokens", 4096)),
            auth_token_env_var=data.get("auth_token_env_var", "LLM_API_TOKEN"),
            timeout_seconds=float(data.get("timeout_seconds", 120.0)),
            scripted_responses_path=data.get("scripted_responses_path"),
        )

    @classmethod
    def load(cls, path: str | Path) -> TransportConfig:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError(f"{path}: transport config must be a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        return {
            "transport_kind": self.transport_kind,
            "endpoint": self.endpoint,
            "model_id": self.model_id,
            "temperature": self.temperature,
            "max_output_tokens": self.max_output_tokens,
            "auth_token_env_var": self.auth_token_env_var,
            "timeout_seconds": self.timeout_seconds,
            "scripted_responses_path": self.scripted_responses_path,
        }


class Transport(Protocol):
    def send(self, messages: list[dict[str, str]]) -> str: ...


class HttpTransport:
    def __init__(self, cfg: TransportConfig):
        if not cfg.endpoint:
            raise TransportError("http transport requires an endpoint")
        token = os.environ.get(cfg.auth_token_env_var)
        if not token:
            raise TransportError(
                f"environment variable {cfg.auth_token_env_var} is not set; refusing to send"
            )
        self._cfg = cfg
        self._token = token

    def send(self, messages: list[dict[str, str]]) -> str:
        body = json.dumps(
            {
                "model": self._cfg.model_id,
                "messages": messages,
                "temperature": self._cfg.temperature,
                "max_tokens": self._cfg.max_output_tokens,
            }
        ).encode("utf-8")
        request = urllib.request.Request(
            self._cfg.endpoint,
            data=body,
            headers={
                "Content-Type": "application/json",
                "Authorization": f"Bearer {self._token}",
            },
            method="POST",
        )
        try:
            with urllib.request.urlopen(request, timeout=self._cfg.timeout_seconds) as resp:
                payload = json.loads(resp.read().decode("utf-8"))
        except (urllib.error.URLError, TimeoutError, json.JSONDecodeError, OSError) as exc:
            raise TransportError(f"request to {self._cfg.endpoint} failed: {exc}") from exc
        try:
            return payload["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise TransportError("response did not carry choices[0].message.content") from exc


class MockTransport:
    def __init__(self, script_path: str | Path):
        try:
            lines = Path(script_path).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise TransportError(f"cannot read scripted responses: {exc}") from exc
        self._responses: list[str] = []
        for line in lines:
            if not line.strip():
                continue
            try:
                decoded = json.loads(line)
            except json.JSONDecodeError:
                decoded = None
            self._responses.append(decoded if isinstance(decoded, str) else line)
        self._cursor = 0
        self.sent: list[list[dict[str, str]]] = []

    def send(self, messages: list[dict[str, str]]) -> str:
        self.sent.append(messages)
        if self._cursor >= len(self._responses):
            raise TransportError(
                f"scripted responses exhausted after {len(self._responses)} calls"
            )
        response = self._responses[self._cursor]
        self._cursor += 1
        return response


def make_transport(cfg: TransportConfig) -> Transport:
    if cfg.transport_kind == "mock":
        if not cfg.scripted_responses_path:
            raise TransportError("mock transport requires scripted_responses_path")
        return MockTransport(cfg.scripted_responses_path)
    if cfg.transport_kind == "http":
        return HttpTransport(cfg)
    raise TransportError(f"unknown transport kind {cfg.transport_kind!r}")
