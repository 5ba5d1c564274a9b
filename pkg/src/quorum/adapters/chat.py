"""OpenAI-compatible chat-completions client with a disk cache.

One client per endpoint; in-flight requests are bounded by a semaphore.
Identical (model, prompt, params, seed) requests are served from the
cache without touching the network.  Cache files hold request and
response verbatim for audit.  Secrets come only from the environment
variable named in the configuration, never from config files.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
import time
from pathlib import Path
from typing import Optional

import requests

from ..errors import ConfigurationError, QuorumError
from .base import SolverError


class ChatError(QuorumError):
    """Base for HTTP chat failures."""


class ChatAuthError(ChatError):
    pass


class ChatRateLimitError(ChatError):
    pass


class ChatServerError(ChatError):
    pass


class ChatRequestError(ChatError):
    pass


def _error_for_status(status: int, body: str) -> ChatError:
    snippet = body[:200]
    if status in (401, 403):
        return ChatAuthError(f"HTTP {status}: {snippet}")
    if status == 429:
        return ChatRateLimitError(f"HTTP {status}: {snippet}")
    if status >= 500:
        return ChatServerError(f"HTTP {status}: {snippet}")
    return ChatRequestError(f"HTTP {status}: {snippet}")


class ChatClient:
    def __init__(
        self,
        base_url: str,
        model: str,
        cache_dir: str | Path,
        api_key_env: Optional[str] = "OPENAI_API_KEY",
        temperature: float = 1.0,
        max_tokens: Optional[int] = None,
        timeout_s: float = 60.0,
        max_retries: int = 3,
        backoff_s: float = 0.5,
        max_in_flight: int = 4,
    ):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.api_key_env = api_key_env
        self.temperature = temperature
        self.max_tokens = max_tokens
        self.timeout_s = timeout_s
        self.max_retries = max_retries
        self.backoff_s = backoff_s
        self._gate = threading.BoundedSemaphore(max_in_flight)
        self._local = threading.local()
        self._session = requests.Session()

    # -- cache ---------------------------------------------------------

    def _params(self) -> dict:
        params = {"temperature": self.temperature}
        if self.max_tokens is not None:
            params["max_tokens"] = self.max_tokens
        return params

    def cache_key(self, prompt: str, seed: int) -> str:
        blob = json.dumps(
            {"model": self.model, "prompt": prompt, "params": self._params(), "seed": seed},
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()

    def _cache_path(self, key: str) -> Path:
        return self.cache_dir / f"{key}.json"

    def _cache_read(self, key: str) -> Optional[str]:
        path = self._cache_path(key)
        try:
            with open(path) as fh:
                entry = json.load(fh)
            return entry["response"]["choices"][0]["message"]["content"]
        except FileNotFoundError:
            return None
        except (json.JSONDecodeError, KeyError, IndexError, TypeError):
            return None  # corrupt cache entries count as misses

    def _cache_write(self, key: str, request: dict, response: dict):
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"request": request, "response": response}, fh, indent=2, sort_keys=True)
        os.replace(tmp, self._cache_path(key))

    # -- requests ------------------------------------------------------

    @property
    def last_trace(self) -> list[dict]:
        """Attempt log of this thread's most recent ``complete`` call."""
        return getattr(self._local, "trace", [])

    def complete(self, prompt: str, seed: int = 0) -> str:
        key = self.cache_key(prompt, seed)
        self._local.trace = trace = []
        cached = self._cache_read(key)
        if cached is not None:
            trace.append({"attempt": 0, "source": "cache", "key": key})
            return cached

        if self.api_key_env is not None and not os.environ.get(self.api_key_env):
            raise ConfigurationError(f"secret environment variable {self.api_key_env!r} is not set")

        body = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "seed": seed,
            **self._params(),
        }
        headers = {"Content-Type": "application/json"}
        if self.api_key_env is not None:
            headers["Authorization"] = f"Bearer {os.environ[self.api_key_env]}"

        url = f"{self.base_url}/chat/completions"
        last_error: Optional[ChatError] = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                time.sleep(self.backoff_s * 2 ** (attempt - 1))
            try:
                with self._gate:
                    resp = self._session.post(url, json=body, headers=headers, timeout=self.timeout_s)
            except requests.RequestException as exc:
                last_error = ChatServerError(f"network error: {exc}")
                trace.append({"attempt": attempt, "source": "network", "error": str(exc)})
                continue
            if resp.status_code == 200:
                payload = resp.json()
                self._cache_write(key, body, payload)
                trace.append({"attempt": attempt, "source": "network", "status": 200, "key": key})
                try:
                    return payload["choices"][0]["message"]["content"]
                except (KeyError, IndexError, TypeError) as exc:
                    raise ChatRequestError(f"malformed response payload: {exc}") from exc
            last_error = _error_for_status(resp.status_code, resp.text)
            trace.append({"attempt": attempt, "source": "network", "status": resp.status_code})
            if isinstance(last_error, (ChatAuthError, ChatRequestError)):
                raise last_error  # retrying cannot fix these
        raise last_error


class ChatSolver:
    """Adapter exposing a :class:`ChatClient` through the solver protocol."""

    def __init__(self, id: str, client: ChatClient):
        self.id = id
        self.client = client

    def solve(self, task_id: str, prompt: str, seed: int) -> str:
        try:
            return self.client.complete(prompt, seed)
        except ChatError as exc:
            raise SolverError(str(exc)) from exc
