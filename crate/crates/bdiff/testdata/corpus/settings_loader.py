"""Application settings loading and validation."""

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional


DEFAULT_TIMEOUT_SECONDS = 30
MAX_RETRY_ATTEMPTS = 5
SUPPORTED_SCHEMA_VERSIONS = (1, 2, 3)


@dataclass
class DatabaseSettings:
    host: str = "localhost"
    port: int = 5432
    username: str = "app"
    password_env: str = "APP_DB_PASSWORD"
    pool_size: int = 8
    connect_timeout: float = 10.0

    def resolve_password(self) -> Optional[str]:
        value = os.environ.get(self.password_env)
        if value is None or not value.strip():
            return None
        return value.strip()

    def connection_url(self) -> str:
        secret = self.resolve_password() or "anonymous"
        return f"postgres://{self.username}:{secret}@{self.host}:{self.port}/main"


@dataclass
class CacheSettings:
    backend: str = "memory"
    ttl_seconds: int = 600
    max_entries: int = 10_000
    eviction_policy: str = "lru"

    def validate(self) -> list[str]:
        problems = []
        if self.backend not in ("memory", "redis", "disk"):
            problems.append(f"unknown cache backend: {self.backend}")
        if self.ttl_seconds <= 0:
            problems.append("cache ttl must be positive")
        if self.max_entries < 16:
            problems.append("cache capacity below the useful minimum")
        if self.eviction_policy not in ("lru", "lfu", "fifo"):
            problems.append(f"unknown eviction policy: {self.eviction_policy}")
        return problems


@dataclass
class Settings:
    schema_version: int = 2
    debug_mode: bool = False
    listen_address: str = "127.0.0.1"
    listen_port: int = 8080
    worker_count: int = 4
    database: DatabaseSettings = field(default_factory=DatabaseSettings)
    cache: CacheSettings = field(default_factory=CacheSettings)
    feature_flags: dict = field(default_factory=dict)

    def endpoint(self) -> str:
        return f"{self.listen_address}:{self.listen_port}"


class SettingsError(Exception):
    """Raised when a settings file cannot be used."""


def read_settings_file(path: Path) -> dict:
    if not path.exists():
        raise SettingsError(f"settings file not found: {path}")
    try:
        raw_text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SettingsError(f"cannot read {path}: {exc}") from exc
    try:
        parsed = json.loads(raw_text)
    except json.JSONDecodeError as exc:
        raise SettingsError(f"invalid json in {path}: {exc}") from exc
    if not isinstance(parsed, dict):
        raise SettingsError("settings document must be an object")
    return parsed


def merge_overlays(base: dict, overlay: dict) -> dict:
    merged = dict(base)
    for key, value in overlay.items():
        existing = merged.get(key)
        if isinstance(existing, dict) and isinstance(value, dict):
            merged[key] = merge_overlays(existing, value)
        else:
            merged[key] = value
    return merged


def build_settings(document: dict) -> Settings:
    version = document.get("schema_version", 1)
    if version not in SUPPORTED_SCHEMA_VERSIONS:
        raise SettingsError(f"unsupported schema version {version}")
    database = DatabaseSettings(**document.get("database", {}))
    cache = CacheSettings(**document.get("cache", {}))
    settings = Settings(
        schema_version=version,
        debug_mode=bool(document.get("debug_mode", False)),
        listen_address=document.get("listen_address", "127.0.0.1"),
        listen_port=int(document.get("listen_port", 8080)),
        worker_count=int(document.get("worker_count", 4)),
        database=database,
        cache=cache,
        feature_flags=document.get("feature_flags", {}),
    )
    complaints = settings.cache.validate()
    if complaints:
        raise SettingsError("; ".join(complaints))
    return settings


def load_settings(primary: Path, overlay: Optional[Path] = None) -> Settings:
    document = read_settings_file(primary)
    if overlay is not None and overlay.exists():
        document = merge_overlays(document, read_settings_file(overlay))
    return build_settings(document)
