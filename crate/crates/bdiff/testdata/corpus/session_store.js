// Session persistence with sliding expiry and namespacing.

'use strict';

const DEFAULT_TTL_MS = 30 * 60 * 1000;
const SWEEP_INTERVAL_MS = 60 * 1000;
const KEY_SEPARATOR = '::';

class SessionStore {
  constructor(options = {}) {
    this.ttlMs = options.ttlMs ?? DEFAULT_TTL_MS;
    this.clock = options.clock ?? (() => Date.now());
    this.entries = new Map();
    this.expiryIndex = [];
    this.sweepCount = 0;
  }

  composeKey(namespace, sessionId) {
    if (!namespace || namespace.includes(KEY_SEPARATOR)) {
      throw new Error(`invalid namespace: ${namespace}`);
    }
    return `${namespace}${KEY_SEPARATOR}${sessionId}`;
  }

  put(namespace, sessionId, payload) {
    const key = this.composeKey(namespace, sessionId);
    const expiresAt = this.clock() + this.ttlMs;
    this.entries.set(key, { payload, expiresAt, touches: 0 });
    this.expiryIndex.push([expiresAt, key]);
    return key;
  }

  touch(namespace, sessionId) {
    const key = this.composeKey(namespace, sessionId);
    const entry = this.entries.get(key);
    if (!entry) {
      return false;
    }
    entry.expiresAt = this.clock() + this.ttlMs;
    entry.touches += 1;
    this.expiryIndex.push([entry.expiresAt, key]);
    return true;
  }

  get(namespace, sessionId) {
    const key = this.composeKey(namespace, sessionId);
    const entry = this.entries.get(key);
    if (!entry) {
      return null;
    }
    if (entry.expiresAt <= this.clock()) {
      this.entries.delete(key);
      return null;
    }
    return entry.payload;
  }

  dropNamespace(namespace) {
    const prefix = `${namespace}${KEY_SEPARATOR}`;
    let removed = 0;
    for (const key of [...this.entries.keys()]) {
      if (key.startsWith(prefix)) {
        this.entries.delete(key);
        removed += 1;
      }
    }
    return removed;
  }

  sweepExpired() {
    const now = this.clock();
    const survivors = [];
    let expired = 0;
    for (const [expiresAt, key] of this.expiryIndex) {
      if (expiresAt > now) {
        survivors.push([expiresAt, key]);
        continue;
      }
      const entry = this.entries.get(key);
      if (entry && entry.expiresAt <= now) {
        this.entries.delete(key);
        expired += 1;
      }
    }
    this.expiryIndex = survivors;
    this.sweepCount += 1;
    return expired;
  }

  get size() {
    return this.entries.size;
  }
}

function startSweeper(store, scheduler = setInterval) {
  return scheduler(() => store.sweepExpired(), SWEEP_INTERVAL_MS);
}

module.exports = { SessionStore, startSweeper, DEFAULT_TTL_MS };
