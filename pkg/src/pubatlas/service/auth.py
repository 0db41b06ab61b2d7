"""Accounts and bearer tokens.

Anyone can register (role=user); admins are seeded explicitly. Passwords
are stored as salted PBKDF2 hashes. Tokens are stateless HMAC-signed
payloads with a 24-hour expiry; verification is constant-time and an
expired or tampered token is rejected everywhere.
"""

from __future__ import annotations

import base64
import hashlib
import hmac
import json
import os
import secrets
import threading
import time
from dataclasses import dataclass
from typing import Callable

TOKEN_TTL_SECONDS = 24 * 3600
_PBKDF2_ITERATIONS = 60_000

ROLE_USER = "user"
ROLE_ADMIN = "admin"


class AuthError(Exception):
    pass


class UsernameTaken(AuthError):
    pass


class WeakPassword(AuthError):
    """Passwords must be at least 8 characters."""


class InvalidCredentials(AuthError):
    pass


class Unauthenticated(AuthError):
    """Missing, malformed, tampered or expired token."""


class Forbidden(AuthError):
    """Valid token, insufficient role."""


@dataclass(frozen=True)
class UserAccount:
    username: str
    password_hash: str  # "salt:hexdigest"
    role: str = ROLE_USER


@dataclass(frozen=True)
class AuthToken:
    token: str
    subject: str
    expires_at: float


def _hash_password(password: str, salt: str) -> str:
    digest = hashlib.pbkdf2_hmac(
        "sha256", password.encode("utf-8"), salt.encode("ascii"), _PBKDF2_ITERATIONS
    )
    return digest.hex()


class AuthManager:
    """User registry plus token mint/verify. The clock is injectable so
    expiry behavior is testable without sleeping."""

    def __init__(
        self,
        secret: bytes | None = None,
        users_path: str | None = None,
        clock: Callable[[], float] = time.time,
    ):
        self._secret = secret or secrets.token_bytes(32)
        self._users_path = users_path
        self._clock = clock
        self._lock = threading.Lock()
        self._users: dict[str, UserAccount] = {}
        if users_path is not None and os.path.exists(users_path):
            with open(users_path, "r", encoding="utf-8") as handle:
                for row in json.load(handle):
                    account = UserAccount(**row)
                    self._users[account.username] = account

    def register(self, username: str, password: str, role: str = ROLE_USER) -> UserAccount:
        if len(password) < 8:
            raise WeakPassword("password must be at least 8 characters")
        if not username:
            raise AuthError("username must be non-empty")
        with self._lock:
            if username in self._users:
                raise UsernameTaken(username)
            salt = secrets.token_hex(16)
            account = UserAccount(
                username=username,
                password_hash=f"{salt}:{_hash_password(password, salt)}",
                role=role,
            )
            self._users[username] = account
            self._persist()
            return account

    def seed_admin_from_env(self, env=os.environ) -> UserAccount | None:
        """Create the initial admin from PUBATLAS_ADMIN_USER/_PASSWORD when
        configured and not yet present."""
        username = env.get("PUBATLAS_ADMIN_USER")
        password = env.get("PUBATLAS_ADMIN_PASSWORD")
        if not username or not password:
            return None
        with self._lock:
            if username in self._users:
                return self._users[username]
        return self.register(username, password, role=ROLE_ADMIN)

    def login(self, username: str, password: str) -> AuthToken:
        account = self._users.get(username)
        if account is None:
            # burn comparable work so unknown users are not distinguishable
            # from wrong passwords by timing
            _hash_password(password, "0" * 32)
            raise InvalidCredentials("invalid credentials")
        salt, expected = account.password_hash.split(":", 1)
        candidate = _hash_password(password, salt)
        if not hmac.compare_digest(candidate, expected):
            raise InvalidCredentials("invalid credentials")
        return self._mint(username)

    def _mint(self, username: str) -> AuthToken:
        expires_at = self._clock() + TOKEN_TTL_SECONDS
        payload = json.dumps(
            {"sub": username, "exp": expires_at}, separators=(",", ":")
        ).encode("utf-8")
        body = base64.urlsafe_b64encode(payload).decode("ascii").rstrip("=")
        signature = hmac.new(self._secret, body.encode("ascii"), "sha256").hexdigest()
        return AuthToken(
            token=f"{body}.{signature}", subject=username, expires_at=expires_at
        )

    def verify(self, token: str | None) -> UserAccount:
        if not token:
            raise Unauthenticated("missing token")
        try:
            body, signature = token.split(".", 1)
        except ValueError:
            raise Unauthenticated("malformed token")
        expected = hmac.new(self._secret, body.encode("ascii"), "sha256").hexdigest()
        if not hmac.compare_digest(signature, expected):
            raise Unauthenticated("bad signature")
        padded = body + "=" * (-len(body) % 4)
        try:
            payload = json.loads(base64.urlsafe_b64decode(padded))
        except (ValueError, UnicodeDecodeError):
            raise Unauthenticated("malformed token payload")
        if payload.get("exp", 0) < self._clock():
            raise Unauthenticated("token expired")
        account = self._users.get(payload.get("sub", ""))
        if account is None:
            raise Unauthenticated("unknown subject")
        return account

    def require_admin(self, account: UserAccount) -> None:
        if account.role != ROLE_ADMIN:
            raise Forbidden(f"{account.username} is not an administrator")

    def _persist(self) -> None:
        if self._users_path is None:
            return
        rows = [
            {"username": u.username, "password_hash": u.password_hash, "role": u.role}
            for u in self._users.values()
        ]
        tmp = self._users_path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as handle:
            json.dump(rows, handle)
        os.replace(tmp, self._users_path)
