from .app import ServiceConfig, create_app
from .auth import AuthManager, AuthToken, UserAccount

__all__ = ["AuthManager", "AuthToken", "ServiceConfig", "UserAccount", "create_app"]
