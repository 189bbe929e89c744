"""Registry for acceptance checks."""

from typing import Dict, List, Type

from ers_tznn.verification.base import BaseCheck


class CheckRegistry:
    """Registry for acceptance checks, kept in criterion order."""

    def __init__(self):
        """Initialize the registry."""
        self._checks: List[BaseCheck] = []

    def register(self, check_class: Type[BaseCheck]):
        """Register a check class.

        Args:
            check_class: Check class to register
        """
        if any(c.name == check_class.name for c in self._checks):
            return
        self._checks.append(check_class())
        self._checks.sort(key=lambda c: c.criterion)

    def get(self, name: str) -> BaseCheck | None:
        """Get a check by name or criterion number.

        Args:
            name: Check name such as ``sprl-exact`` or a number such as ``2``

        Returns:
            Check instance or None if no check matches
        """
        for check in self._checks:
            if check.name == name or str(check.criterion) == name:
                return check
        return None

    def all(self) -> List[BaseCheck]:
        return list(self._checks)

    def list_checks(self) -> List[Dict[str, str]]:
        """List all registered checks.

        Returns:
            List of check metadata
        """
        return [
            {"criterion": str(c.criterion), "name": c.name, "description": c.description}
            for c in self._checks
        ]


# Global registry instance
check_registry = CheckRegistry()
