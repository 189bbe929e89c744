"""Registry of attracting-law classes keyed by their type tag."""

from typing import Dict, List, Type

from ers_tznn.laws.base import BaseLaw


class LawRegistry:
    """Registry for attracting-law classes."""

    def __init__(self):
        """Initialize the registry."""
        self._laws: Dict[str, Type[BaseLaw]] = {}

    def register(self, law_class: Type[BaseLaw]):
        """Register a law class under its ``type`` tag.

        Args:
            law_class: Concrete law class with a literal ``type`` default
        """
        tag = law_class.model_fields["type"].default
        if tag in self._laws:
            raise ValueError(f"law type {tag!r} registered twice")
        self._laws[tag] = law_class

    def get(self, tag: str) -> Type[BaseLaw] | None:
        """Get the law class for a type tag.

        Args:
            tag: Type tag such as "DPRL"

        Returns:
            Law class or None if the tag is unknown
        """
        return self._laws.get(tag)

    def tags(self) -> List[str]:
        """Registered type tags in registration order."""
        return list(self._laws)

    def list_laws(self) -> List[Dict[str, str]]:
        """List all registered laws.

        Returns:
            List of law metadata (tag, family, description, parameters)
        """
        return [
            {
                "type": tag,
                "family": cls.family.value,
                "fixed_time": "yes" if cls.fixed_time else "no",
                "description": cls.description,
                "parameters": ", ".join(name for name in cls.model_fields if name != "type"),
            }
            for tag, cls in self._laws.items()
        ]


# Global registry instance
law_registry = LawRegistry()
