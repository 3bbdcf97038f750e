"""Support τ-tilting theory, g-vector fans and stability walls for small bound quiver algebras."""

__version__ = "0.1.0"
