# errors.py
"""
Исключения проекта. Каждое соответствует одному виду ошибки,
а CLI превращает их в коды выхода (константы EXIT_* внизу).
"""

from typing import Optional


class KappaError(Exception):
    """Базовое исключение для всех ошибок библиотеки."""


class InvalidSpecError(KappaError, ValueError):
    """Некорректное описание группы (модуль < 2 и т.п.)."""


class InvalidSubgroupError(KappaError, ValueError):
    """Множество не замкнуто относительно сложения."""


class InvalidChainError(KappaError, ValueError):
    """Нарушена цепочка включений L ≤ G0."""


class InvalidInputError(KappaError, ValueError):
    """Операция не определена на переданных данных (например, μ на пустом A+B)."""


class PreconditionError(KappaError, ValueError):
    """Нарушено предусловие построения фрагмента."""


class NoFragmentsError(KappaError, ValueError):
    """У полного графа нет вершинных разрезов, а значит и фрагментов."""


class ResourceLimitError(KappaError, RuntimeError):
    """Порядок группы превышает настроенный лимит."""


class TheoremViolationError(KappaError, RuntimeError):
    """Вычисление противоречит доказанной теореме. Никогда не должно случаться."""


class ParseError(KappaError, ValueError):
    """Ошибка разбора текстового формата; position указывает на символ."""

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (позиция {position}: {text!r})"
        super().__init__(message)


class UsageError(KappaError, ValueError):
    """Некорректные аргументы командной строки."""


# === КОДЫ ВЫХОДА ===
EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_RESOURCE_LIMIT = 3
