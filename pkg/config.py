# config.py
"""
Центр управления всеми настройками проекта kappa-cayley.
Этот модуль отвечает за загрузку переменных окружения и предоставление
единого интерфейса для доступа к конфигурации во всех частях приложения:
лимиты на порядок групп, параметры выборки для проверки, число воркеров.
"""

import os
import logging
from dotenv import load_dotenv


class Config:
    """
    Класс конфигурации, который централизованно управляет всеми настройками.
    Принцип: все настройки в одном месте, легко найти и изменить.
    Любую настройку можно переопределить переменной окружения KAPPA_<ИМЯ>.
    """

    def __init__(self):
        # Загружаем переменные окружения из .env файла
        load_dotenv()

        # === ЛИМИТЫ НА РАЗМЕР ЗАДАЧИ ===
        self.MAX_GROUP_ORDER = self._get_int_env("KAPPA_MAX_GROUP_ORDER", 512)  # перечисление подгрупп
        self.ORACLE_MAX_ORDER = self._get_int_env("KAPPA_ORACLE_MAX_ORDER", 64)  # max-flow оракул
        self.EXHAUSTIVE_CUTS_MAX_ORDER = self._get_int_env("KAPPA_EXHAUSTIVE_CUTS_MAX_ORDER", 16)
        self.AUTOMORPHISM_SEARCH_LIMIT = self._get_int_env("KAPPA_AUTOMORPHISM_SEARCH_LIMIT", 1 << 17)

        # === НАСТРОЙКИ ПРОВЕРКИ (verify) ===
        self.SAMPLE_THRESHOLD = self._get_int_env("KAPPA_SAMPLE_THRESHOLD", 16)
        self.SAMPLE_SIZE = self._get_int_env("KAPPA_SAMPLE_SIZE", 100_000)
        self.SEED = self._get_int_env("KAPPA_SEED", 0)
        self.JOBS = self._get_int_env("KAPPA_JOBS", 1)
        self.CHUNK_SIZE = self._get_int_env("KAPPA_CHUNK_SIZE", 4096)  # не зависит от JOBS
        self.COUNTEREXAMPLES_FILE = os.getenv("KAPPA_COUNTEREXAMPLES_FILE", "counterexamples.jsonl")
        self.ORBIT_CACHE = os.environ.get("KAPPA_ORBIT_CACHE", "true").lower() == "true"  # оракул один раз на орбиту S

        # === РЕЖИМ ОТЛАДКИ ===
        self.DEBUG_MODE = os.environ.get("KAPPA_DEBUG", "false").lower() == "true"

        # Инициализируем логирование
        self._setup_logging()

    def _get_int_env(self, var_name: str, default: int) -> int:
        """
        Получает целочисленную переменную окружения.
        Если значение не число, выбрасывает исключение с понятным сообщением.
        """
        value = os.getenv(var_name)
        if value is None or not value.strip():
            return default
        try:
            return int(value)
        except ValueError:
            raise ValueError(f"Переменная окружения {var_name} должна быть целым числом, получено: {value!r}")

    def _setup_logging(self):
        """
        Настраивает логирование для всего приложения.
        Использует единый формат для всех модулей.
        """
        logging.basicConfig(
            level=logging.DEBUG if self.DEBUG_MODE else logging.INFO,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )

        self.logger = logging.getLogger(__name__)
        self.logger.debug("🔧 Конфигурация успешно загружена")
        self.logger.debug(f"🚀 Режим отладки: {'включен' if self.DEBUG_MODE else 'отключен'}")

    def validate_configuration(self) -> bool:
        """
        Проверяет корректность всех настроек.
        Возвращает True, если все настройки валидны.
        """
        positive = {
            "KAPPA_MAX_GROUP_ORDER": self.MAX_GROUP_ORDER,
            "KAPPA_ORACLE_MAX_ORDER": self.ORACLE_MAX_ORDER,
            "KAPPA_SAMPLE_THRESHOLD": self.SAMPLE_THRESHOLD,
            "KAPPA_SAMPLE_SIZE": self.SAMPLE_SIZE,
            "KAPPA_JOBS": self.JOBS,
            "KAPPA_CHUNK_SIZE": self.CHUNK_SIZE,
            "KAPPA_AUTOMORPHISM_SEARCH_LIMIT": self.AUTOMORPHISM_SEARCH_LIMIT,
        }
        for name, value in positive.items():
            if value < 1:
                self.logger.error(f"❌ {name} должен быть >= 1, получено {value}")
                return False

        if self.EXHAUSTIVE_CUTS_MAX_ORDER < 0:
            self.logger.error("❌ KAPPA_EXHAUSTIVE_CUTS_MAX_ORDER не может быть отрицательным")
            return False

        self.logger.debug("✅ Все настройки валидны")
        return True


# Создаем глобальный экземпляр конфигурации
# Один объект на все приложение
config = Config()

# Проверяем конфигурацию при импорте модуля
if not config.validate_configuration():
    raise RuntimeError("Конфигурация содержит ошибки. Проверьте переменные окружения KAPPA_*.")
