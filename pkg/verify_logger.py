# verify_logger.py
"""
🔍 Verification Logger: пишет ход проверки в консоль и накапливает
контрпримеры в памяти для последующего сохранения в ОДИН файл (JSON-lines).
"""
import json
import logging
import os
from typing import Any, Dict, List


class VerificationLog:
    def __init__(self):
        self.logger = logging.getLogger("KAPPA_VERIFY")
        self.counterexamples: List[Dict[str, Any]] = []  # ✅ Единый буфер для всех контрпримеров

        if not self.logger.handlers:
            formatter = logging.Formatter('%(asctime)s | %(levelname)s | %(message)s')
            console_handler = logging.StreamHandler()
            console_handler.setFormatter(formatter)
            self.logger.addHandler(console_handler)
            self.logger.setLevel(logging.INFO)
            self.logger.propagate = False

    def start_run(self, group_types: int, max_order: int, jobs: int):
        self.logger.info("=" * 80)
        self.logger.info(f"🚀 VERIFY | Группы порядка <= {max_order}: {group_types} типов | Воркеров: {jobs}")

    def log_group_done(self, factors, instances: int, failures: int):
        label = ",".join(map(str, factors)) or "trivial"
        icon = "✅" if not failures else "❌"
        self.logger.info(f"{icon} Z[{label}]: {instances} подмножеств, контрпримеров: {failures}")

    def record_counterexample(self, record: Dict[str, Any]):
        """Запоминает контрпример; record уже содержит группу, S, отчет и ответ оракула."""
        entry = dict(record)
        self.counterexamples.append(entry)
        self.logger.warning(f"⚠️ Контрпример: G={entry.get('group')}, S={entry.get('subset')}: {entry.get('failures')}")

    def log_summary(self, summary: Dict[str, Any]):
        self.logger.info("🎉 ИТОГ ПРОВЕРКИ")
        for key, value in summary.items():
            self.logger.info(f"  {key}: {value}")
        self.logger.info("-" * 80)

    def save_counterexamples(self, path: str) -> bool:
        """
        Сохраняет накопленные контрпримеры в один файл.
        Файл пишется всегда, при чистом прогоне он пустой.
        """
        directory = os.path.dirname(path)
        try:
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, 'w', encoding='utf-8') as f:
                for entry in self.counterexamples:
                    f.write(json.dumps(entry, ensure_ascii=False, sort_keys=True) + "\n")
            self.logger.info(f"💾 Контрпримеры ({len(self.counterexamples)}) сохранены в файл: {path}")
            self.counterexamples = []  # Очищаем буфер после сохранения
            return True
        except IOError as e:
            self.logger.error(f"❌ Не удалось сохранить файл {path}: {e}")
            return False
