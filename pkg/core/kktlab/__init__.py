import json
import logging
import os
from time import time
from typing import Any, Dict, Optional

from kktlab.base_classes.base_command import get_command
from kktlab.config.settings import (CONFIG_GOLDEN_DIR, CONFIG_MODE,
                                    CONFIG_SEED, CONFIG_THREADS, DEFAULT_SEED,
                                    DEFAULT_GOLDEN_DIR, GOLDEN_FINGERPRINTS,
                                    PASSED, TOTAL_TIME)
from kktlab.logic.parsing import parse_mode
from kktlab.logic.workers import resolve_threads

logger = logging.getLogger(__name__)


class KKTLab:
    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}

        self.seed = int(self.config.get(CONFIG_SEED, DEFAULT_SEED))
        # None lets every check pick full or sampled by the size of its target
        self.mode = parse_mode(self.config.get(CONFIG_MODE))
        self.threads = resolve_threads(self.config.get(CONFIG_THREADS))
        self.golden_dir = self.config.get(CONFIG_GOLDEN_DIR, DEFAULT_GOLDEN_DIR)
        self._golden = None

    def golden_fingerprints(self) -> Dict[str, Dict[str, Any]]:
        """
        Frozen fingerprints keyed by algebra name ("con H3(O)", "E7", ...); empty when the
        golden file is missing.
        """
        if self._golden is None:
            path = os.path.join(self.golden_dir, GOLDEN_FINGERPRINTS)
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    self._golden = json.load(fh).get("fingerprints", {})
            except FileNotFoundError:
                logger.warning(f"no golden fingerprints at {path}")
                self._golden = {}
        return self._golden

    def run(self, command: str, **options) -> Dict[str, Any]:
        """
        Runs a registered command.

        :param command: command name, see settings.COMMANDS.
        :param options: command options.
        :return: the command report with its wall time added.
        """
        command_cls = get_command(command)
        t = time()
        report = command_cls(self).run(**options)
        report[TOTAL_TIME] = round(time() - t, 3)
        logger.info(f"{command} finished in {report[TOTAL_TIME]}s, passed={report[PASSED]}")
        return report
