import abc
import importlib
from typing import Any, Dict, List, Optional

from kktlab.config.settings import (CHECK_LIST, COMMAND, COMMANDS, INPUTS,
                                    MODE, PASSED, RESULTS, SCHEMA, SCHEMA_KEY,
                                    SEED)
from kktlab.exceptions import UsageError
from kktlab.logic.report import CheckReport, jsonable


class BaseCommand(object, metaclass=abc.ABCMeta):
    # Name of the command on the command line, also the "command" entry of its report.
    name = None

    def __init__(self, lab):
        self.lab = lab

    def report(self, inputs: Dict[str, Any], results: Dict[str, Any],
               checks: Optional[List[CheckReport]] = None) -> Dict[str, Any]:
        """
        Assembles the versioned JSON report of a run.

        :param inputs: the parsed command inputs, echoed back.
        :param results: computed values (dims, fingerprints, classifications, ...).
        :param checks: verification outcomes; the run passes when all of them pass.
        :return: a JSON-ready dictionary.
        """
        checks = checks or []
        return {
            SCHEMA_KEY: SCHEMA,
            COMMAND: self.name,
            INPUTS: jsonable(inputs),
            SEED: self.lab.seed,
            MODE: str(self.lab.mode) if self.lab.mode is not None else "auto",
            RESULTS: jsonable(results),
            CHECK_LIST: [c.to_dict() for c in checks],
            PASSED: all(c.passed for c in checks),
        }

    @abc.abstractmethod
    def run(self, **options) -> Dict[str, Any]:
        """
        Runs the command.

        :param options: command specific options, as parsed from the command line.
        :return: the report built by ``report``.
        """
        pass


def get_command(command_name: str) -> type:
    """
    Given a command name it returns the command class registered for it.

    :param command_name: name of the command.
    :return: a subclass of BaseCommand.
    """
    try:
        path, command_class_name = COMMANDS[command_name]
        command_module = importlib.import_module(path)
        command_class = getattr(command_module, command_class_name)
        return command_class
    except (ImportError, KeyError):
        raise UsageError(f"Unsupported command {command_name!r}, expected one of {', '.join(COMMANDS)}.")
