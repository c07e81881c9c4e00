import abc
import importlib
from typing import Any, Dict, List

from kktlab.config.settings import CHECKS
from kktlab.exceptions import UsageError
from kktlab.logic.report import CheckReport


class BaseCheck(object, metaclass=abc.ABCMeta):
    """
    An identity or structure check that ``verify`` can run on a target given as a spec string.
    """
    # Kind of target spec the check reads (jordan, triple or algebra).
    target_kind = None

    def __init__(self, lab):
        self.lab = lab
        self.details: Dict[str, Any] = {}

    @abc.abstractmethod
    def check(self, target: str) -> List[CheckReport]:
        """
        Builds the target and checks it.

        :param target: spec string of the object to check.
        :return: one report per verified property; ``details`` may be filled with extra results.
        """
        pass


def get_check(check_name: str) -> type:
    """
    Given a check name it returns the check class registered for it.

    :param check_name: name of the check.
    :return: a subclass of BaseCheck.
    """
    try:
        path, check_class_name = CHECKS[check_name]
        check_module = importlib.import_module(path)
        check_class = getattr(check_module, check_class_name)
        return check_class
    except (ImportError, KeyError):
        raise UsageError(f"Unsupported check {check_name!r}, expected one of {', '.join(CHECKS)}.")
