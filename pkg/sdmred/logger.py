"""
@summary:       Logger library to streamline logging
@run:           import sdmred.logger as slog
@license:       MIT
"""
import logging

_ROOT = "sdmred"


def logger(name, debug=False):
    """
    Create a logger with name
    name (unicode): Name of the logger
    debug (bool): If log-level should be set to debug
    """
    logging.basicConfig()  # errors and everything else (2 separate log groups)
    log = logging.getLogger(name)
    log.setLevel(logging.INFO)
    if debug:
        log.setLevel(logging.DEBUG)
    return log


def set_debug(debug=True):
    """
    Switch every package logger between INFO and DEBUG
    Args:
        debug (bool): If log-level should be set to debug
    """
    level = logging.DEBUG if debug else logging.INFO
    for name in list(logging.root.manager.loggerDict):
        if name == _ROOT or name.startswith(_ROOT + "."):
            logging.getLogger(name).setLevel(level)
