import io
import logging
import os

import pytest

from utils.logger import logger


@pytest.fixture
def log_capture():
    # Handler temporal con nivel DEBUG sobre un StringIO
    log_stream = io.StringIO()
    stream_handler = logging.StreamHandler(log_stream)
    stream_handler.setFormatter(logging.Formatter('%(levelname)s - %(message)s'))
    previous_level = logger.level
    logger.setLevel(logging.DEBUG)
    logger.addHandler(stream_handler)
    yield log_stream
    logger.removeHandler(stream_handler)
    logger.setLevel(previous_level)
    log_stream.close()


def test_logger_name_and_propagation():
    assert logger.name == "XiPhiLogger"
    assert logger.propagate is False


def test_logger_levels(log_capture):
    logger.debug("Mensaje debug")
    logger.info("Mensaje info")
    logger.error("Mensaje error")
    log_contents = log_capture.getvalue()
    assert "DEBUG - Mensaje debug" in log_contents
    assert "INFO - Mensaje info" in log_contents
    assert "ERROR - Mensaje error" in log_contents


def test_logger_change_level(monkeypatch, log_capture):
    # Un logger nuevo configurado como el global con XIPHI_LOG_LEVEL=ERROR
    monkeypatch.setenv("XIPHI_LOG_LEVEL", "ERROR")
    test_logger = logging.getLogger("XiPhiLoggerTest")
    for handler in test_logger.handlers[:]:
        test_logger.removeHandler(handler)
    test_logger.setLevel(getattr(logging, os.getenv("XIPHI_LOG_LEVEL", "WARNING")))
    handler = logging.StreamHandler(log_capture)
    handler.setFormatter(logging.Formatter('%(levelname)s - %(message)s'))
    test_logger.addHandler(handler)

    test_logger.warning("Este warning no debería aparecer")
    test_logger.error("Mensaje error")
    contents = log_capture.getvalue()
    assert "Este warning no debería aparecer" not in contents
    assert "ERROR - Mensaje error" in contents


def test_analysis_verdicts_are_logged(log_capture):
    from core.conjugacy import find_equivalence
    from core.catalog import negation, gray_cycle
    find_equivalence(negation(2), gray_cycle(), jobs=1)
    assert "búsqueda agotada" in log_capture.getvalue()
