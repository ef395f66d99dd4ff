import logging
import os
import sys

# Logger global del proyecto
logger = logging.getLogger("XiPhiLogger")

# Configurar el logger solo una vez
if not logger.handlers:
    # Nivel configurable con XIPHI_LOG_LEVEL; valores desconocidos caen a WARNING
    log_level_str = os.getenv("XIPHI_LOG_LEVEL", "WARNING").upper()
    log_level = getattr(logging, log_level_str, logging.WARNING)
    if not isinstance(log_level, int):
        log_level = logging.WARNING
    logger.setLevel(log_level)

    # Siempre a stderr: stdout queda reservado para los resultados del CLI
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setLevel(log_level)

    formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')
    stream_handler.setFormatter(formatter)

    logger.addHandler(stream_handler)
    logger.propagate = False
