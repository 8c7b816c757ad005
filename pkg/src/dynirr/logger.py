"""
Logging module for dynirr.

Records go to stderr (stdout is reserved for run summaries) and optionally to
a file. A persistent context, e.g. the family being built, is attached to every
record by a filter, so both the text and the JSON formatter can render it.
Counters and timings of exact computations are kept alongside.
"""

import logging
import sys
import json
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional
from datetime import datetime, timezone
from pathlib import Path

TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s%(context_suffix)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class ContextFilter(logging.Filter):
    """Stamps the logger's context and per-call fields onto each record."""

    def __init__(self, context: Dict[str, Any]):
        super().__init__()
        self.context = context

    def filter(self, record: logging.LogRecord) -> bool:
        record.context = dict(self.context)
        fields = getattr(record, "fields", None) or {}
        record.fields = fields
        suffix = ""
        if record.context:
            suffix += f" [Context: {json.dumps(record.context, default=str)}]"
        if fields:
            suffix += f" [Extra: {json.dumps(fields, default=str)}]"
        record.context_suffix = suffix
        return True


class TextFormatter(logging.Formatter):
    """Plain or ANSI-colored single-line records."""

    COLORS = {
        'DEBUG': '\033[36m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[35m',
    }
    RESET = '\033[0m'

    def __init__(self, color: bool = False):
        super().__init__(TEXT_FORMAT, datefmt=DATE_FORMAT)
        self.color = color

    def format(self, record):
        if not self.color:
            return super().format(record)
        levelname = record.levelname
        record.levelname = f"{self.COLORS.get(levelname, '')}{levelname}{self.RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = levelname


class JsonFormatter(logging.Formatter):
    """One JSON object per record, context and fields included."""

    def format(self, record):
        log_data = {
            'timestamp': datetime.now(timezone.utc).isoformat(),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
            'module': record.module,
            'line': record.lineno,
        }
        if getattr(record, "context", None):
            log_data['context'] = record.context
        if getattr(record, "fields", None):
            log_data['fields'] = record.fields
        if record.exc_info:
            log_data['exception'] = self.formatException(record.exc_info)
        return json.dumps(log_data, default=str)


class StructuredLogger:
    """
    Structured logger with a persistent context, metric counters and
    timers for long exact computations.
    """

    def __init__(
        self,
        name: str,
        level: str = "INFO",
        log_file: Optional[str] = None,
        console_output: bool = True,
        json_format: bool = False,
    ):
        """
        Args:
            name: Logger name
            level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
            log_file: Optional path to log file
            console_output: Whether to write to stderr
            json_format: Whether to emit one JSON object per record
        """
        self.logger = logging.getLogger(name)
        self.logger.setLevel(getattr(logging, level.upper()))
        self.logger.handlers = []
        self.logger.filters = []
        self.logger.propagate = False

        self.context: Dict[str, Any] = {}
        self.metrics: Dict[str, Any] = {}
        self.logger.addFilter(ContextFilter(self.context))

        if console_output:
            self._attach(logging.StreamHandler(sys.stderr), json_format, color=sys.stderr.isatty())
        if log_file:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            self._attach(logging.FileHandler(log_file), json_format, color=False)

    def _attach(self, handler: logging.Handler, json_format: bool, color: bool):
        handler.setFormatter(JsonFormatter() if json_format else TextFormatter(color))
        self.logger.addHandler(handler)

    def set_context(self, **kwargs):
        """Set context that will be included in all subsequent logs."""
        self.context.update(kwargs)

    def clear_context(self):
        self.context.clear()

    def _log(self, level: int, message: str, extra: Optional[Dict], exc_info: bool = False):
        self.logger.log(level, message, extra={"fields": extra or {}}, exc_info=exc_info)

    def debug(self, message: str, extra: Optional[Dict] = None):
        self._log(logging.DEBUG, message, extra)

    def info(self, message: str, extra: Optional[Dict] = None):
        self._log(logging.INFO, message, extra)

    def warning(self, message: str, extra: Optional[Dict] = None):
        self._log(logging.WARNING, message, extra)

    def error(self, message: str, extra: Optional[Dict] = None, exc_info: bool = False):
        self._log(logging.ERROR, message, extra, exc_info)

    def critical(self, message: str, extra: Optional[Dict] = None, exc_info: bool = False):
        self._log(logging.CRITICAL, message, extra, exc_info)

    def metric(self, metric_name: str, value: Any):
        self.metrics[metric_name] = value
        self.debug(f"Metric recorded: {metric_name} = {value}")

    def increment_metric(self, metric_name: str, amount: int = 1):
        self.metrics[metric_name] = self.metrics.get(metric_name, 0) + amount

    def get_metrics(self) -> Dict[str, Any]:
        return self.metrics.copy()

    @contextmanager
    def track_time(self, operation: str) -> Iterator[Dict[str, float]]:
        """
        Time a block and record it as the metric ``time.<operation>``.

        Yields a dict whose ``seconds`` key is filled in when the block exits,
        so callers can copy the timing into their own records.
        """
        box: Dict[str, float] = {}
        start = time.perf_counter()
        try:
            yield box
        finally:
            box["seconds"] = time.perf_counter() - start
            self.metrics[f"time.{operation}"] = round(box["seconds"], 6)

    def log_check_result(self, check: str, verdict: str, details: Optional[Dict] = None):
        """Count a verdict; failures are logged as errors, everything else at DEBUG."""
        self.increment_metric(f"verdict.{verdict}")
        if verdict == "fail":
            self.error(f"Check failed: {check}", extra=details)
        else:
            self.debug(f"Check {check}: {verdict}", extra=details)

    def log_budget_refusal(self, what: str, degree: int, cap: int):
        self.increment_metric("budget_refusals")
        self.warning(
            f"Refusing {what}: degree {degree} exceeds budget {cap}",
            extra={"degree": degree, "cap": cap},
        )

    def log_operation_start(self, operation: str, details: Optional[Dict] = None):
        self.info(f"Starting operation: {operation}", extra=details)

    def log_operation_end(self, operation: str, success: bool, details: Optional[Dict] = None):
        if success:
            self.info(f"Operation completed successfully: {operation}", extra=details)
        else:
            self.error(f"Operation failed: {operation}", extra=details)


_logger: Optional[StructuredLogger] = None


def get_logger() -> StructuredLogger:
    """
    The process-wide logger.

    Library use starts at WARNING so exact computations stay quiet; the CLI
    replaces it through setup_logging(). Worker processes of a parallel run
    get their own WARNING-level instance.
    """
    global _logger
    if _logger is None:
        _logger = StructuredLogger(name="dynirr", level="WARNING")
    return _logger


def setup_logging(config) -> StructuredLogger:
    """Replace the process-wide logger from a LoggingConfig."""
    global _logger
    _logger = StructuredLogger(
        name="dynirr",
        level=config.level,
        log_file=config.file_path,
        console_output=config.console_output,
        json_format=config.json_format,
    )
    return _logger
