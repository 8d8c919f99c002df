import logging
import re
import warnings

import numpy as np

from pyqiemi.exceptions import InvalidTrace, TraceFormatError
from pyqiemi.signal.trace import Trace, Unit

logger = logging.getLogger(__name__)

HEADER_PATTERN = re.compile(r"^#\s*sample_rate=(\S+)\s+unit=(\S+)\s+t0=(\S+)\s*$")


def write_trace(trace: Trace, path: str) -> None:
    """
    Write a trace as CSV: a `# sample_rate=<Hz> unit=<tag> t0=<s>` header line followed by one
    sample per line with 17 significant digits, so reading it back is bit-identical.
    """
    header = f"sample_rate={trace.sample_rate:.17g} unit={trace.unit.value} t0={trace.t0:.17g}"
    np.savetxt(path, trace.samples, fmt="%.17g", header=header, comments="# ")
    logger.debug(f"Wrote {len(trace)} samples to {path}")


def read_trace(path: str) -> Trace:
    """
    Read a trace written by write_trace

    Raises:
        TraceFormatError: If the header or a sample line is malformed

    """
    with open(path) as trace_file:
        match = HEADER_PATTERN.match(trace_file.readline().strip())
        if not match:
            raise TraceFormatError(path, "missing '# sample_rate=<Hz> unit=<tag> t0=<s>' header")
        try:
            sample_rate, unit, t0 = float(match.group(1)), Unit(match.group(2)), float(match.group(3))
        except ValueError as e:
            raise TraceFormatError(path, str(e))
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", UserWarning)
                samples = np.loadtxt(trace_file, dtype=float, comments="#", ndmin=1)
        except ValueError as e:
            raise TraceFormatError(path, str(e))
    try:
        return Trace(sample_rate, samples, unit, t0)
    except InvalidTrace as e:
        raise TraceFormatError(path, str(e))
