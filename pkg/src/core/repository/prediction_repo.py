import math
from pathlib import Path

from src.config import settings
from src.core.crud import prediction_table
from src.core.exceptions import DataIOError, TraceParseError
from src.core.predictor import PredictionTrace, PredictorParams, replay
from src.core.repository.repository import Repository
from src.core.schemas import PredictionOutcome, PredictionRow
from src.utils import get_logger

logger = get_logger(__name__, settings.LOG_LEVEL, settings.LOG_FILE)


class PredictionRepo(Repository):
    def read_trace(self, path: str | Path) -> list[float]:
        """
        Reads an RBA history, one value per line; blank lines and ``#`` comments are skipped.

        Raises:
            DataIOError: If the file cannot be read.
            TraceParseError: On a non-numeric or negative value, naming its line.
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as error:
            raise DataIOError(f"cannot read trace {path}: {error.strerror or error}")

        values = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                value = float(line)
            except ValueError:
                raise TraceParseError(str(path), number, f"not a number: {line!r}")
            if not math.isfinite(value) or value < 0:
                raise TraceParseError(str(path), number, f"RBA must be a non-negative number, got {line}")
            values.append(value)
        return values

    @staticmethod
    def to_rows(traces: list[PredictionTrace]) -> list[PredictionRow]:
        return [
            PredictionRow(
                step=step,
                measured=trace.measured,
                a=trace.a,
                B=trace.blend,
                a_hat=trace.state.a_hat,
                v=trace.state.v,
                predicted=trace.predicted,
            )
            for step, trace in enumerate(traces)
        ]

    def predict(
        self, trace_path: str | Path, params: PredictorParams, output: str | Path | None = None
    ) -> tuple[PredictionOutcome, str]:
        """
        Replays an RBA trace through the predictor.

        Args:
            trace_path (str | Path): Trace file.
            params (PredictorParams): Predictor parameters.
            output (str | Path | None): CSV destination; when None the CSV is only returned.

        Returns:
            tuple[PredictionOutcome, str]: Step count and destination, and the CSV text.
        """
        values = self.read_trace(trace_path)
        rows = self.to_rows(replay(values, params))
        text = prediction_table.dumps(rows)
        if output is not None:
            prediction_table.write(output, rows)
            logger.info(f"wrote {len(rows)} prediction step(s) to {output}")
        return PredictionOutcome(steps=len(rows), output=str(output) if output is not None else None), text
