from pathlib import Path

import pandas as pd

from src.config import settings
from src.core.crud import alive_summary_table, alive_table, delivered_table, summary_table
from src.core.exceptions import DataIOError, InvariantViolation, WmsnError
from src.core.repository.repository import Repository
from src.core.schemas import (
    AliveRow,
    AliveSummaryRow,
    DeliveredRow,
    ExperimentConfig,
    SimulationOutcome,
    SummaryRow,
)
from src.core.simengine import TrialResult, run_experiment
from src.utils import get_logger

logger = get_logger(__name__, settings.LOG_LEVEL, settings.LOG_FILE)


class ExperimentRepo(Repository):
    def __delivered_rows(self, results: list[TrialResult]) -> list[DeliveredRow]:
        return [
            DeliveredRow(
                protocol=result.spec.protocol.value,
                n=result.spec.n,
                trial=result.spec.trial,
                seed=result.seed,
                delivered_bytes=result.metrics.delivered_bytes_total,
                mean_delay_s=result.metrics.mean_delay,
                drops=result.metrics.drops,
                control_msgs=result.metrics.control_messages,
            )
            for result in results
        ]

    def __alive_rows(self, results: list[TrialResult]) -> list[AliveRow]:
        return [
            AliveRow(
                protocol=result.spec.protocol.value,
                t_s=t_s,
                alive_count=count,
                trial=result.spec.trial,
                seed=result.seed,
            )
            for result in results
            for t_s, count in result.metrics.alive_count_timeline
        ]

    def __summaries(self, results: list[TrialResult]) -> tuple[list[SummaryRow], list[AliveSummaryRow]]:
        """
        Averages the trials of every (protocol, node count) cell.

        Args:
            results (list[TrialResult]): Trial results in matrix order.

        Returns:
            tuple[list[SummaryRow], list[AliveSummaryRow]]: Cell means, and mean alive counts per sample time.
        """
        delivered = pd.DataFrame(
            [row.model_dump() for row in self.__delivered_rows(results)],
            columns=list(DeliveredRow.model_fields),
        )
        grouped = delivered.groupby(["protocol", "n"], sort=False)
        cells = grouped.agg(
            trials=("trial", "size"),
            mean_delivered_bytes=("delivered_bytes", "mean"),
            mean_delay_s=("mean_delay_s", "mean"),
            mean_drops=("drops", "mean"),
            mean_control_msgs=("control_msgs", "mean"),
        ).reset_index().astype(object)
        summary = [SummaryRow.model_validate(record) for record in cells.to_dict("records")]

        alive = pd.DataFrame(
            [
                {"protocol": result.spec.protocol.value, "n": result.spec.n, "t_s": t_s, "alive_count": count}
                for result in results
                for t_s, count in result.metrics.alive_count_timeline
            ],
            columns=["protocol", "n", "t_s", "alive_count"],
        )
        means = alive.groupby(["protocol", "n", "t_s"], sort=False)["alive_count"].mean().reset_index().astype(object)
        alive_summary = [
            AliveSummaryRow(protocol=row.protocol, n=row.n, t_s=row.t_s, mean_alive_count=row.alive_count)
            for row in means.itertuples(index=False)
        ]
        return summary, alive_summary

    def simulate(self, config: ExperimentConfig, jobs: int = 1, snapshots: bool = False) -> SimulationOutcome:
        """
        Runs the configured trial matrix and writes its CSV files.

        Args:
            config (ExperimentConfig): Validated experiment configuration.
            jobs (int): Worker processes for independent trials.
            snapshots (bool): Also write the final world state of every trial.

        Returns:
            SimulationOutcome: Trial count and written files.

        Raises:
            InvariantViolation: If a runtime check fails inside a trial.
            DataIOError: If the output cannot be written.
        """
        try:
            logger.info(f"simulating into {self.out_dir}")
            results = run_experiment(config, jobs=jobs, keep_snapshots=snapshots)
            summary, alive_summary = self.__summaries(results)
            files = [
                delivered_table.write(self.output_path("delivered.csv"), self.__delivered_rows(results)),
                alive_table.write(self.output_path("alive.csv"), self.__alive_rows(results)),
                summary_table.write(self.output_path("summary.csv"), summary),
                alive_summary_table.write(self.output_path("alive_summary.csv"), alive_summary),
                self.__write_text(self.output_path("config.conf"), config.to_flat_text()),
            ]
            if snapshots:
                files.extend(self.__write_snapshots(results))

        except WmsnError as error:
            logger.error(f"simulation failed: {error.detail}")
            raise

        except Exception as error:
            logger.error(f"simulation failed: {error!r}")
            raise InvariantViolation(f"simulation failed: {error!r}")

        else:
            logger.info(f"simulation finished: {len(results)} trial(s), {len(files)} file(s)")
            return SimulationOutcome(trials=len(results), files=[str(path) for path in files])

    def __write_snapshots(self, results: list[TrialResult]) -> list[Path]:
        directory = self.output_path("snapshots")
        paths = []
        for result in results:
            spec = result.spec
            name = f"{spec.protocol.value}_n{spec.n}_trial{spec.trial}.txt"
            paths.append(self.__write_text(directory / name, result.snapshot or ""))
        return paths

    @staticmethod
    def __write_text(path: Path, text: str) -> Path:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as error:
            raise DataIOError(f"cannot write {path}: {error.strerror or error}")
        return path
