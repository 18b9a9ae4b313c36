from src.core.crud.base import CsvTable
from src.core.schemas import (
    AliveRow,
    AliveSummaryRow,
    DeliveredRow,
    PredictionRow,
    SummaryRow,
    TrackRow,
    TruthRow,
)

delivered_table = CsvTable(DeliveredRow)
alive_table = CsvTable(AliveRow)
summary_table = CsvTable(SummaryRow)
alive_summary_table = CsvTable(AliveSummaryRow)
track_table = CsvTable(TrackRow)
truth_table = CsvTable(TruthRow)
prediction_table = CsvTable(PredictionRow, float_format="%.7g")
