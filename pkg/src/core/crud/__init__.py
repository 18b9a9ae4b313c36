from .base import CsvTable
from .tables import (
    alive_summary_table,
    alive_table,
    delivered_table,
    prediction_table,
    summary_table,
    track_table,
    truth_table,
)
