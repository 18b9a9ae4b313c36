import pytest

from src.core.crud import delivered_table, prediction_table, track_table
from src.core.exceptions import DataIOError
from src.core.schemas import DeliveredRow, PredictionRow, TrackRow


def test_headers_follow_field_order():
    assert delivered_table.columns == [
        "protocol", "n", "trial", "seed", "delivered_bytes", "mean_delay_s", "drops", "control_msgs"
    ]
    assert prediction_table.columns == ["step", "measured", "a", "B", "a_hat", "v", "predicted"]
    assert ",".join(track_table.columns) == "frame,cx,cy,w,h,m00,iters,lost,payload_bytes"


def test_empty_table_is_just_the_header():
    assert delivered_table.dumps([]) == "protocol,n,trial,seed,delivered_bytes,mean_delay_s,drops,control_msgs\n"


def test_prediction_numbers_use_seven_significant_digits():
    rows = [
        PredictionRow(step=0, measured=85.0, a=None, B=None, a_hat=0.0, v=1.0, predicted=85.0),
        PredictionRow(step=1, measured=70.0, a=-15.0, B=2 / 3, a_hat=-10.0, v=2 / 3, predicted=60.0),
    ]
    lines = prediction_table.dumps(rows).splitlines()
    assert lines[1] == "0,85,,,0,1,85"
    assert lines[2] == "1,70,-15,0.6666667,-10,0.6666667,60"


def test_rows_survive_a_file(tmp_path):
    rows = [
        DeliveredRow(protocol="rba", n=200, trial=0, seed=2**64 - 5, delivered_bytes=123456,
                     mean_delay_s=1.25, drops=3, control_msgs=99),
        DeliveredRow(protocol="gpsr", n=200, trial=1, seed=17, delivered_bytes=0,
                     mean_delay_s=0.0, drops=0, control_msgs=0),
    ]
    path = delivered_table.write(tmp_path / "nested" / "delivered.csv", rows)
    assert path.exists()
    assert delivered_table.read(path) == rows


def test_track_rows_keep_flags(tmp_path):
    row = TrackRow(frame=4, cx=20.5, cy=22.0, w=20, h=20, m00=310.25, iters=3, lost=True, payload_bytes=16)
    path = track_table.write(tmp_path / "track.csv", [row])
    assert track_table.read(path) == [row]


def test_wrong_header_is_rejected(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("a,b\n1,2\n", encoding="utf-8")
    with pytest.raises(DataIOError, match="expected header"):
        delivered_table.read(path)


def test_missing_file(tmp_path):
    with pytest.raises(DataIOError):
        delivered_table.read(tmp_path / "absent.csv")
