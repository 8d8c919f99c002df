import pytest

from pyqiemi.codec import ACK, FskResponse, QiPacket
from pyqiemi.eavesdropper import Direction, RecoveredMessage, format_report


def test_report_line_of_ask_packet():
    message = RecoveredMessage(Direction.RxToTx, QiPacket.sig(0x84), 1.0, 0.0125)
    assert message.report_line() == "t=0.0125 dir=rx_to_tx kind=SIG payload=84 conf=1.0"


def test_report_line_names_manufacturer_of_charger_id():
    response = FskResponse.data(QiPacket.identification(0x12, 0x0042, 0x00000515))
    line = RecoveredMessage(Direction.TxToRx, response, 1.0, 0.5).report_line()
    assert "kind=DATA" in line
    assert line.endswith("manufacturer=0x0042")


def test_report_has_one_line_per_message():
    messages = [RecoveredMessage(Direction.TxToRx, ACK, 1.0, 0.0),
                RecoveredMessage(Direction.RxToTx, QiPacket.ce(0), 0.5, 0.1)]
    report = format_report(messages)
    assert report.splitlines() == [message.report_line() for message in messages]


@pytest.mark.parametrize("confidence", [-0.1, 1.5])
def test_confidence_outside_unit_interval(confidence):
    with pytest.raises(ValueError):
        RecoveredMessage(Direction.RxToTx, QiPacket.ce(0), confidence, 0.0)
