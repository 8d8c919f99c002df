from pyqiemi.channel.charging_channel import ChargingChannel, TickRecord
from pyqiemi.channel.in_band_link import InBandLink, Reception, RenderedTick, Transmission
