from .frames_client import FramesClient, encode_pgm, parse_pgm
