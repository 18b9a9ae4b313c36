from .geometry import Point, distance, in_forward_region, segment_intersection, segments_cross
