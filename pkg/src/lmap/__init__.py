"""Locally maximal area parallelograms inscribed in convex polygons."""
