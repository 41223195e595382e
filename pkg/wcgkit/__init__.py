"""Wide-color-gamut content characterization toolkit"""
__version__ = "1.0.0"
