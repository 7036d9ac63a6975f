# physics/__init__.py
# Rosen-Morse channel: parameter maps, scattering coefficients, spectral transform.
