# numerics/__init__.py
# Special functions, generalized Legendre functions and quadrature helpers.
